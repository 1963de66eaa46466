//! Fixed-point groupoids with level structure and the database category Φ₀.
//!
//! An object of X(H) is a pair (x, φ) of a point and an injective
//! homomorphism φ: H ↣ iso(x); a morphism (x, φ) → (y, ψ) is a group element
//! g with g·x = y and ψ = conj_g ∘ φ. Face adjacency between compatible level
//! points is carried along as topological glue.

use std::collections::HashMap;

use crate::action::{Point, SimplicialAction};
use crate::error::{Error, Result};
use crate::group::{
    self, compose_hom_classes, enumerate_homs, enumerate_isomorphisms, pi0_hom_classes, Elem,
    Group, GroupHom, HomClass, IsoClassKey, Subgroup,
};
use crate::groupoid::{DisjointSets, FiniteGroupoid};

/// X(H) for a fixed abstract group H, over a regular action.
#[derive(Debug, Clone)]
pub struct LevelGroupoid {
    pub h: Group,
    /// injective homomorphisms H → G whose image fixes at least one point
    pub homs: Vec<GroupHom>,
    /// objects (point, hom index), sorted by (point, hom)
    pub objects: Vec<(Point, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    hom_index: HashMap<Vec<Elem>, usize>,
    /// codimension-one face adjacency between compatible level points;
    /// component-equivalent to the full face relation since isotropy only
    /// grows along faces
    pub adjacency: Vec<(usize, usize)>,
}

impl LevelGroupoid {
    pub fn build(action: &SimplicialAction, h: &Group) -> Result<LevelGroupoid> {
        if !action.is_regular() {
            return Err(Error::IrregularAction);
        }
        let g = action.group();
        let homs = enumerate_homs(h, g, true);
        let hom_index: HashMap<Vec<Elem>, usize> = homs
            .iter()
            .enumerate()
            .map(|(i, hm)| (hm.image.clone(), i))
            .collect();
        let mut objects: Vec<(Point, usize)> = Vec::new();
        let mut iso_cache: Vec<Vec<Elem>> = Vec::with_capacity(action.point_count());
        for x in action.points() {
            iso_cache.push(action.isotropy(x)?.elements);
        }
        for x in action.points() {
            let iso = &iso_cache[x.0];
            for (hi, hm) in homs.iter().enumerate() {
                if hm.image.iter().all(|v| iso.binary_search(v).is_ok()) {
                    objects.push((x, hi));
                }
            }
        }
        let object_index: HashMap<(usize, usize), usize> = objects
            .iter()
            .enumerate()
            .map(|(i, &(p, hi))| ((p.0, hi), i))
            .collect();
        let mut adjacency = Vec::new();
        for (oi, &(p, hi)) in objects.iter().enumerate() {
            for f in action.complex().boundary_faces(p.0) {
                if let Some(&oj) = object_index.get(&(f, hi)) {
                    adjacency.push((oi.min(oj), oi.max(oj)));
                }
            }
        }
        adjacency.sort_unstable();
        adjacency.dedup();
        Ok(LevelGroupoid {
            h: h.clone(),
            homs,
            objects,
            object_index,
            hom_index,
            adjacency,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn level_image(&self, object: usize) -> &GroupHom {
        &self.homs[self.objects[object].1]
    }

    pub fn object_of(&self, point: Point, image: &[Elem]) -> Option<usize> {
        let hi = *self.hom_index.get(image)?;
        self.object_index.get(&(point.0, hi)).copied()
    }

    /// g · (x, φ) = (g·x, conj_g ∘ φ).
    pub fn act(&self, action: &SimplicialAction, g: Elem, object: usize) -> usize {
        let (p, hi) = self.objects[object];
        let conj = self.homs[hi].conjugated_by(g);
        let target_h = self.hom_index[&conj.image];
        self.object_index[&(action.apply(g, p).0, target_h)]
    }

    /// Components under morphisms alone (orbit classes).
    pub fn orbit_components(&self, action: &SimplicialAction) -> Vec<usize> {
        let mut ds = DisjointSets::new(self.objects.len());
        for g in 1..action.group().order() {
            for o in 0..self.objects.len() {
                ds.union(o, self.act(action, g, o));
            }
        }
        ds.components()
    }

    /// Components under morphisms together with face adjacency.
    pub fn components(&self, action: &SimplicialAction) -> Vec<usize> {
        let mut ds = DisjointSets::new(self.objects.len());
        for g in 1..action.group().order() {
            for o in 0..self.objects.len() {
                ds.union(o, self.act(action, g, o));
            }
        }
        for &(a, b) in &self.adjacency {
            ds.union(a, b);
        }
        ds.components()
    }

    /// Materializes the underlying finite groupoid (desk-scale only).
    pub fn to_finite_groupoid(&self, action: &SimplicialAction) -> FiniteGroupoid {
        let labels = self
            .objects
            .iter()
            .map(|&(p, hi)| format!("(x{},{:?})", p.0, self.homs[hi].image))
            .collect();
        FiniteGroupoid::action_groupoid(labels, action.group(), |g, o| self.act(action, g, o))
            .with_adjacency(self.adjacency.clone())
    }
}

/// The contravariant reindexing functor X(H₁) → X(H₀) along an injective
/// α: H₀ ↣ H₁, as an object map; morphisms are carried by the same group
/// element.
pub fn restrict_along(
    alpha: &GroupHom,
    from: &LevelGroupoid,
    to: &LevelGroupoid,
) -> Result<Vec<usize>> {
    if !alpha.injective {
        return Err(Error::NotInjective);
    }
    if *alpha.target != *from.h || *alpha.source != *to.h {
        return Err(Error::GroupMismatch);
    }
    from.objects
        .iter()
        .map(|&(p, hi)| {
            let composed = from.homs[hi].compose(alpha)?;
            to.object_of(p, &composed.image)
                .ok_or_else(|| Error::Internal("restricted level is not an object".into()))
        })
        .collect()
}

/// The natural isomorphism α^H_H ≅ 1 for conjugation by a ∈ H: at (x, φ) the
/// component is the morphism with conjugator φ(a⁻¹) from (x, φ∘conj_a).
#[derive(Debug, Clone)]
pub struct InnerEquivalence {
    pub a: Elem,
    /// per object of X(H): (source object, target object, conjugator in G)
    pub components: Vec<(usize, usize, Elem)>,
}

pub fn inner_autoequivalence(
    action: &SimplicialAction,
    level: &LevelGroupoid,
    a: Elem,
) -> Result<InnerEquivalence> {
    let h = &level.h;
    if a >= h.order() {
        return Err(Error::UnknownElement(a, h.order()));
    }
    let conj_a_image: Vec<Elem> = (0..h.order()).map(|x| h.conjugate(a, x)).collect();
    let conj_a = GroupHom::new(h.clone(), h.clone(), conj_a_image)?;
    let mut components = Vec::with_capacity(level.objects.len());
    for (oi, &(p, hi)) in level.objects.iter().enumerate() {
        let phi = &level.homs[hi];
        let source_hom = phi.compose(&conj_a)?;
        let source = level
            .object_of(p, &source_hom.image)
            .ok_or_else(|| Error::Internal("conjugated level is not an object".into()))?;
        let conjugator = phi.apply(h.inv(a));
        components.push((source, oi, conjugator));
    }
    let equiv = InnerEquivalence { a, components };
    verify_naturality(action, level, &equiv)?;
    Ok(equiv)
}

/// Every naturality square commutes: for each morphism g: (x,φ) → (g·x,
/// conj_g φ), the conjugator equation η_{g·o} · g = g · η_o holds and the
/// endpoints line up.
pub fn verify_naturality(
    action: &SimplicialAction,
    level: &LevelGroupoid,
    equiv: &InnerEquivalence,
) -> Result<()> {
    let g_group = action.group();
    for oi in 0..level.objects.len() {
        let (src, _, eta) = equiv.components[oi];
        for g in 0..g_group.order() {
            let o2 = level.act(action, g, oi);
            let (src2, _, eta2) = equiv.components[o2];
            // the reindexed morphism runs src -> src2 with the same g
            if level.act(action, g, src) != src2 {
                return Err(Error::Internal("naturality: squares do not close".into()));
            }
            if g_group.mul(eta2, g) != g_group.mul(g, eta) {
                return Err(Error::Internal("naturality: square does not commute".into()));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Φ₀
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Phi0Object {
    pub h_key: IsoClassKey,
    pub component: usize,
    /// witness level point: (point, image array of the level into G)
    pub basepoint: (Point, Vec<Elem>),
}

#[derive(Debug, Clone)]
pub struct Phi0Morphism {
    pub source: usize,
    pub target: usize,
    pub class: HomClass,
}

/// The database category of orbit types: objects are pairs (iso-class of H,
/// component of X(H)), morphisms are conjugation classes of injective
/// homomorphisms compatible with the component structure.
///
/// Components of X(H) are taken under morphisms, face adjacency, and
/// reindexing along automorphisms of H; the last identification makes the
/// object set agree with the subgroup-and-fixed-component description.
#[derive(Debug, Clone)]
pub struct Phi0Category {
    /// iso-class keys of subgroups with nonempty fixed data, sorted
    pub keys: Vec<IsoClassKey>,
    /// abstract representative group per key (the least subgroup with that key)
    pub rep_groups: Vec<Group>,
    pub levels: Vec<LevelGroupoid>,
    /// fused component id per level object, per key
    pub component_of: Vec<Vec<usize>>,
    pub objects: Vec<Phi0Object>,
    object_index: HashMap<(usize, usize), usize>,
    pub morphisms: Vec<Phi0Morphism>,
    pub identity: Vec<usize>,
    pub compose: HashMap<(usize, usize), usize>,
    /// per subgroup (element list): image array of the stored identification
    /// rep_group(key) → G with that subgroup as image
    pub subgroup_levels: HashMap<Vec<Elem>, Vec<Elem>>,
    pub key_of_subgroup: HashMap<Vec<Elem>, usize>,
}

impl Phi0Category {
    pub fn object_id(&self, key_index: usize, component: usize) -> Option<usize> {
        self.object_index.get(&(key_index, component)).copied()
    }

    pub fn key_index(&self, key: &IsoClassKey) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }

    pub fn morphisms_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].source == source && self.morphisms[m].target == target)
            .collect()
    }

    /// The Φ₀ object of a level point (x, φ) with φ given by its image array
    /// under the key's representative group.
    pub fn object_of_level(&self, key_index: usize, point: Point, image: &[Elem]) -> Option<usize> {
        let level = &self.levels[key_index];
        let obj = level.object_of(point, image)?;
        self.object_id(key_index, self.component_of[key_index][obj])
    }
}

pub fn phi0_category(action: &SimplicialAction) -> Result<Phi0Category> {
    if !action.is_regular() {
        return Err(Error::IrregularAction);
    }
    let g = action.group();
    let lattice = group::subgroups(g);

    // iso-classes of subgroups, each with the least subgroup as representative
    let mut keys: Vec<IsoClassKey> = Vec::new();
    let mut rep_groups: Vec<Group> = Vec::new();
    let mut key_of_subgroup: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut subgroup_levels: HashMap<Vec<Elem>, Vec<Elem>> = HashMap::new();
    for sub in &lattice.subgroups {
        let (abstract_group, embedding) = sub.as_group()?;
        let key = group::iso_class_key(&abstract_group)?;
        let ki = match keys.iter().position(|k| *k == key) {
            Some(ki) => ki,
            None => {
                keys.push(key);
                rep_groups.push(abstract_group.clone());
                keys.len() - 1
            }
        };
        key_of_subgroup.insert(sub.elements.clone(), ki);
        // route every subgroup through one stored isomorphism from the key's
        // representative group
        let iso = group::find_isomorphism(&rep_groups[ki], &abstract_group)
            .ok_or_else(|| Error::Internal("key collision without isomorphism".into()))?;
        let level_hom = embedding.compose(&iso)?;
        subgroup_levels.insert(sub.elements.clone(), level_hom.image);
    }

    // keep keys in deterministic order with their level groupoids; drop keys
    // whose fixed data is empty
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut kept_keys = Vec::new();
    let mut kept_reps = Vec::new();
    let mut levels = Vec::new();
    let mut new_index: HashMap<usize, usize> = HashMap::new();
    for &old in &order {
        let level = LevelGroupoid::build(action, &rep_groups[old])?;
        if level.object_count() == 0 {
            continue;
        }
        new_index.insert(old, kept_keys.len());
        kept_keys.push(keys[old].clone());
        kept_reps.push(rep_groups[old].clone());
        levels.push(level);
    }
    let key_of_subgroup: HashMap<Vec<Elem>, usize> = key_of_subgroup
        .into_iter()
        .filter_map(|(s, old)| new_index.get(&old).map(|&n| (s, n)))
        .collect();
    let keys = kept_keys;
    let rep_groups = kept_reps;

    // fused components: morphisms ∪ adjacency ∪ Aut(H)-reindexing
    let mut component_of: Vec<Vec<usize>> = Vec::with_capacity(keys.len());
    for (ki, level) in levels.iter().enumerate() {
        let mut ds = DisjointSets::new(level.object_count());
        for grp in 1..g.order() {
            for o in 0..level.object_count() {
                ds.union(o, level.act(action, grp, o));
            }
        }
        for &(a, b) in &level.adjacency {
            ds.union(a, b);
        }
        for auto in enumerate_isomorphisms(&rep_groups[ki], &rep_groups[ki]) {
            let map = restrict_along(&auto, level, level)?;
            for (o, &o2) in map.iter().enumerate() {
                ds.union(o, o2);
            }
        }
        component_of.push(ds.components());
    }

    // objects
    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    for ki in 0..keys.len() {
        let ncomp = component_of[ki].iter().max().map_or(0, |m| m + 1);
        for c in 0..ncomp {
            let witness = (0..levels[ki].object_count())
                .find(|&o| component_of[ki][o] == c)
                .expect("component has a member");
            let (p, hi) = levels[ki].objects[witness];
            object_index.insert((ki, c), objects.len());
            objects.push(Phi0Object {
                h_key: keys[ki].clone(),
                component: c,
                basepoint: (p, levels[ki].homs[hi].image.clone()),
            });
        }
    }

    // morphisms: α ∈ π₀Hom⁺(H₀,H₁) from (H₀,ξ₀) to (H₁,ξ₁) when reindexing
    // along α carries ξ₁ into ξ₀
    let mut morphisms: Vec<Phi0Morphism> = Vec::new();
    for k0 in 0..keys.len() {
        for k1 in 0..keys.len() {
            for class in pi0_hom_classes(&rep_groups[k0], &rep_groups[k1], true) {
                let map = restrict_along(&class.representative, &levels[k1], &levels[k0])?;
                // fused target component -> fused source component; must be
                // constant on each target component
                let ncomp1 = component_of[k1].iter().max().map_or(0, |m| m + 1);
                let mut image_comp: Vec<Option<usize>> = vec![None; ncomp1];
                let mut constant = true;
                for (o, &o0) in map.iter().enumerate() {
                    let c1 = component_of[k1][o];
                    let c0 = component_of[k0][o0];
                    match image_comp[c1] {
                        None => image_comp[c1] = Some(c0),
                        Some(prev) if prev != c0 => constant = false,
                        _ => {}
                    }
                }
                if !constant {
                    return Err(Error::Internal(
                        "level reindexing is not constant on fused components".into(),
                    ));
                }
                for (c1, target_comp) in image_comp.iter().enumerate() {
                    if let Some(c0) = target_comp {
                        let source = object_index[&(k0, *c0)];
                        let target = object_index[&(k1, c1)];
                        morphisms.push(Phi0Morphism {
                            source,
                            target,
                            class: class.clone(),
                        });
                    }
                }
            }
        }
    }
    morphisms.sort_by(|a, b| {
        (a.source, a.target, &a.class.representative.image).cmp(&(
            b.source,
            b.target,
            &b.class.representative.image,
        ))
    });

    // identities and composition
    let mut identity = vec![usize::MAX; objects.len()];
    for (mi, m) in morphisms.iter().enumerate() {
        if m.source == m.target && m.class.is_identity_class() {
            identity[m.source] = mi;
        }
    }
    if identity.iter().any(|&i| i == usize::MAX) {
        return Err(Error::Internal("object without identity morphism".into()));
    }
    let mut compose = HashMap::new();
    for (m1i, m1) in morphisms.iter().enumerate() {
        for (m2i, m2) in morphisms.iter().enumerate() {
            if m1.target != m2.source {
                continue;
            }
            let composite = compose_hom_classes(&m1.class, &m2.class)?;
            let found = morphisms.iter().position(|m| {
                m.source == m1.source && m.target == m2.target && m.class == composite
            });
            match found {
                Some(ci) => {
                    compose.insert((m2i, m1i), ci);
                }
                None => {
                    return Err(Error::Internal("composition escapes the category".into()));
                }
            }
        }
    }

    Ok(Phi0Category {
        keys,
        rep_groups,
        levels,
        component_of,
        objects,
        object_index,
        morphisms,
        identity,
        compose,
        subgroup_levels,
        key_of_subgroup,
    })
}

/// The canonical functor X → Φ₀ on points: x ↦ (iso-class of iso(x),
/// component of (x, stored identification as level)).
pub fn functor_to_phi0(
    action: &SimplicialAction,
    phi0: &Phi0Category,
) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(action.point_count());
    for x in action.points() {
        let iso = action.isotropy(x)?;
        let ki = *phi0
            .key_of_subgroup
            .get(&iso.elements)
            .ok_or_else(|| Error::Internal("isotropy subgroup missing from Φ₀ index".into()))?;
        let image = phi0.subgroup_levels[&iso.elements].clone();
        let obj = phi0
            .object_of_level(ki, x, &image)
            .ok_or_else(|| Error::Internal("identity level is not an object".into()))?;
        out.push(obj);
    }
    Ok(out)
}

/// Convenience: X(H) for a designated subgroup of the acting group, taking H
/// abstractly.
pub fn level_groupoid_of_subgroup(
    action: &SimplicialAction,
    subgroup: &Subgroup,
) -> Result<(Group, LevelGroupoid)> {
    let (h, _) = subgroup.as_group()?;
    let level = LevelGroupoid::build(action, &h)?;
    Ok((h, level))
}
