//! The orbit category of a finite group, the fixed-point diagram of an
//! action, and the comparison functor κ from the subgroup-indexed database
//! category **Φ**₀ to Φ₀.

use std::collections::{HashMap, HashSet};

use crate::action::{Point, SimplicialAction};
use crate::error::{Error, Result};
use crate::group::{self, Elem, Group, GroupHom, HomClass, Subgroup, SubgroupLattice};
use crate::level::Phi0Category;

/// An equivariant map G/H₀ → G/H₁. The witness g satisfies g⁻¹H₀g ⊆ H₁ and
/// induces xH₀ ↦ xgH₁; the induced map is independent of the choice of g
/// within its H₁-coset.
#[derive(Debug, Clone)]
pub struct OrbitMorphism {
    pub source: usize,
    pub target: usize,
    pub witness: Elem,
    /// coset index map G/H₀ → G/H₁ in `left_cosets` order
    pub coset_map: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct OrbitCategory {
    pub lattice: SubgroupLattice,
    /// left cosets per subgroup, `left_cosets` order
    pub cosets: Vec<Vec<Vec<Elem>>>,
    pub morphisms: Vec<OrbitMorphism>,
    /// hom_sets[h0][h1]: morphism ids H₀ → H₁
    pub hom_sets: Vec<Vec<Vec<usize>>>,
    pub identity: Vec<usize>,
    /// compose[(f, g)] = f ∘ g
    pub compose: HashMap<(usize, usize), usize>,
}

impl OrbitCategory {
    pub fn subgroup_count(&self) -> usize {
        self.lattice.subgroups.len()
    }
}

pub fn orbit_category(g: &Group) -> Result<OrbitCategory> {
    let lattice = group::subgroups(g);
    let n = lattice.subgroups.len();
    let cosets: Vec<Vec<Vec<Elem>>> = lattice.subgroups.iter().map(|s| s.left_cosets()).collect();
    // coset index of each group element, per subgroup
    let coset_of: Vec<Vec<usize>> = cosets
        .iter()
        .map(|cs| {
            let mut of = vec![0usize; g.order()];
            for (ci, coset) in cs.iter().enumerate() {
                for &x in coset {
                    of[x] = ci;
                }
            }
            of
        })
        .collect();

    let mut morphisms: Vec<OrbitMorphism> = Vec::new();
    let mut hom_sets = vec![vec![Vec::new(); n]; n];
    for h0 in 0..n {
        for h1 in 0..n {
            // construction one: H0-fixed cosets of G/H1
            let mut fixed: Vec<usize> = Vec::new();
            for (ci, coset) in cosets[h1].iter().enumerate() {
                let rep = coset[0];
                if lattice.subgroups[h0]
                    .elements
                    .iter()
                    .all(|&h| coset_of[h1][g.mul(h, rep)] == ci)
                {
                    fixed.push(ci);
                }
            }
            // construction two: classes H1·t of {t : tH0t⁻¹ ⊆ H1}; the two
            // constructions must correspond under t ↦ t⁻¹
            let mut transporter_classes: HashSet<Vec<Elem>> = HashSet::new();
            let mut inverted_cosets: HashSet<usize> = HashSet::new();
            for t in 0..g.order() {
                let conjugated: Vec<Elem> = lattice.subgroups[h0]
                    .elements
                    .iter()
                    .map(|&h| g.conjugate(t, h))
                    .collect();
                if conjugated
                    .iter()
                    .all(|&x| lattice.subgroups[h1].contains(x))
                {
                    let mut class: Vec<Elem> = lattice.subgroups[h1]
                        .elements
                        .iter()
                        .map(|&h| g.mul(h, t))
                        .collect();
                    class.sort_unstable();
                    transporter_classes.insert(class);
                    inverted_cosets.insert(coset_of[h1][g.inv(t)]);
                }
            }
            let fixed_set: HashSet<usize> = fixed.iter().copied().collect();
            if transporter_classes.len() != fixed.len() || inverted_cosets != fixed_set {
                return Err(Error::Internal(
                    "orbit category constructions disagree".into(),
                ));
            }
            for ci in fixed {
                let witness = cosets[h1][ci][0];
                let coset_map = cosets[h0]
                    .iter()
                    .map(|c0| coset_of[h1][g.mul(c0[0], witness)])
                    .collect();
                hom_sets[h0][h1].push(morphisms.len());
                morphisms.push(OrbitMorphism {
                    source: h0,
                    target: h1,
                    witness,
                    coset_map,
                });
            }
        }
    }

    let mut identity = vec![usize::MAX; n];
    for (mi, m) in morphisms.iter().enumerate() {
        if m.source == m.target && m.coset_map.iter().enumerate().all(|(i, &j)| i == j) {
            identity[m.source] = mi;
        }
    }
    if identity.iter().any(|&i| i == usize::MAX) {
        return Err(Error::Internal("orbit category object lacks identity".into()));
    }

    let mut compose = HashMap::new();
    for (m1i, m1) in morphisms.iter().enumerate() {
        for (m2i, m2) in morphisms.iter().enumerate() {
            if m1.target != m2.source {
                continue;
            }
            let map: Vec<usize> = m1.coset_map.iter().map(|&c| m2.coset_map[c]).collect();
            let found = hom_sets[m1.source][m2.target]
                .iter()
                .copied()
                .find(|&mi| morphisms[mi].coset_map == map)
                .ok_or_else(|| Error::Internal("orbit composition escapes".into()))?;
            compose.insert((m2i, m1i), found);
        }
    }

    Ok(OrbitCategory {
        lattice,
        cosets,
        morphisms,
        hom_sets,
        identity,
        compose,
    })
}

/// Fixed sets X^H with their components, and the contravariant component maps
/// induced by orbit morphisms: for m: H₀ → H₁ with witness g, the map
/// X^{H₁} → X^{H₀} is x ↦ g·x (pointwise independent of the witness).
#[derive(Debug, Clone)]
pub struct FixedPointData {
    pub members: Vec<Point>,
    pub component_of: Vec<usize>,
    pub component_count: usize,
}

impl FixedPointData {
    pub fn component_of_point(&self, x: Point) -> Option<usize> {
        let pos = self.members.binary_search_by(|m| m.0.cmp(&x.0)).ok()?;
        Some(self.component_of[pos])
    }
}

#[derive(Debug, Clone)]
pub struct FixedPointDiagram {
    pub per_subgroup: Vec<FixedPointData>,
    /// per orbit morphism m: components(X^{target}) → components(X^{source})
    pub component_maps: Vec<Vec<usize>>,
}

pub fn fixed_point_diagram(
    action: &SimplicialAction,
    cat: &OrbitCategory,
) -> Result<FixedPointDiagram> {
    let mut per_subgroup = Vec::with_capacity(cat.subgroup_count());
    for sub in &cat.lattice.subgroups {
        let members = action.fixed_points(sub)?;
        let member_ids: Vec<usize> = members.iter().map(|p| p.0).collect();
        let (component_of, component_count) = action.complex().subset_components(&member_ids);
        per_subgroup.push(FixedPointData {
            members,
            component_of,
            component_count,
        });
    }
    let mut component_maps = Vec::with_capacity(cat.morphisms.len());
    for m in &cat.morphisms {
        let src = &per_subgroup[m.source];
        let tgt = &per_subgroup[m.target];
        let mut map: Vec<Option<usize>> = vec![None; tgt.component_count];
        for (pos, &x) in tgt.members.iter().enumerate() {
            let image = action.apply(m.witness, x);
            let c0 = src
                .component_of_point(image)
                .ok_or_else(|| Error::Internal("induced map leaves the fixed set".into()))?;
            let c1 = tgt.component_of[pos];
            match map[c1] {
                None => map[c1] = Some(c0),
                Some(prev) if prev != c0 => {
                    return Err(Error::Internal(
                        "induced map is not constant on components".into(),
                    ))
                }
                _ => {}
            }
        }
        component_maps.push(map.into_iter().map(|c| c.expect("component hit")).collect());
    }
    Ok(FixedPointDiagram {
        per_subgroup,
        component_maps,
    })
}

/// **Φ**₀: objects are pairs (subgroup, component of X^H); a morphism over an
/// orbit morphism m: H₀ → H₁ runs (H₀, c₀) → (H₁, c₁) when the induced map
/// sends c₁ to c₀.
#[derive(Debug, Clone)]
pub struct BoldObject {
    pub subgroup: usize,
    pub component: usize,
}

#[derive(Debug, Clone)]
pub struct BoldMorphism {
    pub source: usize,
    pub target: usize,
    pub orbit_morphism: usize,
}

#[derive(Debug, Clone)]
pub struct BoldPhi0 {
    pub objects: Vec<BoldObject>,
    object_index: HashMap<(usize, usize), usize>,
    pub morphisms: Vec<BoldMorphism>,
    pub identity: Vec<usize>,
    pub compose: HashMap<(usize, usize), usize>,
}

impl BoldPhi0 {
    pub fn object_id(&self, subgroup: usize, component: usize) -> Option<usize> {
        self.object_index.get(&(subgroup, component)).copied()
    }

    pub fn morphisms_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].source == source && self.morphisms[m].target == target)
            .collect()
    }
}

pub fn bold_phi0(cat: &OrbitCategory, diagram: &FixedPointDiagram) -> Result<BoldPhi0> {
    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    for (h, data) in diagram.per_subgroup.iter().enumerate() {
        for c in 0..data.component_count {
            object_index.insert((h, c), objects.len());
            objects.push(BoldObject {
                subgroup: h,
                component: c,
            });
        }
    }
    let mut morphisms = Vec::new();
    let mut morphism_index = HashMap::new();
    for (mi, m) in cat.morphisms.iter().enumerate() {
        for (c1, &c0) in diagram.component_maps[mi].iter().enumerate() {
            let source = object_index[&(m.source, c0)];
            let target = object_index[&(m.target, c1)];
            morphism_index.insert((mi, c1), morphisms.len());
            morphisms.push(BoldMorphism {
                source,
                target,
                orbit_morphism: mi,
            });
        }
    }
    let mut identity = vec![usize::MAX; objects.len()];
    for (bi, b) in morphisms.iter().enumerate() {
        if b.source == b.target && b.orbit_morphism == cat.identity[objects[b.source].subgroup] {
            identity[b.source] = bi;
        }
    }
    if identity.iter().any(|&i| i == usize::MAX) {
        return Err(Error::Internal("bold object lacks identity".into()));
    }
    // induced point maps compose strictly, so the composite bold morphism
    // lives over the composite orbit morphism with the same target component
    let mut compose = HashMap::new();
    for (b1i, b1) in morphisms.iter().enumerate() {
        for (b2i, b2) in morphisms.iter().enumerate() {
            if b1.target != b2.source {
                continue;
            }
            let om = cat.compose[&(b2.orbit_morphism, b1.orbit_morphism)];
            let c2 = objects[b2.target].component;
            let ci = *morphism_index
                .get(&(om, c2))
                .ok_or_else(|| Error::Internal("bold composition escapes".into()))?;
            if morphisms[ci].source != b1.source {
                return Err(Error::Internal("bold composite has wrong source".into()));
            }
            compose.insert((b2i, b1i), ci);
        }
    }
    Ok(BoldPhi0 {
        objects,
        object_index,
        morphisms,
        identity,
        compose,
    })
}

/// Side-by-side account of κ: **Φ**₀ → Φ₀.
#[derive(Debug, Clone)]
pub struct CollapseEntry {
    pub source: usize,
    pub target: usize,
    pub upstream: usize,
    pub distinct_images: usize,
    pub downstream: usize,
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    /// bold object → Φ₀ object
    pub object_map: Vec<usize>,
    /// bold morphism → Φ₀ morphism
    pub morphism_map: Vec<usize>,
    pub object_surjective: bool,
    pub object_injective: bool,
    pub essentially_surjective: bool,
    pub functorial: bool,
    pub collapse: Vec<CollapseEntry>,
}

pub fn compare_phi0(
    action: &SimplicialAction,
    phi0: &Phi0Category,
    cat: &OrbitCategory,
    diagram: &FixedPointDiagram,
    bold: &BoldPhi0,
) -> Result<ComparisonReport> {
    let g = action.group();
    // κ on objects: (H, c) goes to (iso-class of H, component of (x, ρ_H))
    // for any x in c; constancy over c is verified
    let mut object_map = Vec::with_capacity(bold.objects.len());
    for obj in &bold.objects {
        let sub = &cat.lattice.subgroups[obj.subgroup];
        let ki = *phi0
            .key_of_subgroup
            .get(&sub.elements)
            .ok_or_else(|| Error::Internal("subgroup missing from Φ₀ index".into()))?;
        let image = phi0.subgroup_levels[&sub.elements].clone();
        let data = &diagram.per_subgroup[obj.subgroup];
        let mut target: Option<usize> = None;
        for (pos, &x) in data.members.iter().enumerate() {
            if data.component_of[pos] != obj.component {
                continue;
            }
            let o = phi0
                .object_of_level(ki, x, &image)
                .ok_or_else(|| Error::Internal("κ: level point missing".into()))?;
            match target {
                None => target = Some(o),
                Some(prev) if prev != o => {
                    return Err(Error::Internal("κ is not constant on the component".into()))
                }
                _ => {}
            }
        }
        object_map.push(target.ok_or_else(|| Error::Internal("empty bold component".into()))?);
    }

    // κ on morphisms: witness g gives α = ρ₁⁻¹ ∘ conj_{g⁻¹} ∘ ρ₀ up to
    // conjugation, hence a well-defined HomClass
    let mut morphism_map = Vec::with_capacity(bold.morphisms.len());
    for b in &bold.morphisms {
        let m = &cat.morphisms[b.orbit_morphism];
        let class = kappa_class(phi0, cat, g, m)?;
        let (src, tgt) = (object_map[b.source], object_map[b.target]);
        let found = (0..phi0.morphisms.len())
            .find(|&pi| {
                phi0.morphisms[pi].source == src
                    && phi0.morphisms[pi].target == tgt
                    && phi0.morphisms[pi].class == class
            })
            .ok_or_else(|| Error::Internal("κ image is not a Φ₀ morphism".into()))?;
        morphism_map.push(found);
    }

    // functoriality: identities and the full composition table
    let mut functorial = bold
        .identity
        .iter()
        .enumerate()
        .all(|(o, &bi)| morphism_map[bi] == phi0.identity[object_map[o]]);
    for ((b2, b1), &bc) in &bold.compose {
        let pc = phi0.compose[&(morphism_map[*b2], morphism_map[*b1])];
        if pc != morphism_map[bc] {
            functorial = false;
        }
    }

    let image: HashSet<usize> = object_map.iter().copied().collect();
    let object_surjective = image.len() == phi0.objects.len();
    let object_injective = image.len() == object_map.len();

    // essential surjectivity: close the image under isomorphisms of Φ₀
    let iso_pairs = phi0_isomorphism_pairs(phi0);
    let mut reachable = image.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in &iso_pairs {
            if reachable.contains(&a) && reachable.insert(b) {
                changed = true;
            }
            if reachable.contains(&b) && reachable.insert(a) {
                changed = true;
            }
        }
    }
    let essentially_surjective = reachable.len() == phi0.objects.len();

    let mut collapse = Vec::new();
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (bi, b) in bold.morphisms.iter().enumerate() {
        by_pair.entry((b.source, b.target)).or_default().push(bi);
    }
    let mut pairs: Vec<(usize, usize)> = by_pair.keys().copied().collect();
    pairs.sort_unstable();
    for (s, t) in pairs {
        let upstream_ids = &by_pair[&(s, t)];
        let distinct: HashSet<usize> = upstream_ids.iter().map(|&bi| morphism_map[bi]).collect();
        let downstream = phi0
            .morphisms_between(object_map[s], object_map[t])
            .len();
        collapse.push(CollapseEntry {
            source: s,
            target: t,
            upstream: upstream_ids.len(),
            distinct_images: distinct.len(),
            downstream,
        });
    }

    Ok(ComparisonReport {
        object_map,
        morphism_map,
        object_surjective,
        object_injective,
        essentially_surjective,
        functorial,
        collapse,
    })
}

fn kappa_class(
    phi0: &Phi0Category,
    cat: &OrbitCategory,
    g: &Group,
    m: &OrbitMorphism,
) -> Result<HomClass> {
    let sub0 = &cat.lattice.subgroups[m.source];
    let sub1 = &cat.lattice.subgroups[m.target];
    let k0 = phi0.key_of_subgroup[&sub0.elements];
    let k1 = phi0.key_of_subgroup[&sub1.elements];
    let rho0 = &phi0.subgroup_levels[&sub0.elements];
    let rho1 = &phi0.subgroup_levels[&sub1.elements];
    let mut into_rep1: HashMap<Elem, Elem> = HashMap::new();
    for (a, &v) in rho1.iter().enumerate() {
        into_rep1.insert(v, a);
    }
    let w_inv = g.inv(m.witness);
    let image: Vec<Elem> = rho0
        .iter()
        .map(|&s| {
            let t = g.conjugate(w_inv, s);
            into_rep1
                .get(&t)
                .copied()
                .ok_or_else(|| Error::Internal("conjugate escapes the target subgroup".into()))
        })
        .collect::<Result<_>>()?;
    let hom = GroupHom::new(
        phi0.rep_groups[k0].clone(),
        phi0.rep_groups[k1].clone(),
        image,
    )?;
    Ok(HomClass::of(&hom))
}

/// Pairs of Φ₀ objects linked by mutually inverse morphisms.
fn phi0_isomorphism_pairs(phi0: &Phi0Category) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (mi, m) in phi0.morphisms.iter().enumerate() {
        for (ni, n) in phi0.morphisms.iter().enumerate() {
            if m.source != n.target || m.target != n.source {
                continue;
            }
            let back_forth = phi0.compose.get(&(ni, mi));
            let forth_back = phi0.compose.get(&(mi, ni));
            if back_forth == Some(&phi0.identity[m.source])
                && forth_back == Some(&phi0.identity[n.source])
            {
                pairs.push((m.source, m.target));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Fixed sets directly from the lattice, for callers without a diagram.
pub fn fixed_set(action: &SimplicialAction, sub: &Subgroup) -> Result<Vec<Point>> {
    action.fixed_points(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, FiniteGroup};
    use crate::level::phi0_category;
    use crate::scenario;

    fn regular(reference: &str) -> SimplicialAction {
        scenario::build_action(&scenario::example(reference).unwrap())
            .unwrap()
            .regularize()
            .unwrap()
    }

    /// Independent hom-set oracle: |Hom(G/H₀, G/H₁)| = |{g : g⁻¹H₀g ⊆ H₁}| / |H₁|.
    fn transporter_count(g: &Group, h0: &Subgroup, h1: &Subgroup) -> usize {
        let raw = g
            .elements()
            .filter(|&t| {
                h0.elements
                    .iter()
                    .all(|&a| h1.contains(g.conjugate(g.inv(t), a)))
            })
            .count();
        raw / h1.elements.len()
    }

    fn check_hom_set_sizes(g: &Group) {
        let cat = orbit_category(g).unwrap();
        for (i0, h0) in cat.lattice.subgroups.iter().enumerate() {
            for (i1, h1) in cat.lattice.subgroups.iter().enumerate() {
                assert_eq!(
                    cat.hom_sets[i0][i1].len(),
                    transporter_count(g, h0, h1),
                    "hom set ({i0},{i1})"
                );
            }
        }
    }

    #[test]
    fn hom_set_sizes_match_transporter_oracle() {
        let mul = (0..6usize)
            .map(|a| (0..6).map(|b| (a + b) % 6).collect())
            .collect();
        check_hom_set_sizes(&FiniteGroup::from_mul_table(mul).unwrap());
        check_hom_set_sizes(&generate_group(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap());
        check_hom_set_sizes(&generate_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap());
    }

    #[test]
    fn abelian_hom_sets_are_cosets_or_empty() {
        let mul = (0..12usize)
            .map(|a| (0..12).map(|b| (a + b) % 12).collect())
            .collect();
        let g: Group = FiniteGroup::from_mul_table(mul).unwrap();
        let cat = orbit_category(&g).unwrap();
        for (i0, h0) in cat.lattice.subgroups.iter().enumerate() {
            for (i1, h1) in cat.lattice.subgroups.iter().enumerate() {
                let expected = if h0.is_subgroup_of(h1) {
                    g.order() / h1.elements.len()
                } else {
                    0
                };
                assert_eq!(cat.hom_sets[i0][i1].len(), expected);
            }
        }
    }

    #[test]
    fn category_laws_hold() {
        let g = generate_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
        let cat = orbit_category(&g).unwrap();
        for (s, &id) in cat.identity.iter().enumerate() {
            assert_eq!(cat.morphisms[id].source, s);
            assert_eq!(cat.morphisms[id].target, s);
        }
        for (mi, m) in cat.morphisms.iter().enumerate() {
            assert_eq!(cat.compose[&(cat.identity[m.target], mi)], mi);
            assert_eq!(cat.compose[&(mi, cat.identity[m.source])], mi);
            for (ni, n) in cat.morphisms.iter().enumerate() {
                if n.source != m.target {
                    continue;
                }
                let nm = cat.compose[&(ni, mi)];
                // composite coset map is the map composite
                let direct = &cat.morphisms[nm].coset_map;
                for (c, &mid) in m.coset_map.iter().enumerate() {
                    assert_eq!(direct[c], n.coset_map[mid]);
                }
            }
        }
    }

    #[test]
    fn fixed_sets_and_components_of_the_rotation_sphere() {
        let action = regular("rotation_sphere(5)");
        let cat = orbit_category(action.group()).unwrap();
        let diagram = fixed_point_diagram(&action, &cat).unwrap();
        let trivial = cat
            .lattice
            .subgroups
            .iter()
            .position(|s| s.elements.len() == 1)
            .unwrap();
        let whole = cat
            .lattice
            .subgroups
            .iter()
            .position(|s| s.elements.len() == 5)
            .unwrap();
        assert_eq!(
            diagram.per_subgroup[trivial].members.len(),
            action.point_count()
        );
        assert_eq!(diagram.per_subgroup[trivial].component_count, 1);
        // the rotation fixes exactly the two poles
        assert_eq!(diagram.per_subgroup[whole].members.len(), 2);
        assert_eq!(diagram.per_subgroup[whole].component_count, 2);
        // fixed_set agrees with a direct scan
        for (si, sub) in cat.lattice.subgroups.iter().enumerate() {
            let scan: Vec<Point> = action
                .points()
                .filter(|&x| sub.elements.iter().all(|&e| action.apply(e, x) == x))
                .collect();
            assert_eq!(fixed_set(&action, sub).unwrap(), scan);
            assert_eq!(diagram.per_subgroup[si].members, scan);
        }
    }

    #[test]
    fn bold_category_laws_hold() {
        let action = regular("dihedral_polygon(3)");
        let cat = orbit_category(action.group()).unwrap();
        let diagram = fixed_point_diagram(&action, &cat).unwrap();
        let bold = bold_phi0(&cat, &diagram).unwrap();
        for (o, &id) in bold.identity.iter().enumerate() {
            assert_eq!(bold.morphisms[id].source, o);
            assert_eq!(bold.morphisms[id].target, o);
        }
        for (mi, m) in bold.morphisms.iter().enumerate() {
            assert_eq!(bold.compose[&(bold.identity[m.target], mi)], mi);
            assert_eq!(bold.compose[&(mi, bold.identity[m.source])], mi);
            for (ni, n) in bold.morphisms.iter().enumerate() {
                if n.source != m.target {
                    continue;
                }
                let nm = bold.compose[&(ni, mi)];
                assert_eq!(bold.morphisms[nm].source, m.source);
                assert_eq!(bold.morphisms[nm].target, n.target);
                for (oi, o) in bold.morphisms.iter().enumerate() {
                    if o.source != n.target {
                        continue;
                    }
                    assert_eq!(
                        bold.compose[&(oi, bold.compose[&(ni, mi)])],
                        bold.compose[&(bold.compose[&(oi, ni)], mi)]
                    );
                }
            }
        }
    }

    #[test]
    fn kappa_is_bijective_on_the_rotation_sphere() {
        let action = regular("rotation_sphere(5)");
        let phi0 = phi0_category(&action).unwrap();
        let cat = orbit_category(action.group()).unwrap();
        let diagram = fixed_point_diagram(&action, &cat).unwrap();
        let bold = bold_phi0(&cat, &diagram).unwrap();
        let cmp = compare_phi0(&action, &phi0, &cat, &diagram, &bold).unwrap();
        assert!(cmp.functorial);
        assert!(cmp.object_surjective);
        assert!(cmp.object_injective);
        assert!(cmp.essentially_surjective);
        assert_eq!(bold.objects.len(), phi0.objects.len());
    }

    #[test]
    fn kappa_is_functorial_and_dense_on_the_triangle() {
        let action = regular("symmetric_triangle");
        let phi0 = phi0_category(&action).unwrap();
        let cat = orbit_category(action.group()).unwrap();
        let diagram = fixed_point_diagram(&action, &cat).unwrap();
        let bold = bold_phi0(&cat, &diagram).unwrap();
        let cmp = compare_phi0(&action, &phi0, &cat, &diagram, &bold).unwrap();
        assert!(cmp.functorial);
        assert!(cmp.essentially_surjective);
        // conjugate order-two subgroups collapse to one database object
        assert!(bold.objects.len() > phi0.objects.len());
        assert!(!cmp.object_injective);
        assert!(cmp.object_surjective);
    }
}
