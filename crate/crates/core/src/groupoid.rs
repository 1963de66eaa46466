//! A shared carrier for small finite groupoids: action groupoids,
//! hom-groupoids and fixed-point groupoids with level structure.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{self, Elem, FiniteGroup, Group};

/// Union-find over 0..n with deterministic component numbering.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so numbering stays canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Component id per element, numbered 0.. in order of least member.
    pub fn components(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut id_of_root: HashMap<usize, usize> = HashMap::new();
        let mut out = vec![0usize; n];
        for x in 0..n {
            let r = self.find(x);
            let next = id_of_root.len();
            out[x] = *id_of_root.entry(r).or_insert(next);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub inverse: usize,
}

#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    /// compose[(f, g)] = f ∘ g, defined exactly when g.target == f.source
    pub compose: HashMap<(usize, usize), usize>,
    /// symmetric topological glue on objects, stored with lesser index first
    pub adjacency: Vec<(usize, usize)>,
}

impl FiniteGroupoid {
    /// The action groupoid of `group` on objects 0..labels.len() via `act`.
    /// Morphism x·|G| + g is (g, x): x → g·x.
    pub fn action_groupoid(
        labels: Vec<String>,
        group: &Group,
        act: impl Fn(Elem, usize) -> usize,
    ) -> FiniteGroupoid {
        let n = labels.len();
        let ng = group.order();
        let mut morphisms = Vec::with_capacity(n * ng);
        for x in 0..n {
            for g in 0..ng {
                let target = act(g, x);
                morphisms.push(Morphism {
                    source: x,
                    target,
                    inverse: target * ng + group.inv(g),
                });
            }
        }
        let identities = (0..n).map(|x| x * ng).collect();
        let mut compose = HashMap::new();
        for x in 0..n {
            for g1 in 0..ng {
                let y = act(g1, x);
                for g2 in 0..ng {
                    compose.insert((y * ng + g2, x * ng + g1), x * ng + group.mul(g2, g1));
                }
            }
        }
        FiniteGroupoid {
            objects: labels,
            morphisms,
            identities,
            compose,
            adjacency: Vec::new(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn with_adjacency(mut self, mut pairs: Vec<(usize, usize)>) -> FiniteGroupoid {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        self.adjacency = pairs;
        self
    }

    /// Exhaustive groupoid-axiom check: identities, inverses, composition
    /// defined exactly on matching pairs, associativity.
    pub fn check_axioms(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(format!("groupoid axioms: {msg}")));
        if self.identities.len() != self.objects.len() {
            return fail("identity count".into());
        }
        for (x, &i) in self.identities.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.source != x || m.target != x {
                return fail(format!("identity of {x} has wrong endpoints"));
            }
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            let mi = &self.morphisms[m.inverse];
            if mi.source != m.target || mi.target != m.source {
                return fail(format!("inverse of morphism {i} has wrong endpoints"));
            }
            if self.compose.get(&(m.inverse, i)) != Some(&self.identities[m.source]) {
                return fail(format!("inv ∘ m != id for morphism {i}"));
            }
            if self.compose.get(&(i, m.inverse)) != Some(&self.identities[m.target]) {
                return fail(format!("m ∘ inv != id for morphism {i}"));
            }
            if self.compose.get(&(i, self.identities[m.source])) != Some(&i) {
                return fail(format!("m ∘ id != m for morphism {i}"));
            }
            if self.compose.get(&(self.identities[m.target], i)) != Some(&i) {
                return fail(format!("id ∘ m != m for morphism {i}"));
            }
        }
        for ((f, g), &h) in &self.compose {
            let (mf, mg, mh) = (&self.morphisms[*f], &self.morphisms[*g], &self.morphisms[h]);
            if mg.target != mf.source {
                return fail("composition defined on mismatched pair".into());
            }
            if mh.source != mg.source || mh.target != mf.target {
                return fail("composite has wrong endpoints".into());
            }
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            for (j, mj) in self.morphisms.iter().enumerate() {
                if mj.target == m.source && !self.compose.contains_key(&(i, j)) {
                    return fail(format!("composition missing for ({i},{j})"));
                }
            }
        }
        // associativity over composable triples
        for ((f, g), &fg) in &self.compose {
            for (h, mh) in self.morphisms.iter().enumerate() {
                if mh.target == self.morphisms[*g].source {
                    let gh = self.compose[&(*g, h)];
                    if self.compose[&(fg, h)] != self.compose[&(*f, gh)] {
                        return fail("associativity".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Components under morphisms together with the adjacency glue.
    pub fn components(&self) -> Vec<usize> {
        let mut ds = DisjointSets::new(self.objects.len());
        for m in &self.morphisms {
            ds.union(m.source, m.target);
        }
        for &(a, b) in &self.adjacency {
            ds.union(a, b);
        }
        ds.components()
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    /// The automorphism group of an object, as an abstract group.
    pub fn vertex_group(&self, object: usize) -> Result<Group> {
        let autos: Vec<usize> = (0..self.morphisms.len())
            .filter(|&i| {
                self.morphisms[i].source == object && self.morphisms[i].target == object
            })
            .collect();
        let pos: HashMap<usize, usize> = autos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        // re-order so the identity is index 0
        let id = self.identities[object];
        let mut order: Vec<usize> = autos.clone();
        order.retain(|&m| m != id);
        order.insert(0, id);
        let pos2: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let _ = pos;
        let k = order.len();
        let mut mul = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                mul[i][j] = pos2[&self.compose[&(order[i], order[j])]];
            }
        }
        FiniteGroup::from_mul_table(mul)
    }

    /// Groupoid isomorphism test via the structure theorem: match connected
    /// components by object count and vertex-group isomorphism class.
    /// Adjacency is ignored here; it is glue, not groupoid structure.
    pub fn is_isomorphic_to(&self, other: &FiniteGroupoid) -> Result<bool> {
        let sig_a = self.component_signature()?;
        let sig_b = other.component_signature()?;
        Ok(sig_a == sig_b)
    }

    fn component_signature(&self) -> Result<Vec<(usize, usize, group::IsoClassKey)>> {
        let mut ds = DisjointSets::new(self.objects.len());
        for m in &self.morphisms {
            ds.union(m.source, m.target);
        }
        let comp = ds.components();
        let ncomp = comp.iter().max().map_or(0, |m| m + 1);
        let mut sig = Vec::new();
        for c in 0..ncomp {
            let members: Vec<usize> = (0..self.objects.len()).filter(|&x| comp[x] == c).collect();
            let vg = self.vertex_group(members[0])?;
            // morphism count pins down that the component really is
            // transitive-with-uniform-isotropy
            let mor = self
                .morphisms
                .iter()
                .filter(|m| comp[m.source] == c)
                .count();
            if mor != members.len() * members.len() * vg.order() {
                return Err(Error::Internal(
                    "component is not a connected groupoid of uniform isotropy".into(),
                ));
            }
            sig.push((members.len(), mor, group::iso_class_key(&vg)?));
        }
        sig.sort();
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{self, FiniteGroup};

    fn cyclic(n: usize) -> Group {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_mul_table(mul).unwrap()
    }

    #[test]
    fn disjoint_sets_components_are_canonical() {
        let mut ds = DisjointSets::new(5);
        ds.union(3, 1);
        ds.union(4, 3);
        assert_eq!(ds.components(), vec![0, 1, 2, 1, 1]);
    }

    #[test]
    fn free_action_has_trivial_vertex_groups() {
        let g = cyclic(3);
        let labels = (0..3).map(|i| format!("x{i}")).collect();
        let gpd = FiniteGroupoid::action_groupoid(labels, &g, |e, o| (o + e) % 3);
        gpd.check_axioms().unwrap();
        assert_eq!(gpd.object_count(), 3);
        assert_eq!(gpd.morphism_count(), 9);
        assert_eq!(gpd.component_count(), 1);
        assert_eq!(gpd.vertex_group(0).unwrap().order(), 1);
    }

    #[test]
    fn trivial_action_recovers_the_group_at_each_vertex() {
        let g = cyclic(4);
        let gpd = FiniteGroupoid::action_groupoid(vec!["pt".into()], &g, |_, o| o);
        gpd.check_axioms().unwrap();
        let vg = gpd.vertex_group(0).unwrap();
        assert_eq!(vg.order(), 4);
        assert!(group::find_isomorphism(&vg, &cyclic(4)).is_some());
    }

    #[test]
    fn isomorphism_sees_component_signatures() {
        let g2 = cyclic(2);
        let two_fixed_points =
            FiniteGroupoid::action_groupoid(vec!["a".into(), "b".into()], &g2, |_, o| o);
        let swap = FiniteGroupoid::action_groupoid(
            vec!["a".into(), "b".into()],
            &g2,
            |e, o| if e == 0 { o } else { 1 - o },
        );
        let two_fixed_again =
            FiniteGroupoid::action_groupoid(vec!["c".into(), "d".into()], &g2, |_, o| o);
        assert!(two_fixed_points.is_isomorphic_to(&two_fixed_again).unwrap());
        assert!(!two_fixed_points.is_isomorphic_to(&swap).unwrap());
        // same object and morphism counts, still distinguished
        assert_eq!(two_fixed_points.morphism_count(), swap.morphism_count());
    }

    #[test]
    fn vertex_groups_within_a_component_agree() {
        let g = group::generate_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
        // conjugation action on the four rotations fixes each rotation
        // setwise orbitwise; use the translation action on cosets of a
        // reflection subgroup instead
        let sub = crate::group::Subgroup::closure(g.clone(), &[4]).unwrap();
        let cosets = sub.left_cosets();
        let labels = (0..cosets.len()).map(|i| format!("c{i}")).collect();
        let gpd = FiniteGroupoid::action_groupoid(labels, &g, |e, o| {
            let rep = cosets[o][0];
            let image = g.mul(e, rep);
            cosets.iter().position(|c| c.contains(&image)).unwrap()
        });
        gpd.check_axioms().unwrap();
        assert_eq!(gpd.component_count(), 1);
        for o in 0..gpd.object_count() {
            assert_eq!(gpd.vertex_group(o).unwrap().order(), sub.elements.len());
        }
    }
}
