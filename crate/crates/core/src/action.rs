//! Simplicial group actions: regularization, isotropy, fixed subcomplexes,
//! orbits, quotients and products.
//!
//! After regularization, "points" are the simplices of the working complex
//! (their barycenters); every point of the geometric realization has the same
//! isotropy as the barycenter of its carrier simplex.

use std::collections::{BTreeSet, HashMap};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::group::{self, Elem, Group, IsoClassKey, Subgroup};
use crate::groupoid::{DisjointSets, FiniteGroupoid};

/// A simplex of the working (regularized) complex, standing for its barycenter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub usize);

#[derive(Debug, Clone)]
pub struct SimplicialAction {
    group: Group,
    complex: SimplicialComplex,
    /// per group element, a permutation of vertices
    vertex_maps: Vec<Vec<usize>>,
    /// derived: per group element, the induced permutation of simplices
    simplex_maps: Vec<Vec<usize>>,
    regular: bool,
    subdivision_depth: usize,
}

impl SimplicialAction {
    pub fn new(
        group: Group,
        complex: SimplicialComplex,
        vertex_maps: Vec<Vec<usize>>,
    ) -> Result<SimplicialAction> {
        let n = group.order();
        let nv = complex.vertex_count();
        if vertex_maps.len() != n {
            return Err(Error::NotAnAction);
        }
        for (i, p) in vertex_maps.iter().enumerate() {
            let mut seen = vec![false; nv];
            if p.len() != nv {
                return Err(Error::BadPermutation { index: i, degree: nv });
            }
            for &x in p {
                if x >= nv || seen[x] {
                    return Err(Error::BadPermutation { index: i, degree: nv });
                }
                seen[x] = true;
            }
        }
        if vertex_maps[0] != (0..nv).collect::<Vec<_>>() {
            return Err(Error::NotAnAction);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = group.mul(a, b);
                for v in 0..nv {
                    if vertex_maps[ab][v] != vertex_maps[a][vertex_maps[b][v]] {
                        return Err(Error::NotAnAction);
                    }
                }
            }
        }
        let mut simplex_maps = Vec::with_capacity(n);
        for (gi, vm) in vertex_maps.iter().enumerate() {
            let mut sm = Vec::with_capacity(complex.simplex_count());
            for s in complex.simplices() {
                let mut image: Vec<usize> = s.iter().map(|&v| vm[v]).collect();
                image.sort_unstable();
                match complex.index_of(&image) {
                    Some(j) => sm.push(j),
                    None => {
                        return Err(Error::NotSimplicial {
                            index: gi,
                            simplex: s.clone(),
                        })
                    }
                }
            }
            simplex_maps.push(sm);
        }
        let mut action = SimplicialAction {
            group,
            complex,
            vertex_maps,
            simplex_maps,
            regular: false,
            subdivision_depth: 0,
        };
        action.regular = action.compute_regular();
        Ok(action)
    }

    /// Setwise stabilization implies pointwise fixing, for every element and
    /// simplex.
    fn compute_regular(&self) -> bool {
        for g in 1..self.group.order() {
            for s in 0..self.complex.simplex_count() {
                if self.simplex_maps[g][s] == s && !self.fixes_pointwise(g, s) {
                    return false;
                }
            }
        }
        true
    }

    fn fixes_pointwise(&self, g: Elem, s: usize) -> bool {
        self.complex
            .simplex(s)
            .iter()
            .all(|&v| self.vertex_maps[g][v] == v)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn subdivision_depth(&self) -> usize {
        self.subdivision_depth
    }

    pub fn point_count(&self) -> usize {
        self.complex.simplex_count()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        (0..self.complex.simplex_count()).map(Point)
    }

    pub fn apply(&self, g: Elem, x: Point) -> Point {
        Point(self.simplex_maps[g][x.0])
    }

    pub fn vertex_map(&self, g: Elem) -> &[usize] {
        &self.vertex_maps[g]
    }

    /// Transport across one barycentric subdivision: the simplex permutations
    /// become the vertex permutations downstairs.
    pub fn subdivided(&self) -> SimplicialAction {
        let complex = self.complex.barycentric_subdivision();
        let vertex_maps = self.simplex_maps.clone();
        let mut action = SimplicialAction::new(self.group.clone(), complex, vertex_maps)
            .expect("subdivision transport preserves the action");
        action.subdivision_depth = self.subdivision_depth + 1;
        action
    }

    /// At most two barycentric subdivisions; idempotent on regular input.
    pub fn regularize(&self) -> Result<SimplicialAction> {
        let mut current = self.clone();
        for _ in 0..2 {
            if current.regular {
                return Ok(current);
            }
            current = current.subdivided();
        }
        if current.regular {
            Ok(current)
        } else {
            Err(Error::RegularizationFailed(current.subdivision_depth))
        }
    }

    /// Elements fixing every vertex of the carrier simplex; equals the
    /// setwise stabilizer by regularity.
    pub fn isotropy(&self, x: Point) -> Result<Subgroup> {
        if !self.regular {
            return Err(Error::IrregularAction);
        }
        let elements: Vec<Elem> = (0..self.group.order())
            .filter(|&g| self.fixes_pointwise(g, x.0))
            .collect();
        Subgroup::new(self.group.clone(), elements)
    }

    /// Points fixed by every element of H (H ⊆ iso(x)); closed under faces.
    pub fn fixed_points(&self, subgroup: &Subgroup) -> Result<Vec<Point>> {
        if !self.regular {
            return Err(Error::IrregularAction);
        }
        if *subgroup.parent != *self.group {
            return Err(Error::GroupMismatch);
        }
        Ok((0..self.complex.simplex_count())
            .filter(|&s| subgroup.elements.iter().all(|&g| self.fixes_pointwise(g, s)))
            .map(Point)
            .collect())
    }

    pub fn orbit(&self, x: Point) -> Vec<Point> {
        let set: BTreeSet<usize> = (0..self.group.order())
            .map(|g| self.simplex_maps[g][x.0])
            .collect();
        set.into_iter().map(Point).collect()
    }

    /// The connected action groupoid on the orbit of x.
    pub fn orbit_groupoid(&self, x: Point) -> Result<FiniteGroupoid> {
        if !self.regular {
            return Err(Error::IrregularAction);
        }
        let orbit = self.orbit(x);
        let pos: HashMap<usize, usize> =
            orbit.iter().enumerate().map(|(i, p)| (p.0, i)).collect();
        let labels = orbit.iter().map(|p| format!("x{}", p.0)).collect();
        Ok(FiniteGroupoid::action_groupoid(labels, &self.group, |g, i| {
            pos[&self.simplex_maps[g][orbit[i].0]]
        }))
    }

    /// Orbit classes of points with descended face adjacency and per-class
    /// isotropy invariants.
    pub fn quotient(&self) -> Result<QuotientSpace> {
        if !self.regular {
            return Err(Error::IrregularAction);
        }
        let n = self.complex.simplex_count();
        let mut ds = DisjointSets::new(n);
        for g in 1..self.group.order() {
            for s in 0..n {
                ds.union(s, self.simplex_maps[g][s]);
            }
        }
        let class_of = ds.components();
        let count = class_of.iter().max().map_or(0, |m| m + 1);
        let mut classes: Vec<Vec<Point>> = vec![Vec::new(); count];
        for s in 0..n {
            classes[class_of[s]].push(Point(s));
        }
        let mut adjacency: BTreeSet<(usize, usize)> = BTreeSet::new();
        for s in 0..n {
            for f in self.complex.proper_faces(s) {
                let (a, b) = (class_of[s], class_of[f]);
                if a != b {
                    adjacency.insert((a.min(b), a.max(b)));
                }
            }
        }
        let mut key_cache: HashMap<Vec<Elem>, IsoClassKey> = HashMap::new();
        let mut iso_keys = Vec::with_capacity(count);
        let mut conj_reps = Vec::with_capacity(count);
        for class in &classes {
            let iso = self.isotropy(class[0])?;
            let key = match key_cache.get(&iso.elements) {
                Some(k) => k.clone(),
                None => {
                    let (g, _) = iso.as_group()?;
                    let k = group::iso_class_key(&g)?;
                    key_cache.insert(iso.elements.clone(), k.clone());
                    k
                }
            };
            iso_keys.push(key);
            // canonical conjugacy representative: least conjugate element list
            let rep = (0..self.group.order())
                .map(|g| iso.conjugate_by(g).elements)
                .min()
                .unwrap();
            conj_reps.push(rep);
        }
        Ok(QuotientSpace {
            classes,
            class_of,
            adjacency: adjacency.into_iter().collect(),
            iso_keys,
            conj_reps,
        })
    }

    /// Every group element maps each simplex order-preservingly (with respect
    /// to the canonical vertex order) onto its image. Holds for any action
    /// transported through a barycentric subdivision, where the vertex order
    /// is graded by dimension.
    pub fn is_order_compatible(&self) -> bool {
        for g in 1..self.group.order() {
            for s in self.complex.simplices() {
                for w in s.windows(2) {
                    if self.vertex_maps[g][w[0]] >= self.vertex_maps[g][w[1]] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// π₀ of the transformation groupoid: components of the complex acted on
    /// by the component quotient of the group. Verified against the
    /// componentwise quotient of the action groupoid.
    pub fn pi0_transformation_groupoid(&self) -> Result<FiniteGroupoid> {
        let (quotient_group, projection) = group::group_pi0(&self.group)?;
        let comp = self.complex.connected_components();
        let ncomp = comp.iter().max().map_or(0, |m| m + 1);
        // the induced component map must be constant on each group component
        let mut comp_map: Vec<Vec<usize>> = vec![vec![usize::MAX; ncomp]; quotient_group.order()];
        for g in 0..self.group.order() {
            let q = projection.apply(g);
            for s in 0..self.complex.simplex_count() {
                let (c, gc) = (comp[s], comp[self.simplex_maps[g][s]]);
                if comp_map[q][c] == usize::MAX {
                    comp_map[q][c] = gc;
                } else if comp_map[q][c] != gc {
                    return Err(Error::Internal(
                        "component subgroup does not act trivially on components".into(),
                    ));
                }
            }
        }
        let labels = (0..ncomp).map(|c| format!("comp{c}")).collect();
        Ok(FiniteGroupoid::action_groupoid(
            labels,
            &quotient_group,
            |q, c| comp_map[q][c],
        ))
    }
}

/// Staircase-triangulated product with the product group acting
/// coordinatewise. Factors are subdivided first when needed to make their
/// actions order-compatible, so the product action is simplicial.
pub fn product_action(a: &SimplicialAction, b: &SimplicialAction) -> Result<SimplicialAction> {
    if !a.regular || !b.regular {
        return Err(Error::IrregularAction);
    }
    let mut fa = a.clone();
    let mut fb = b.clone();
    if !fa.is_order_compatible() {
        fa = fa.subdivided();
    }
    if !fb.is_order_compatible() {
        fb = fb.subdivided();
    }
    debug_assert!(fa.is_order_compatible() && fb.is_order_compatible());
    let group = group::direct_product(&fa.group, &fb.group)?;
    let complex = fa.complex.staircase_product(&fb.complex);
    let (nvb, nb) = (fb.complex.vertex_count(), fb.group.order());
    let mut vertex_maps = Vec::with_capacity(group.order());
    for ga in 0..fa.group.order() {
        for gb in 0..nb {
            let mut vm = Vec::with_capacity(complex.vertex_count());
            for u in 0..fa.complex.vertex_count() {
                for v in 0..nvb {
                    vm.push(fa.vertex_maps[ga][u] * nvb + fb.vertex_maps[gb][v]);
                }
            }
            vertex_maps.push(vm);
        }
    }
    let mut action = SimplicialAction::new(group, complex, vertex_maps)?;
    action.subdivision_depth = fa.subdivision_depth.max(fb.subdivision_depth);
    Ok(action)
}

/// The coarse quotient: orbit classes with descended adjacency.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    pub classes: Vec<Vec<Point>>,
    pub class_of: Vec<usize>,
    /// descended face incidence between distinct classes, lesser index first
    pub adjacency: Vec<(usize, usize)>,
    pub iso_keys: Vec<IsoClassKey>,
    /// canonical subgroup-conjugacy representative per class
    pub conj_reps: Vec<Vec<Elem>>,
}

impl QuotientSpace {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}
