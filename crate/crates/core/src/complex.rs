//! Finite abstract simplicial complexes.
//!
//! Simplices are sorted vertex lists, indexed by dimension then
//! lexicographically; the index order is the canonical order used everywhere
//! (points, barycentric vertices, staircase products).

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// per vertex, the simplices containing it
    vertex_stars: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &[usize] {
        &self.simplices[i]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.simplices[i].len() - 1
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex).copied()
    }

    /// Face-closure of the given facets.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let mut set: HashSet<Vec<usize>> = HashSet::new();
        for (fi, facet) in facets.iter().enumerate() {
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateVertex(fi));
                }
            }
            for &v in &sorted {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
            for sub in nonempty_subsets(&sorted) {
                set.insert(sub);
            }
        }
        let mut simplices: Vec<Vec<usize>> = set.into_iter().collect();
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut vertex_stars = vec![Vec::new(); vertex_count];
        for (i, s) in simplices.iter().enumerate() {
            for &v in s {
                vertex_stars[v].push(i);
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            simplices,
            index,
            vertex_stars,
        })
    }

    /// Indices of the proper faces of simplex i (all nonempty strict subsets).
    pub fn proper_faces(&self, i: usize) -> Vec<usize> {
        let s = &self.simplices[i];
        let mut out = Vec::new();
        for sub in nonempty_subsets(s) {
            if sub.len() < s.len() {
                out.push(self.index[&sub]);
            }
        }
        out.sort_unstable();
        out
    }

    /// Codimension-one faces; connectivity-equivalent to the full face
    /// relation and much smaller.
    pub fn boundary_faces(&self, i: usize) -> Vec<usize> {
        let s = &self.simplices[i];
        if s.len() == 1 {
            return Vec::new();
        }
        (0..s.len())
            .map(|k| {
                let mut f = s.clone();
                f.remove(k);
                self.index[&f]
            })
            .collect()
    }

    pub fn is_face(&self, face: usize, of: usize) -> bool {
        let (f, s) = (&self.simplices[face], &self.simplices[of]);
        f.iter().all(|v| s.binary_search(v).is_ok())
    }

    /// Cofaces: simplices containing simplex i as a proper face.
    pub fn cofaces(&self, i: usize) -> Vec<usize> {
        let s = &self.simplices[i];
        self.vertex_stars[s[0]]
            .iter()
            .copied()
            .filter(|&j| j != i && self.is_face(i, j))
            .collect()
    }

    /// Barycentric subdivision: vertices are the simplices of `self` (in index
    /// order, so graded by dimension), simplices are chains of proper faces.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let mut facets: Vec<Vec<usize>> = Vec::new();
        // maximal chains start at maximal simplices; generating all chains as
        // facets is simpler and face-closure dedupes
        let mut chains: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.simplices.len() {
            chains.push(vec![i]);
        }
        let mut cursor = 0;
        while cursor < chains.len() {
            let chain = chains[cursor].clone();
            let top = *chain.last().unwrap();
            for j in 0..self.simplices.len() {
                if self.simplices[j].len() > self.simplices[top].len() && self.is_face(top, j) {
                    let mut ext = chain.clone();
                    ext.push(j);
                    chains.push(ext);
                }
            }
            cursor += 1;
        }
        facets.extend(chains);
        SimplicialComplex::from_facets(self.simplices.len(), &facets)
            .expect("subdivision facets are valid")
    }

    /// Component id per simplex under face incidence, numbered by least
    /// simplex index.
    pub fn connected_components(&self) -> Vec<usize> {
        let mut ds = crate::groupoid::DisjointSets::new(self.simplices.len());
        for i in 0..self.simplices.len() {
            for f in self.boundary_faces(i) {
                ds.union(i, f);
            }
        }
        ds.components()
    }

    pub fn component_count(&self) -> usize {
        self.connected_components()
            .iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Components of a marked subset of simplices under face incidence
    /// restricted to the subset. Returns (component id per member, count),
    /// with members addressed by their position in `members`.
    pub fn subset_components(&self, members: &[usize]) -> (Vec<usize>, usize) {
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut ds = crate::groupoid::DisjointSets::new(members.len());
        for (mi, &s) in members.iter().enumerate() {
            for f in self.proper_faces(s) {
                if let Some(&fj) = pos.get(&f) {
                    ds.union(mi, fj);
                }
            }
        }
        let comp = ds.components();
        let count = comp.iter().max().map_or(0, |m| m + 1);
        (comp, count)
    }

    /// Staircase triangulation of the product: vertices are vertex pairs
    /// (u, v) ↦ u·|V_b| + v, simplices are chains in the coordinatewise order
    /// whose projections are simplices of the factors.
    pub fn staircase_product(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let nb = other.vertex_count;
        let mut facets: Vec<Vec<usize>> = Vec::new();
        let maximal_a = self.maximal_simplices();
        let maximal_b = other.maximal_simplices();
        for &sa in &maximal_a {
            for &sb in &maximal_b {
                let a = &self.simplices[sa];
                let b = &other.simplices[sb];
                // maximal monotone staircases through the |a| x |b| grid
                let mut stack = vec![(0usize, 0usize)];
                shuffle_paths(a, b, nb, &mut stack, &mut facets);
            }
        }
        SimplicialComplex::from_facets(self.vertex_count * nb, &facets)
            .expect("staircase facets are valid")
    }

    /// Simplices that are not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<usize> {
        let mut is_face_of_something = vec![false; self.simplices.len()];
        for i in 0..self.simplices.len() {
            for f in self.boundary_faces(i) {
                is_face_of_something[f] = true;
            }
        }
        (0..self.simplices.len())
            .filter(|&i| !is_face_of_something[i])
            .collect()
    }
}

fn shuffle_paths(
    a: &[usize],
    b: &[usize],
    nb: usize,
    path: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<usize>>,
) {
    let &(i, j) = path.last().unwrap();
    if i == a.len() - 1 && j == b.len() - 1 {
        out.push(path.iter().map(|&(x, y)| a[x] * nb + b[y]).collect());
        return;
    }
    if i + 1 < a.len() {
        path.push((i + 1, j));
        shuffle_paths(a, b, nb, path, out);
        path.pop();
    }
    if j + 1 < b.len() {
        path.push((i, j + 1));
        shuffle_paths(a, b, nb, path, out);
        path.pop();
    }
}

fn nonempty_subsets(s: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity((1 << s.len()) - 1);
    for mask in 1u32..(1 << s.len()) {
        let sub: Vec<usize> = (0..s.len())
            .filter(|&k| mask & (1 << k) != 0)
            .map(|k| s[k])
            .collect();
        out.push(sub);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn face_closure_counts() {
        let c = triangle_boundary();
        assert_eq!(c.simplex_count(), 6);
        let full = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(full.simplex_count(), 7);
        assert_eq!(full.maximal_simplices(), vec![6]);
    }

    #[test]
    fn indexing_is_dimension_then_lex() {
        let c = SimplicialComplex::from_facets(4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let dims: Vec<usize> = (0..c.simplex_count()).map(|i| c.dim(i)).collect();
        let mut sorted = dims.clone();
        sorted.sort_unstable();
        assert_eq!(dims, sorted);
        for w in c.simplices().windows(2) {
            assert!((w[0].len(), &w[0]) < (w[1].len(), &w[1]));
        }
    }

    #[test]
    fn out_of_range_and_duplicate_vertices_rejected() {
        assert!(matches!(
            SimplicialComplex::from_facets(2, &[vec![0, 2]]),
            Err(Error::VertexOutOfRange { vertex: 2, count: 2 })
        ));
        assert!(matches!(
            SimplicialComplex::from_facets(3, &[vec![1, 1]]),
            Err(Error::DuplicateVertex(0))
        ));
    }

    #[test]
    fn proper_faces_and_cofaces_are_adjoint() {
        let c = SimplicialComplex::from_facets(4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        for i in 0..c.simplex_count() {
            for f in c.proper_faces(i) {
                assert!(c.cofaces(f).contains(&i));
            }
            for cf in c.cofaces(i) {
                assert!(c.proper_faces(cf).contains(&i));
            }
        }
    }

    #[test]
    fn barycentric_subdivision_counts_flags() {
        // triangle boundary: 6 barycentric vertices, 12 simplices total
        let sd = triangle_boundary().barycentric_subdivision();
        assert_eq!(sd.vertex_count(), 6);
        assert_eq!(sd.simplex_count(), 12);
        // full triangle: 7 chains of length one, 12 of length two, 6 flags
        let sd2 = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]])
            .unwrap()
            .barycentric_subdivision();
        assert_eq!(sd2.vertex_count(), 7);
        assert_eq!(sd2.simplex_count(), 7 + 12 + 6);
    }

    #[test]
    fn components_split_disjoint_pieces() {
        let c = SimplicialComplex::from_facets(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(c.component_count(), 2);
        let comp = c.connected_components();
        assert_eq!(comp[c.index_of(&[0]).unwrap()], comp[c.index_of(&[0, 1]).unwrap()]);
        assert_ne!(comp[c.index_of(&[0]).unwrap()], comp[c.index_of(&[2]).unwrap()]);
    }

    #[test]
    fn staircase_square_is_two_triangles() {
        let edge = SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap();
        let square = edge.staircase_product(&edge);
        assert_eq!(square.vertex_count(), 4);
        // 4 vertices, 5 edges (with one diagonal), 2 triangles
        assert_eq!(square.simplex_count(), 11);
        assert_eq!(square.maximal_simplices().len(), 2);
    }

    #[test]
    fn staircase_facet_count_is_binomial() {
        let tri = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        let edge = SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap();
        let prod = tri.staircase_product(&edge);
        // one maximal pair, C(3,1) = 3 staircase facets of dimension 3
        assert_eq!(prod.maximal_simplices().len(), 3);
        assert!(prod
            .maximal_simplices()
            .iter()
            .all(|&s| prod.dim(s) == 3));
    }

    proptest! {
        #[test]
        fn subset_components_refine_global_components(mask in 0u32..64) {
            let c = SimplicialComplex::from_facets(4, &[vec![0, 1], vec![1, 2], vec![3]]).unwrap();
            let members: Vec<usize> =
                (0..c.simplex_count()).filter(|&i| mask & (1 << i) != 0).collect();
            let (comp, count) = c.subset_components(&members);
            prop_assert_eq!(comp.len(), members.len());
            if !members.is_empty() {
                prop_assert!(count >= 1);
                let global = c.connected_components();
                for (i, &a) in members.iter().enumerate() {
                    for (j, &b) in members.iter().enumerate() {
                        if comp[i] == comp[j] {
                            prop_assert_eq!(global[a], global[b]);
                        }
                    }
                }
            }
        }
    }
}
