//! Orbit-type partitions, strata, the frontier partial order, link-based
//! refinement, and the counting identities tying X(H) to the partition.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::action::{Point, QuotientSpace, SimplicialAction};
use crate::error::{Error, Result};
use crate::group::{self, Elem, Group, IsoClassKey, Subgroup};
use crate::groupoid::DisjointSets;
use crate::level::Phi0Category;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionMode {
    ByIsomorphism,
    ByConjugacy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrataWhere {
    Source,
    Quotient,
}

/// Block label: an isotropy iso-class key, or the least conjugate element
/// list of the isotropy subgroup.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockKey {
    Iso(IsoClassKey),
    Conj(Vec<Elem>),
}

impl fmt::Display for BlockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKey::Iso(k) => write!(f, "{k}"),
            BlockKey::Conj(elems) => {
                let parts: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrbitTypePartition {
    pub mode: PartitionMode,
    /// blocks in key order; members sorted
    pub blocks: Vec<(BlockKey, Vec<Point>)>,
}

impl OrbitTypePartition {
    pub fn block_of(&self, x: Point) -> Option<usize> {
        self.blocks
            .iter()
            .position(|(_, members)| members.binary_search_by(|m| m.0.cmp(&x.0)).is_ok())
    }
}

pub fn orbit_type_partition(
    action: &SimplicialAction,
    quotient: &QuotientSpace,
    mode: PartitionMode,
) -> OrbitTypePartition {
    let mut blocks: std::collections::BTreeMap<BlockKey, Vec<Point>> = Default::default();
    for x in action.points() {
        let c = quotient.class_of[x.0];
        let key = match mode {
            PartitionMode::ByIsomorphism => BlockKey::Iso(quotient.iso_keys[c].clone()),
            PartitionMode::ByConjugacy => BlockKey::Conj(quotient.conj_reps[c].clone()),
        };
        blocks.entry(key).or_default().push(x);
    }
    let blocks: Vec<(BlockKey, Vec<Point>)> = blocks.into_iter().collect();
    OrbitTypePartition { mode, blocks }
}

/// A connected component of an orbit-type block, in the source complex or the
/// quotient. Members are simplex indices (source) or quotient class indices.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub key: BlockKey,
    pub component: usize,
    pub members: Vec<usize>,
    /// quotient shadow: the orbit classes the members touch
    pub orbit_classes: Vec<usize>,
}

pub fn strata(
    action: &SimplicialAction,
    quotient: &QuotientSpace,
    mode: PartitionMode,
    place: StrataWhere,
) -> Result<Vec<Stratum>> {
    let partition = orbit_type_partition(action, quotient, mode);
    let mut out = Vec::new();
    match place {
        StrataWhere::Source => {
            for (key, points) in &partition.blocks {
                let member_ids: Vec<usize> = points.iter().map(|p| p.0).collect();
                let (comp, count) = action.complex().subset_components(&member_ids);
                for c in 0..count {
                    let members: Vec<usize> = member_ids
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| comp[i] == c)
                        .map(|(_, &s)| s)
                        .collect();
                    let mut orbit_classes: Vec<usize> =
                        members.iter().map(|&s| quotient.class_of[s]).collect();
                    orbit_classes.sort_unstable();
                    orbit_classes.dedup();
                    out.push(Stratum {
                        key: key.clone(),
                        component: c,
                        members,
                        orbit_classes,
                    });
                }
            }
        }
        StrataWhere::Quotient => {
            // block a quotient class by the key of its points; descend the
            // face relation through class representatives
            let mut keys: Vec<BlockKey> = Vec::with_capacity(quotient.classes.len());
            for c in 0..quotient.classes.len() {
                keys.push(match mode {
                    PartitionMode::ByIsomorphism => BlockKey::Iso(quotient.iso_keys[c].clone()),
                    PartitionMode::ByConjugacy => BlockKey::Conj(quotient.conj_reps[c].clone()),
                });
            }
            let mut block_keys: Vec<BlockKey> = keys.clone();
            block_keys.sort();
            block_keys.dedup();
            for key in &block_keys {
                let members_all: Vec<usize> = (0..quotient.classes.len())
                    .filter(|&c| keys[c] == *key)
                    .collect();
                let pos: HashMap<usize, usize> = members_all
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (c, i))
                    .collect();
                let mut ds = DisjointSets::new(members_all.len());
                for &(a, b) in &quotient.adjacency {
                    if let (Some(&ia), Some(&ib)) = (pos.get(&a), pos.get(&b)) {
                        ds.union(ia, ib);
                    }
                }
                let comp = ds.components();
                let count = comp.iter().max().map_or(0, |m| m + 1);
                for c in 0..count {
                    let members: Vec<usize> = members_all
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| comp[i] == c)
                        .map(|(_, &cl)| cl)
                        .collect();
                    out.push(Stratum {
                        key: key.clone(),
                        component: c,
                        orbit_classes: members.clone(),
                        members,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct StratumPoset {
    pub mode: PartitionMode,
    pub place: StrataWhere,
    pub strata: Vec<Stratum>,
    /// simplicial closure of each stratum, in member coordinates
    pub closures: Vec<BTreeSet<usize>>,
    /// leq[a][b]: stratum a lies inside the closure of stratum b
    pub leq: Vec<Vec<bool>>,
    pub frontier_ok: bool,
}

pub fn frontier_poset(
    action: &SimplicialAction,
    quotient: &QuotientSpace,
    mode: PartitionMode,
    place: StrataWhere,
) -> Result<StratumPoset> {
    let strata = strata(action, quotient, mode, place)?;
    let complex = action.complex();
    let mut closures: Vec<BTreeSet<usize>> = Vec::with_capacity(strata.len());
    for s in &strata {
        let mut cl: BTreeSet<usize> = s.members.iter().copied().collect();
        match place {
            StrataWhere::Source => {
                for &m in &s.members {
                    for f in complex.proper_faces(m) {
                        cl.insert(f);
                    }
                }
            }
            StrataWhere::Quotient => {
                // faces of one representative cover the class's descended faces
                for &c in &s.members {
                    let rep = quotient.classes[c][0];
                    for f in complex.proper_faces(rep.0) {
                        cl.insert(quotient.class_of[f]);
                    }
                }
            }
        }
        closures.push(cl);
    }
    let n = strata.len();
    let mut leq = vec![vec![false; n]; n];
    let mut frontier_ok = true;
    for a in 0..n {
        for b in 0..n {
            let inside = strata[a].members.iter().filter(|m| closures[b].contains(m)).count();
            leq[a][b] = inside == strata[a].members.len();
            if a != b && inside > 0 && !leq[a][b] {
                frontier_ok = false;
            }
        }
    }
    // order axioms; closures are face-closed so these are theorems, but the
    // poset is an output and gets checked like one
    for a in 0..n {
        if !leq[a][a] {
            return Err(Error::Internal("stratum poset not reflexive".into()));
        }
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(Error::Internal("stratum poset not antisymmetric".into()));
            }
            for c in 0..n {
                if leq[a][b] && leq[b][c] && !leq[a][c] {
                    return Err(Error::Internal("stratum poset not transitive".into()));
                }
            }
        }
    }
    Ok(StratumPoset {
        mode,
        place,
        strata,
        closures,
        leq,
        frontier_ok,
    })
}

impl StratumPoset {
    /// Covering relations a < b with nothing strictly between.
    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        let n = self.strata.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let covered = (0..n).any(|m| {
                    m != a && m != b && self.leq[a][m] && self.leq[m][b]
                });
                if !covered {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// The closure of the union of all strata with the given key, as a disjoint
/// union of strata. Requires the frontier condition; the decomposition is
/// verified against the actual simplicial closure.
pub fn closure_decomposition(poset: &StratumPoset, key: &BlockKey) -> Result<Vec<usize>> {
    if !poset.frontier_ok {
        return Err(Error::FrontierViolated(
            "closure decomposition needs the frontier condition".into(),
        ));
    }
    let base: Vec<usize> = (0..poset.strata.len())
        .filter(|&s| poset.strata[s].key == *key)
        .collect();
    if base.is_empty() {
        return Err(Error::Internal(format!("no stratum with key {key}")));
    }
    let mut closure: BTreeSet<usize> = BTreeSet::new();
    for &b in &base {
        closure.extend(poset.closures[b].iter().copied());
    }
    let parts: Vec<usize> = (0..poset.strata.len())
        .filter(|&a| base.iter().any(|&b| poset.leq[a][b]))
        .collect();
    let mut union: BTreeSet<usize> = BTreeSet::new();
    for &a in &parts {
        for &m in &poset.strata[a].members {
            if !union.insert(m) {
                return Err(Error::Internal("closure decomposition overlaps".into()));
            }
        }
    }
    if union != closure {
        return Err(Error::Internal(
            "closure decomposition misses the simplicial closure".into(),
        ));
    }
    Ok(parts)
}

/// Exact poset isomorphism between two ≤-matrices.
pub fn posets_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let signature = |m: &[Vec<bool>], x: usize| {
        let below = (0..m.len()).filter(|&y| m[y][x]).count();
        let above = (0..m.len()).filter(|&y| m[x][y]).count();
        (below, above)
    };
    let mut sa: Vec<_> = (0..n).map(|x| signature(a, x)).collect();
    let mut sb: Vec<_> = (0..n).map(|x| signature(b, x)).collect();
    {
        let mut ca = sa.clone();
        let mut cb = sb.clone();
        ca.sort_unstable();
        cb.sort_unstable();
        if ca != cb {
            return false;
        }
    }
    sa.truncate(n);
    sb.truncate(n);
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn rec(
        a: &[Vec<bool>],
        b: &[Vec<bool>],
        sa: &[(usize, usize)],
        sb: &[(usize, usize)],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        x: usize,
    ) -> bool {
        if x == a.len() {
            return true;
        }
        for y in 0..b.len() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            let ok = (0..x).all(|x2| {
                let y2 = assign[x2].unwrap();
                a[x][x2] == b[y][y2] && a[x2][x] == b[y2][y]
            });
            if ok {
                assign[x] = Some(y);
                used[y] = true;
                if rec(a, b, sa, sb, assign, used, x + 1) {
                    return true;
                }
                assign[x] = None;
                used[y] = false;
            }
        }
        false
    }
    rec(a, b, &sa, &sb, &mut assign, &mut used, 0)
}

// ---------------------------------------------------------------------------
// Links and normal-orbit-type refinement
// ---------------------------------------------------------------------------

/// The isotropy action on the set of simplices strictly containing x's
/// simplex, with the face relation among them.
#[derive(Debug, Clone)]
pub struct LinkAction {
    pub base: Point,
    /// coface simplex indices, sorted
    pub elements: Vec<usize>,
    pub dims: Vec<usize>,
    /// face[i][j]: elements[i] is a proper face of elements[j]
    pub face: Vec<Vec<bool>>,
    pub iso: Subgroup,
    /// per isotropy element (in `iso.elements` order), permutation of
    /// positions in `elements`
    pub action: Vec<Vec<usize>>,
}

pub fn link_action(action: &SimplicialAction, x: Point) -> Result<LinkAction> {
    let complex = action.complex();
    let mut elements = complex.cofaces(x.0);
    elements.sort_unstable();
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let dims = elements.iter().map(|&s| complex.dim(s)).collect();
    let n = elements.len();
    let mut face = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && complex.is_face(elements[i], elements[j]) {
                face[i][j] = true;
            }
        }
    }
    let iso = action.isotropy(x)?;
    let mut perms = Vec::with_capacity(iso.elements.len());
    for &g in &iso.elements {
        let perm: Vec<usize> = elements
            .iter()
            .map(|&s| {
                pos.get(&action.apply(g, Point(s)).0).copied().ok_or_else(|| {
                    Error::Internal("isotropy does not preserve the link".into())
                })
            })
            .collect::<Result<_>>()?;
        perms.push(perm);
    }
    Ok(LinkAction {
        base: x,
        elements,
        dims,
        face,
        iso,
        action: perms,
    })
}

/// Searches for an isomorphism of isotropy groups together with an
/// equivariant, grading- and face-preserving bijection of links.
pub fn equivariant_link_iso(a: &LinkAction, b: &LinkAction) -> Result<bool> {
    if a.elements.len() != b.elements.len() || a.iso.order() != b.iso.order() {
        return Ok(false);
    }
    let mut da = a.dims.clone();
    let mut db = b.dims.clone();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    // elements of the abstract groups correspond to iso.elements positions
    let (ga, _) = a.iso.as_group()?;
    let (gb, _) = b.iso.as_group()?;
    for phi in group::enumerate_isomorphisms(&ga, &gb) {
        if link_bijection_exists(a, b, &phi.image) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn link_bijection_exists(a: &LinkAction, b: &LinkAction, phi: &[Elem]) -> bool {
    let n = a.elements.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn rec(
        a: &LinkAction,
        b: &LinkAction,
        phi: &[Elem],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        i: usize,
    ) -> bool {
        let n = a.elements.len();
        if i == n {
            return true;
        }
        'cand: for j in 0..n {
            if used[j] || a.dims[i] != b.dims[j] {
                continue;
            }
            for k in 0..i {
                let jk = assign[k].unwrap();
                if a.face[k][i] != b.face[jk][j] || a.face[i][k] != b.face[j][jk] {
                    continue 'cand;
                }
            }
            for (e, perm) in a.action.iter().enumerate() {
                let pb = &b.action[phi[e]];
                // images already assigned must match
                let i2 = perm[i];
                if i2 <= i {
                    if let Some(j2) = assign[i2] {
                        if pb[j] != j2 {
                            continue 'cand;
                        }
                    } else if i2 == i && pb[j] != j {
                        continue 'cand;
                    }
                }
                for k in 0..i {
                    if perm[k] == i && pb[assign[k].unwrap()] != j {
                        continue 'cand;
                    }
                }
            }
            assign[i] = Some(j);
            used[j] = true;
            if rec(a, b, phi, assign, used, i + 1) {
                return true;
            }
            assign[i] = None;
            used[j] = false;
        }
        false
    }
    rec(a, b, phi, &mut assign, &mut used, 0)
}

/// Normal-orbit-type refinement of the iso partition: the finest partition
/// coarser than the connected strata in which equivariantly link-isomorphic
/// points share a block. Pairwise link comparison is only attempted within an
/// iso block, so the result also refines the iso partition.
pub fn normal_type_refinement(
    action: &SimplicialAction,
    quotient: &QuotientSpace,
) -> Result<Vec<Vec<usize>>> {
    let n = action.point_count();
    let mut ds = DisjointSets::new(n);
    let source_strata = strata(action, quotient, PartitionMode::ByIsomorphism, StrataWhere::Source)?;
    for s in &source_strata {
        for w in s.members.windows(2) {
            ds.union(w[0], w[1]);
        }
    }
    let partition = orbit_type_partition(action, quotient, PartitionMode::ByIsomorphism);
    let mut links: Vec<Option<LinkAction>> = (0..n).map(|_| None).collect();
    for (_, points) in &partition.blocks {
        for (ai, &pa) in points.iter().enumerate() {
            for &pb in points.iter().skip(ai + 1) {
                if ds.find(pa.0) == ds.find(pb.0) {
                    continue;
                }
                if links[pa.0].is_none() {
                    links[pa.0] = Some(link_action(action, pa)?);
                }
                if links[pb.0].is_none() {
                    links[pb.0] = Some(link_action(action, pb)?);
                }
                let la = links[pa.0].as_ref().unwrap();
                let lb = links[pb.0].as_ref().unwrap();
                if equivariant_link_iso(la, lb)? {
                    ds.union(pa.0, pb.0);
                }
            }
        }
    }
    let comp = ds.components();
    let count = comp.iter().max().map_or(0, |m| m + 1);
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); count];
    for x in 0..n {
        blocks[comp[x]].push(x);
    }
    // sanity: each refined block is a union of strata and stays inside one
    // iso block
    for s in &source_strata {
        let c = comp[s.members[0]];
        if s.members.iter().any(|&m| comp[m] != c) {
            return Err(Error::Internal("refinement splits a stratum".into()));
        }
    }
    for block in &blocks {
        let key = &quotient.iso_keys[quotient.class_of[block[0]]];
        if block
            .iter()
            .any(|&m| quotient.iso_keys[quotient.class_of[m]] != *key)
        {
            return Err(Error::Internal("refinement crosses iso blocks".into()));
        }
    }
    Ok(blocks)
}

// ---------------------------------------------------------------------------
// Counting identities
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Prop43Breakdown {
    pub k: IsoClassKey,
    /// |X₀(K)| (objects identity) or |𝔛_K| (orbit identity)
    pub count: usize,
    /// |Hom⁺(H,K)| or |Hom⁺(H,K)/K^conj|
    pub homs: usize,
}

#[derive(Debug, Clone)]
pub struct Prop43Report {
    pub h: IsoClassKey,
    pub objects_lhs: usize,
    pub objects_rhs: usize,
    pub objects_breakdown: Vec<Prop43Breakdown>,
    pub objects_ok: bool,
    pub orbit_lhs: usize,
    pub orbit_rhs: usize,
    pub orbit_breakdown: Vec<Prop43Breakdown>,
    pub orbit_ok: bool,
    /// diagnostic for the morphism-level formula, whose indexing is
    /// ambiguous: the true |X(H)₁| next to both readings of ⋃ 𝒪₁(x) × K
    pub morphisms_actual: usize,
    pub morphisms_by_points: usize,
    pub morphisms_by_orbits: usize,
    pub ok: bool,
}

/// Checks, for the iso-class H at `key_index` of `phi0`:
/// (a) |X(H)₀| = Σ_K |X₀(K)|·|Hom⁺(H,K)|;
/// (b) #orbit classes of X(H) = Σ_K |𝔛_K|·|Hom⁺(H,K)/K^conj|.
pub fn check_prop43(
    action: &SimplicialAction,
    quotient: &QuotientSpace,
    phi0: &Phi0Category,
    key_index: usize,
) -> Result<Prop43Report> {
    let h_group: &Group = &phi0.rep_groups[key_index];
    let level = &phi0.levels[key_index];
    let g_order = action.group().order();

    // per-K censuses from the quotient
    let mut point_counts: HashMap<IsoClassKey, usize> = HashMap::new();
    let mut orbit_counts: HashMap<IsoClassKey, usize> = HashMap::new();
    for (c, class) in quotient.classes.iter().enumerate() {
        *point_counts.entry(quotient.iso_keys[c].clone()).or_insert(0) += class.len();
        *orbit_counts.entry(quotient.iso_keys[c].clone()).or_insert(0) += 1;
    }
    let mut keys: Vec<IsoClassKey> = point_counts.keys().cloned().collect();
    keys.sort();

    let objects_lhs = level.object_count();
    let mut objects_rhs = 0;
    let mut objects_breakdown = Vec::new();
    let mut orbit_rhs = 0;
    let mut orbit_breakdown = Vec::new();
    for k in &keys {
        let ki = phi0
            .key_index(k)
            .ok_or_else(|| Error::Internal("isotropy class missing from Φ₀".into()))?;
        let k_group = &phi0.rep_groups[ki];
        let homs = group::enumerate_homs(h_group, k_group, true).len();
        let classes = group::pi0_hom_classes(h_group, k_group, true).len();
        objects_rhs += point_counts[k] * homs;
        objects_breakdown.push(Prop43Breakdown {
            k: k.clone(),
            count: point_counts[k],
            homs,
        });
        orbit_rhs += orbit_counts[k] * classes;
        orbit_breakdown.push(Prop43Breakdown {
            k: k.clone(),
            count: orbit_counts[k],
            homs: classes,
        });
    }

    let orbit_components = level.orbit_components(action);
    let orbit_lhs = orbit_components.iter().max().map_or(0, |m| m + 1);

    // middle display diagnostic: for a transformation groupoid,
    // |𝒪₁(x)| = |orbit(x)|·|G|; the union ranges over K admitting H
    let admissible: HashMap<&IsoClassKey, bool> = objects_breakdown
        .iter()
        .map(|b| (&b.k, b.homs > 0))
        .collect();
    let morphisms_actual = objects_lhs * g_order;
    let mut morphisms_by_points = 0;
    let mut morphisms_by_orbits = 0;
    for (c, class) in quotient.classes.iter().enumerate() {
        if !admissible[&quotient.iso_keys[c]] {
            continue;
        }
        let k_order = quotient.conj_reps[c].len();
        let o1 = class.len() * g_order;
        morphisms_by_orbits += o1 * k_order;
        morphisms_by_points += class.len() * o1 * k_order;
    }

    let objects_ok = objects_lhs == objects_rhs;
    let orbit_ok = orbit_lhs == orbit_rhs;
    Ok(Prop43Report {
        h: phi0.keys[key_index].clone(),
        objects_lhs,
        objects_rhs,
        objects_breakdown,
        objects_ok,
        orbit_lhs,
        orbit_rhs,
        orbit_breakdown,
        orbit_ok,
        morphisms_actual,
        morphisms_by_points,
        morphisms_by_orbits,
        ok: objects_ok && orbit_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::phi0_category;
    use crate::scenario;

    fn regular(reference: &str) -> SimplicialAction {
        scenario::build_action(&scenario::example(reference).unwrap())
            .unwrap()
            .regularize()
            .unwrap()
    }

    #[test]
    fn partitions_cover_and_conj_refines_iso() {
        for reference in ["dihedral_polygon(3)", "symmetric_triangle", "rotation_sphere(5)"] {
            let action = regular(reference);
            let quotient = action.quotient().unwrap();
            let iso = orbit_type_partition(&action, &quotient, PartitionMode::ByIsomorphism);
            let conj = orbit_type_partition(&action, &quotient, PartitionMode::ByConjugacy);
            let total: usize = iso.blocks.iter().map(|(_, m)| m.len()).sum();
            assert_eq!(total, action.point_count());
            for x in action.points() {
                assert!(iso.block_of(x).is_some());
            }
            // each conjugacy block sits inside a single iso block
            for (_, members) in &conj.blocks {
                let b = iso.block_of(members[0]).unwrap();
                assert!(members.iter().all(|&m| iso.block_of(m) == Some(b)));
            }
            assert!(conj.blocks.len() >= iso.blocks.len());
        }
    }

    #[test]
    fn hexagon_quotient_has_three_strata_in_a_fan() {
        let action = regular("dihedral_polygon(3)");
        let quotient = action.quotient().unwrap();
        let poset = frontier_poset(
            &action,
            &quotient,
            PartitionMode::ByIsomorphism,
            StrataWhere::Quotient,
        )
        .unwrap();
        assert_eq!(poset.strata.len(), 3);
        assert!(poset.frontier_ok);
        // two order-two vertex strata under one free edge stratum
        let edge = (0..3)
            .find(|&s| poset.strata[s].key == BlockKey::Iso(quotient.iso_keys[0].clone()).clone()
                || poset.strata[s].members.len() == 1 && poset.strata[s].key.to_string() == "1")
            .unwrap();
        let covers = poset.covering_relations();
        assert_eq!(covers.len(), 2);
        assert!(covers.iter().all(|&(_, b)| b == edge));
    }

    #[test]
    fn closure_decompositions_recover_all_strata() {
        let action = regular("dihedral_polygon(3)");
        let quotient = action.quotient().unwrap();
        let poset = frontier_poset(
            &action,
            &quotient,
            PartitionMode::ByIsomorphism,
            StrataWhere::Quotient,
        )
        .unwrap();
        let free_key = poset
            .strata
            .iter()
            .map(|s| s.key.clone())
            .find(|k| k.to_string() == "1")
            .unwrap();
        // the free stratum is dense: its closure decomposes into everything
        let parts = closure_decomposition(&poset, &free_key).unwrap();
        assert_eq!(parts.len(), poset.strata.len());
        // a closed stratum decomposes into itself alone
        let z2_key = poset
            .strata
            .iter()
            .map(|s| s.key.clone())
            .find(|k| k.to_string() == "Z2")
            .unwrap();
        let parts = closure_decomposition(&poset, &z2_key).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|&s| poset.strata[s].key == z2_key));
    }

    #[test]
    fn source_and_quotient_posets_agree_for_the_hexagon() {
        let action = regular("dihedral_polygon(3)");
        let quotient = action.quotient().unwrap();
        let src = frontier_poset(
            &action,
            &quotient,
            PartitionMode::ByIsomorphism,
            StrataWhere::Source,
        )
        .unwrap();
        let quo = frontier_poset(
            &action,
            &quotient,
            PartitionMode::ByIsomorphism,
            StrataWhere::Quotient,
        )
        .unwrap();
        assert!(src.frontier_ok);
        // source: 6 isolated fixed vertices and 6 open free arcs
        assert_eq!(src.strata.len(), 12);
        assert_eq!(quo.strata.len(), 3);
    }

    #[test]
    fn poset_isomorphism_distinguishes_chain_from_antichain() {
        let chain = vec![
            vec![true, true, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        let antichain = vec![
            vec![true, false, false],
            vec![false, true, false],
            vec![false, false, true],
        ];
        let relabeled_chain = vec![
            vec![true, false, false],
            vec![true, true, false],
            vec![true, true, true],
        ];
        assert!(posets_isomorphic(&chain, &chain));
        assert!(posets_isomorphic(&chain, &relabeled_chain));
        assert!(!posets_isomorphic(&chain, &antichain));
        assert!(!posets_isomorphic(&chain, &chain[..2].to_vec()));
    }

    #[test]
    fn rotation_sphere_quotient_is_an_interval() {
        let action = regular("rotation_sphere(5)");
        let quotient = action.quotient().unwrap();
        let poset = frontier_poset(
            &action,
            &quotient,
            PartitionMode::ByIsomorphism,
            StrataWhere::Quotient,
        )
        .unwrap();
        // two fixed poles and one free stratum: same shape as the face poset
        // of the interval
        assert_eq!(poset.strata.len(), 3);
        let interval = vec![
            vec![true, false, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(posets_isomorphic(&poset.leq, &interval));
    }

    #[test]
    fn hexagon_vertex_links_are_equivariantly_isomorphic() {
        // both order-two strata of the hexagon have cone links with the
        // reflection swapping the two edges, so the refinement keeps the iso
        // block whole and yields one block per iso class
        let action = regular("dihedral_polygon(3)");
        let quotient = action.quotient().unwrap();
        let blocks = normal_type_refinement(&action, &quotient).unwrap();
        assert_eq!(blocks.len(), 2);
    }

    #[test]
    fn refinement_separates_poles_from_nothing_on_the_sphere() {
        let action = regular("rotation_sphere(5)");
        let quotient = action.quotient().unwrap();
        let blocks = normal_type_refinement(&action, &quotient).unwrap();
        // poles fuse (their links are equivariantly isomorphic pentagons)
        assert_eq!(blocks.len(), 2);
        let total: usize = blocks.iter().map(|b| b.len()).sum();
        assert_eq!(total, action.point_count());
    }

    #[test]
    fn prop43_identities_hold_on_small_examples() {
        for reference in ["rotation_sphere(5)", "dihedral_polygon(3)", "symmetric_triangle"] {
            let action = regular(reference);
            let quotient = action.quotient().unwrap();
            let phi0 = phi0_category(&action).unwrap();
            for ki in 0..phi0.keys.len() {
                let report = check_prop43(&action, &quotient, &phi0, ki).unwrap();
                assert!(report.ok, "{reference} key {ki}");
                assert_eq!(report.objects_lhs, report.objects_rhs);
                assert_eq!(report.orbit_lhs, report.orbit_rhs);
            }
        }
    }

    #[test]
    fn prop43_expected_counts_for_an_order_five_level() {
        let action = regular("rotation_sphere(5)");
        let quotient = action.quotient().unwrap();
        let phi0 = phi0_category(&action).unwrap();
        let ki = phi0.keys.iter().position(|k| k.label() == "Z5").unwrap();
        let report = check_prop43(&action, &quotient, &phi0, ki).unwrap();
        // 2 fixed points, 4 injections of Z/5 into itself; the abelian group
        // fixes every level object, so orbit classes equal objects
        assert_eq!(report.objects_lhs, 8);
        assert_eq!(report.orbit_lhs, 8);
    }
}
