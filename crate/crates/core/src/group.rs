//! Finite group arithmetic on multiplication tables.
//!
//! Groups are carried as full multiplication tables with elements indexed in
//! deterministic breadth-first order from their generators; the identity is
//! always element 0. Orders up to 64 are supported.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Elem = usize;

/// Largest group order we accept for isomorphism classification.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    generators: Vec<Elem>,
    /// element = mul(parent, generators[gen]); None for the identity and generators.
    derivation: Vec<Option<(Elem, usize)>>,
    component_subgroup: Option<Vec<Elem>>,
}

pub type Group = Arc<FiniteGroup>;

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn conjugate(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    pub fn component_subgroup(&self) -> Option<&[Elem]> {
        self.component_subgroup.as_deref()
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut n = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Builds a group from a full multiplication table. The identity must be
    /// element 0. Associativity and inverses are verified exhaustively; a
    /// generating set is chosen greedily (least element outside the running
    /// closure) and breadth-first derivations are recorded for it.
    pub fn from_mul_table(mul: Vec<Vec<Elem>>) -> Result<Group> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::BadTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &mul {
            if row.len() != n {
                return Err(Error::BadTable("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::BadTable(format!("entry {v} out of range")));
                }
                flat.push(v);
            }
        }
        for g in 0..n {
            if flat[g] != g || flat[g * n] != g {
                return Err(Error::BadTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            for h in 0..n {
                if flat[g * n + h] == 0 {
                    inv[g] = h;
                }
            }
            if inv[g] == usize::MAX {
                return Err(Error::BadTable(format!("element {g} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::BadTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut group = FiniteGroup {
            order: n,
            mul: flat,
            inv,
            generators: Vec::new(),
            derivation: vec![None; n],
            component_subgroup: None,
        };
        group.choose_generators();
        Ok(Arc::new(group))
    }

    /// Re-derives `generators` and `derivation` from the table.
    fn choose_generators(&mut self) {
        let n = self.order;
        let mut gens: Vec<Elem> = Vec::new();
        loop {
            let closed = closure_in_table(self, &gens);
            if closed.len() == n {
                break;
            }
            let next = (0..n).find(|g| !closed.contains(g)).unwrap();
            gens.push(next);
        }
        // BFS derivations from the chosen generators.
        let mut derivation = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (j, &g) in gens.iter().enumerate() {
                let w = self.mul(e, g);
                if !seen[w] {
                    seen[w] = true;
                    derivation[w] = Some((e, j));
                    queue.push_back(w);
                }
            }
        }
        debug_assert!(seen.iter().all(|&s| s));
        self.generators = gens;
        self.derivation = derivation;
    }

    /// Designates a normal subgroup modeling the identity component.
    pub fn with_component_subgroup(self: &Group, elements: &[Elem]) -> Result<Group> {
        let sub = Subgroup::new(self.clone(), elements.to_vec())?;
        if !sub.is_normal() {
            return Err(Error::ComponentNotNormal);
        }
        let mut g = (**self).clone();
        g.component_subgroup = Some(sub.elements);
        Ok(Arc::new(g))
    }

    /// Extends a map defined on the generators to the whole group via the
    /// recorded derivations, using the target's multiplication.
    fn extend_from_generators(&self, target: &FiniteGroup, gen_images: &[Elem]) -> Vec<Elem> {
        let mut image = vec![usize::MAX; self.order];
        image[0] = 0;
        for (j, &g) in self.generators.iter().enumerate() {
            image[g] = gen_images[j];
        }
        // Derivations are recorded in BFS order, so resolve by repeated sweeps;
        // one pass in index order is not guaranteed, BFS order is not index order.
        let mut pending: Vec<Elem> = (0..self.order).filter(|&e| image[e] == usize::MAX).collect();
        while !pending.is_empty() {
            let before = pending.len();
            pending.retain(|&e| {
                let (p, j) = self.derivation[e].expect("non-generator has a derivation");
                if image[p] != usize::MAX {
                    image[e] = target.mul(image[p], gen_images[j]);
                    false
                } else {
                    true
                }
            });
            assert!(pending.len() < before, "derivation table is acyclic");
        }
        image
    }
}

fn closure_in_table(g: &FiniteGroup, seed: &[Elem]) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = BTreeSet::from([0]);
    set.extend(seed.iter().copied());
    let mut frontier: Vec<Elem> = set.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        for b in set.clone() {
            for w in [g.mul(a, b), g.mul(b, a)] {
                if set.insert(w) {
                    frontier.push(w);
                }
            }
        }
        let i = g.inv(a);
        if set.insert(i) {
            frontier.push(i);
        }
    }
    set
}

fn compose_perm(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn is_permutation(p: &[usize], degree: usize) -> bool {
    let mut seen = vec![false; degree];
    if p.len() != degree {
        return false;
    }
    for &x in p {
        if x >= degree || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Generates the closure of a set of permutations under composition, with
/// elements indexed in breadth-first order from the identity. Returns the
/// abstract group and the permutation carried by each element.
pub fn generate_permutation_group(
    degree: usize,
    generators: &[Vec<usize>],
) -> Result<(Group, Vec<Vec<usize>>)> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    for (i, p) in generators.iter().enumerate() {
        if !is_permutation(p, degree) {
            return Err(Error::BadPermutation { index: i, degree });
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut derivation: Vec<Option<(Elem, usize)>> = vec![None];
    let mut gen_ids: Vec<usize> = Vec::new();
    let mut cursor = 0;
    while cursor < elems.len() {
        let cur = elems[cursor].clone();
        for (j, gp) in generators.iter().enumerate() {
            let w = compose_perm(&cur, gp);
            if !index.contains_key(&w) {
                let id = elems.len();
                index.insert(w.clone(), id);
                elems.push(w);
                derivation.push(Some((cursor, j)));
            }
        }
        cursor += 1;
    }
    for gp in generators {
        gen_ids.push(index[gp]);
    }
    let n = elems.len();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let p = compose_perm(&elems[a], &elems[b]);
            mul[a * n + b] = index[&p];
        }
    }
    let mut inv = vec![0usize; n];
    for a in 0..n {
        inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).unwrap();
    }
    gen_ids.sort_unstable();
    gen_ids.dedup();
    gen_ids.retain(|&g| g != 0);
    // Derivations above were produced against the listed generators; remap to
    // the deduplicated generator elements.
    let gen_pos: HashMap<Elem, usize> = gen_ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let derivation: Vec<Option<(Elem, usize)>> = derivation
        .iter()
        .enumerate()
        .map(|(e, d)| {
            if e == 0 || gen_pos.contains_key(&e) {
                None
            } else {
                d.map(|(p, j)| {
                    let gelem = index[&generators[j]];
                    (p, gen_pos[&gelem])
                })
            }
        })
        .collect();
    let group = FiniteGroup {
        order: n,
        mul,
        inv,
        generators: gen_ids,
        derivation,
        component_subgroup: None,
    };
    Ok((Arc::new(group), elems))
}

pub fn generate_group(degree: usize, generators: &[Vec<usize>]) -> Result<Group> {
    generate_permutation_group(degree, generators).map(|(g, _)| g)
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub parent: Group,
    pub elements: Vec<Elem>,
}

impl Subgroup {
    /// Validates closure under multiplication and inverses.
    pub fn new(parent: Group, mut elements: Vec<Elem>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        let set: HashSet<Elem> = elements.iter().copied().collect();
        for &a in &elements {
            if a >= parent.order() {
                return Err(Error::UnknownElement(a, parent.order()));
            }
            if !set.contains(&parent.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elements {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        if parent.order() % elements.len() != 0 {
            return Err(Error::NotASubgroup("order does not divide".into()));
        }
        Ok(Subgroup { parent, elements })
    }

    pub fn closure(parent: Group, seed: &[Elem]) -> Result<Subgroup> {
        for &a in seed {
            if a >= parent.order() {
                return Err(Error::UnknownElement(a, parent.order()));
            }
        }
        let set = closure_in_table(&parent, seed);
        Ok(Subgroup {
            parent,
            elements: set.into_iter().collect(),
        })
    }

    pub fn trivial(parent: Group) -> Subgroup {
        Subgroup {
            parent,
            elements: vec![0],
        }
    }

    pub fn whole(parent: Group) -> Subgroup {
        let elements = (0..parent.order()).collect();
        Subgroup { parent, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn conjugate_by(&self, g: Elem) -> Subgroup {
        let mut elements: Vec<Elem> = self
            .elements
            .iter()
            .map(|&h| self.parent.conjugate(g, h))
            .collect();
        elements.sort_unstable();
        Subgroup {
            parent: self.parent.clone(),
            elements,
        }
    }

    pub fn is_normal(&self) -> bool {
        (0..self.parent.order()).all(|g| self.conjugate_by(g).elements == self.elements)
    }

    /// Left cosets gH, ordered by least member; the subgroup itself comes first.
    pub fn left_cosets(&self) -> Vec<Vec<Elem>> {
        let g = &self.parent;
        let mut seen = vec![false; g.order()];
        let mut cosets = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            let mut coset: Vec<Elem> = self.elements.iter().map(|&h| g.mul(x, h)).collect();
            coset.sort_unstable();
            for &y in &coset {
                seen[y] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// The abstract group carried by this subgroup, with the embedding into
    /// the parent. Elements are re-indexed in sorted order (identity first).
    pub fn as_group(&self) -> Result<(Group, GroupHom)> {
        let k = self.elements.len();
        let pos: HashMap<Elem, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let mut mul = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                mul[i][j] = pos[&self.parent.mul(self.elements[i], self.elements[j])];
            }
        }
        let abstract_group = FiniteGroup::from_mul_table(mul)?;
        let embedding = GroupHom::new(
            abstract_group.clone(),
            self.parent.clone(),
            self.elements.clone(),
        )?;
        Ok((abstract_group, embedding))
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub group: Group,
    pub subgroups: Vec<Subgroup>,
    /// inclusion[i][j] is true iff subgroups[i] <= subgroups[j].
    pub inclusion: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    pub fn position(&self, elements: &[Elem]) -> Option<usize> {
        self.subgroups.iter().position(|s| s.elements == elements)
    }
}

/// All subgroups, found by repeated one-generator extensions of known
/// subgroups, in canonical (size, lexicographic) order.
pub fn subgroups(group: &Group) -> SubgroupLattice {
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::from([vec![0]]);
    let mut frontier: Vec<Vec<Elem>> = vec![vec![0]];
    while let Some(current) = frontier.pop() {
        for g in 1..group.order() {
            if current.binary_search(&g).is_ok() {
                continue;
            }
            let mut seed = current.clone();
            seed.push(g);
            let closed = closure_in_table(group, &seed);
            let elems: Vec<Elem> = closed.into_iter().collect();
            if found.insert(elems.clone()) {
                frontier.push(elems);
            }
        }
    }
    let mut list: Vec<Vec<Elem>> = found.into_iter().collect();
    list.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let subgroups: Vec<Subgroup> = list
        .into_iter()
        .map(|elements| Subgroup {
            parent: group.clone(),
            elements,
        })
        .collect();
    let inclusion = subgroups
        .iter()
        .map(|a| subgroups.iter().map(|b| a.is_subgroup_of(b)).collect())
        .collect();
    SubgroupLattice {
        group: group.clone(),
        subgroups,
        inclusion,
    }
}

/// Partition of the lattice under g·H·g⁻¹. Each class lists subgroup indices
/// with the canonical representative (least index) first; classes are ordered
/// by representative.
pub fn subgroup_conjugacy_classes(lattice: &SubgroupLattice) -> Vec<Vec<usize>> {
    let mut class_of: Vec<Option<usize>> = vec![None; lattice.subgroups.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..lattice.subgroups.len() {
        if class_of[i].is_some() {
            continue;
        }
        let cid = classes.len();
        let mut members = vec![i];
        class_of[i] = Some(cid);
        for g in 0..lattice.group.order() {
            let conj = lattice.subgroups[i].conjugate_by(g);
            let j = lattice
                .position(&conj.elements)
                .expect("conjugate of a subgroup is a subgroup");
            if class_of[j].is_none() {
                class_of[j] = Some(cid);
                members.push(j);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Group,
    pub target: Group,
    pub image: Vec<Elem>,
    pub injective: bool,
}

impl GroupHom {
    pub fn new(source: Group, target: Group, image: Vec<Elem>) -> Result<GroupHom> {
        if image.len() != source.order() || image.first() != Some(&0) {
            return Err(Error::NotAHomomorphism);
        }
        for a in 0..source.order() {
            if image[a] >= target.order() {
                return Err(Error::NotAHomomorphism);
            }
            for b in 0..source.order() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        let mut seen = vec![false; target.order()];
        let mut injective = true;
        for &v in &image {
            if seen[v] {
                injective = false;
            }
            seen[v] = true;
        }
        Ok(GroupHom {
            source,
            target,
            image,
            injective,
        })
    }

    pub fn identity(group: Group) -> GroupHom {
        let image = (0..group.order()).collect();
        GroupHom {
            source: group.clone(),
            target: group,
            image,
            injective: true,
        }
    }

    pub fn apply(&self, g: Elem) -> Elem {
        self.image[g]
    }

    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.source.order() == self.target.order()
    }

    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_isomorphism() {
            return Err(Error::NotInjective);
        }
        let mut image = vec![0usize; self.target.order()];
        for (a, &b) in self.image.iter().enumerate() {
            image[b] = a;
        }
        GroupHom::new(self.target.clone(), self.source.clone(), image)
    }

    /// self ∘ other (other first).
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        if *other.target != *self.source {
            return Err(Error::GroupMismatch);
        }
        let image = other.image.iter().map(|&g| self.image[g]).collect();
        GroupHom::new(other.source.clone(), self.target.clone(), image)
    }

    /// Post-conjugation by t in the target.
    pub fn conjugated_by(&self, t: Elem) -> GroupHom {
        let image = self
            .image
            .iter()
            .map(|&g| self.target.conjugate(t, g))
            .collect();
        GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            image,
            injective: self.injective,
        }
    }
}

/// All homomorphisms source → target (all injective ones when `injective_only`),
/// in lexicographic order of the image array.
pub fn enumerate_homs(source: &Group, target: &Group, injective_only: bool) -> Vec<GroupHom> {
    if injective_only && source.order() > target.order() {
        return Vec::new();
    }
    let gens = source.generators();
    let mut out: Vec<GroupHom> = Vec::new();
    let mut assignment = vec![0usize; gens.len()];
    let gen_orders: Vec<usize> = gens.iter().map(|&g| source.element_order(g)).collect();
    fn rec(
        source: &Group,
        target: &Group,
        gens: &[Elem],
        gen_orders: &[usize],
        injective_only: bool,
        assignment: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<GroupHom>,
    ) {
        if depth == gens.len() {
            let image = source.extend_from_generators(target, assignment);
            if let Ok(hom) = GroupHom::new(source.clone(), target.clone(), image) {
                if !injective_only || hom.injective {
                    out.push(hom);
                }
            }
            return;
        }
        for cand in 0..target.order() {
            if gen_orders[depth] % target.element_order(cand) != 0 {
                continue;
            }
            assignment[depth] = cand;
            rec(
                source,
                target,
                gens,
                gen_orders,
                injective_only,
                assignment,
                depth + 1,
                out,
            );
        }
    }
    rec(
        source,
        target,
        gens,
        &gen_orders,
        injective_only,
        &mut assignment,
        0,
        &mut out,
    );
    out.sort_by(|a, b| a.image.cmp(&b.image));
    out
}

/// Conjugation-orbit of homomorphisms with the lexicographically least image
/// array as representative.
#[derive(Debug, Clone)]
pub struct HomClass {
    pub representative: GroupHom,
    /// sorted image arrays of every member
    pub orbit: Vec<Vec<Elem>>,
}

impl HomClass {
    pub fn of(hom: &GroupHom) -> HomClass {
        let mut orbit: Vec<Vec<Elem>> = (0..hom.target.order())
            .map(|t| hom.conjugated_by(t).image)
            .collect();
        orbit.sort();
        orbit.dedup();
        let representative = GroupHom {
            source: hom.source.clone(),
            target: hom.target.clone(),
            image: orbit[0].clone(),
            injective: hom.injective,
        };
        HomClass {
            representative,
            orbit,
        }
    }

    pub fn contains(&self, image: &[Elem]) -> bool {
        self.orbit.binary_search_by(|o| o.as_slice().cmp(image)).is_ok()
    }

    pub fn is_identity_class(&self) -> bool {
        self.contains(&(0..self.representative.source.order()).collect::<Vec<_>>())
    }
}

impl PartialEq for HomClass {
    fn eq(&self, other: &Self) -> bool {
        self.representative.image == other.representative.image
    }
}
impl Eq for HomClass {}

/// π₀ of the hom groupoid: conjugation orbits, ordered by representative.
pub fn pi0_hom_classes(source: &Group, target: &Group, injective_only: bool) -> Vec<HomClass> {
    let homs = enumerate_homs(source, target, injective_only);
    let mut classes: Vec<HomClass> = Vec::new();
    let mut covered: HashSet<Vec<Elem>> = HashSet::new();
    for hom in &homs {
        if covered.contains(&hom.image) {
            continue;
        }
        let class = HomClass::of(hom);
        for member in &class.orbit {
            covered.insert(member.clone());
        }
        classes.push(class);
    }
    classes.sort_by(|a, b| a.representative.image.cmp(&b.representative.image));
    classes
}

/// Class of rep(c12) ∘ rep(c01); independent of the chosen representatives.
pub fn compose_hom_classes(c01: &HomClass, c12: &HomClass) -> Result<HomClass> {
    if *c01.representative.target != *c12.representative.source {
        return Err(Error::GroupMismatch);
    }
    let composite = c12.representative.compose(&c01.representative)?;
    Ok(HomClass::of(&composite))
}

/// The action groupoid of the target's conjugation action on the hom set.
pub fn hom_groupoid(
    source: &Group,
    target: &Group,
    injective_only: bool,
) -> crate::groupoid::FiniteGroupoid {
    let homs = enumerate_homs(source, target, injective_only);
    let index: HashMap<Vec<Elem>, usize> =
        homs.iter().enumerate().map(|(i, h)| (h.image.clone(), i)).collect();
    let labels = homs.iter().map(|h| format!("{:?}", h.image)).collect();
    crate::groupoid::FiniteGroupoid::action_groupoid(labels, target, |t, i| {
        index[&homs[i].conjugated_by(t).image]
    })
}

// ---------------------------------------------------------------------------
// Isomorphism classification
// ---------------------------------------------------------------------------

/// Invariant fingerprint plus a canonical minimal multiplication table; keys
/// are equal iff the groups are isomorphic (orders up to 64).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoClassKey {
    pub order: usize,
    pub order_histogram: Vec<(usize, usize)>,
    pub abelian: bool,
    pub canonical_table: Vec<Elem>,
    label: String,
}

impl IsoClassKey {
    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Display for IsoClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn order_histogram(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut hist: HashMap<usize, usize> = HashMap::new();
    for e in 0..g.order() {
        *hist.entry(g.element_order(e)).or_default() += 1;
    }
    let mut out: Vec<(usize, usize)> = hist.into_iter().collect();
    out.sort_unstable();
    out
}

/// BFS relabeling of the multiplication table from an ordered generating tuple.
fn relabeled_table(g: &FiniteGroup, tuple: &[Elem]) -> Vec<Elem> {
    let n = g.order();
    let mut new_of_old = vec![usize::MAX; n];
    let mut old_of_new = Vec::with_capacity(n);
    new_of_old[0] = 0;
    old_of_new.push(0);
    let mut cursor = 0;
    while cursor < old_of_new.len() {
        let e = old_of_new[cursor];
        for &t in tuple {
            let w = g.mul(e, t);
            if new_of_old[w] == usize::MAX {
                new_of_old[w] = old_of_new.len();
                old_of_new.push(w);
            }
        }
        cursor += 1;
    }
    debug_assert_eq!(old_of_new.len(), n);
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = new_of_old[g.mul(old_of_new[a], old_of_new[b])];
        }
    }
    table
}

fn minimal_generating_length(g: &FiniteGroup) -> usize {
    for k in 0..=g.order() {
        if has_generating_tuple(g, k, &mut Vec::new()) {
            return k;
        }
    }
    unreachable!()
}

fn has_generating_tuple(g: &FiniteGroup, k: usize, prefix: &mut Vec<Elem>) -> bool {
    let closed = closure_in_table(g, prefix);
    if closed.len() == g.order() {
        return prefix.len() <= k;
    }
    if prefix.len() == k {
        return false;
    }
    for cand in 1..g.order() {
        if closed.contains(&cand) {
            continue;
        }
        prefix.push(cand);
        if has_generating_tuple(g, k, prefix) {
            prefix.pop();
            return true;
        }
        prefix.pop();
    }
    false
}

fn minimal_table(g: &FiniteGroup) -> Vec<Elem> {
    let k = minimal_generating_length(g);
    let mut best: Option<Vec<Elem>> = None;
    let mut prefix: Vec<Elem> = Vec::new();
    fn rec(g: &FiniteGroup, k: usize, prefix: &mut Vec<Elem>, best: &mut Option<Vec<Elem>>) {
        let closed = closure_in_table(g, prefix);
        if closed.len() == g.order() && prefix.len() == k {
            let table = relabeled_table(g, prefix);
            if best.as_ref().map_or(true, |b| table < *b) {
                *best = Some(table);
            }
            return;
        }
        if prefix.len() >= k {
            return;
        }
        for cand in 1..g.order() {
            if closed.contains(&cand) {
                continue;
            }
            prefix.push(cand);
            rec(g, k, prefix, best);
            prefix.pop();
        }
    }
    rec(g, k, &mut prefix, &mut best);
    best.expect("every group has a generating tuple")
}

/// Invariant-factor style label for recognizable groups, otherwise a stable
/// hash of the canonical table.
fn key_label(g: &FiniteGroup, abelian: bool, table: &[Elem]) -> String {
    let n = g.order();
    if n == 1 {
        return "1".into();
    }
    if abelian {
        return abelian_label(g);
    }
    if let Some(m) = dihedral_half_order(g) {
        return format!("D{m}");
    }
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    for &v in table {
        hasher.update((v as u64).to_le_bytes());
    }
    let digest = hasher.finalize();
    format!("G{}-{:02x}{:02x}{:02x}", n, digest[0], digest[1], digest[2])
}

/// Cyclic invariant factor decomposition of an abelian group, largest factor
/// last, rendered as e.g. "Z2xZ4".
fn abelian_label(g: &FiniteGroup) -> String {
    // The invariant factors d_1 | d_2 | ... are determined by the element
    // order statistics: the number of elements of order dividing d equals
    // prod gcd(d, d_i). Search divisor chains directly; n <= 64.
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for e in 0..g.order() {
        *counts.entry(g.element_order(e)).or_default() += 1;
    }
    let n = g.order();
    fn divisors(n: usize) -> Vec<usize> {
        (1..=n).filter(|d| n % d == 0).collect()
    }
    let divs = divisors(n);
    let count_dividing = |d: usize| -> usize {
        counts
            .iter()
            .filter(|(o, _)| d % **o == 0)
            .map(|(_, c)| *c)
            .sum()
    };
    fn search(
        divs: &[usize],
        n: usize,
        current: &mut Vec<usize>,
        check: &dyn Fn(&[usize]) -> bool,
        out: &mut Option<Vec<usize>>,
    ) {
        if out.is_some() {
            return;
        }
        let prod: usize = current.iter().product();
        if prod == n {
            if check(current) {
                *out = Some(current.clone());
            }
            return;
        }
        let min = current.last().copied().unwrap_or(2);
        for &d in divs {
            if d >= min && d > 1 && (n / prod) % d == 0 {
                // divisibility chain d_1 | d_2 | ...
                if current.last().map_or(true, |&l| d % l == 0) {
                    current.push(d);
                    search(divs, n, current, check, out);
                    current.pop();
                }
            }
        }
    }
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    };
    let check = |factors: &[usize]| -> bool {
        divs.iter().all(|&d| {
            let predicted: usize = factors.iter().map(|&f| gcd(d, f)).product();
            predicted == count_dividing(d)
        })
    };
    let mut found: Option<Vec<usize>> = None;
    search(&divs, n, &mut Vec::new(), &check, &mut found);
    let factors = found.unwrap_or_else(|| vec![n]);
    factors
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// Half-order m when the group is dihedral of order 2m (m >= 3).
fn dihedral_half_order(g: &FiniteGroup) -> Option<usize> {
    let n = g.order();
    if n % 2 != 0 || n < 6 {
        return None;
    }
    let m = n / 2;
    for r in 0..n {
        if g.element_order(r) != m {
            continue;
        }
        let rot: Vec<Elem> = {
            let mut v = vec![0];
            let mut x = r;
            while x != 0 {
                v.push(x);
                x = g.mul(x, r);
            }
            v
        };
        let rotset: HashSet<Elem> = rot.iter().copied().collect();
        if let Some(s) = (0..n).find(|&s| !rotset.contains(&s) && g.element_order(s) == 2) {
            if g.conjugate(s, r) == g.inv(r) {
                return Some(m);
            }
        }
    }
    None
}

pub fn iso_class_key(g: &Group) -> Result<IsoClassKey> {
    if g.order() > MAX_ORDER {
        return Err(Error::UnsupportedOrder(g.order()));
    }
    let abelian = g.is_abelian();
    let canonical_table = minimal_table(g);
    let label = key_label(g, abelian, &canonical_table);
    Ok(IsoClassKey {
        order: g.order(),
        order_histogram: order_histogram(g),
        abelian,
        canonical_table,
        label,
    })
}

/// An isomorphism source → target if one exists.
pub fn find_isomorphism(source: &Group, target: &Group) -> Option<GroupHom> {
    if source.order() != target.order() {
        return None;
    }
    enumerate_isomorphisms_impl(source, target, true).into_iter().next()
}

/// All isomorphisms source → target.
pub fn enumerate_isomorphisms(source: &Group, target: &Group) -> Vec<GroupHom> {
    if source.order() != target.order() {
        return Vec::new();
    }
    enumerate_isomorphisms_impl(source, target, false)
}

fn enumerate_isomorphisms_impl(source: &Group, target: &Group, first_only: bool) -> Vec<GroupHom> {
    if order_histogram(source) != order_histogram(target) {
        return Vec::new();
    }
    let gens = source.generators();
    let gen_orders: Vec<usize> = gens.iter().map(|&g| source.element_order(g)).collect();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; gens.len()];
    fn rec(
        source: &Group,
        target: &Group,
        gen_orders: &[usize],
        assignment: &mut Vec<usize>,
        depth: usize,
        first_only: bool,
        out: &mut Vec<GroupHom>,
    ) {
        if first_only && !out.is_empty() {
            return;
        }
        if depth == gen_orders.len() {
            let image = source.extend_from_generators(target, assignment);
            if let Ok(hom) = GroupHom::new(source.clone(), target.clone(), image) {
                if hom.is_isomorphism() {
                    out.push(hom);
                }
            }
            return;
        }
        for cand in 0..target.order() {
            if target.element_order(cand) != gen_orders[depth] {
                continue;
            }
            assignment[depth] = cand;
            rec(source, target, gen_orders, assignment, depth + 1, first_only, out);
        }
    }
    rec(
        source,
        target,
        &gen_orders,
        &mut assignment,
        0,
        first_only,
        &mut out,
    );
    out.sort_by(|a, b| a.image.cmp(&b.image));
    out
}

// ---------------------------------------------------------------------------
// Component quotients (π₀ of a topological group)
// ---------------------------------------------------------------------------

/// Quotient by the designated component subgroup, with the projection.
pub fn group_pi0(g: &Group) -> Result<(Group, GroupHom)> {
    let n_elems = g
        .component_subgroup()
        .ok_or(Error::MissingComponentSubgroup)?
        .to_vec();
    let normal = Subgroup::new(g.clone(), n_elems)?;
    if !normal.is_normal() {
        return Err(Error::ComponentNotNormal);
    }
    let cosets = normal.left_cosets();
    let mut coset_of = vec![0usize; g.order()];
    for (i, coset) in cosets.iter().enumerate() {
        for &x in coset {
            coset_of[x] = i;
        }
    }
    let k = cosets.len();
    let mut mul = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            mul[i][j] = coset_of[g.mul(cosets[i][0], cosets[j][0])];
        }
    }
    let quotient = FiniteGroup::from_mul_table(mul)?;
    let projection = GroupHom::new(g.clone(), quotient.clone(), coset_of)?;
    Ok((quotient, projection))
}

/// Direct product with component-wise multiplication; element (a, b) has
/// index a·|B| + b.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mul = vec![vec![0usize; n]; n];
    for x0 in 0..na {
        for y0 in 0..nb {
            for x1 in 0..na {
                for y1 in 0..nb {
                    mul[x0 * nb + y0][x1 * nb + y1] = a.mul(x0, x1) * nb + b.mul(y0, y1);
                }
            }
        }
    }
    let prod = FiniteGroup::from_mul_table(mul)?;
    match (a.component_subgroup(), b.component_subgroup()) {
        (Some(ca), Some(cb)) => {
            let mut elems = Vec::new();
            for &x in ca {
                for &y in cb {
                    elems.push(x * nb + y);
                }
            }
            prod.with_component_subgroup(&elems)
        }
        _ => Ok(prod),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclic(n: usize) -> Group {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_mul_table(mul).unwrap()
    }

    fn s3() -> Group {
        generate_group(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap()
    }

    fn d8() -> Group {
        generate_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap()
    }

    /// Independent subgroup oracle: all element subsets closed under the
    /// table operations. Only sensible for small orders.
    fn subgroups_by_subsets(g: &Group) -> Vec<Vec<Elem>> {
        let n = g.order();
        assert!(n <= 12);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let elems: Vec<Elem> = (0..n).filter(|&e| mask & (1 << e) != 0).collect();
            let closed = elems.iter().all(|&a| {
                elems.binary_search(&g.inv(a)).is_ok()
                    && elems
                        .iter()
                        .all(|&b| elems.binary_search(&g.mul(a, b)).is_ok())
            });
            if closed {
                out.push(elems);
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// Independent hom oracle: filter all identity-preserving maps.
    fn homs_by_all_maps(src: &Group, tgt: &Group, injective: bool) -> Vec<Vec<Elem>> {
        let (n, m) = (src.order(), tgt.order());
        let mut out = Vec::new();
        let total = (m as u64).pow((n - 1) as u32);
        assert!(total <= 1 << 20);
        for code in 0..total {
            let mut image = vec![0usize; n];
            let mut c = code;
            for slot in 1..n {
                image[slot] = (c % m as u64) as usize;
                c /= m as u64;
            }
            let is_hom = (0..n).all(|a| {
                (0..n).all(|b| image[src.mul(a, b)] == tgt.mul(image[a], image[b]))
            });
            if !is_hom {
                continue;
            }
            if injective {
                let mut seen = vec![false; m];
                if image.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
                    continue;
                }
            }
            out.push(image);
        }
        out.sort();
        out
    }

    #[test]
    fn five_cycle_generates_order_five() {
        let g = generate_group(5, &[vec![1, 2, 3, 4, 0]]).unwrap();
        assert_eq!(g.order(), 5);
        assert!(g.is_abelian());
    }

    #[test]
    fn empty_generator_list_is_trivial() {
        let g = generate_group(3, &[]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn three_cycle_and_transposition_generate_order_six() {
        assert_eq!(s3().order(), 6);
        assert!(!s3().is_abelian());
    }

    #[test]
    fn malformed_permutations_rejected() {
        assert!(generate_group(0, &[]).is_err());
        assert!(generate_group(3, &[vec![0, 0, 1]]).is_err());
        assert!(generate_group(3, &[vec![0, 1]]).is_err());
        assert!(generate_group(3, &[vec![0, 1, 3]]).is_err());
    }

    #[test]
    fn subgroups_match_subset_oracle() {
        for g in [cyclic(4), cyclic(6), s3(), d8()] {
            let fast: Vec<Vec<Elem>> = subgroups(&g)
                .subgroups
                .iter()
                .map(|s| s.elements.clone())
                .collect();
            assert_eq!(fast, subgroups_by_subsets(&g));
        }
    }

    #[test]
    fn cyclic_four_has_three_subgroups() {
        assert_eq!(subgroups(&cyclic(4)).subgroups.len(), 3);
        assert_eq!(subgroups(&generate_group(1, &[]).unwrap()).subgroups.len(), 1);
    }

    #[test]
    fn inclusion_is_reflexive_and_transitive() {
        let lat = subgroups(&d8());
        let n = lat.subgroups.len();
        for i in 0..n {
            assert!(lat.inclusion[i][i]);
            for j in 0..n {
                for k in 0..n {
                    if lat.inclusion[i][j] && lat.inclusion[j][k] {
                        assert!(lat.inclusion[i][k]);
                    }
                }
            }
        }
    }

    #[test]
    fn homs_match_all_maps_oracle() {
        let pairs = [
            (cyclic(2), cyclic(4)),
            (cyclic(4), cyclic(2)),
            (cyclic(3), s3()),
            (s3(), s3()),
        ];
        for (a, b) in &pairs {
            for injective in [false, true] {
                let fast: Vec<Vec<Elem>> = enumerate_homs(a, b, injective)
                    .into_iter()
                    .map(|h| h.image)
                    .collect();
                assert_eq!(fast, homs_by_all_maps(a, b, injective));
            }
        }
    }

    #[test]
    fn hom_classes_partition_the_hom_set() {
        let g = s3();
        let homs = enumerate_homs(&cyclic(2), &g, true);
        let classes = pi0_hom_classes(&cyclic(2), &g, true);
        assert_eq!(homs.len(), 3);
        assert_eq!(classes.len(), 1);
        let covered: usize = classes.iter().map(|c| c.orbit.len()).sum();
        assert_eq!(covered, homs.len());
    }

    #[test]
    fn compose_hom_classes_is_representative_independent() {
        let g = s3();
        let c01 = pi0_hom_classes(&cyclic(2), &g, true).remove(0);
        let c12 = pi0_hom_classes(&g, &g, true)
            .into_iter()
            .find(|c| c.is_identity_class())
            .unwrap();
        let composed = compose_hom_classes(&c01, &c12).unwrap();
        for member in c01.orbit.clone() {
            let hom = GroupHom::new(cyclic(2), g.clone(), member).unwrap();
            let via_member = c12.representative.compose(&hom).unwrap();
            assert!(composed.contains(&via_member.image));
        }
    }

    #[test]
    fn iso_class_keys_separate_z4_from_klein() {
        let z4 = cyclic(4);
        let klein = generate_group(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        let k1 = iso_class_key(&z4).unwrap();
        let k2 = iso_class_key(&klein).unwrap();
        assert_ne!(k1, k2);
        assert_eq!(k1.label(), "Z4");
        assert_eq!(k2.label(), "Z2xZ2");
    }

    #[test]
    fn iso_class_key_is_isomorphism_invariant() {
        // two presentations of the dihedral group of order 8
        let a = d8();
        let b = generate_group(4, &[vec![3, 0, 1, 2], vec![2, 1, 0, 3]]).unwrap();
        assert_eq!(iso_class_key(&a).unwrap(), iso_class_key(&b).unwrap());
        assert_eq!(iso_class_key(&a).unwrap().label(), "D4");
        assert!(find_isomorphism(&a, &b).is_some());
        assert!(find_isomorphism(&a, &cyclic(8)).is_none());
    }

    #[test]
    fn oversized_groups_are_rejected_for_classification() {
        let big = cyclic(65);
        assert!(matches!(
            iso_class_key(&big),
            Err(Error::UnsupportedOrder(65))
        ));
    }

    #[test]
    fn direct_product_multiplies_orders() {
        let p = direct_product(&cyclic(3), &s3()).unwrap();
        assert_eq!(p.order(), 18);
        assert_eq!(p.element_order(1 * 6 + 0), 3);
    }

    #[test]
    fn pi0_quotients_by_the_component_subgroup() {
        let g = d8();
        let rotations = Subgroup::closure(g.clone(), &[1]).unwrap();
        let g = g.with_component_subgroup(&rotations.elements).unwrap();
        let (q, proj) = group_pi0(&g).unwrap();
        assert_eq!(q.order(), 2);
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(proj.apply(g.mul(a, b)), q.mul(proj.apply(a), proj.apply(b)));
            }
        }
    }

    #[test]
    fn non_normal_component_subgroup_rejected() {
        let g = s3();
        let refl = Subgroup::closure(g.clone(), &[1]).unwrap();
        let refl = if refl.order() == 2 { refl } else { Subgroup::closure(g.clone(), &[2]).unwrap() };
        assert!(matches!(
            g.with_component_subgroup(&refl.elements),
            Err(Error::ComponentNotNormal)
        ));
    }

    #[test]
    fn left_cosets_partition_and_lead_with_least() {
        let g = d8();
        for sub in subgroups(&g).subgroups {
            let cosets = sub.left_cosets();
            let mut all: Vec<Elem> = cosets.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..g.order()).collect::<Vec<_>>());
            for c in &cosets {
                assert_eq!(c.len(), sub.order());
            }
        }
    }

    proptest! {
        #[test]
        fn generated_subgroup_satisfies_lagrange(seed in proptest::collection::vec(0usize..6, 0..3)) {
            let g = s3();
            let seed: Vec<Elem> = seed.into_iter().filter(|&e| e < g.order()).collect();
            let sub = Subgroup::closure(g.clone(), &seed).unwrap();
            prop_assert_eq!(g.order() % sub.order(), 0);
            for &a in &sub.elements {
                for &b in &sub.elements {
                    prop_assert!(sub.contains(g.mul(a, b)));
                }
            }
        }

        #[test]
        fn conjugated_subgroups_share_iso_class(gen in 0usize..8, by in 0usize..8) {
            let g = d8();
            let sub = Subgroup::closure(g.clone(), &[gen]).unwrap();
            let conj = sub.conjugate_by(by);
            let (a, _) = sub.as_group().unwrap();
            let (b, _) = conj.as_group().unwrap();
            prop_assert_eq!(iso_class_key(&a).unwrap(), iso_class_key(&b).unwrap());
        }
    }
}
