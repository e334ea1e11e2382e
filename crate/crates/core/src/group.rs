//! Finite groups as validated Cayley tables, plus the naive closure
//! algorithms (generation, normal closure, center, quotients) that every
//! subobject computation is built on.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest carrier accepted anywhere in the engine.
pub const MAX_ORDER: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty carrier")]
    Empty,
    #[error("order {order} exceeds the limit of {MAX_ORDER}")]
    TooLarge { order: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is not a carrier index below {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("declared identity {declared} is out of range")]
    IdentityOutOfRange { declared: usize },
    #[error("declared identity {declared} fails on element {witness}")]
    IdentityMismatch { declared: usize, witness: usize },
    #[error("row {row} is not a permutation (value {value} repeats)")]
    RowNotPermutation { row: usize, value: usize },
    #[error("column {col} is not a permutation (value {value} repeats)")]
    ColumnNotPermutation { col: usize, value: usize },
    #[error("associativity fails on ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal: conjugating {member} by {by} leaves it")]
    NotNormal { member: usize, by: usize },
    #[error("{0}")]
    Unsupported(String),
}

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

/// Checks the table shape, entry range and the declared two-sided identity.
pub(crate) fn check_magma(rows: &[Vec<usize>], identity: usize) -> Result<(), GroupError> {
    let n = rows.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge { order: n });
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(GroupError::RaggedRow {
                row,
                len: r.len(),
                expected: n,
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(GroupError::EntryOutOfRange {
                row,
                col,
                value,
                order: n,
            });
        }
    }
    if identity >= n {
        return Err(GroupError::IdentityOutOfRange { declared: identity });
    }
    if let Some(witness) = (0..n).find(|&a| rows[identity][a] != a || rows[a][identity] != a) {
        return Err(GroupError::IdentityMismatch {
            declared: identity,
            witness,
        });
    }
    Ok(())
}

impl FiniteGroup {
    /// Validates a Cayley table: square, entries in range, two-sided identity,
    /// Latin square and associativity (checked on all triples).
    pub fn from_table(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        check_magma(&rows, identity)?;
        let n = rows.len();
        let mut seen = vec![usize::MAX; n];
        for (row, r) in rows.iter().enumerate() {
            for &value in r {
                if seen[value] == row {
                    return Err(GroupError::RowNotPermutation { row, value });
                }
                seen[value] = row;
            }
        }
        seen.fill(usize::MAX);
        for col in 0..n {
            for r in &rows {
                let value = r[col];
                if seen[value] == col {
                    return Err(GroupError::ColumnNotPermutation { col, value });
                }
                seen[value] = col;
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let at = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| at(a, b) == identity)
                    .expect("Latin square has a solution in every row")
            })
            .collect();
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverses,
        })
    }

    /// Builds a group from a closed list of elements and a composition
    /// function. Index 0 must be the identity.
    pub(crate) fn from_elements<T: PartialEq>(
        elements: &[T],
        compose: impl Fn(&T, &T) -> T,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge { order: n });
        }
        let rows = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let c = compose(a, b);
                        elements
                            .iter()
                            .position(|x| *x == c)
                            .ok_or_else(|| GroupError::Unsupported("element list is not closed".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_table(rows, 0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// `x g x⁻¹`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check_index(&self, index: usize) -> Result<(), GroupError> {
        if index >= self.order {
            return Err(GroupError::IndexOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(())
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet(self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        SubgroupSet(vec![self.identity])
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated<I>(&self, gens: I) -> Result<SubgroupSet, GroupError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut gens: Vec<usize> = gens.into_iter().collect();
        for &g in &gens {
            self.check_index(g)?;
        }
        gens.sort_unstable();
        gens.dedup();
        gens.retain(|&g| g != self.identity);

        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        // Right-multiplying by generators from the identity reaches every
        // word in them; finiteness makes inverses words too.
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(SubgroupSet::from_mask(&member))
    }

    pub fn is_normal_subgroup(&self, sub: &SubgroupSet) -> bool {
        self.normality_witness(sub).is_none()
    }

    /// First `(member, conjugator)` pair whose conjugate leaves `sub`.
    pub fn normality_witness(&self, sub: &SubgroupSet) -> Option<(usize, usize)> {
        let mask = sub.mask(self.order);
        for &s in sub.members() {
            for x in self.elements() {
                if !mask[self.conjugate(x, s)] {
                    return Some((s, x));
                }
            }
        }
        None
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure<I>(&self, gens: I) -> Result<SubgroupSet, GroupError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut current = self.subgroup_generated(gens)?;
        loop {
            let mask = current.mask(self.order);
            let extra: BTreeSet<usize> = current
                .members()
                .iter()
                .flat_map(|&s| self.elements().map(move |x| (x, s)))
                .map(|(x, s)| self.conjugate(x, s))
                .filter(|&c| !mask[c])
                .collect();
            if extra.is_empty() {
                return Ok(current);
            }
            current = self.subgroup_generated(current.members().iter().copied().chain(extra))?;
        }
    }

    pub fn center(&self) -> SubgroupSet {
        SubgroupSet(
            self.elements()
                .filter(|&g| self.elements().all(|x| self.mul(g, x) == self.mul(x, g)))
                .collect(),
        )
    }

    /// Subgroup generated by all commutators `[a, b]`, `a ∈ left`, `b ∈ right`.
    pub fn commutator_subgroup(&self, left: &SubgroupSet, right: &SubgroupSet) -> SubgroupSet {
        let gens: BTreeSet<usize> = left
            .members()
            .iter()
            .flat_map(|&a| right.members().iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.subgroup_generated(gens).expect("commutators are carrier indices")
    }

    /// Coset group `G/N` together with the projection `G → G/N`.
    ///
    /// Cosets are numbered by their smallest representative.
    pub fn quotient_group(&self, normal: &SubgroupSet) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if let Some((member, by)) = self.normality_witness(normal) {
            return Err(GroupError::NotNormal { member, by });
        }
        let (projection, reps) = self.coset_projection(normal);
        let m = reps.len();
        let rows = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.mul(a, b)]).collect())
            .collect::<Vec<Vec<usize>>>();
        debug_assert_eq!(rows.len(), m);
        let group = FiniteGroup::from_table(rows, projection[self.identity])?;
        Ok((group, projection))
    }

    /// Left-coset labelling: `projection[g]` is the index of `gN` and `reps[i]`
    /// the smallest element of coset `i`.
    pub(crate) fn coset_projection(&self, sub: &SubgroupSet) -> (Vec<usize>, Vec<usize>) {
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if projection[g] != usize::MAX {
                continue;
            }
            let label = reps.len();
            reps.push(g);
            for &s in sub.members() {
                projection[self.mul(g, s)] = label;
            }
        }
        (projection, reps)
    }

    /// Every subgroup, sorted by size then members.
    ///
    /// Grows the lattice by adjoining one element at a time; fine for the
    /// small carriers this crate is meant for.
    pub fn all_subgroups(&self) -> Vec<SubgroupSet> {
        let mut found: BTreeSet<SubgroupSet> = BTreeSet::new();
        let mut frontier = vec![self.trivial_subgroup()];
        found.insert(self.trivial_subgroup());
        while let Some(h) = frontier.pop() {
            let mask = h.mask(self.order);
            for g in self.elements().filter(|&g| !mask[g]) {
                let bigger = self
                    .subgroup_generated(h.members().iter().copied().chain([g]))
                    .expect("valid indices");
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<SubgroupSet> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Whether `images` defines a group homomorphism `self → target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, images: &[usize]) -> bool {
        images.len() == self.order
            && images.iter().all(|&i| i < target.order)
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| images[self.mul(a, b)] == target.mul(images[a], images[b]))
            })
    }
}

/// Sorted list of the members of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubgroupSet(Vec<usize>);

impl SubgroupSet {
    fn from_mask(mask: &[bool]) -> Self {
        SubgroupSet(mask.iter().enumerate().filter_map(|(i, &m)| m.then_some(i)).collect())
    }

    /// Wraps a member list, sorting and deduplicating it. Closure is not
    /// checked here; see [`SubgroupSet::is_subgroup_of`].
    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SubgroupSet(v)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True for the one-element subgroup.
    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubgroupSet) -> bool {
        self.0.iter().all(|&g| other.contains(g))
    }

    pub fn mask(&self, order: usize) -> Vec<bool> {
        let mut m = vec![false; order];
        for &g in &self.0 {
            m[g] = true;
        }
        m
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet(self.0.iter().copied().filter(|&g| other.contains(g)).collect())
    }

    /// Checks identity membership and closure under the operation of `group`.
    pub fn is_subgroup_of(&self, group: &FiniteGroup) -> bool {
        if !self.0.iter().all(|&g| g < group.order()) || !self.contains(group.identity()) {
            return false;
        }
        let mask = self.mask(group.order());
        self.0
            .iter()
            .all(|&a| mask[group.inv(a)] && self.0.iter().all(|&b| mask[group.mul(a, b)]))
    }
}

/// Direct product on index pairs `(a, b) ↦ a * |right| + b`.
pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let m = right.order();
    let n = left.order() * m;
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge { order: n });
    }
    let rows = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| left.mul(x / m, y / m) * m + right.mul(x % m, y % m))
                .collect()
        })
        .collect();
    FiniteGroup::from_table(rows, left.identity() * m + right.identity())
}

/// `Z/n` under addition; element `k` is the residue `k`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge { order: n });
    }
    let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(rows, 0)
}

/// Dihedral group of order `2n`. Index `k + n f` stands for `r^k s^f`.
pub fn dihedral_group(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if 2 * n > MAX_ORDER {
        return Err(GroupError::TooLarge { order: 2 * n });
    }
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..n).map(move |k| (k, f))).collect();
    FiniteGroup::from_elements(&elements, |&(a, f), &(b, g)| {
        let b = if f == 1 { (n - b) % n } else { b };
        ((a + b) % n, (f + g) % 2)
    })
}

/// Permutations of `0..n` in lexicographic order of their image lists.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Composition `(p q)(x) = p(q(x))`.
pub fn compose_permutations(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

pub fn is_even_permutation(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// The permutations indexed by [`symmetric_group`] (or [`alternating_group`]
/// with `even_only`).
pub fn permutation_elements(n: usize, even_only: bool) -> Vec<Vec<usize>> {
    permutations(n)
        .into_iter()
        .filter(|p| !even_only || is_even_permutation(p))
        .collect()
}

fn permutation_group(n: usize, even_only: bool) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if n > 5 {
        return Err(GroupError::TooLarge {
            order: (1..=n).product(),
        });
    }
    let elements = permutation_elements(n, even_only);
    FiniteGroup::from_elements(&elements, |p, q| compose_permutations(p, q))
}

/// `S_n` for `n ≤ 5`, elements as in [`permutation_elements`].
pub fn symmetric_group(n: usize) -> Result<FiniteGroup, GroupError> {
    permutation_group(n, false)
}

/// `A_n` for `n ≤ 5`.
pub fn alternating_group(n: usize) -> Result<FiniteGroup, GroupError> {
    permutation_group(n, true)
}

/// Cycle notation with 1-based points, `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        symmetric_group(3).unwrap()
    }

    fn index_of(n: usize, perm: &[usize]) -> usize {
        permutation_elements(n, false).iter().position(|p| p == perm).unwrap()
    }

    #[test]
    fn constructors_have_expected_orders() {
        assert_eq!(cyclic_group(7).unwrap().order(), 7);
        assert_eq!(dihedral_group(4).unwrap().order(), 8);
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
        assert_eq!(alternating_group(4).unwrap().order(), 12);
        assert!(!dihedral_group(4).unwrap().is_abelian());
        assert!(matches!(cyclic_group(201), Err(GroupError::TooLarge { .. })));
        assert!(matches!(symmetric_group(6), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn generation() {
        let g = s3();
        assert_eq!(g.subgroup_generated([]).unwrap(), g.trivial_subgroup());
        let three_cycle = index_of(3, &[1, 2, 0]);
        let a3 = g.subgroup_generated([three_cycle]).unwrap();
        assert_eq!(a3.len(), 3);
        let c4 = cyclic_group(4).unwrap();
        assert_eq!(c4.subgroup_generated([2]).unwrap().members(), &[0, 2]);
        assert!(g.subgroup_generated([6]).is_err());
    }

    #[test]
    fn normal_closure_of_a_transposition_is_everything() {
        let g = s3();
        let t = index_of(3, &[1, 0, 2]);
        assert_eq!(g.normal_closure([t]).unwrap(), g.whole());
        assert_eq!(g.normal_closure([]).unwrap(), g.trivial_subgroup());
        let c6 = cyclic_group(6).unwrap();
        for x in 0..6 {
            assert_eq!(c6.normal_closure([x]).unwrap(), c6.subgroup_generated([x]).unwrap());
        }
    }

    #[test]
    fn centers() {
        assert_eq!(s3().center(), s3().trivial_subgroup());
        let c5 = cyclic_group(5).unwrap();
        assert_eq!(c5.center(), c5.whole());
        assert_eq!(dihedral_group(4).unwrap().center().len(), 2);
    }

    #[test]
    fn quotients() {
        let c4 = cyclic_group(4).unwrap();
        let n = c4.subgroup_generated([2]).unwrap();
        let (q, proj) = c4.quotient_group(&n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        let (q, _) = c4.quotient_group(&c4.trivial_subgroup()).unwrap();
        assert_eq!(q, c4);
        let (q, _) = c4.quotient_group(&c4.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let t = index_of(3, &[1, 0, 2]);
        let h = s3().subgroup_generated([t]).unwrap();
        assert!(matches!(s3().quotient_group(&h), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn subgroup_lattices() {
        assert_eq!(s3().all_subgroups().len(), 6);
        assert_eq!(symmetric_group(4).unwrap().all_subgroups().len(), 30);
        assert_eq!(alternating_group(4).unwrap().all_subgroups().len(), 10);
        assert_eq!(dihedral_group(4).unwrap().all_subgroups().len(), 10);
    }

    #[test]
    fn table_validation_errors() {
        assert_eq!(FiniteGroup::from_table(vec![], 0), Err(GroupError::Empty));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1]], 0),
            Err(GroupError::RaggedRow { row: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0),
            Err(GroupError::RowNotPermutation { row: 1, value: 1 })
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], 1),
            Err(GroupError::IdentityMismatch { declared: 1, .. })
        ));
        // A Latin square with identity that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(loop5, 0),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn cycle_names() {
        assert_eq!(cycle_notation(&[0, 1, 2]), "()");
        assert_eq!(cycle_notation(&[1, 2, 0]), "(1 2 3)");
        assert_eq!(cycle_notation(&[1, 0, 3, 2]), "(1 2)(3 4)");
    }
}
