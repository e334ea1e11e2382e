//! Exact rational vectors and subspaces.
//!
//! Everything here works over `BigRational`. Subspaces are always kept in
//! reduced row-echelon form, so two spanning sets of the same space produce
//! structurally equal [`Subspace`] values.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Always normalized: reduced, positive denominator,
/// zero stored as `0/1`.
pub type Rational = num_rational::BigRational;

/// Shorthand for `numerator / denominator`.
///
/// Panics if `denominator` is zero.
pub fn rat(numerator: i64, denominator: i64) -> Rational {
    Rational::new(BigInt::from(numerator), BigInt::from(denominator))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("index {index} out of range for ambient dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A vector in `Q^dim` stored as its nonzero coordinates, ordered by index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVector {
    dim: usize,
    entries: BTreeMap<usize, Rational>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// The standard basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Result<Self, LinalgError> {
        Self::from_entries(dim, [(index, Rational::one())])
    }

    /// Builds a vector from `(index, value)` pairs. Repeated indices are summed
    /// and zero results are dropped.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut v = Self::zero(dim);
        for (index, value) in entries {
            if index >= dim {
                return Err(LinalgError::IndexOutOfRange { index, dim });
            }
            v.add_at(index, &value);
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (nonzero) coordinates.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Rational {
        self.entries.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(&i, v)| (i, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Smallest index with a nonzero coordinate.
    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.iter().next().map(|(&i, v)| (i, v))
    }

    /// Adds `value` at `index`, pruning the entry if it cancels.
    ///
    /// Panics if `index >= dim`; the fallible constructors guard user input.
    pub fn add_at(&mut self, index: usize, value: &Rational) {
        assert!(index < self.dim, "index {index} out of range {}", self.dim);
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry(index).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&index);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &SparseVector) {
        debug_assert_eq!(self.dim, other.dim);
        if factor.is_zero() {
            return;
        }
        for (i, v) in other.iter() {
            self.add_at(i, &(factor * v));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVector {
        if factor.is_zero() {
            return Self::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(&i, v)| (i, v * factor)).collect(),
        }
    }

    pub fn dot(&self, other: &SparseVector) -> Rational {
        let (small, large) = if self.entries.len() <= other.entries.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .filter_map(|(i, v)| large.entries.get(i).map(|w| v * w))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Sum of all coordinates.
    pub fn coordinate_sum(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |acc, v| acc + v)
    }

    fn check_dim(&self, dim: usize) -> Result<(), LinalgError> {
        if self.dim != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: self.dim,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, v)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}↦{v}")?;
        }
        write!(f, "; dim {}]", self.dim)
    }
}

/// A row space in canonical reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim: usize,
    rows: Vec<SparseVector>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Subspace {
            dim,
            rows: (0..dim)
                .map(|i| SparseVector::basis(dim, i).expect("i < dim"))
                .collect(),
        }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate_span<I>(dim: usize, coords: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = usize>,
    {
        let rows = coords
            .into_iter()
            .map(|i| SparseVector::basis(dim, i))
            .collect::<Result<Vec<_>, _>>()?;
        rref(&rows, dim)
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("rows are nonzero").0)
    }

    /// Whether every row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        for row in &self.rows {
            if !contains(other, row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reduces `v` modulo the row space; the result is zero iff `v` is in it.
    fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut out = v.clone();
        for row in &self.rows {
            let (pivot, _) = row.leading().expect("rows are nonzero");
            let c = out.get(pivot);
            if !c.is_zero() {
                out.add_scaled(&-c, row);
            }
        }
        out
    }
}

/// Incremental reduced echelon builder. Rows are kept fully reduced against
/// each other after every insertion.
struct EchelonBuilder {
    dim: usize,
    rows: Vec<SparseVector>,
}

impl EchelonBuilder {
    fn new(dim: usize) -> Self {
        EchelonBuilder { dim, rows: Vec::new() }
    }

    fn insert(&mut self, v: &SparseVector) {
        let mut r = v.clone();
        for row in &self.rows {
            let (pivot, _) = row.leading().expect("nonzero");
            let c = r.get(pivot);
            if !c.is_zero() {
                r.add_scaled(&-c, row);
            }
        }
        let Some((pivot, lead)) = r.leading() else {
            return;
        };
        let inv = lead.recip();
        let r = r.scaled(&inv);
        for row in &mut self.rows {
            let c = row.get(pivot);
            if !c.is_zero() {
                row.add_scaled(&-c, &r);
            }
        }
        self.rows.push(r);
    }

    fn finish(mut self) -> Subspace {
        self.rows.sort_by_key(|r| r.leading().expect("nonzero").0);
        Subspace {
            dim: self.dim,
            rows: self.rows,
        }
    }
}

/// Row space of `rows` in canonical reduced echelon form.
pub fn rref(rows: &[SparseVector], ambient: usize) -> Result<Subspace, LinalgError> {
    let mut builder = EchelonBuilder::new(ambient);
    for row in rows {
        row.check_dim(ambient)?;
        builder.insert(row);
    }
    Ok(builder.finish())
}

pub fn contains(space: &Subspace, v: &SparseVector) -> Result<bool, LinalgError> {
    v.check_dim(space.dim)?;
    Ok(space.reduce(v).is_zero())
}

/// `{x : <row, x> = 0 for every constraint row}`.
pub fn solve_common_nullspace(constraint_rows: &[SparseVector], ambient: usize) -> Result<Subspace, LinalgError> {
    let echelon = rref(constraint_rows, ambient)?;
    let pivots: Vec<usize> = echelon.pivots().collect();
    let mut is_pivot = vec![false; ambient];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<SparseVector> = (0..ambient)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut x = SparseVector::zero(ambient);
            x.add_at(free, &Rational::one());
            for (row, &p) in echelon.rows.iter().zip(&pivots) {
                let c = row.get(free);
                if !c.is_zero() {
                    x.add_at(p, &-c);
                }
            }
            x
        })
        .collect();
    rref(&basis, ambient)
}

/// Orthogonal complement under the standard bilinear form.
pub fn complement(space: &Subspace) -> Subspace {
    solve_common_nullspace(&space.rows, space.dim).expect("rows match ambient")
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    if a.dim != b.dim {
        return Err(LinalgError::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let mut constraints = complement(a).rows;
    constraints.extend(complement(b).rows);
    solve_common_nullspace(&constraints, a.dim)
}

/// Reduces a rational modulo `p`; `None` when `p` divides the denominator.
pub(crate) fn reduce_mod_prime(value: &Rational, p: u64) -> Option<u64> {
    use num_integer::Integer;
    let modulus = BigInt::from(p);
    let den = value.denom().mod_floor(&modulus);
    if den.is_zero() {
        return None;
    }
    let num = value.numer().mod_floor(&modulus);
    let den_inv = den.modpow(&(&modulus - BigInt::from(2u8)), &modulus);
    let r = (num * den_inv).mod_floor(&modulus);
    Some(u64::try_from(r.abs()).expect("reduced below p"))
}
