//! The group-algebra Hopf brace `k[G]` of a finite skew brace.
//!
//! Basis elements `δ_g` are group-like: `Δ(δ_g) = δ_g ⊗ δ_g`, `ε(δ_g) = 1`.
//! Both products, both antipodes, `Δ` and `ε` are the linear extensions of
//! the set-level structure. The action `⇀` and the product `⋆` are *not*
//! extended from their set-level versions: they are evaluated from their
//! Sweedler formulas on top of the element-level operations, so agreement with
//! [`SkewBrace::lambda`] and [`SkewBrace::star`] is a real cross-check.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{BraceError, SkewBrace};
use crate::group::FiniteGroup;
use crate::linalg::{reduce_mod_prime, LinalgError, Rational, SparseVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("element lives over a basis of size {found}, expected {expected}")]
    BasisMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("{p} is not a prime")]
    NotPrime { p: u64 },
    #[error("characteristic {p} divides the carrier order {order}; refusing prime-field mode")]
    PrimeDividesOrder { p: u64, order: usize },
    #[error("{operation} needs the rational field; prime-field mode is for identity checks only")]
    RationalsRequired { operation: &'static str },
    #[error(transparent)]
    Brace(#[from] BraceError),
}

/// Scalar field used when comparing the two sides of an identity.
///
/// Arithmetic always happens over the rationals; in prime mode results are
/// compared after reduction mod `p`, which is the same as computing in `F_p`
/// because every structure map has integer matrix entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A linear combination of basis elements `δ_g`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    coeffs: SparseVector,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_zero() {
            return f.write_str("0");
        }
        for (k, (g, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "δ{g}")?;
            } else {
                write!(f, "({c})δ{g}")?;
            }
        }
        Ok(())
    }
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element {
            coeffs: SparseVector::zero(dim),
        }
    }

    /// `δ_g`. Panics if `g >= dim`.
    pub fn basis(dim: usize, g: usize) -> Self {
        Element {
            coeffs: SparseVector::basis(dim, g).expect("basis index in range"),
        }
    }

    pub fn from_vector(coeffs: SparseVector) -> Self {
        Element { coeffs }
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, HopfError>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        SparseVector::from_entries(dim, terms)
            .map(Element::from_vector)
            .map_err(|e| match e {
                LinalgError::IndexOutOfRange { index, dim } => HopfError::IndexOutOfRange { index, dim },
                LinalgError::DimensionMismatch { expected, found } => HopfError::BasisMismatch { expected, found },
            })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn coefficients(&self) -> &SparseVector {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, g: usize) -> Rational {
        self.coeffs.get(g)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &Element) {
        self.coeffs.add_scaled(factor, &other.coeffs);
    }

    pub fn scaled(&self, factor: &Rational) -> Element {
        Element {
            coeffs: self.coeffs.scaled(factor),
        }
    }

    pub fn sum(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    /// Single basis element with coefficient one, if this is one.
    pub fn as_group_like(&self) -> Option<usize> {
        let mut it = self.coeffs.iter();
        match (it.next(), it.next()) {
            (Some((g, c)), None) if c.is_one() => Some(g),
            _ => None,
        }
    }
}

/// An element of `H ⊗ H` in the basis `δ_i ⊗ δ_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor2 {
    dim: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl Tensor2 {
    pub fn zero(dim: usize) -> Self {
        Tensor2 {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> + '_ {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn add_at(&mut self, i: usize, j: usize, value: &Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &Tensor2) {
        for ((i, j), v) in other.entries() {
            self.add_at(i, j, &(factor * v));
        }
    }

    /// `x ⊗ y`.
    pub fn outer(x: &Element, y: &Element) -> Tensor2 {
        let mut t = Tensor2::zero(x.dim());
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                t.add_at(i, j, &(a * b));
            }
        }
        t
    }

    /// The tensor flip `x ⊗ y ↦ y ⊗ x`.
    pub fn flip(&self) -> Tensor2 {
        Tensor2 {
            dim: self.dim,
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    /// Applies `f ⊗ g` and multiplies the legs with `mul`.
    fn contract(
        &self,
        left: impl Fn(&Element) -> Element,
        right: impl Fn(&Element) -> Element,
        mul: impl Fn(&Element, &Element) -> Element,
    ) -> Element {
        let mut out = Element::zero(self.dim);
        for ((i, j), v) in self.entries() {
            let l = left(&Element::basis(self.dim, i));
            let r = right(&Element::basis(self.dim, j));
            out.add_scaled(v, &mul(&l, &r));
        }
        out
    }
}

/// A value produced by one side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    Element(Element),
    Tensor(Tensor2),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Element(e) => write!(f, "{e}"),
            Value::Tensor(t) => {
                if t.entries.is_empty() {
                    return f.write_str("0");
                }
                for (k, ((i, j), c)) in t.entries().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "({c})δ{i}⊗δ{j}")?;
                }
                Ok(())
            }
        }
    }
}

impl Value {
    fn coefficients(&self) -> Vec<Rational> {
        match self {
            Value::Scalar(c) => vec![c.clone()],
            Value::Element(e) => e.terms().map(|(_, c)| c.clone()).collect(),
            Value::Tensor(t) => t.entries.values().cloned().collect(),
        }
    }

    fn difference(&self, other: &Value) -> Option<Value> {
        let minus_one = -Rational::one();
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Some(Value::Scalar(a - b)),
            (Value::Element(a), Value::Element(b)) if a.dim() == b.dim() => {
                let mut d = a.clone();
                d.add_scaled(&minus_one, b);
                Some(Value::Element(d))
            }
            (Value::Tensor(a), Value::Tensor(b)) if a.dim == b.dim => {
                let mut d = a.clone();
                d.add_scaled(&minus_one, b);
                Some(Value::Tensor(d))
            }
            _ => None,
        }
    }

    /// Equality in the given field.
    pub fn equals_in(&self, other: &Value, field: Field) -> bool {
        let Some(diff) = self.difference(other) else {
            return false;
        };
        match field {
            Field::Rationals => diff.coefficients().iter().all(Zero::is_zero),
            Field::Prime(p) => diff.coefficients().iter().all(|c| reduce_mod_prime(c, p) == Some(0)),
        }
    }
}

/// `k[G]` with both Hopf algebra structures of a skew brace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfBrace {
    base: SkewBrace,
    field: Field,
}

impl HopfBrace {
    /// Linearization over the rationals.
    pub fn new(base: SkewBrace) -> Self {
        HopfBrace {
            base,
            field: Field::Rationals,
        }
    }

    /// Linearization compared modulo `p`. Refused when `p` divides the
    /// carrier order.
    pub fn with_prime(base: SkewBrace, p: u64) -> Result<Self, HopfError> {
        if !is_prime(p) {
            return Err(HopfError::NotPrime { p });
        }
        if (base.order() as u64).is_multiple_of(p) {
            return Err(HopfError::PrimeDividesOrder { p, order: base.order() });
        }
        Ok(HopfBrace {
            base,
            field: Field::Prime(p),
        })
    }

    pub fn base(&self) -> &SkewBrace {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.base.order()
    }

    pub(crate) fn require_rationals(&self, operation: &'static str) -> Result<(), HopfError> {
        match self.field {
            Field::Rationals => Ok(()),
            Field::Prime(_) => Err(HopfError::RationalsRequired { operation }),
        }
    }

    pub fn basis(&self, g: usize) -> Element {
        Element::basis(self.dim(), g)
    }

    /// The unit `1 = δ_e`.
    pub fn one(&self) -> Element {
        self.basis(self.base.identity())
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim())
    }

    fn check(&self, x: &Element) -> Result<(), HopfError> {
        if x.dim() != self.dim() {
            return Err(HopfError::BasisMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    fn bilinear(group: &FiniteGroup, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero(x.dim());
        for (g, a) in x.terms() {
            for (h, b) in y.terms() {
                out.coeffs.add_at(group.mul(g, h), &(a * b));
            }
        }
        out
    }

    fn relabel(x: &Element, map: impl Fn(usize) -> usize) -> Element {
        let mut out = Element::zero(x.dim());
        for (g, c) in x.terms() {
            out.coeffs.add_at(map(g), c);
        }
        out
    }

    /// `x · y`.
    pub fn dot_mul(&self, x: &Element, y: &Element) -> Result<Element, HopfError> {
        self.check(x)?;
        self.check(y)?;
        Ok(Self::bilinear(self.base.dot(), x, y))
    }

    /// `x • y`.
    pub fn circ_mul(&self, x: &Element, y: &Element) -> Result<Element, HopfError> {
        self.check(x)?;
        self.check(y)?;
        Ok(Self::bilinear(self.base.circ(), x, y))
    }

    /// `Δ(Σ c_g δ_g) = Σ c_g δ_g ⊗ δ_g`.
    pub fn comultiply(&self, x: &Element) -> Result<Tensor2, HopfError> {
        self.check(x)?;
        let mut t = Tensor2::zero(self.dim());
        for (g, c) in x.terms() {
            t.add_at(g, g, c);
        }
        Ok(t)
    }

    /// `ε(Σ c_g δ_g) = Σ c_g`.
    pub fn counit(&self, x: &Element) -> Result<Rational, HopfError> {
        self.check(x)?;
        Ok(x.coeffs.coordinate_sum())
    }

    /// Antipode of `H·`.
    pub fn antipode_s(&self, x: &Element) -> Result<Element, HopfError> {
        self.check(x)?;
        Ok(Self::relabel(x, |g| self.base.dot().inv(g)))
    }

    /// Antipode of `H•`.
    pub fn antipode_t(&self, x: &Element) -> Result<Element, HopfError> {
        self.check(x)?;
        Ok(Self::relabel(x, |g| self.base.circ().inv(g)))
    }

    /// Iterated coproduct `Δ^(legs-1)(x)` as a list of weighted leg tuples.
    ///
    /// Built by repeatedly applying [`HopfBrace::comultiply`] to the last leg.
    pub fn sweedler(&self, x: &Element, legs: usize) -> Result<Vec<(Rational, Vec<Element>)>, HopfError> {
        assert!(legs >= 1, "at least one Sweedler leg");
        self.check(x)?;
        let mut terms: Vec<(Rational, Vec<usize>)> = x.terms().map(|(g, c)| (c.clone(), vec![g])).collect();
        for _ in 1..legs {
            let mut next = Vec::with_capacity(terms.len());
            for (c, mut idx) in terms {
                let last = idx.pop().expect("nonempty");
                let split = self.comultiply(&self.basis(last))?;
                for ((i, j), v) in split.entries() {
                    let mut legs = idx.clone();
                    legs.push(i);
                    legs.push(j);
                    next.push((&c * v, legs));
                }
            }
            terms = next;
        }
        Ok(terms
            .into_iter()
            .map(|(c, idx)| (c, idx.into_iter().map(|g| self.basis(g)).collect()))
            .collect())
    }

    /// `Σ c · f(x_1, …, x_legs)` over the Sweedler terms of `x`.
    pub fn sweedler_sum<F>(&self, x: &Element, legs: usize, mut f: F) -> Result<Element, HopfError>
    where
        F: FnMut(&[Element]) -> Result<Element, HopfError>,
    {
        let mut out = self.zero();
        for (c, leg) in self.sweedler(x, legs)? {
            out.add_scaled(&c, &f(&leg)?);
        }
        Ok(out)
    }

    /// Tensor-valued variant of [`HopfBrace::sweedler_sum`].
    pub fn sweedler_sum_tensor<F>(&self, x: &Element, legs: usize, mut f: F) -> Result<Tensor2, HopfError>
    where
        F: FnMut(&[Element]) -> Result<Tensor2, HopfError>,
    {
        let mut out = Tensor2::zero(self.dim());
        for (c, leg) in self.sweedler(x, legs)? {
            out.add_scaled(&c, &f(&leg)?);
        }
        Ok(out)
    }

    /// `a ⇀ b = S(a₁)·(a₂•b)`.
    pub fn act_left(&self, a: &Element, b: &Element) -> Result<Element, HopfError> {
        self.check(b)?;
        self.sweedler_sum(a, 2, |l| {
            self.dot_mul(&self.antipode_s(&l[0])?, &self.circ_mul(&l[1], b)?)
        })
    }

    /// `a ⋆ b = S(a₁)·(a₂•b₁)·S(b₂)`.
    pub fn star(&self, a: &Element, b: &Element) -> Result<Element, HopfError> {
        self.sweedler_sum(a, 2, |al| {
            let s_a1 = self.antipode_s(&al[0])?;
            self.sweedler_sum(b, 2, |bl| {
                let mid = self.circ_mul(&al[1], &bl[0])?;
                self.dot_mul(&self.dot_mul(&s_a1, &mid)?, &self.antipode_s(&bl[1])?)
            })
        })
    }

    /// `·`-commutator `[a, b] = a₁·b₁·S(a₂)·S(b₂)`.
    pub fn dot_commutator(&self, a: &Element, b: &Element) -> Result<Element, HopfError> {
        self.sweedler_sum(a, 2, |al| {
            self.sweedler_sum(b, 2, |bl| {
                let ab = self.dot_mul(&al[0], &bl[0])?;
                let inv = self.dot_mul(&self.antipode_s(&al[1])?, &self.antipode_s(&bl[1])?)?;
                self.dot_mul(&ab, &inv)
            })
        })
    }

    /// `m ∘ (S ⊗ id) ∘ Δ`, which must equal `ε(x)1`.
    pub fn antipode_s_left(&self, x: &Element) -> Result<Element, HopfError> {
        let t = self.comultiply(x)?;
        Ok(t.contract(
            |e| self.antipode_s(e).expect("checked"),
            Clone::clone,
            |l, r| self.dot_mul(l, r).expect("checked"),
        ))
    }

    /// `m ∘ (id ⊗ S) ∘ Δ`.
    pub fn antipode_s_right(&self, x: &Element) -> Result<Element, HopfError> {
        let t = self.comultiply(x)?;
        Ok(t.contract(
            Clone::clone,
            |e| self.antipode_s(e).expect("checked"),
            |l, r| self.dot_mul(l, r).expect("checked"),
        ))
    }

    /// `m• ∘ (T ⊗ id) ∘ Δ`.
    pub fn antipode_t_left(&self, x: &Element) -> Result<Element, HopfError> {
        let t = self.comultiply(x)?;
        Ok(t.contract(
            |e| self.antipode_t(e).expect("checked"),
            Clone::clone,
            |l, r| self.circ_mul(l, r).expect("checked"),
        ))
    }

    /// `m• ∘ (id ⊗ T) ∘ Δ`.
    pub fn antipode_t_right(&self, x: &Element) -> Result<Element, HopfError> {
        let t = self.comultiply(x)?;
        Ok(t.contract(
            Clone::clone,
            |e| self.antipode_t(e).expect("checked"),
            |l, r| self.circ_mul(l, r).expect("checked"),
        ))
    }

    /// `(ε ⊗ id)(t)` and `(id ⊗ ε)(t)`.
    pub fn counit_legs(&self, t: &Tensor2) -> (Element, Element) {
        let mut left = self.zero();
        let mut right = self.zero();
        for ((i, j), c) in t.entries() {
            left.coeffs.add_at(j, c);
            right.coeffs.add_at(i, c);
        }
        (left, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dihedral_group, symmetric_group};
    use crate::linalg::{int, rat};

    fn c4() -> HopfBrace {
        HopfBrace::new(SkewBrace::radical_c4())
    }

    #[test]
    fn products_on_basis() {
        let h = c4();
        assert_eq!(h.circ_mul(&h.basis(1), &h.basis(1)).unwrap(), h.basis(0));
        for g in 0..4 {
            let inv = h.base().dot().inv(g);
            assert_eq!(h.dot_mul(&h.basis(g), &h.basis(inv)).unwrap(), h.one());
        }
        let x = h.basis(1).sum(&h.basis(2).scaled(&int(2)));
        let expected = h.basis(2).sum(&h.basis(3).scaled(&int(2)));
        assert_eq!(h.dot_mul(&x, &h.basis(1)).unwrap(), expected);
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let h = c4();
        let other = Element::basis(5, 0);
        assert_eq!(
            h.dot_mul(&h.one(), &other),
            Err(HopfError::BasisMismatch { expected: 4, found: 5 })
        );
        assert!(h.counit(&other).is_err());
    }

    #[test]
    fn coalgebra_structure() {
        let h = c4();
        let d = h.comultiply(&h.basis(3)).unwrap();
        assert_eq!(d, Tensor2::outer(&h.basis(3), &h.basis(3)));
        let x = h.basis(1).scaled(&int(3)).sum(&h.basis(2).scaled(&int(-1)));
        assert_eq!(h.counit(&x).unwrap(), int(2));
        let y = h.basis(0).scaled(&rat(1, 3)).sum(&h.basis(3).scaled(&rat(-5, 2)));
        let (l, r) = h.counit_legs(&h.comultiply(&y).unwrap());
        assert_eq!(l, y);
        assert_eq!(r, y);
    }

    #[test]
    fn antipodes() {
        let h = c4();
        for g in 0..4 {
            assert_eq!(h.antipode_t(&h.basis(g)).unwrap(), h.basis(g));
        }
        assert_eq!(h.antipode_s(&h.basis(1)).unwrap(), h.basis(3));
        assert_eq!(h.antipode_s(&h.one()).unwrap(), h.one());
    }

    #[test]
    fn action_examples() {
        let h = c4();
        assert_eq!(h.act_left(&h.basis(1), &h.basis(1)).unwrap(), h.basis(3));
        let t = HopfBrace::new(SkewBrace::trivial(dihedral_group(4).unwrap()));
        let a = t.basis(3).scaled(&int(2)).sum(&t.basis(5));
        let b = t.basis(1).sum(&t.basis(6).scaled(&rat(1, 2)));
        let eps = t.counit(&a).unwrap();
        assert_eq!(t.act_left(&a, &b).unwrap(), b.scaled(&eps));
        let sum = h.basis(1).sum(&h.basis(2));
        assert_eq!(
            h.act_left(&sum, &h.basis(3)).unwrap(),
            h.basis(h.base().lambda(1, 3)).sum(&h.basis(h.base().lambda(2, 3)))
        );
    }

    #[test]
    fn star_examples() {
        let h = c4();
        assert_eq!(h.star(&h.basis(1), &h.basis(1)).unwrap(), h.basis(2));
        for b in 0..4 {
            assert_eq!(h.star(&h.basis(2), &h.basis(b)).unwrap(), h.basis(0));
        }
        let t = HopfBrace::new(SkewBrace::trivial(symmetric_group(3).unwrap()));
        let a = t.basis(1).scaled(&int(2)).sum(&t.basis(4).scaled(&int(-3)));
        let b = t.basis(2).scaled(&rat(1, 2)).sum(&t.basis(5));
        let expected = t.one().scaled(&(t.counit(&a).unwrap() * t.counit(&b).unwrap()));
        assert_eq!(t.star(&a, &b).unwrap(), expected);
    }

    #[test]
    fn sweedler_of_group_like_is_diagonal() {
        let h = c4();
        let x = h.basis(1).scaled(&int(2)).sum(&h.basis(3));
        let terms = h.sweedler(&x, 3).unwrap();
        assert_eq!(terms.len(), 2);
        for (_, legs) in &terms {
            assert_eq!(legs.len(), 3);
            assert!(legs.iter().all(|l| l == &legs[0]));
        }
    }

    #[test]
    fn prime_mode_guards() {
        let b = SkewBrace::radical_c4();
        assert_eq!(
            HopfBrace::with_prime(b.clone(), 2),
            Err(HopfError::PrimeDividesOrder { p: 2, order: 4 })
        );
        assert_eq!(HopfBrace::with_prime(b.clone(), 9), Err(HopfError::NotPrime { p: 9 }));
        let h = HopfBrace::with_prime(b, 5).unwrap();
        assert_eq!(h.field(), Field::Prime(5));
        assert!(Value::Scalar(int(7)).equals_in(&Value::Scalar(int(2)), Field::Prime(5)));
        assert!(!Value::Scalar(int(7)).equals_in(&Value::Scalar(int(2)), Field::Rationals));
    }
}
