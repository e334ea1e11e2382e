//! Hopf subbraces of a linearized brace.
//!
//! In characteristic zero the Hopf subalgebras of `k[G]` are exactly the
//! subgroup algebras `k[K]`, so a subbrace is stored as the subgroup `K` of the
//! `·`-group. Generators are always group-like.

use std::fmt;
use std::sync::OnceLock;

use crate::brace::BraceMapSet;
use crate::error::{Error, Result};
use crate::group::SubgroupSet;
use crate::hopf::{Element, HopfBrace};

/// `k[K]` for a subgroup `K` of the `·`-group, with lazily computed
/// strongness and normality flags.
#[derive(Clone)]
pub struct Subbrace {
    parent: HopfBrace,
    carrier: SubgroupSet,
    strong: OnceLock<bool>,
    normal: OnceLock<bool>,
}

impl PartialEq for Subbrace {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.parent == other.parent
    }
}

impl Eq for Subbrace {}

impl fmt::Debug for Subbrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subbrace")
            .field("carrier", &self.carrier.members())
            .field("strong", &self.strong.get())
            .field("normal", &self.normal.get())
            .finish()
    }
}

/// Why a subgroup fails to be a normal subbrace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalityFailure {
    /// `b₁∘b₂` leaves the carrier.
    CircNotClosed { left: usize, right: usize },
    /// `a·b·a⁻¹` leaves the carrier.
    DotConjugate { member: usize, by: usize },
    /// `a∘b∘a⁻¹` leaves the carrier.
    CircConjugate { member: usize, by: usize },
    /// `λ_a(b)` leaves the carrier.
    Lambda { member: usize, by: usize },
    /// `a⋆b` leaves the carrier.
    StarLeft { member: usize, by: usize },
    /// `b⋆a` leaves the carrier.
    StarRight { member: usize, by: usize },
}

impl fmt::Display for NormalityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NormalityFailure::CircNotClosed { left, right } => {
                write!(f, "{left}∘{right} leaves the carrier")
            }
            NormalityFailure::DotConjugate { member, by } => {
                write!(f, "·-conjugate of {member} by {by} leaves the carrier")
            }
            NormalityFailure::CircConjugate { member, by } => {
                write!(f, "∘-conjugate of {member} by {by} leaves the carrier")
            }
            NormalityFailure::Lambda { member, by } => write!(f, "λ_{by}({member}) leaves the carrier"),
            NormalityFailure::StarLeft { member, by } => write!(f, "{by}⋆{member} leaves the carrier"),
            NormalityFailure::StarRight { member, by } => write!(f, "{member}⋆{by} leaves the carrier"),
        }
    }
}

impl Subbrace {
    /// Wraps a subgroup of the `·`-group.
    pub fn from_subgroup(parent: &HopfBrace, carrier: SubgroupSet) -> Result<Self> {
        if !carrier.is_subgroup_of(parent.base().dot()) {
            return Err(Error::NotSubgroup {
                members: carrier.members().to_vec(),
            });
        }
        Ok(Self::new_unchecked(parent, carrier))
    }

    fn new_unchecked(parent: &HopfBrace, carrier: SubgroupSet) -> Self {
        Subbrace {
            parent: parent.clone(),
            carrier,
            strong: OnceLock::new(),
            normal: OnceLock::new(),
        }
    }

    pub fn whole(parent: &HopfBrace) -> Self {
        Self::new_unchecked(parent, parent.base().dot().whole())
    }

    /// The trivial subbrace `k1`.
    pub fn trivial(parent: &HopfBrace) -> Self {
        Self::new_unchecked(parent, parent.base().dot().trivial_subgroup())
    }

    pub fn parent(&self) -> &HopfBrace {
        &self.parent
    }

    pub fn carrier(&self) -> &SubgroupSet {
        &self.carrier
    }

    /// Dimension of `k[K]`.
    pub fn dim(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.carrier.is_trivial()
    }

    pub fn is_whole(&self) -> bool {
        self.carrier.len() == self.parent.dim()
    }

    pub fn is_contained_in(&self, other: &Subbrace) -> bool {
        self.carrier.is_subset_of(&other.carrier)
    }

    /// Whether `x` lies in `k[K]`.
    pub fn contains_element(&self, x: &Element) -> bool {
        x.terms().all(|(g, _)| self.carrier.contains(g))
    }

    /// Cached strongness flag, `None` if not computed yet.
    pub fn strong_flag(&self) -> Option<bool> {
        self.strong.get().copied()
    }

    pub fn normal_flag(&self) -> Option<bool> {
        self.normal.get().copied()
    }

    /// Stable under `h ⇀ -` for every `h`.
    pub fn is_strong(&self) -> bool {
        *self.strong.get_or_init(|| self.lambda_witness().is_none())
    }

    fn lambda_witness(&self) -> Option<NormalityFailure> {
        let b = self.parent.base();
        let mask = self.carrier.mask(b.order());
        for &member in self.carrier.members() {
            for by in b.elements() {
                if !mask[b.lambda(by, member)] {
                    return Some(NormalityFailure::Lambda { member, by });
                }
            }
        }
        None
    }

    /// First violated condition of the definition of a normal subbrace:
    /// closed under `∘`, normal for `·`, normal for `∘`, stable under `⇀`.
    pub fn normality_failure(&self) -> Option<NormalityFailure> {
        let b = self.parent.base();
        let mask = self.carrier.mask(b.order());
        let members = self.carrier.members();
        for &left in members {
            for &right in members {
                if !mask[b.circ().mul(left, right)] {
                    return Some(NormalityFailure::CircNotClosed { left, right });
                }
            }
        }
        if let Some((member, by)) = b.dot().normality_witness(&self.carrier) {
            return Some(NormalityFailure::DotConjugate { member, by });
        }
        if let Some((member, by)) = b.circ().normality_witness(&self.carrier) {
            return Some(NormalityFailure::CircConjugate { member, by });
        }
        self.lambda_witness()
    }

    /// The three defining conditions of normality.
    pub fn is_normal(&self) -> bool {
        *self.normal.get_or_init(|| self.normality_failure().is_none())
    }

    /// First violated condition of the `⋆` characterization: normal for `·`,
    /// and `a⋆b`, `b⋆a` stay in the carrier.
    pub fn star_normality_failure(&self) -> Option<NormalityFailure> {
        let b = self.parent.base();
        let mask = self.carrier.mask(b.order());
        if let Some((member, by)) = b.dot().normality_witness(&self.carrier) {
            return Some(NormalityFailure::DotConjugate { member, by });
        }
        for &member in self.carrier.members() {
            for by in b.elements() {
                if !mask[b.star(by, member)] {
                    return Some(NormalityFailure::StarLeft { member, by });
                }
                if !mask[b.star(member, by)] {
                    return Some(NormalityFailure::StarRight { member, by });
                }
            }
        }
        None
    }

    /// Normality through the `⋆` characterization; never touches the cache.
    pub fn is_normal_via_star(&self) -> bool {
        self.star_normality_failure().is_none()
    }

    pub(crate) fn require_normal(&self) -> Result<()> {
        match self.normality_failure() {
            None => {
                let _ = self.normal.set(true);
                Ok(())
            }
            Some(failure) => {
                let _ = self.normal.set(false);
                Err(Error::NotNormal {
                    reason: failure.to_string(),
                })
            }
        }
    }

    pub(crate) fn require_parent(&self, h: &HopfBrace) -> Result<()> {
        if &self.parent != h {
            return Err(Error::ForeignSubbrace);
        }
        Ok(())
    }
}

/// The Hopf subalgebra of `H·` generated by group-like elements.
pub fn generated_subbrace<I>(h: &HopfBrace, gens: I) -> Result<Subbrace>
where
    I: IntoIterator<Item = usize>,
{
    h.require_rationals("subbrace generation")?;
    let carrier = h.base().dot().subgroup_generated(gens)?;
    Ok(Subbrace::new_unchecked(h, carrier))
}

/// Normal closure in the `·`-group of group-like generators.
pub fn normal_closure_subbrace<I>(h: &HopfBrace, gens: I) -> Result<Subbrace>
where
    I: IntoIterator<Item = usize>,
{
    h.require_rationals("subbrace generation")?;
    let carrier = h.base().dot().normal_closure(gens)?;
    Ok(Subbrace::new_unchecked(h, carrier))
}

/// Every subbrace backed by a subgroup of the `·`-group.
pub fn all_subbraces(h: &HopfBrace) -> Vec<Subbrace> {
    h.base()
        .dot()
        .all_subgroups()
        .into_iter()
        .map(|c| Subbrace::new_unchecked(h, c))
        .collect()
}

/// A morphism of linearized braces, the linear extension of a brace map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfMorphism {
    map: BraceMapSet,
    source: HopfBrace,
    target: HopfBrace,
}

impl HopfMorphism {
    /// Validates the underlying set map as a brace morphism.
    pub fn new(map: BraceMapSet) -> Result<Self> {
        if !map.is_morphism() {
            return Err(crate::brace::BraceError::InvalidMorphism.into());
        }
        Ok(HopfMorphism {
            source: HopfBrace::new(map.source().clone()),
            target: HopfBrace::new(map.target().clone()),
            map,
        })
    }

    pub fn identity(h: &HopfBrace) -> Self {
        HopfMorphism {
            map: BraceMapSet::identity(h.base()),
            source: h.clone(),
            target: h.clone(),
        }
    }

    pub fn map(&self) -> &BraceMapSet {
        &self.map
    }

    pub fn source(&self) -> &HopfBrace {
        &self.source
    }

    pub fn target(&self) -> &HopfBrace {
        &self.target
    }

    /// Linear extension on elements.
    pub fn apply(&self, x: &Element) -> Element {
        let mut out = self.target.zero();
        for (g, c) in x.terms() {
            out.add_scaled(c, &self.target.basis(self.map.apply(g)));
        }
        out
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_surjective()
    }

    pub(crate) fn require_surjective(&self) -> Result<()> {
        if self.is_surjective() {
            return Ok(());
        }
        let mut image: Vec<usize> = self.map.images().to_vec();
        image.sort_unstable();
        image.dedup();
        Err(Error::NotSurjective {
            image: image.len(),
            target: self.target.dim(),
        })
    }
}

/// Quotient `H / H·B⁺` with its projection. The quotient carrier is the set
/// of cosets numbered by smallest representative.
pub fn quotient(h: &HopfBrace, b: &Subbrace) -> Result<(HopfBrace, HopfMorphism)> {
    h.require_rationals("quotient")?;
    b.require_parent(h)?;
    b.require_normal()?;
    let (q, projection) = h.base().quotient_by(b.carrier())?;
    let map = BraceMapSet::new(h.base().clone(), q.clone(), projection)?;
    let quotient = HopfBrace::new(q);
    let morphism = HopfMorphism {
        map,
        source: h.clone(),
        target: quotient.clone(),
    };
    Ok((quotient, morphism))
}

/// `Hker(f)`, the subgroup algebra of the fiber over the identity.
pub fn hopf_kernel(f: &HopfMorphism) -> Result<Subbrace> {
    let carrier = f.map.kernel()?;
    Ok(Subbrace::new_unchecked(&f.source, carrier))
}

/// Tests `x₁ ⊗ f(x₂) = x ⊗ 1` directly on an element.
pub fn satisfies_hopf_kernel_condition(f: &HopfMorphism, x: &Element) -> bool {
    use std::collections::BTreeMap;

    use num_traits::Zero;

    use crate::linalg::Rational;

    let unit = f.target.base().identity();
    let mut diff: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (g, c) in x.terms() {
        *diff.entry((g, f.map.apply(g))).or_insert_with(Rational::zero) += c;
        *diff.entry((g, unit)).or_insert_with(Rational::zero) -= c;
    }
    diff.values().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::SkewBrace;
    use crate::group::{cyclic_group, dihedral_group, permutation_elements, symmetric_group};
    use crate::linalg::{int, rat};

    fn perm_index(perm: &[usize]) -> usize {
        permutation_elements(perm.len(), false)
            .iter()
            .position(|p| p == perm)
            .unwrap()
    }

    fn c4() -> HopfBrace {
        HopfBrace::new(SkewBrace::radical_c4())
    }

    fn opposite_s3() -> HopfBrace {
        HopfBrace::new(SkewBrace::opposite(symmetric_group(3).unwrap()))
    }

    #[test]
    fn generation_examples() {
        let h = c4();
        assert!(generated_subbrace(&h, []).unwrap().is_trivial());
        let star_image = h.base().star_image();
        assert_eq!(star_image, vec![0, 2]);
        assert_eq!(generated_subbrace(&h, star_image).unwrap().carrier().members(), &[0, 2]);
        let op = opposite_s3();
        let a3 = generated_subbrace(&op, op.base().star_image()).unwrap();
        assert_eq!(a3.dim(), 3);
    }

    #[test]
    fn strongness_examples() {
        let h = c4();
        let sub = generated_subbrace(&h, [2]).unwrap();
        assert_eq!(sub.strong_flag(), None);
        assert!(sub.is_strong());
        assert_eq!(sub.strong_flag(), Some(true));

        let op = opposite_s3();
        let t = perm_index(&[1, 0, 2]);
        assert!(!generated_subbrace(&op, [t]).unwrap().is_strong());
    }

    #[test]
    fn normality_examples() {
        let op = opposite_s3();
        let a3 = generated_subbrace(&op, [perm_index(&[1, 2, 0])]).unwrap();
        assert!(a3.is_normal());
        assert!(a3.is_normal_via_star());

        let h = c4();
        let sub = generated_subbrace(&h, [2]).unwrap();
        assert!(sub.is_normal() && sub.is_normal_via_star());

        let triv = HopfBrace::new(SkewBrace::trivial(symmetric_group(3).unwrap()));
        let t = generated_subbrace(&triv, [perm_index(&[1, 0, 2])]).unwrap();
        assert!(!t.is_normal());
        assert!(!t.is_normal_via_star());
        assert!(matches!(
            t.normality_failure(),
            Some(NormalityFailure::DotConjugate { .. })
        ));
    }

    #[test]
    fn from_subgroup_rejects_non_subgroups() {
        let h = c4();
        assert!(Subbrace::from_subgroup(&h, SubgroupSet::from_members([0, 1])).is_err());
        assert!(Subbrace::from_subgroup(&h, SubgroupSet::from_members([0, 2])).is_ok());
    }

    #[test]
    fn quotient_examples() {
        let h = c4();
        let sub = generated_subbrace(&h, [2]).unwrap();
        let (q, pi) = quotient(&h, &sub).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.base().is_trivial());
        assert_eq!(hopf_kernel(&pi).unwrap(), sub);

        let (q, _) = quotient(&h, &Subbrace::trivial(&h)).unwrap();
        assert_eq!(q.base().dot(), h.base().dot());
        assert_eq!(q.base().circ(), h.base().circ());
        let (q, _) = quotient(&h, &Subbrace::whole(&h)).unwrap();
        assert_eq!(q.dim(), 1);

        let triv = HopfBrace::new(SkewBrace::trivial(symmetric_group(3).unwrap()));
        let t = generated_subbrace(&triv, [perm_index(&[1, 0, 2])]).unwrap();
        assert!(matches!(quotient(&triv, &t), Err(Error::NotNormal { .. })));
        assert!(matches!(quotient(&h, &t), Err(Error::ForeignSubbrace)));
    }

    #[test]
    fn kernel_examples() {
        let h = c4();
        assert!(hopf_kernel(&HopfMorphism::identity(&h)).unwrap().is_trivial());
        let c2 = SkewBrace::trivial(cyclic_group(2).unwrap());
        let f = HopfMorphism::new(BraceMapSet::new(h.base().clone(), c2, vec![0, 1, 0, 1]).unwrap()).unwrap();
        assert_eq!(hopf_kernel(&f).unwrap().carrier().members(), &[0, 2]);
    }

    #[test]
    fn linear_kernel_condition_matches_carrier_span() {
        let h = c4();
        let c2 = SkewBrace::trivial(cyclic_group(2).unwrap());
        let f = HopfMorphism::new(BraceMapSet::new(h.base().clone(), c2, vec![0, 1, 0, 1]).unwrap()).unwrap();
        let inside = h.basis(0).scaled(&rat(2, 3)).sum(&h.basis(2).scaled(&int(-5)));
        assert!(satisfies_hopf_kernel_condition(&f, &inside));
        let outside = inside.sum(&h.basis(1).scaled(&rat(1, 7)));
        assert!(!satisfies_hopf_kernel_condition(&f, &outside));
    }

    #[test]
    fn every_normal_subbrace_is_strong_on_d4_braces() {
        for b in [
            SkewBrace::trivial(dihedral_group(4).unwrap()),
            SkewBrace::opposite(dihedral_group(4).unwrap()),
        ] {
            let h = HopfBrace::new(b);
            for sub in all_subbraces(&h) {
                if sub.is_normal() {
                    assert!(sub.is_strong());
                }
                assert_eq!(sub.is_normal(), sub.is_normal_via_star());
            }
        }
    }
}
