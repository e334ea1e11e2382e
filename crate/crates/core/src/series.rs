//! Series, commutators, center, socle, annihilator and abelianisations.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::SubgroupSet;
use crate::hopf::HopfBrace;
use crate::linalg::{self, Rational, SparseVector, Subspace};
use crate::subobjects::{quotient, HopfMorphism, Subbrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `H^{n+1} = H ⋆ H^n`.
    Left,
    /// `H^{(n+1)} = H^{(n)} ⋆ H`.
    Right,
    /// `Γ_{n+1} = ⟨i⋆h, h⋆i, [h,i]·⟩`.
    Gamma,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 3] = [SeriesKind::Left, SeriesKind::Right, SeriesKind::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Left => "left",
            SeriesKind::Right => "right",
            SeriesKind::Gamma => "gamma",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown series kind {0:?} (expected left, right or gamma)")]
pub struct UnknownSeriesKind(pub String);

impl FromStr for SeriesKind {
    type Err = UnknownSeriesKind;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "left" => Ok(SeriesKind::Left),
            "right" => Ok(SeriesKind::Right),
            "gamma" => Ok(SeriesKind::Gamma),
            other => Err(UnknownSeriesKind(other.to_string())),
        }
    }
}

/// A computed series, starting at the whole brace.
///
/// Computation stops at the first repeated term (`stabilized`), at `k1`
/// (`nil_class` is then the number of terms), or after `max_n` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<Subbrace>,
    pub stabilized: bool,
    pub nil_class: Option<usize>,
}

impl SeriesResult {
    pub fn sizes(&self) -> Vec<usize> {
        self.terms.iter().map(Subbrace::dim).collect()
    }

    pub fn carriers(&self) -> Vec<&SubgroupSet> {
        self.terms.iter().map(Subbrace::carrier).collect()
    }

    pub fn last(&self) -> &Subbrace {
        self.terms.last().expect("a series always has its first term")
    }
}

fn run_series<F>(h: &HopfBrace, kind: SeriesKind, max_n: usize, mut step: F) -> Result<SeriesResult>
where
    F: FnMut(&SubgroupSet) -> Result<SubgroupSet>,
{
    h.require_rationals("series computation")?;
    if max_n == 0 {
        return Err(Error::ZeroSeriesBound);
    }
    let mut terms = vec![Subbrace::whole(h)];
    let mut stabilized = false;
    for _ in 0..max_n {
        let last = terms.last().expect("non-empty");
        if last.is_trivial() {
            break;
        }
        let next = step(last.carrier())?;
        let repeat = &next == last.carrier();
        terms.push(Subbrace::from_subgroup(h, next)?);
        if repeat {
            stabilized = true;
            break;
        }
    }
    let nil_class = terms.last().filter(|t| t.is_trivial()).map(|_| terms.len());
    Ok(SeriesResult {
        kind,
        terms,
        stabilized,
        nil_class,
    })
}

/// `H^{n+1}` generated by `a⋆x` for `a ∈ H`, `x ∈ H^n`.
pub fn left_series(h: &HopfBrace, max_n: usize) -> Result<SeriesResult> {
    let b = h.base().clone();
    run_series(h, SeriesKind::Left, max_n, |prev| {
        let gens = b
            .elements()
            .flat_map(|a| prev.members().iter().map(move |&x| (a, x)))
            .map(|(a, x)| b.star(a, x));
        Ok(b.dot().subgroup_generated(gens)?)
    })
}

/// `H^{(n+1)}` generated by `x⋆a` for `x ∈ H^{(n)}`, `a ∈ H`.
pub fn right_series(h: &HopfBrace, max_n: usize) -> Result<SeriesResult> {
    let b = h.base().clone();
    run_series(h, SeriesKind::Right, max_n, |prev| {
        let gens = prev
            .members()
            .iter()
            .flat_map(|&x| b.elements().map(move |a| (x, a)))
            .map(|(x, a)| b.star(x, a));
        Ok(b.dot().subgroup_generated(gens)?)
    })
}

/// `Γ_{n+1}` generated by `i⋆h`, `h⋆i` and `[h,i]·` for `i ∈ Γ_n`.
pub fn gamma_series(h: &HopfBrace, max_n: usize) -> Result<SeriesResult> {
    let b = h.base().clone();
    run_series(h, SeriesKind::Gamma, max_n, |prev| {
        let mut gens = Vec::new();
        for &i in prev.members() {
            for g in b.elements() {
                gens.push(b.star(i, g));
                gens.push(b.star(g, i));
                gens.push(b.dot().commutator(g, i));
            }
        }
        Ok(b.dot().subgroup_generated(gens)?)
    })
}

pub fn series(h: &HopfBrace, kind: SeriesKind, max_n: usize) -> Result<SeriesResult> {
    match kind {
        SeriesKind::Left => left_series(h, max_n),
        SeriesKind::Right => right_series(h, max_n),
        SeriesKind::Gamma => gamma_series(h, max_n),
    }
}

fn require_normal_in(i: &Subbrace, h: &HopfBrace) -> Result<()> {
    h.require_rationals("commutator")?;
    i.require_parent(h)?;
    i.require_normal()
}

/// `[I, H]`: generated by `i⋆h`, `h⋆i` and the `·`-conjugates `k·(h⋆i)·k⁻¹`.
pub fn relative_commutator(i: &Subbrace, h: &HopfBrace) -> Result<Subbrace> {
    require_normal_in(i, h)?;
    let b = h.base();
    let mut gens = Vec::new();
    let mut right_stars = Vec::new();
    for &x in i.carrier().members() {
        for g in b.elements() {
            gens.push(b.star(x, g));
            right_stars.push(b.star(g, x));
        }
    }
    right_stars.sort_unstable();
    right_stars.dedup();
    for &s in &right_stars {
        for k in b.elements() {
            gens.push(b.dot().conjugate(k, s));
        }
    }
    let carrier = b.dot().subgroup_generated(gens)?;
    Subbrace::from_subgroup(h, carrier)
}

/// `[I, H]_Huq`: normal closure of `[i,h]·`, `[i,h]∘` and `i⋆h`.
pub fn huq_commutator(i: &Subbrace, h: &HopfBrace) -> Result<Subbrace> {
    require_normal_in(i, h)?;
    let b = h.base();
    let mut gens = Vec::new();
    for &x in i.carrier().members() {
        for g in b.elements() {
            gens.push(b.dot().commutator(x, g));
            gens.push(b.circ().commutator(x, g));
            gens.push(b.star(x, g));
        }
    }
    let carrier = b.dot().normal_closure(gens)?;
    Subbrace::from_subgroup(h, carrier)
}

/// `HZ(H) = k[Z(G, ·)]`.
pub fn hopf_center(h: &HopfBrace) -> Subbrace {
    Subbrace::from_subgroup(h, h.base().dot().center()).expect("the center is a subgroup")
}

/// Linear socle and annihilator spaces next to their group-like cores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocAnnResult {
    pub soc_space: Subspace,
    pub ann_space: Subspace,
    /// Elements `a ∈ HZ` with `a·b = a•b` for every `b`.
    pub agree_space: Subspace,
    pub soc: Subbrace,
    pub ann: Subbrace,
}

impl SocAnnResult {
    fn span(sub: &Subbrace) -> Subspace {
        Subspace::coordinate_span(sub.parent().dim(), sub.carrier().members().iter().copied())
            .expect("carrier indices are in range")
    }

    pub fn soc_span(&self) -> Subspace {
        Self::span(&self.soc)
    }

    pub fn ann_span(&self) -> Subspace {
        Self::span(&self.ann)
    }

    /// `span(Soc) ⊆ soc`.
    pub fn soc_included(&self) -> bool {
        self.soc_span().is_subspace_of(&self.soc_space).unwrap_or(false)
    }

    /// `span(Ann) ⊆ ann`.
    pub fn ann_included(&self) -> bool {
        self.ann_span().is_subspace_of(&self.ann_space).unwrap_or(false)
    }

    /// `soc` is strictly larger than `span(Soc)`.
    pub fn soc_strict(&self) -> bool {
        self.soc_space.dimension() > self.soc.dim()
    }

    pub fn ann_strict(&self) -> bool {
        self.ann_space.dimension() > self.ann.dim()
    }

    /// `soc` and the product-agreement space differ.
    pub fn soc_differs_from_agreement(&self) -> bool {
        self.soc_space != self.agree_space
    }
}

/// Constraint rows `Σ_{g ∈ Z : star(g) = x} c_g = 0`, one per non-identity `x`.
fn fiber_rows(
    dim: usize,
    identity: usize,
    center: &[usize],
    star: impl Fn(usize) -> usize,
    rows: &mut Vec<SparseVector>,
) {
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for &g in center {
        fibers[star(g)].push(g);
    }
    for (x, fiber) in fibers.into_iter().enumerate() {
        if x == identity || fiber.is_empty() {
            continue;
        }
        let entries = fiber.into_iter().map(|g| (g, Rational::one()));
        rows.push(SparseVector::from_entries(dim, entries).expect("indices in range"));
    }
}

/// Socle and annihilator, both as exact solution spaces of the linear
/// conditions `a⋆b = ε(a)ε(b)1` (and `b⋆a` for `ann`) over `HZ`, and as the
/// subbraces `Soc`, `Ann` on group-likes.
pub fn soc_ann(h: &HopfBrace) -> Result<SocAnnResult> {
    h.require_rationals("socle and annihilator")?;
    let b = h.base();
    let n = b.order();
    let e = b.identity();
    let center = b.dot().center();
    let in_center = center.mask(n);

    let outside_center: Vec<SparseVector> = (0..n)
        .filter(|&g| !in_center[g])
        .map(|g| SparseVector::basis(n, g).expect("in range"))
        .collect();
    let mut soc_rows = outside_center.clone();
    for y in b.elements() {
        fiber_rows(n, e, center.members(), |g| b.star(g, y), &mut soc_rows);
    }
    let mut agree_rows = outside_center;
    for y in b.elements() {
        for t in b.elements() {
            let via_dot = b.dot().mul(t, b.dot().inv(y));
            let via_circ = b.circ().mul(t, b.circ().inv(y));
            if via_dot != via_circ {
                let entries = [(via_dot, Rational::one()), (via_circ, -Rational::one())];
                agree_rows.push(SparseVector::from_entries(n, entries).expect("indices in range"));
            }
        }
    }
    let mut ann_rows = soc_rows.clone();
    for y in b.elements() {
        fiber_rows(n, e, center.members(), |g| b.star(y, g), &mut ann_rows);
    }
    let soc_space = linalg::solve_common_nullspace(&soc_rows, n)?;
    let ann_space = linalg::solve_common_nullspace(&ann_rows, n)?;
    let agree_space = linalg::solve_common_nullspace(&agree_rows, n)?;

    let soc_carrier = SubgroupSet::from_members(center.members().iter().copied().filter(|&g| b.acts_trivially(g)));
    let ann_carrier = SubgroupSet::from_members(
        soc_carrier
            .members()
            .iter()
            .copied()
            .filter(|&g| b.elements().all(|y| b.lambda(y, g) == g)),
    );
    Ok(SocAnnResult {
        soc_space,
        ann_space,
        agree_space,
        soc: Subbrace::from_subgroup(h, soc_carrier)?,
        ann: Subbrace::from_subgroup(h, ann_carrier)?,
    })
}

/// The subbrace generated by all `a⋆b`, without any normal closure.
pub fn star_image_subbrace(h: &HopfBrace) -> Result<Subbrace> {
    crate::subobjects::generated_subbrace(h, h.base().star_image())
}

/// `F(H) = H / H·(H⋆H)⁺` with its projection. The kernel is the normal
/// closure of the `⋆`-image, which coincides with the generated subgroup
/// whenever the latter is already normal.
pub fn abelianize_f(h: &HopfBrace) -> Result<(HopfBrace, HopfMorphism)> {
    let kernel = crate::subobjects::normal_closure_subbrace(h, h.base().star_image())?;
    quotient(h, &kernel)
}

/// `ab(H) = H / H·[H,H]⁺`, killing `⋆`-values and `·`-commutators.
pub fn abelianize_ab(h: &HopfBrace) -> Result<(HopfBrace, HopfMorphism)> {
    let b = h.base();
    let mut gens = b.star_image();
    for x in b.elements() {
        for y in b.elements() {
            gens.push(b.dot().commutator(x, y));
        }
    }
    let kernel = crate::subobjects::normal_closure_subbrace(h, gens)?;
    quotient(h, &kernel)
}

/// Nilpotency classes; `None` means not reached within the step bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyReport {
    pub max_n: usize,
    pub left_class: Option<usize>,
    pub right_class: Option<usize>,
    /// Least `n` with `[H^{(n)}, H] = k1`.
    pub right_commutator_class: Option<usize>,
    pub gamma_class: Option<usize>,
}

impl NilpotencyReport {
    pub fn is_nilpotent_in_some_sense(&self) -> bool {
        self.left_class.is_some()
            || self.right_class.is_some()
            || self.right_commutator_class.is_some()
            || self.gamma_class.is_some()
    }
}

pub fn nilpotency_report(h: &HopfBrace, max_n: usize) -> Result<NilpotencyReport> {
    let left = left_series(h, max_n)?;
    let right = right_series(h, max_n)?;
    let gamma = gamma_series(h, max_n)?;
    let mut right_commutator_class = None;
    for (index, term) in right.terms.iter().enumerate() {
        if relative_commutator(term, h)?.is_trivial() {
            right_commutator_class = Some(index + 1);
            break;
        }
    }
    Ok(NilpotencyReport {
        max_n,
        left_class: left.nil_class,
        right_class: right.nil_class,
        right_commutator_class,
        gamma_class: gamma.nil_class,
    })
}
