//! Machine checks of the Hopf brace identities.
//!
//! Every identity is multilinear in its variables, so checking it on all
//! tuples of basis elements is a complete proof for the given brace. On top of
//! that each identity is evaluated on random two-term rational combinations,
//! which exercises the Sweedler splitting and the linear extension code.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hopf::{Element, Field, HopfBrace, HopfError, Tensor2, Value};
use crate::linalg::{int, rat, Rational};

/// Default seed for random combinations, overridable per call.
pub const DEFAULT_SEED: u64 = 0x5eed_b7ac_e000_0001;

/// Default number of random combinations per identity.
pub const DEFAULT_SAMPLES: usize = 32;

type Evaluator = fn(&HopfBrace, &[Element]) -> Result<(Value, Value), HopfError>;

/// An identity `lhs(vars) = rhs(vars)` between multilinear expressions.
#[derive(Clone, Copy)]
pub struct Identity {
    pub name: &'static str,
    pub variables: &'static [&'static str],
    eval: Evaluator,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name)
    }
}

impl Identity {
    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    /// Both sides at the given arguments.
    pub fn evaluate(&self, h: &HopfBrace, args: &[Element]) -> Result<(Value, Value), HopfError> {
        assert_eq!(args.len(), self.arity(), "{}: wrong number of arguments", self.name);
        (self.eval)(h, args)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Basis indices when the failing tuple consists of basis elements.
    pub basis: Option<Vec<usize>>,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub identity: String,
    pub basis_tuples: usize,
    pub random_samples: usize,
    pub violations: usize,
    pub first_violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub outcomes: Vec<IdentityOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.violations == 0)
    }

    pub fn violation_count(&self) -> usize {
        self.outcomes.iter().map(|o| o.violations).sum()
    }

    pub fn first_violation(&self) -> Option<(&str, &Violation)> {
        self.outcomes
            .iter()
            .find_map(|o| o.first_violation.as_ref().map(|v| (o.identity.as_str(), v)))
    }
}

fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Rational {
    let mut num = 0i64;
    while num == 0 {
        num = rng.random_range(-4..=4);
    }
    match field {
        Field::Rationals => rat(num, rng.random_range(1..=3)),
        Field::Prime(_) => int(num),
    }
}

/// `c₁δ_g + c₂δ_h` with `g ≠ h` when the carrier allows it.
pub fn random_two_term(h: &HopfBrace, rng: &mut ChaCha8Rng) -> Element {
    let n = h.dim();
    let g = rng.random_range(0..n);
    let mut k = rng.random_range(0..n);
    if n > 1 {
        while k == g {
            k = rng.random_range(0..n);
        }
    }
    let mut x = h.basis(g).scaled(&random_scalar(rng, h.field()));
    x.add_scaled(&random_scalar(rng, h.field()), &h.basis(k));
    x
}

fn basis_tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

/// Checks one identity exhaustively on basis tuples and on `samples` random
/// two-term combinations.
pub fn check_identity(
    h: &HopfBrace,
    identity: &Identity,
    options: &VerifyOptions,
) -> Result<IdentityOutcome, HopfError> {
    let field = h.field();
    let mut violations = 0;
    let mut first = None;
    let mut record = |args: &[Element], basis: Option<Vec<usize>>, lhs: &Value, rhs: &Value| {
        violations += 1;
        if first.is_none() {
            first = Some(Violation {
                basis,
                inputs: args.iter().map(ToString::to_string).collect(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    };

    let mut basis_count = 0;
    for tuple in basis_tuples(h.dim(), identity.arity()) {
        let args: Vec<Element> = tuple.iter().map(|&g| h.basis(g)).collect();
        let (lhs, rhs) = identity.evaluate(h, &args)?;
        if !lhs.equals_in(&rhs, field) {
            record(&args, Some(tuple), &lhs, &rhs);
        }
        basis_count += 1;
    }

    // Each identity gets its own stream so adding identities to a suite does
    // not shift the samples of the others.
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ fxhash(identity.name));
    for _ in 0..options.samples {
        let args: Vec<Element> = (0..identity.arity()).map(|_| random_two_term(h, &mut rng)).collect();
        let (lhs, rhs) = identity.evaluate(h, &args)?;
        if !lhs.equals_in(&rhs, field) {
            record(&args, None, &lhs, &rhs);
        }
    }

    Ok(IdentityOutcome {
        identity: identity.name.to_string(),
        basis_tuples: basis_count,
        random_samples: options.samples,
        violations,
        first_violation: first,
    })
}

fn fxhash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn check_identities(
    h: &HopfBrace,
    suite: &str,
    identities: &[Identity],
    options: &VerifyOptions,
) -> Result<VerificationReport, HopfError> {
    let outcomes = identities
        .iter()
        .map(|id| check_identity(h, id, options))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerificationReport {
        suite: suite.to_string(),
        outcomes,
    })
}

fn el(x: Element) -> Value {
    Value::Element(x)
}

fn unit_times(h: &HopfBrace, c: Rational) -> Element {
    h.one().scaled(&c)
}

// ---------------------------------------------------------------------------
// Compatibility axiom

fn axiom_compatibility(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b, c) = (&v[0], &v[1], &v[2]);
    let lhs = h.circ_mul(a, &h.dot_mul(b, c)?)?;
    let rhs = h.sweedler_sum(a, 3, |l| {
        let left = h.dot_mul(&h.circ_mul(&l[0], b)?, &h.antipode_s(&l[1])?)?;
        h.dot_mul(&left, &h.circ_mul(&l[2], c)?)
    })?;
    Ok((el(lhs), el(rhs)))
}

pub const AXIOM_IDENTITIES: &[Identity] = &[Identity {
    name: "a•(b·c) = (a₁•b)·S(a₂)·(a₃•c)",
    variables: &["a", "b", "c"],
    eval: axiom_compatibility,
}];

pub fn verify_hopf_brace_axiom(h: &HopfBrace, options: &VerifyOptions) -> Result<VerificationReport, HopfError> {
    check_identities(h, "axioms", AXIOM_IDENTITIES, options)
}

// ---------------------------------------------------------------------------
// The four-clause lemma on ⋆

fn lemma_clause_1(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, x, y) = (&v[0], &v[1], &v[2]);
    let lhs = h.star(a, &h.dot_mul(x, y)?)?;
    let rhs = h.sweedler_sum(a, 2, |al| {
        h.sweedler_sum(x, 3, |xl| {
            let p = h.dot_mul(&h.star(&al[0], &xl[0])?, &xl[1])?;
            let p = h.dot_mul(&p, &h.star(&al[1], y)?)?;
            h.dot_mul(&p, &h.antipode_s(&xl[2])?)
        })
    })?;
    Ok((el(lhs), el(rhs)))
}

fn lemma_clause_2(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, x, y) = (&v[0], &v[1], &v[2]);
    let lhs = h.star(&h.circ_mul(x, y)?, a)?;
    let rhs = h.sweedler_sum(x, 2, |xl| {
        h.sweedler_sum(y, 2, |yl| {
            h.sweedler_sum(a, 3, |al| {
                let inner = h.star(&xl[0], &h.star(&yl[0], &al[0])?)?;
                let p = h.dot_mul(&inner, &h.star(&yl[1], &al[1])?)?;
                h.dot_mul(&p, &h.star(&xl[1], &al[2])?)
            })
        })
    })?;
    Ok((el(lhs), el(rhs)))
}

fn lemma_clause_3(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, x, y) = (&v[0], &v[1], &v[2]);
    let lhs = h.act_left(a, &h.star(x, y)?)?;
    let rhs = h.sweedler_sum(a, 3, |al| {
        let conj = h.circ_mul(&h.circ_mul(&al[0], x)?, &h.antipode_t(&al[1])?)?;
        h.star(&conj, &h.act_left(&al[2], y)?)
    })?;
    Ok((el(lhs), el(rhs)))
}

fn lemma_clause_4(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, x) = (&v[0], &v[1]);
    let lhs = h.sweedler_sum(a, 2, |al| h.circ_mul(&h.circ_mul(&al[0], x)?, &h.antipode_t(&al[1])?))?;
    let rhs = h.sweedler_sum(a, 4, |al| {
        let t_a3 = h.antipode_t(&al[2])?;
        let inner = h.sweedler_sum(x, 2, |xl| h.dot_mul(&xl[0], &h.star(&xl[1], &t_a3)?))?;
        let p = h.dot_mul(&al[0], &h.act_left(&al[1], &inner)?)?;
        h.dot_mul(&p, &h.antipode_s(&al[3])?)
    })?;
    Ok((el(lhs), el(rhs)))
}

pub const STAR_LEMMA_CLAUSES: [Identity; 4] = [
    Identity {
        name: "a⋆(x·y) = (a₁⋆x₁)·x₂·(a₂⋆y)·S(x₃)",
        variables: &["a", "x", "y"],
        eval: lemma_clause_1,
    },
    Identity {
        name: "(x•y)⋆a = (x₁⋆(y₁⋆a₁))·(y₂⋆a₂)·(x₂⋆a₃)",
        variables: &["a", "x", "y"],
        eval: lemma_clause_2,
    },
    Identity {
        name: "a⇀(x⋆y) = (a₁•x•T(a₂))⋆(a₃⇀y)",
        variables: &["a", "x", "y"],
        eval: lemma_clause_3,
    },
    Identity {
        name: "a₁•x•T(a₂) = a₁·(a₂⇀(x₁·(x₂⋆T(a₃))))·S(a₄)",
        variables: &["a", "x"],
        eval: lemma_clause_4,
    },
];

/// Checks one clause (1 to 4) of the `⋆` lemma.
///
/// Panics if `clause` is not in `1..=4`.
pub fn verify_star_lemma(
    h: &HopfBrace,
    clause: usize,
    options: &VerifyOptions,
) -> Result<VerificationReport, HopfError> {
    assert!((1..=4).contains(&clause), "the lemma has clauses 1 to 4");
    check_identities(
        h,
        &format!("lemma clause {clause}"),
        &STAR_LEMMA_CLAUSES[clause - 1..clause],
        options,
    )
}

// ---------------------------------------------------------------------------
// Structure identities

fn act_on_unit(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let a = &v[0];
    Ok((el(h.act_left(a, &h.one())?), el(unit_times(h, h.counit(a)?))))
}

fn act_on_product(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b, c) = (&v[0], &v[1], &v[2]);
    let lhs = h.act_left(a, &h.dot_mul(b, c)?)?;
    let rhs = h.sweedler_sum(a, 2, |l| h.dot_mul(&h.act_left(&l[0], b)?, &h.act_left(&l[1], c)?))?;
    Ok((el(lhs), el(rhs)))
}

fn act_comultiplicative(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = h.comultiply(&h.act_left(a, b)?)?;
    let mut rhs = Tensor2::zero(h.dim());
    for (ca, al) in h.sweedler(a, 2)? {
        for (cb, bl) in h.sweedler(b, 2)? {
            let t = Tensor2::outer(&h.act_left(&al[0], &bl[0])?, &h.act_left(&al[1], &bl[1])?);
            rhs.add_scaled(&(&ca * &cb), &t);
        }
    }
    Ok((Value::Tensor(lhs), Value::Tensor(rhs)))
}

fn act_counital(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = h.counit(&h.act_left(a, b)?)?;
    Ok((Value::Scalar(lhs), Value::Scalar(h.counit(a)? * h.counit(b)?)))
}

fn act_commutes_with_s(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = h.antipode_s(&h.act_left(a, b)?)?;
    let rhs = h.act_left(a, &h.antipode_s(b)?)?;
    Ok((el(lhs), el(rhs)))
}

fn act_is_module(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b, c) = (&v[0], &v[1], &v[2]);
    let lhs = h.act_left(&h.circ_mul(a, b)?, c)?;
    let rhs = h.act_left(a, &h.act_left(b, c)?)?;
    Ok((el(lhs), el(rhs)))
}

fn circ_from_dot(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = h.circ_mul(a, b)?;
    let rhs = h.sweedler_sum(a, 2, |l| h.dot_mul(&l[0], &h.act_left(&l[1], b)?))?;
    Ok((el(lhs), el(rhs)))
}

fn dot_from_circ(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = h.dot_mul(a, b)?;
    let rhs = h.sweedler_sum(a, 2, |l| h.circ_mul(&l[0], &h.act_left(&h.antipode_t(&l[1])?, b)?))?;
    Ok((el(lhs), el(rhs)))
}

fn s_from_action(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let a = &v[0];
    let rhs = h.sweedler_sum(a, 2, |l| h.act_left(&l[0], &h.antipode_t(&l[1])?))?;
    Ok((el(h.antipode_s(a)?), el(rhs)))
}

fn t_from_action(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let b = &v[0];
    let rhs = h.sweedler_sum(b, 2, |l| h.antipode_s(&h.act_left(&h.antipode_t(&l[0])?, &l[1])?))?;
    Ok((el(h.antipode_t(b)?), el(rhs)))
}

fn star_two_forms(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b) = (&v[0], &v[1]);
    let rhs = h.sweedler_sum(b, 2, |l| h.dot_mul(&h.act_left(a, &l[0])?, &h.antipode_s(&l[1])?))?;
    Ok((el(h.star(a, b)?), el(rhs)))
}

fn star_comultiplicative(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = h.comultiply(&h.star(a, b)?)?;
    let mut rhs = Tensor2::zero(h.dim());
    for (ca, al) in h.sweedler(a, 2)? {
        for (cb, bl) in h.sweedler(b, 2)? {
            let t = Tensor2::outer(&h.star(&al[0], &bl[0])?, &h.star(&al[1], &bl[1])?);
            rhs.add_scaled(&(&ca * &cb), &t);
        }
    }
    Ok((Value::Tensor(lhs), Value::Tensor(rhs)))
}

fn star_counital(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = h.counit(&h.star(a, b)?)?;
    Ok((Value::Scalar(lhs), Value::Scalar(h.counit(a)? * h.counit(b)?)))
}

fn antipode_s_laws(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let a = &v[0];
    let eps = unit_times(h, h.counit(a)?);
    let both = h.antipode_s_left(a)?.sum(&h.antipode_s_right(a)?);
    Ok((el(both), el(eps.scaled(&int(2)))))
}

fn antipode_t_laws(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let a = &v[0];
    let eps = unit_times(h, h.counit(a)?);
    let both = h.antipode_t_left(a)?.sum(&h.antipode_t_right(a)?);
    Ok((el(both), el(eps.scaled(&int(2)))))
}

fn antipodes_are_involutions(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let a = &v[0];
    let ss = h.antipode_s(&h.antipode_s(a)?)?;
    let tt = h.antipode_t(&h.antipode_t(a)?)?;
    Ok((el(ss.sum(&tt)), el(a.scaled(&int(2)))))
}

fn cocommutative(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let d = h.comultiply(&v[0])?;
    Ok((Value::Tensor(d.flip()), Value::Tensor(d)))
}

fn counit_law(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let a = &v[0];
    let (left, right) = h.counit_legs(&h.comultiply(a)?);
    Ok((el(left.sum(&right)), el(a.scaled(&int(2)))))
}

fn unit_laws(h: &HopfBrace, v: &[Element]) -> Result<(Value, Value), HopfError> {
    let a = &v[0];
    let one = h.one();
    let mut total = h.dot_mul(&one, a)?;
    for x in [h.dot_mul(a, &one)?, h.circ_mul(&one, a)?, h.circ_mul(a, &one)?] {
        total.add_scaled(&Rational::one(), &x);
    }
    Ok((el(total), el(a.scaled(&int(4)))))
}

pub const STRUCTURE_IDENTITIES: &[Identity] = &[
    Identity {
        name: "a⇀1 = ε(a)1",
        variables: &["a"],
        eval: act_on_unit,
    },
    Identity {
        name: "a⇀(b·c) = (a₁⇀b)·(a₂⇀c)",
        variables: &["a", "b", "c"],
        eval: act_on_product,
    },
    Identity {
        name: "Δ(a⇀b) = (a₁⇀b₁)⊗(a₂⇀b₂)",
        variables: &["a", "b"],
        eval: act_comultiplicative,
    },
    Identity {
        name: "ε(a⇀b) = ε(a)ε(b)",
        variables: &["a", "b"],
        eval: act_counital,
    },
    Identity {
        name: "S(a⇀b) = a⇀S(b)",
        variables: &["a", "b"],
        eval: act_commutes_with_s,
    },
    Identity {
        name: "(a•b)⇀c = a⇀(b⇀c)",
        variables: &["a", "b", "c"],
        eval: act_is_module,
    },
    Identity {
        name: "a•b = a₁·(a₂⇀b)",
        variables: &["a", "b"],
        eval: circ_from_dot,
    },
    Identity {
        name: "a·b = a₁•(T(a₂)⇀b)",
        variables: &["a", "b"],
        eval: dot_from_circ,
    },
    Identity {
        name: "S(a) = a₁⇀T(a₂)",
        variables: &["a"],
        eval: s_from_action,
    },
    Identity {
        name: "T(b) = S(T(b₁)⇀b₂)",
        variables: &["b"],
        eval: t_from_action,
    },
    Identity {
        name: "S(a₁)·(a₂•b₁)·S(b₂) = (a⇀b₁)·S(b₂)",
        variables: &["a", "b"],
        eval: star_two_forms,
    },
    Identity {
        name: "Δ(a⋆b) = (a₁⋆b₁)⊗(a₂⋆b₂)",
        variables: &["a", "b"],
        eval: star_comultiplicative,
    },
    Identity {
        name: "ε(a⋆b) = ε(a)ε(b)",
        variables: &["a", "b"],
        eval: star_counital,
    },
    Identity {
        name: "S(a₁)·a₂ + a₁·S(a₂) = 2ε(a)1",
        variables: &["a"],
        eval: antipode_s_laws,
    },
    Identity {
        name: "T(a₁)•a₂ + a₁•T(a₂) = 2ε(a)1",
        variables: &["a"],
        eval: antipode_t_laws,
    },
    Identity {
        name: "S(S(a)) + T(T(a)) = 2a",
        variables: &["a"],
        eval: antipodes_are_involutions,
    },
    Identity {
        name: "flip(Δ(a)) = Δ(a)",
        variables: &["a"],
        eval: cocommutative,
    },
    Identity {
        name: "(ε⊗id)Δ(a) + (id⊗ε)Δ(a) = 2a",
        variables: &["a"],
        eval: counit_law,
    },
    Identity {
        name: "1·a + a·1 + 1•a + a•1 = 4a",
        variables: &["a"],
        eval: unit_laws,
    },
];

pub fn verify_structure_identities(h: &HopfBrace, options: &VerifyOptions) -> Result<VerificationReport, HopfError> {
    check_identities(h, "structure", STRUCTURE_IDENTITIES, options)
}

/// Every clause of the lemma in one report.
pub fn verify_star_lemma_all(h: &HopfBrace, options: &VerifyOptions) -> Result<VerificationReport, HopfError> {
    check_identities(h, "lemma", &STAR_LEMMA_CLAUSES, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::SkewBrace;
    use crate::group::{cyclic_group, dihedral_group, symmetric_group, FiniteGroup};

    fn opts() -> VerifyOptions {
        VerifyOptions { samples: 8, seed: 7 }
    }

    #[test]
    fn radical_c4_axiom_passes_on_all_64_triples() {
        let h = HopfBrace::new(SkewBrace::radical_c4());
        let r = verify_hopf_brace_axiom(&h, &opts()).unwrap();
        assert!(r.passed());
        assert_eq!(r.outcomes[0].basis_tuples, 64);
    }

    #[test]
    fn opposite_s3_axiom_passes_on_all_216_triples() {
        let h = HopfBrace::new(SkewBrace::opposite(symmetric_group(3).unwrap()));
        let r = verify_hopf_brace_axiom(&h, &opts()).unwrap();
        assert!(r.passed());
        assert_eq!(r.outcomes[0].basis_tuples, 216);
    }

    #[test]
    fn incompatible_tables_yield_a_witness_triple() {
        // Z/4 paired with a copy of Z/4 relabelled by swapping 1 and 2: both
        // are groups, but they are not compatible.
        let dot = cyclic_group(4).unwrap();
        let sigma = [0usize, 2, 1, 3];
        let rows = (0..4)
            .map(|a| (0..4).map(|b| sigma[(sigma[a] + sigma[b]) % 4]).collect())
            .collect();
        let circ = FiniteGroup::from_table(rows, 0).unwrap();
        assert!(SkewBrace::from_groups(dot.clone(), circ.clone()).is_err());
        let h = HopfBrace::new(SkewBrace::from_groups_unchecked(dot, circ).unwrap());
        let r = verify_hopf_brace_axiom(&h, &opts()).unwrap();
        assert!(!r.passed());
        let (_, v) = r.first_violation().unwrap();
        assert_eq!(v.basis.as_ref().map(Vec::len), Some(3));
    }

    #[test]
    fn lemma_clauses_on_small_braces() {
        let c4 = HopfBrace::new(SkewBrace::radical_c4());
        let r = verify_star_lemma(&c4, 1, &opts()).unwrap();
        assert!(r.passed());
        assert_eq!(r.outcomes[0].basis_tuples, 64);
        let op = HopfBrace::new(SkewBrace::opposite(symmetric_group(3).unwrap()));
        assert!(verify_star_lemma(&op, 4, &opts()).unwrap().passed());
        let triv = HopfBrace::new(SkewBrace::trivial(symmetric_group(3).unwrap()));
        assert!(verify_star_lemma_all(&triv, &opts()).unwrap().passed());
    }

    #[test]
    fn clause_three_collapses_on_trivial_brace() {
        let h = HopfBrace::new(SkewBrace::trivial(cyclic_group(3).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let args: Vec<Element> = (0..3).map(|_| random_two_term(&h, &mut rng)).collect();
            let (lhs, rhs) = STAR_LEMMA_CLAUSES[2].evaluate(&h, &args).unwrap();
            let eps: Rational = args.iter().map(|x| h.counit(x).unwrap()).product();
            let expected = Value::Element(h.one().scaled(&eps));
            assert_eq!(lhs, expected);
            assert_eq!(rhs, expected);
        }
    }

    #[test]
    fn structure_identities_hold() {
        for b in [
            SkewBrace::radical_c4(),
            SkewBrace::trivial(dihedral_group(4).unwrap()),
            SkewBrace::opposite(symmetric_group(3).unwrap()),
        ] {
            let h = HopfBrace::new(b);
            let r = verify_structure_identities(&h, &opts()).unwrap();
            assert!(r.passed(), "{:?}", r.first_violation());
        }
    }

    #[test]
    fn prime_mode_verification_passes() {
        let h = HopfBrace::with_prime(SkewBrace::opposite(symmetric_group(3).unwrap()), 7).unwrap();
        assert!(verify_hopf_brace_axiom(&h, &opts()).unwrap().passed());
        assert!(verify_structure_identities(&h, &opts()).unwrap().passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let h = HopfBrace::new(SkewBrace::radical_c4());
        let a = verify_star_lemma_all(&h, &opts()).unwrap();
        let b = verify_star_lemma_all(&h, &opts()).unwrap();
        assert_eq!(a, b);
    }
}
