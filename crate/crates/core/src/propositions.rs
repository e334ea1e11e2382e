//! Exhaustive checks of the structural propositions on one brace.

use serde::Serialize;

use crate::error::Result;
use crate::extensions::{centrality_consequences, check_central_hopfcoc, check_central_huq};
use crate::hopf::HopfBrace;
use crate::series::{
    gamma_series, hopf_center, huq_commutator, left_series, relative_commutator, right_series, soc_ann,
    star_image_subbrace,
};
use crate::subobjects::{all_subbraces, hopf_kernel, quotient, Subbrace};

/// Subgroup lattices are enumerated up to this order.
pub const SUBGROUP_SWEEP_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Facts observed along the way that are reported rather than asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observations {
    pub soc_space_dim: usize,
    pub soc_dim: usize,
    pub ann_space_dim: usize,
    pub ann_dim: usize,
    pub soc_strict: bool,
    pub ann_strict: bool,
    /// Dimension of `{a ∈ HZ : a·b = a•b for all b}`.
    pub agree_space_dim: usize,
    /// `⋆`-triviality and product agreement cut out different spaces.
    pub soc_differs_from_agreement: bool,
    /// Whether the subgroup generated by the `⋆`-image is already normal.
    pub star_image_normal: bool,
    /// Whether `⟨H⋆H⟩` equals the relative commutator `[H, H]`.
    pub star_image_is_relative_commutator: bool,
    /// Normal subbraces whose projection is central in one sense only.
    pub hopfcoc_only_central: usize,
    pub huq_only_central: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub outcomes: Vec<PropositionOutcome>,
    pub observations: Observations,
}

impl PropositionReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&PropositionOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    pub fn first_failure(&self) -> Option<&PropositionOutcome> {
        self.outcomes.iter().find(|o| !o.passed)
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn finish(self) -> PropositionOutcome {
        PropositionOutcome {
            name: self.name,
            checked: self.checked,
            passed: self.failure.is_none(),
            detail: self.failure,
        }
    }
}

fn members(s: &Subbrace) -> String {
    format!("{:?}", s.carrier().members())
}

/// Runs every proposition check; series are computed up to `max_n` steps.
pub fn verify_propositions(h: &HopfBrace, max_n: usize) -> Result<PropositionReport> {
    let b = h.base();
    let mut outcomes = Vec::new();

    let right = right_series(h, max_n)?;
    let mut t = Tally::new("right series terms are normal (both tests)");
    for term in &right.terms {
        t.check(term.is_normal() && term.is_normal_via_star(), || members(term));
    }
    outcomes.push(t.finish());

    let left = left_series(h, max_n)?;
    let mut t = Tally::new("left series terms are strong");
    for term in &left.terms {
        t.check(term.is_strong(), || members(term));
    }
    outcomes.push(t.finish());

    let gamma = gamma_series(h, max_n)?;
    let mut t = Tally::new("gamma terms are normal and equal the Huq commutator");
    for pair in gamma.terms.windows(2) {
        let huq = huq_commutator(&pair[0], h)?;
        t.check(pair[1].is_normal() && huq == pair[1], || {
            format!("Γ = {} but Huq = {}", members(&pair[1]), members(&huq))
        });
    }
    outcomes.push(t.finish());

    let mut t = Tally::new("right and gamma series descend");
    for series in [&right, &gamma] {
        for pair in series.terms.windows(2) {
            t.check(pair[1].is_contained_in(&pair[0]), || members(&pair[1]));
        }
    }
    outcomes.push(t.finish());

    let sa = soc_ann(h)?;
    let mut t = Tally::new("Soc and Ann are normal");
    t.check(sa.soc.is_normal() && sa.soc.is_normal_via_star(), || members(&sa.soc));
    t.check(sa.ann.is_normal() && sa.ann.is_normal_via_star(), || members(&sa.ann));
    outcomes.push(t.finish());

    let mut t = Tally::new("Ann ⊆ Soc and group-like spans lie in the linear spaces");
    t.check(sa.ann.is_contained_in(&sa.soc), || members(&sa.ann));
    t.check(sa.soc_included(), || "span(Soc) ⊄ soc".to_string());
    t.check(sa.ann_included(), || "span(Ann) ⊄ ann".to_string());
    outcomes.push(t.finish());

    let mut t = Tally::new("S = T on Soc");
    for &g in sa.soc.carrier().members() {
        t.check(b.dot().inv(g) == b.circ().inv(g), || format!("element {g}"));
    }
    outcomes.push(t.finish());

    let mut t = Tally::new("Soc set is ∘-closed and Ann products are ⋆-annihilated");
    for &g in sa.soc.carrier().members() {
        for &k in sa.soc.carrier().members() {
            t.check(sa.soc.carrier().contains(b.circ().mul(g, k)), || format!("{g}∘{k}"));
        }
    }
    for &g in sa.ann.carrier().members() {
        for &k in sa.ann.carrier().members() {
            let gk = b.dot().mul(g, k);
            for a in b.elements() {
                t.check(b.star(a, gk) == b.identity(), || format!("{a}⋆({g}·{k})"));
            }
        }
    }
    outcomes.push(t.finish());

    let center = hopf_center(h);
    let mut t = Tally::new("Hopf center is strong and commutes with everything");
    t.check(center.is_strong(), || members(&center));
    for &z in center.carrier().members() {
        for g in b.elements() {
            t.check(b.dot().mul(z, g) == b.dot().mul(g, z), || format!("{z}, {g}"));
        }
    }
    outcomes.push(t.finish());

    let star_image = star_image_subbrace(h)?;
    let whole = Subbrace::whole(h);
    let relative_hh = relative_commutator(&whole, h)?;
    let mut t = Tally::new("the ⋆-image generates a ·-normal subgroup");
    t.check(b.dot().is_normal_subgroup(star_image.carrier()), || {
        members(&star_image)
    });
    outcomes.push(t.finish());

    let subbraces: Vec<Subbrace> = if b.order() <= SUBGROUP_SWEEP_LIMIT {
        all_subbraces(h)
    } else {
        let mut v: Vec<Subbrace> = right
            .terms
            .iter()
            .chain(&left.terms)
            .chain(&gamma.terms)
            .cloned()
            .collect();
        v.push(sa.soc.clone());
        v.push(sa.ann.clone());
        v.sort_by(|x, y| x.carrier().members().cmp(y.carrier().members()));
        v.dedup();
        v
    };

    let mut agree = Tally::new("both normality tests agree on every subgroup");
    let mut strong = Tally::new("normal subbraces are strong and ∘-closed");
    let mut rel = Tally::new("[I, H] is normal and contained in I for normal I");
    let mut kernels = Tally::new("quotient then Hopf kernel recovers the subbrace");
    let mut central = Tally::new("Hopf_coc centrality of H → H/I iff [I, H] = k1");
    let mut consequences = Tally::new("central projections satisfy x·h = x∘h and h·x = h∘x");
    let mut ann_central = Tally::new("quotients by subbraces of Ann are central in both senses");
    let mut hopfcoc_only_central = 0;
    let mut huq_only_central = 0;
    for sub in &subbraces {
        let normal = sub.is_normal();
        agree.check(normal == sub.is_normal_via_star(), || members(sub));
        if !normal {
            continue;
        }
        strong.check(sub.is_strong(), || members(sub));
        let circ_closed = sub
            .carrier()
            .members()
            .iter()
            .all(|&x| sub.carrier().contains(b.circ().inv(x)));
        strong.check(circ_closed, || members(sub));

        let commutator = relative_commutator(sub, h)?;
        rel.check(commutator.is_normal() && commutator.is_contained_in(sub), || {
            members(sub)
        });

        let (_, projection) = quotient(h, sub)?;
        kernels.check(&hopf_kernel(&projection)? == sub, || members(sub));

        let hopfcoc = check_central_hopfcoc(&projection)?.central;
        let huq = check_central_huq(&projection)?.central;
        central.check(hopfcoc == commutator.is_trivial(), || members(sub));
        consequences.check(centrality_consequences(&projection)?.holds(), || members(sub));
        if sub.is_contained_in(&sa.ann) {
            ann_central.check(hopfcoc && huq, || members(sub));
        }
        hopfcoc_only_central += usize::from(hopfcoc && !huq);
        huq_only_central += usize::from(huq && !hopfcoc);
    }
    outcomes.extend([
        agree.finish(),
        strong.finish(),
        rel.finish(),
        kernels.finish(),
        central.finish(),
        consequences.finish(),
        ann_central.finish(),
    ]);

    let observations = Observations {
        soc_space_dim: sa.soc_space.dimension(),
        soc_dim: sa.soc.dim(),
        ann_space_dim: sa.ann_space.dimension(),
        ann_dim: sa.ann.dim(),
        soc_strict: sa.soc_strict(),
        ann_strict: sa.ann_strict(),
        agree_space_dim: sa.agree_space.dimension(),
        soc_differs_from_agreement: sa.soc_differs_from_agreement(),
        star_image_normal: b.dot().is_normal_subgroup(star_image.carrier()),
        star_image_is_relative_commutator: star_image == relative_hh,
        hopfcoc_only_central,
        huq_only_central,
    };
    Ok(PropositionReport { outcomes, observations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::SkewBrace;
    use crate::group::symmetric_group;

    #[test]
    fn radical_c4_passes() {
        let r = verify_propositions(&HopfBrace::new(SkewBrace::radical_c4()), 10).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        assert!(r.observations.soc_strict);
        assert_eq!(r.observations.soc_space_dim, 3);
    }

    #[test]
    fn opposite_s3_passes() {
        let h = HopfBrace::new(SkewBrace::opposite(symmetric_group(3).unwrap()));
        let r = verify_propositions(&h, 10).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        assert!(
            r.outcome("both normality tests agree on every subgroup")
                .unwrap()
                .checked
                == 6
        );
    }
}
