//! Central-extension verdicts for surjective brace morphisms.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::subobjects::{hopf_kernel, HopfMorphism, Subbrace};

/// Which `⋆`-product left the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarSide {
    /// `kernel ⋆ element`.
    KernelLeft,
    /// `element ⋆ kernel`.
    KernelRight,
}

/// A kernel element and a source element whose `⋆`-product is not `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub kernel: usize,
    pub element: usize,
    pub side: StarSide,
    pub value: usize,
}

/// A kernel element `k` and an element `a` with `a·k`, `k·a`, `k∘a`, `a∘k`
/// not all equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuqWitness {
    pub kernel: usize,
    pub element: usize,
    pub products: [usize; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfCocVerdict {
    pub central: bool,
    pub witness: Option<StarWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuqVerdict {
    pub central: bool,
    pub witness: Option<HuqWitness>,
}

/// Both verdicts for one morphism. Neither is assumed to imply the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub morphism: HopfMorphism,
    pub surjective: bool,
    pub kernel: Subbrace,
    pub hopf_coc: HopfCocVerdict,
    pub huq: HuqVerdict,
}

impl ExtensionReport {
    pub fn central_hopfcoc(&self) -> bool {
        self.hopf_coc.central
    }

    pub fn central_huq(&self) -> bool {
        self.huq.central
    }
}

fn surjective_kernel(f: &HopfMorphism) -> Result<Subbrace> {
    f.require_surjective()?;
    hopf_kernel(f)
}

/// Central for the abelianisation adjunction iff `i⋆h = h⋆i = e` for every
/// kernel element `i`; the first failing pair is reported.
pub fn check_central_hopfcoc(f: &HopfMorphism) -> Result<HopfCocVerdict> {
    let kernel = surjective_kernel(f)?;
    let b = f.source().base();
    let e = b.identity();
    for &i in kernel.carrier().members() {
        for h in b.elements() {
            let left = b.star(i, h);
            if left != e {
                return Ok(HopfCocVerdict {
                    central: false,
                    witness: Some(StarWitness {
                        kernel: i,
                        element: h,
                        side: StarSide::KernelLeft,
                        value: left,
                    }),
                });
            }
            let right = b.star(h, i);
            if right != e {
                return Ok(HopfCocVerdict {
                    central: false,
                    witness: Some(StarWitness {
                        kernel: i,
                        element: h,
                        side: StarSide::KernelRight,
                        value: right,
                    }),
                });
            }
        }
    }
    Ok(HopfCocVerdict {
        central: true,
        witness: None,
    })
}

/// Huq-central iff `a·k = k·a = k∘a = a∘k` for every kernel element `k`.
pub fn check_central_huq(f: &HopfMorphism) -> Result<HuqVerdict> {
    let kernel = surjective_kernel(f)?;
    let b = f.source().base();
    for &k in kernel.carrier().members() {
        for a in b.elements() {
            let products = [
                b.dot().mul(a, k),
                b.dot().mul(k, a),
                b.circ().mul(k, a),
                b.circ().mul(a, k),
            ];
            if products.iter().any(|&p| p != products[0]) {
                return Ok(HuqVerdict {
                    central: false,
                    witness: Some(HuqWitness {
                        kernel: k,
                        element: a,
                        products,
                    }),
                });
            }
        }
    }
    Ok(HuqVerdict {
        central: true,
        witness: None,
    })
}

pub fn extension_report(f: &HopfMorphism) -> Result<ExtensionReport> {
    let kernel = surjective_kernel(f)?;
    Ok(ExtensionReport {
        morphism: f.clone(),
        surjective: true,
        hopf_coc: check_central_hopfcoc(f)?,
        huq: check_central_huq(f)?,
        kernel,
    })
}

/// Outcome of checking `x·h = x∘h` and `h·x = h∘x` over the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsequenceReport {
    /// Whether the morphism is central, i.e. whether a failure would
    /// contradict the theory.
    pub central_hopfcoc: bool,
    pub checked_pairs: usize,
    /// First `(x, h)` with `h` in the kernel where a product pair differs.
    pub failure: Option<(usize, usize)>,
}

impl ConsequenceReport {
    /// Passes when the morphism is not central or no failure was found.
    pub fn holds(&self) -> bool {
        !self.central_hopfcoc || self.failure.is_none()
    }
}

pub fn centrality_consequences(f: &HopfMorphism) -> Result<ConsequenceReport> {
    let kernel = surjective_kernel(f)?;
    let central = check_central_hopfcoc(f)?.central;
    let b = f.source().base();
    let mut checked_pairs = 0;
    let mut failure = None;
    'outer: for x in b.elements() {
        for &h in kernel.carrier().members() {
            checked_pairs += 1;
            if b.dot().mul(x, h) != b.circ().mul(x, h) || b.dot().mul(h, x) != b.circ().mul(h, x) {
                failure = Some((x, h));
                break 'outer;
            }
        }
    }
    Ok(ConsequenceReport {
        central_hopfcoc: central,
        checked_pairs,
        failure,
    })
}
