//! Finite skew braces: two group structures `·` and `∘` on one carrier with a
//! shared identity, satisfying `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)`.
//!
//! The set-level `λ`-action and `⋆`-operation defined here are the
//! brute-force ground truth the linearized layer is checked against.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{self, check_magma, FiniteGroup, GroupError, SubgroupSet, MAX_ORDER};

/// Which of the two multiplications an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operation {
    Dot,
    Circ,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Dot => "dot",
            Operation::Circ => "circ",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error("{operation} table is not a group: {source}")]
    NotAGroup {
        operation: Operation,
        #[source]
        source: GroupError,
    },
    #[error("tables have different orders ({dot} vs {circ})")]
    OrderMismatch { dot: usize, circ: usize },
    #[error("declared identity {declared} is not the {operation} identity (fails on {witness})")]
    IdentityMismatch {
        operation: Operation,
        declared: usize,
        witness: usize,
    },
    #[error("compatibility a∘(b·c) = (a∘b)·a⁻¹·(a∘c) fails at (a, b, c) = ({a}, {b}, {c})")]
    Compatibility { a: usize, b: usize, c: usize },
    #[error("map has {len} images for a carrier of order {order}")]
    MapLength { len: usize, order: usize },
    #[error("image {image} of element {element} is out of range for target order {order}")]
    ImageOutOfRange { element: usize, image: usize, order: usize },
    #[error("map is not a brace morphism")]
    InvalidMorphism,
    #[error(transparent)]
    Group(#[from] GroupError),
}

struct BraceTables {
    dot: FiniteGroup,
    circ: FiniteGroup,
}

/// A validated finite skew brace. Cloning is cheap.
#[derive(Clone)]
pub struct SkewBrace {
    tables: Arc<BraceTables>,
}

impl PartialEq for SkewBrace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables)
            || (self.tables.dot == other.tables.dot && self.tables.circ == other.tables.circ)
    }
}

impl Eq for SkewBrace {}

impl fmt::Debug for SkewBrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewBrace")
            .field("order", &self.order())
            .field("identity", &self.identity())
            .finish_non_exhaustive()
    }
}

/// First triple violating the brace compatibility, if any.
fn compatibility_witness(dot: &FiniteGroup, circ: impl Fn(usize, usize) -> usize) -> Option<(usize, usize, usize)> {
    let n = dot.order();
    for a in 0..n {
        let a_inv = dot.inv(a);
        for b in 0..n {
            let ab = circ(a, b);
            let left_part = dot.mul(ab, a_inv);
            for c in 0..n {
                let lhs = circ(a, dot.mul(b, c));
                let rhs = dot.mul(left_part, circ(a, c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Validates a pair of Cayley tables as a skew brace.
///
/// Checks run in a fixed order and the first failure is reported: the `·`
/// group axioms, the shape and identity of the `∘` table, the compatibility
/// condition, and finally the `∘` group axioms. Compatibility only needs the
/// `·` group, so a single corrupted `∘` entry is reported as a compatibility
/// failure with its witnessing triple.
pub fn validate_skew_brace(
    dot_table: Vec<Vec<usize>>,
    circ_table: Vec<Vec<usize>>,
    identity: usize,
) -> Result<SkewBrace, BraceError> {
    let dot = FiniteGroup::from_table(dot_table, identity).map_err(|source| match source {
        GroupError::IdentityMismatch { declared, witness } => BraceError::IdentityMismatch {
            operation: Operation::Dot,
            declared,
            witness,
        },
        source => BraceError::NotAGroup {
            operation: Operation::Dot,
            source,
        },
    })?;
    if circ_table.len() != dot.order() {
        return Err(BraceError::OrderMismatch {
            dot: dot.order(),
            circ: circ_table.len(),
        });
    }
    check_magma(&circ_table, identity).map_err(|source| match source {
        GroupError::IdentityMismatch { declared, witness } => BraceError::IdentityMismatch {
            operation: Operation::Circ,
            declared,
            witness,
        },
        source => BraceError::NotAGroup {
            operation: Operation::Circ,
            source,
        },
    })?;
    if let Some((a, b, c)) = compatibility_witness(&dot, |x, y| circ_table[x][y]) {
        return Err(BraceError::Compatibility { a, b, c });
    }
    let circ = FiniteGroup::from_table(circ_table, identity).map_err(|source| BraceError::NotAGroup {
        operation: Operation::Circ,
        source,
    })?;
    Ok(SkewBrace::from_parts(dot, circ))
}

impl SkewBrace {
    fn from_parts(dot: FiniteGroup, circ: FiniteGroup) -> Self {
        SkewBrace {
            tables: Arc::new(BraceTables { dot, circ }),
        }
    }

    /// Validates two already-checked groups as a brace.
    pub fn from_groups(dot: FiniteGroup, circ: FiniteGroup) -> Result<Self, BraceError> {
        if dot.order() != circ.order() {
            return Err(BraceError::OrderMismatch {
                dot: dot.order(),
                circ: circ.order(),
            });
        }
        if dot.identity() != circ.identity() {
            return Err(BraceError::IdentityMismatch {
                operation: Operation::Circ,
                declared: dot.identity(),
                witness: dot.identity(),
            });
        }
        if let Some((a, b, c)) = compatibility_witness(&dot, |x, y| circ.mul(x, y)) {
            return Err(BraceError::Compatibility { a, b, c });
        }
        Ok(Self::from_parts(dot, circ))
    }

    /// Pairs two groups on the same carrier without checking compatibility.
    ///
    /// Only meant for negative controls of the identity verifiers; every other
    /// entry point requires a validated brace.
    pub fn from_groups_unchecked(dot: FiniteGroup, circ: FiniteGroup) -> Result<Self, BraceError> {
        if dot.order() != circ.order() {
            return Err(BraceError::OrderMismatch {
                dot: dot.order(),
                circ: circ.order(),
            });
        }
        Ok(Self::from_parts(dot, circ))
    }

    pub fn order(&self) -> usize {
        self.tables.dot.order()
    }

    pub fn identity(&self) -> usize {
        self.tables.dot.identity()
    }

    pub fn dot(&self) -> &FiniteGroup {
        &self.tables.dot
    }

    pub fn circ(&self) -> &FiniteGroup {
        &self.tables.circ
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Whether `·` and `∘` coincide.
    pub fn is_trivial(&self) -> bool {
        self.tables.dot == self.tables.circ
    }

    /// `λ_a(b) = a⁻¹·(a∘b)`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.dot().mul(self.dot().inv(a), self.circ().mul(a, b))
    }

    /// `a⋆b = λ_a(b)·b⁻¹`.
    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.dot().mul(self.lambda(a, b), self.dot().inv(b))
    }

    pub fn lambda_act(&self, a: usize, b: usize) -> Result<usize, BraceError> {
        self.dot().check_index(a)?;
        self.dot().check_index(b)?;
        Ok(self.lambda(a, b))
    }

    pub fn star_set(&self, a: usize, b: usize) -> Result<usize, BraceError> {
        self.dot().check_index(a)?;
        self.dot().check_index(b)?;
        Ok(self.star(a, b))
    }

    /// Whether `λ_a` is the identity map.
    pub fn acts_trivially(&self, a: usize) -> bool {
        self.elements().all(|b| self.lambda(a, b) == b)
    }

    /// All values `a⋆b`, sorted and deduplicated.
    pub fn star_image(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .map(|(a, b)| self.star(a, b))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Brace whose `∘` is `·`.
    pub fn trivial(group: FiniteGroup) -> Self {
        Self::from_parts(group.clone(), group)
    }

    /// Brace with `a∘b = b·a`.
    pub fn opposite(group: FiniteGroup) -> Self {
        let rows: Vec<Vec<usize>> = group
            .elements()
            .map(|a| group.elements().map(|b| group.mul(b, a)).collect())
            .collect();
        let circ = FiniteGroup::from_table(rows, group.identity()).expect("the opposite of a group is a group");
        Self::from_groups(group, circ).expect("opposite brace is always compatible")
    }

    /// `Z/4` with `a·b = a+b` and `a∘b = a+b+2ab`.
    pub fn radical_c4() -> Self {
        let dot = group::cyclic_group(4).expect("order 4");
        let rows = (0..4)
            .map(|a| (0..4).map(|b| (a + b + 2 * a * b) % 4).collect())
            .collect();
        let circ = FiniteGroup::from_table(rows, 0).expect("Klein four group");
        Self::from_groups(dot, circ).expect("radical ring brace")
    }

    /// Componentwise brace on index pairs `(a, b) ↦ a·|right| + b`.
    pub fn direct_product(left: &SkewBrace, right: &SkewBrace) -> Result<Self, BraceError> {
        if left.order() * right.order() > MAX_ORDER {
            return Err(GroupError::TooLarge {
                order: left.order() * right.order(),
            }
            .into());
        }
        let dot = group::direct_product(left.dot(), right.dot())?;
        let circ = group::direct_product(left.circ(), right.circ())?;
        Self::from_groups(dot, circ)
    }

    /// Quotient by a subgroup that is normal for `·`, stable under `λ` and
    /// normal for `∘`; cosets are numbered as in
    /// [`FiniteGroup::quotient_group`].
    pub(crate) fn quotient_by(&self, normal: &SubgroupSet) -> Result<(SkewBrace, Vec<usize>), BraceError> {
        let (dot, projection) = self.dot().quotient_group(normal)?;
        let (_, reps) = self.dot().coset_projection(normal);
        let rows = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.circ().mul(a, b)]).collect())
            .collect();
        let circ = FiniteGroup::from_table(rows, dot.identity())?;
        let quotient = Self::from_groups(dot, circ)?;
        Ok((quotient, projection))
    }
}

/// A set map between two braces, candidate brace morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceMapSet {
    source: SkewBrace,
    target: SkewBrace,
    images: Vec<usize>,
}

impl BraceMapSet {
    /// Checks only the shape of `images`; see [`BraceMapSet::is_morphism`].
    pub fn new(source: SkewBrace, target: SkewBrace, images: Vec<usize>) -> Result<Self, BraceError> {
        if images.len() != source.order() {
            return Err(BraceError::MapLength {
                len: images.len(),
                order: source.order(),
            });
        }
        if let Some((element, &image)) = images.iter().enumerate().find(|(_, &i)| i >= target.order()) {
            return Err(BraceError::ImageOutOfRange {
                element,
                image,
                order: target.order(),
            });
        }
        Ok(BraceMapSet { source, target, images })
    }

    pub fn identity(brace: &SkewBrace) -> Self {
        BraceMapSet {
            source: brace.clone(),
            target: brace.clone(),
            images: brace.elements().collect(),
        }
    }

    /// Sends everything to the identity of `target`.
    pub fn zero(source: &SkewBrace, target: &SkewBrace) -> Self {
        BraceMapSet {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.identity(); source.order()],
        }
    }

    pub fn source(&self) -> &SkewBrace {
        &self.source
    }

    pub fn target(&self) -> &SkewBrace {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    /// Preserves the identity, `·` and `∘`.
    pub fn is_morphism(&self) -> bool {
        self.images[self.source.identity()] == self.target.identity()
            && self.source.dot().is_homomorphism(self.target.dot(), &self.images)
            && self.source.circ().is_homomorphism(self.target.circ(), &self.images)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Fiber over the identity.
    pub fn kernel(&self) -> Result<SubgroupSet, BraceError> {
        if !self.is_morphism() {
            return Err(BraceError::InvalidMorphism);
        }
        Ok(SubgroupSet::from_members(
            self.source
                .elements()
                .filter(|&g| self.images[g] == self.target.identity()),
        ))
    }
}

pub fn validate_morphism(f: &BraceMapSet) -> bool {
    f.is_morphism()
}

pub fn kernel_set(f: &BraceMapSet) -> Result<SubgroupSet, BraceError> {
    f.kernel()
}
