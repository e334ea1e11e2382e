//! Cocommutative Hopf braces obtained by linearizing finite skew braces.
//!
//! A skew brace `(G, ·, ∘)` linearizes to the group algebra `k[G]` with the
//! diagonal comultiplication and both products extended bilinearly. This
//! crate computes the `⋆`-product, the left, right and Γ series, socle and
//! annihilator, relative and Huq commutators, the abelianisations `F(H)` and
//! `ab(H)`, and central-extension verdicts, all over exact rationals.

pub mod brace;
pub mod catalog;
pub mod error;
pub mod extensions;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod propositions;
pub mod series;
pub mod subobjects;
pub mod verify;

pub use brace::{BraceError, BraceMapSet, Operation, SkewBrace};
pub use catalog::{builtin_catalog, BraceDescriptor, CatalogEntry, CatalogError};
pub use error::{Error, Result};
pub use extensions::ExtensionReport;
pub use group::{FiniteGroup, GroupError, SubgroupSet};
pub use hopf::{Element, Field, HopfBrace, HopfError, Tensor2, Value};
pub use linalg::{Rational, SparseVector, Subspace};
pub use series::{NilpotencyReport, SeriesKind, SeriesResult, SocAnnResult};
pub use subobjects::{HopfMorphism, Subbrace};
