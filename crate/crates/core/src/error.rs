use thiserror::Error;

use crate::brace::BraceError;
use crate::group::GroupError;
use crate::hopf::HopfError;
use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("carrier {members:?} is not a subgroup of the dot group")]
    NotSubgroup { members: Vec<usize> },
    #[error("subbrace is not normal: {reason}")]
    NotNormal { reason: String },
    #[error("subbrace belongs to a different brace")]
    ForeignSubbrace,
    #[error("morphism is not surjective (image has {image} of {target} elements)")]
    NotSurjective { image: usize, target: usize },
    #[error("series length bound must be at least 1")]
    ZeroSeriesBound,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
