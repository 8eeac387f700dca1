use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("not dominant: {0}")]
    NotDominant(String),
    #[error("element does not lie in the affine Weyl group")]
    NotInAffine,
    #[error("elements belong to different root data")]
    DatumMismatch,
    #[error("point is not interior to the base alcove: {0}")]
    NotInterior(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag used in error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Guard(_) => "guard",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotARoot(_) => "not_a_root",
            Error::NotDominant(_) => "not_dominant",
            Error::NotInAffine => "not_in_affine",
            Error::DatumMismatch => "datum_mismatch",
            Error::NotInterior(_) => "not_interior",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
