use thiserror::Error;

/// Errors surfaced by the library operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("map is not rationally surjective: rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("fan data is invalid:\n{0}")]
    InvalidFan(String),
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("fan is not complete and no degree box was supplied")]
    NotComplete,
    #[error("unknown standard fan name `{0}`")]
    UnknownName(String),
    #[error("dimension {0} is too large for this operation (cap {1})")]
    DimensionTooLarge(usize, usize),
    #[error("unsupported ambient dimension {0} for the sheaf engine (cap 2)")]
    UnsupportedDimension(usize),
    #[error("skeleton base locus has dimension {0}; only points and circles are supported")]
    IrrationalLocus(usize),
    #[error("cell complex refinement did not stabilize after {0} rounds")]
    RefinementDiverged(usize),
    #[error("sheaves live on different cell complexes")]
    MismatchedComplex,
    #[error("cell complex is not adapted to the skeleton: {0}")]
    NonAdaptedComplex(String),
    #[error("complex is not symmetric under the requested translation")]
    NonSymmetricComplex,
    #[error("candidate generator fails the full microsupport test: {0}")]
    CodimTwoObstruction(String),
    #[error("module action is not invertible")]
    NotInvertible,
    #[error("module actions do not commute")]
    NonCommuting,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
