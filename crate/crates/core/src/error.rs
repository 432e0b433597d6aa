use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("kernels are only defined on equal occupations, got |{n1},{n2}>")]
    UnequalOccupation { n1: u32, n2: u32 },

    #[error("invalid model parameter: {0}")]
    InvalidParams(String),

    #[error("state is not normalized (sum of squared moduli = {norm_sq})")]
    Unnormalized { norm_sq: f64 },

    #[error("invalid block basis: {0}")]
    InvalidBasis(String),

    #[error("amplitude basis matches neither W-like family")]
    UnknownFamily,

    #[error("not a density matrix: {0}")]
    NotADensityMatrix(String),

    #[error("concurrence series is empty")]
    EmptySeries,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
