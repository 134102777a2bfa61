use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator index {0} out of range (expected 1..=8)")]
    IndexOutOfRange(usize),

    #[error("site {0} out of range (expected 1 or 2)")]
    InvalidSite(usize),

    #[error("mixing amplitudes not normalized: a1^2 + a2^2 + a3^2 = {norm_sq} (expected 1)")]
    AmplitudesNotNormalized { norm_sq: f64 },

    #[error("pair state not normalized: norm^2 = {norm_sq} (expected 1)")]
    StateNotNormalized { norm_sq: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("reduced density is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("reduced density trace is {0} (expected 1)")]
    BadTrace(f64),

    #[error("reduced density has negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("final state vanishes: |P|phi>| = {norm:e}")]
    ZeroFinalState { norm: f64 },

    #[error("unknown ladder symbol {0:?}")]
    InvalidSymbol(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
