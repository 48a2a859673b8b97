use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series did not converge after {terms} terms (last term {last_term:e}, partial sum {partial})")]
    SeriesDivergence {
        terms: usize,
        last_term: f64,
        partial: Complex64,
    },

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("wavefunction is not real: max|Im| / max|psi| = {0:e}")]
    RealityViolation(f64),

    #[error("both parity projections vanish numerically")]
    NullProjection,

    #[error("missed eigenvalue: {0}")]
    Completeness(String),

    #[error("spectrum ordering violated: {0}")]
    Ordering(String),

    #[error("no classically forbidden barrier region at E = {0}")]
    NoBarrier(f64),
}

impl Error {
    /// Stable machine-readable code, used by the CLI on stderr.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "E_DOMAIN",
            Error::InvalidParameter(_) => "E_PARAM",
            Error::SeriesDivergence { .. } => "E_SERIES",
            Error::Integration(_) => "E_ODE",
            Error::RealityViolation(_) => "E_REALITY",
            Error::NullProjection => "E_PROJECTION",
            Error::Completeness(_) => "E_COMPLETENESS",
            Error::Ordering(_) => "E_ORDERING",
            Error::NoBarrier(_) => "E_NO_BARRIER",
        }
    }
}
