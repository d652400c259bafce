use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = LtsError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum LtsError {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("CFL violation: |C| = {courant} exceeds the stencil half-width k = {k}")]
    Cfl { courant: f64, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate interface u_L = u_R = {0}: the viscosity form is undefined there, use the fluctuation form")]
    DegenerateInterface(f64),

    #[error("empty state sequence")]
    EmptyStates,

    #[error("Roe average has non-positive squared sound speed {0}")]
    RoeAverage(f64),

    #[error("unphysical state: {0}")]
    Unphysical(String),

    #[error("Riemann data generates vacuum")]
    Vacuum,

    #[error("star-pressure iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("{0} is not supported")]
    Unsupported(String),

    #[error("non-finite state at step {step}, cell {cell}")]
    NonFiniteState { step: usize, cell: usize },

    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl LtsError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        LtsError::Io {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn ensure_finite(value: f64, what: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(LtsError::NonFinite(what))
    }
}
