use thiserror::Error;

/// Errors shared across the kernel and spectral modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("quadrature did not converge: {context} (estimated error {err:.3e}, budget {tol:.3e})")]
    QuadNonConvergence {
        context: &'static str,
        err: f64,
        tol: f64,
    },

    #[error("insufficient horizon: n_max = {given} but the requested time needs n_max >= {required}")]
    InsufficientHorizon { required: usize, given: usize },

    #[error("pulse outside the closed reflection algebra: {0}")]
    PulseAlgebra(String),

    #[error("self-check failed in {func}: independent routes differ by {diff:.3e} (tolerance {tol:.1e})")]
    SelfCheck {
        func: &'static str,
        diff: f64,
        tol: f64,
    },
}

impl Error {
    pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            func,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
