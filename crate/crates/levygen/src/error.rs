//! Error taxonomy shared by all modules.
//!
//! `Domain` marks inputs outside a function's mathematical domain (a gamma
//! pole, an out-of-band frequency), `Contract` marks violated caller
//! obligations (grid mismatches, insufficient table width), `Accuracy` marks
//! computations that ran but could not certify the requested tolerance, and
//! `Solver`/`Estimate` mark linear-algebra and Monte Carlo failures.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum LevyError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("accuracy failure: {message} (partial result {partial:e}, error estimate {estimate:e})")]
    Accuracy {
        message: String,
        partial: f64,
        estimate: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("solver failure: {message} (condition estimate {condition:e})")]
    Solver { message: String, condition: f64 },

    #[error("estimation failure: {0}")]
    Estimate(String),
}

impl LevyError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        LevyError::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        LevyError::Contract(msg.into())
    }

    pub(crate) fn accuracy(msg: impl Into<String>, partial: f64, estimate: f64) -> Self {
        LevyError::Accuracy {
            message: msg.into(),
            partial,
            estimate,
        }
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        LevyError::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, LevyError>;
