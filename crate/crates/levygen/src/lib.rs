//! Finite-difference discretizations of the infinitesimal generator of 1D
//! asymmetric alpha-stable processes.
//!
//! The generator acts as a Fourier multiplier
//! `-|xi|^alpha (1 + i beta sgn(xi) tan(alpha pi / 2))` (with a logarithmic
//! odd part at `alpha = 1`).  On a uniform grid every consistent scheme is a
//! discrete convolution `(A_h u)_j = sum_k w_{j-k} u_k`, and the weight
//! families implemented here differ only in how their semi-discrete symbol
//! approximates the exact multiplier:
//!
//! * [`weights::spectral_weights`] — exact multiplier `|xi|^alpha`, weights in
//!   terms of 1F2 (and the sine integral at `alpha = 1`); spectrally accurate
//!   on smooth data.
//! * [`weights::gl_weights`] — Grünwald-Letnikov binomial weights; first-order
//!   accurate, nonnegative off center for all skewness values.
//! * [`weights::rs_weights`] — regularized multiplier `(2 - 2 cos xi)^(alpha/2)`,
//!   weights in terms of gamma ratios and 2F1(..; -1); second-order accurate.
//!
//! On top of the operator, [`exit_time`] solves the nonlocal Dirichlet problem
//! `A u = -1` on (-1, 1) via its Toeplitz linear system, and [`montecarlo`]
//! estimates the same mean first exit times by simulating stable paths with
//! the Chambers-Mallows-Stuck sampler, parameterized so that both routes
//! describe the same process.

pub mod error;
pub mod exit_time;
pub mod montecarlo;
pub mod operator;
pub mod specfun;
pub mod symbols;
pub mod weights;

mod kahan;
mod linalg;
pub mod quad;

pub use error::{LevyError, Result};
pub use symbols::{SchemeKind, StableParams};
