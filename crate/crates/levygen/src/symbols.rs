//! Process parameters, constant conversions, the exact generator symbol, and
//! the rescaled multipliers of the three schemes.
//!
//! Conventions.  With the Fourier transform `u^(xi) = int u(x) e^{-i xi x} dx`,
//! the generator of the normalized process acts as the multiplier
//!
//! ```text
//! psi(xi) = -|xi|^alpha (1 + i beta sgn(xi) tan(alpha pi/2))        alpha != 1
//! psi(xi) = -|xi| (1 + i (2 beta / pi) sgn(xi) ln|xi|)              alpha  = 1
//! ```
//!
//! and every grid scheme is a convolution whose semi-discrete symbol
//! `sum_j w_j e^{-i xi j h}` converges to [`psi_h`], which for the spectral
//! scheme equals [`psi_exact`] on the whole band (for `alpha != 1`).  The
//! Monte Carlo sampler in [`crate::montecarlo`] draws increments of the
//! process with characteristic function `exp(t psi(xi))` for this same
//! `psi`, so the finite-difference and sampling routes describe one process.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{LevyError, Result};
use crate::specfun;

pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// Stability index, skewness and scale of a 1D alpha-stable process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    alpha: f64,
    beta: f64,
    sigma: f64,
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, sigma: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(LevyError::domain(format!(
                "alpha = {alpha} must lie in (0, 2)"
            )));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(LevyError::domain(format!(
                "beta = {beta} must lie in [-1, 1]"
            )));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(LevyError::domain(format!("sigma = {sigma} must be > 0")));
        }
        Ok(Self { alpha, beta, sigma })
    }

    /// Unit-scale parameters (`sigma = 1`), the normalization every grid
    /// scheme and the exit-time solver work in.
    pub fn normalized(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn is_normalized(&self) -> bool {
        self.sigma == 1.0
    }

    pub(crate) fn require_normalized(&self, context: &str) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(LevyError::contract(format!(
                "{context}: requires sigma = 1 (got sigma = {})",
                self.sigma
            )))
        }
    }
}

/// The three weight families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Spectral,
    GrunwaldLetnikov,
    RegularizedSpectral,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 3] = [
        SchemeKind::Spectral,
        SchemeKind::GrunwaldLetnikov,
        SchemeKind::RegularizedSpectral,
    ];

    /// Short tag used by the CLI and CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            SchemeKind::Spectral => "sp",
            SchemeKind::GrunwaldLetnikov => "gl",
            SchemeKind::RegularizedSpectral => "rs",
        }
    }

    /// GL weights are singular at alpha = 1.
    pub fn supports_alpha(&self, alpha: f64) -> bool {
        match self {
            SchemeKind::GrunwaldLetnikov => alpha != 1.0,
            _ => true,
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SchemeKind {
    type Err = LevyError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sp" | "spectral" => Ok(SchemeKind::Spectral),
            "gl" | "grunwald-letnikov" | "grunwald_letnikov" => Ok(SchemeKind::GrunwaldLetnikov),
            "rs" | "regularized-spectral" | "regularized_spectral" => {
                Ok(SchemeKind::RegularizedSpectral)
            }
            other => Err(LevyError::domain(format!(
                "unknown scheme '{other}' (expected sp, gl or rs)"
            ))),
        }
    }
}

/// Jump-measure constants `C_+`, `C_-`, `C_alpha` and the drift constant K.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyConstants {
    pub c_plus: f64,
    pub c_minus: f64,
    pub c_alpha: f64,
    pub k_drift: f64,
}

/// Convert (alpha, beta, sigma) to the jump-measure constants:
/// `C_alpha = -sigma^alpha / (Gamma(-alpha) cos(pi alpha / 2))`,
/// `C_+- = C_alpha (1 +- beta)/2`, `K = (C_- - C_+)/(1 - alpha)`.
///
/// At `alpha = 1` the `C_alpha` formula hits the Gamma(-1) pole; use
/// [`levy_constants_with_scale`] with an externally supplied `C_alpha` there.
pub fn levy_constants(params: &StableParams) -> Result<LevyConstants> {
    let alpha = params.alpha();
    if alpha == 1.0 {
        return Err(LevyError::domain(
            "levy_constants: C_alpha is undefined at alpha = 1 (Gamma(-1) pole); \
             supply C_alpha explicitly via levy_constants_with_scale"
                .to_string(),
        ));
    }
    let (lg, sg) = specfun::log_gamma(-alpha)?;
    let c_alpha = -params.sigma().powf(alpha) / (sg * lg.exp() * (PI * alpha / 2.0).cos());
    Ok(constants_from_c_alpha(params, c_alpha))
}

/// Same conversion with `C_alpha` supplied by the caller; this is the only
/// route that defines the drift constant at `alpha = 1`, where
/// `K = (1 - gamma_E)(C_+ - C_-)`.
pub fn levy_constants_with_scale(params: &StableParams, c_alpha: f64) -> Result<LevyConstants> {
    if !(c_alpha > 0.0 && c_alpha.is_finite()) {
        return Err(LevyError::domain(format!(
            "levy_constants_with_scale: C_alpha = {c_alpha} must be > 0"
        )));
    }
    Ok(constants_from_c_alpha(params, c_alpha))
}

fn constants_from_c_alpha(params: &StableParams, c_alpha: f64) -> LevyConstants {
    let beta = params.beta();
    let alpha = params.alpha();
    let c_plus = c_alpha * (1.0 + beta) / 2.0;
    let c_minus = c_alpha * (1.0 - beta) / 2.0;
    let k_drift = if alpha == 1.0 {
        (1.0 - EULER_MASCHERONI) * (c_plus - c_minus)
    } else {
        (c_minus - c_plus) / (1.0 - alpha)
    };
    LevyConstants {
        c_plus,
        c_minus,
        c_alpha,
        k_drift,
    }
}

/// Exact generator symbol of the normalized process (see module docs).
///
/// `psi(0) = 0`; at `alpha = 1` the removable singularity of `|xi| ln|xi|`
/// at the origin is filled with 0.
pub fn psi_exact(params: &StableParams, xi: f64) -> Complex64 {
    assert!(
        params.is_normalized(),
        "psi_exact is defined for the normalized (sigma = 1) process"
    );
    if xi == 0.0 {
        return Complex64::ZERO;
    }
    let alpha = params.alpha();
    let beta = params.beta();
    let ax = xi.abs();
    if alpha == 1.0 {
        Complex64::new(-ax, -(2.0 * beta / PI) * xi * ax.ln())
    } else {
        let t = beta * (alpha * PI / 2.0).tan();
        let m = ax.powf(alpha);
        Complex64::new(-m, -m * t * xi.signum())
    }
}

/// Even and odd rescaled multiplier components on [-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierValue {
    pub m_e: f64,
    pub m_o: f64,
}

/// Rescaled multipliers `M_e`, `M_o` of the scheme at `xi` in [-pi, pi]
/// (for `alpha != 1`; the GL family is undefined at `alpha = 1`).
///
/// Spectral: `M_e = M_o = |xi|^alpha`.  Regularized spectral:
/// `M_e = M_o = (2 - 2 cos xi)^(alpha/2)`.  Grünwald-Letnikov (with the
/// principal branch of `(1 - e^{+-i xi})^alpha`):
///
/// ```text
/// alpha in (0,1):  M_e = cos((pi-|xi|) alpha/2) / cos(alpha pi/2) (2 sin(|xi|/2))^alpha
///                  M_o = sin((pi-|xi|) alpha/2) / sin(alpha pi/2) (2 sin(|xi|/2))^alpha
/// alpha in (1,2):  same with phase (pi-|xi|) alpha/2 + |xi|
/// ```
///
/// The (1,2) odd part uses the difference combination of
/// `e^{+-i xi}(1 - e^{-+i xi})^alpha`, which keeps `M_o` the genuinely odd
/// component; this is cross-validated against the semi-discrete transform of
/// the GL weight table in the test suite.
pub fn rescaled_multiplier(scheme: SchemeKind, alpha: f64, xi: f64) -> Result<MultiplierValue> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(LevyError::domain(format!(
            "rescaled_multiplier: alpha = {alpha} outside (0, 2)"
        )));
    }
    let ax = xi.abs();
    if ax > PI * (1.0 + 1e-12) {
        return Err(LevyError::domain(format!(
            "rescaled_multiplier: |xi| = {ax} exceeds pi"
        )));
    }
    let ax = ax.min(PI);
    match scheme {
        SchemeKind::Spectral => {
            let m = ax.powf(alpha);
            Ok(MultiplierValue { m_e: m, m_o: m })
        }
        SchemeKind::RegularizedSpectral => {
            let m = (2.0 - 2.0 * ax.cos()).max(0.0).powf(alpha / 2.0);
            Ok(MultiplierValue { m_e: m, m_o: m })
        }
        SchemeKind::GrunwaldLetnikov => {
            if alpha == 1.0 {
                return Err(LevyError::unsupported(
                    "GL multipliers are singular at alpha = 1".to_string(),
                ));
            }
            let amp = (2.0 * (ax / 2.0).sin()).powf(alpha);
            let phase = if alpha < 1.0 {
                (PI - ax) * alpha / 2.0
            } else {
                (PI - ax) * alpha / 2.0 + ax
            };
            let half = alpha * PI / 2.0;
            Ok(MultiplierValue {
                m_e: amp * phase.cos() / half.cos(),
                m_o: amp * phase.sin() / half.sin(),
            })
        }
    }
}

/// Semi-discrete symbol of the scheme on grid `h`: the function the
/// semi-discrete transform of the weight table converges to as the table
/// half-width grows.  For the spectral scheme with `alpha != 1` this equals
/// [`psi_exact`] on the whole band `[-pi/h, pi/h]`.
///
/// At `alpha = 1` the odd kernel `xi ln|xi|` is not scale-homogeneous, so
/// the `h`-rescaled tables carry a `ln h` drift in their symbol:
/// `psi_h(xi) = -|xi| - i (2 beta/pi) xi ln(h |xi|)` for the spectral family
/// (and its regularized analogue), which reduces to `psi_exact` at `h = 1`.
pub fn psi_h(scheme: SchemeKind, params: &StableParams, h: f64, xi: f64) -> Result<Complex64> {
    params.require_normalized("psi_h")?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(LevyError::contract(format!("psi_h: h = {h} must be > 0")));
    }
    if xi.abs() > (PI / h) * (1.0 + 1e-12) {
        return Err(LevyError::domain(format!(
            "psi_h: |xi| = {} exceeds the band limit pi/h = {}",
            xi.abs(),
            PI / h
        )));
    }
    if xi == 0.0 {
        return Ok(Complex64::ZERO);
    }
    let alpha = params.alpha();
    let beta = params.beta();
    if alpha == 1.0 {
        let theta = (h * xi.abs()).min(PI);
        return match scheme {
            SchemeKind::GrunwaldLetnikov => Err(LevyError::unsupported(
                "GL scheme is not defined at alpha = 1".to_string(),
            )),
            SchemeKind::Spectral => Ok(Complex64::new(
                -xi.abs(),
                -(2.0 * beta / PI) * xi * (h * xi.abs()).ln(),
            )),
            SchemeKind::RegularizedSpectral => {
                let m = (2.0 - 2.0 * theta.cos()).max(0.0).sqrt() / h;
                Ok(Complex64::new(
                    -m,
                    -(2.0 * beta / PI) * m * theta.ln() * xi.signum(),
                ))
            }
        };
    }
    let m = rescaled_multiplier(scheme, alpha, h * xi)?;
    let scale = h.powf(-alpha);
    let t = beta * (alpha * PI / 2.0).tan();
    Ok(Complex64::new(
        -scale * m.m_e,
        -scale * m.m_o * t * xi.signum(),
    ))
}
