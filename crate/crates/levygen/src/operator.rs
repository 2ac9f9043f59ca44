//! The discrete generator as a convolution, semi-discrete transform
//! diagnostics, the continuous-operator quadrature reference, and the
//! convergence-study harness.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{LevyError, Result};
use crate::kahan::KahanSum;
use crate::quad;
use crate::symbols::{psi_exact, SchemeKind, StableParams};
use crate::weights::{self, WeightTable};

/// Test functions are sampled on [-W, W] with W = 8 before applying the
/// discrete operator; the window is wide enough that the neglected tail of a
/// Gaussian is far below every tolerance used here.
pub const SAMPLING_HALF_WIDTH: f64 = 8.0;

/// Uniformly sampled function on a contiguous index window, implicitly zero
/// outside (compact support convention).
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    h: f64,
    j_lo: i64,
    samples: Vec<f64>,
}

impl GridFunction {
    pub fn new(h: f64, j_lo: i64, samples: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(LevyError::contract(format!(
                "GridFunction: h = {h} must be positive"
            )));
        }
        if samples.is_empty() {
            return Err(LevyError::contract(
                "GridFunction: empty sample window".to_string(),
            ));
        }
        if let Some(bad) = samples.iter().find(|s| !s.is_finite()) {
            return Err(LevyError::contract(format!(
                "GridFunction: non-finite sample {bad}"
            )));
        }
        Ok(Self { h, j_lo, samples })
    }

    /// Sample `f` at the grid points `j h` for `j` in `[j_lo, j_hi]`.
    pub fn from_fn(h: f64, j_lo: i64, j_hi: i64, f: impl Fn(f64) -> f64) -> Result<Self> {
        if j_hi < j_lo {
            return Err(LevyError::contract(format!(
                "GridFunction: empty window [{j_lo}, {j_hi}]"
            )));
        }
        let samples = (j_lo..=j_hi).map(|j| f(j as f64 * h)).collect();
        Self::new(h, j_lo, samples)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn j_lo(&self) -> i64 {
        self.j_lo
    }

    pub fn j_hi(&self) -> i64 {
        self.j_lo + self.samples.len() as i64 - 1
    }

    pub fn x(&self, j: i64) -> f64 {
        j as f64 * self.h
    }

    /// Sample value, zero outside the window.
    pub fn get(&self, j: i64) -> f64 {
        if j < self.j_lo || j > self.j_hi() {
            0.0
        } else {
            self.samples[(j - self.j_lo) as usize]
        }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let j0 = self.j_lo;
        self.samples.iter().enumerate().map(move |(i, v)| (j0 + i as i64, *v))
    }
}

fn check_apply_contract(
    table: &WeightTable,
    u: &GridFunction,
    out: (i64, i64),
    context: &str,
) -> Result<()> {
    if table.h() != u.h() {
        return Err(LevyError::contract(format!(
            "{context}: table grid h = {} does not match function grid h = {}",
            table.h(),
            u.h()
        )));
    }
    let (lo, hi) = out;
    if hi < lo {
        return Err(LevyError::contract(format!(
            "{context}: empty output window [{lo}, {hi}]"
        )));
    }
    let needed = (hi - u.j_lo()).max(u.j_hi() - lo).max(0) as usize;
    if table.half_width() < needed {
        return Err(LevyError::contract(format!(
            "{context}: table half-width {} < {} required to cover all interactions \
             (no silent truncation)",
            table.half_width(),
            needed
        )));
    }
    Ok(())
}

/// Apply the discrete generator: `(A_h u)_j = sum_k w_{j-k} u_k` over the
/// support of `u`, evaluated on `u`'s own window.
///
/// The table must be wide enough to cover every interaction; an insufficient
/// half-width is a contract error, never a silent truncation.
pub fn apply(table: &WeightTable, u: &GridFunction) -> Result<GridFunction> {
    apply_on_window(table, u, (u.j_lo(), u.j_hi()))
}

/// [`apply`] evaluated on a caller-chosen output index window.
pub fn apply_on_window(
    table: &WeightTable,
    u: &GridFunction,
    out: (i64, i64),
) -> Result<GridFunction> {
    check_apply_contract(table, u, out, "apply")?;
    let (lo, hi) = out;
    let mut samples = Vec::with_capacity((hi - lo + 1) as usize);
    for j in lo..=hi {
        let mut acc = KahanSum::new();
        for (k, uk) in u.iter() {
            acc.add(table.value(j - k) * uk);
        }
        samples.push(acc.value());
    }
    GridFunction::new(u.h(), lo, samples)
}

/// Gauge form `sum_k w_{j-k} (u_k - u_j)` over `|k - j| <= J`.
///
/// Differs from [`apply`] by exactly `u_j * sum_{|m| <= J} w_m`; the two
/// coincide in the infinite-table limit and their gap diagnoses truncation.
pub fn apply_gauge(table: &WeightTable, u: &GridFunction) -> Result<GridFunction> {
    apply_gauge_on_window(table, u, (u.j_lo(), u.j_hi()))
}

pub fn apply_gauge_on_window(
    table: &WeightTable,
    u: &GridFunction,
    out: (i64, i64),
) -> Result<GridFunction> {
    check_apply_contract(table, u, out, "apply_gauge")?;
    let (lo, hi) = out;
    let half = table.half_width() as i64;
    let mut samples = Vec::with_capacity((hi - lo + 1) as usize);
    for j in lo..=hi {
        let uj = u.get(j);
        let mut acc = KahanSum::new();
        for m in -half..=half {
            acc.add(table.value(m) * (u.get(j - m) - uj));
        }
        samples.push(acc.value());
    }
    GridFunction::new(u.h(), lo, samples)
}

/// Semi-discrete Fourier transform `u^(xi) = h sum_j e^{-i xi x_j} u_j` at
/// the requested frequencies, all of which must lie in `[-pi/h, pi/h]`.
pub fn sdft(u: &GridFunction, xi_list: &[f64]) -> Result<Vec<Complex64>> {
    let band = PI / u.h();
    let mut out = Vec::with_capacity(xi_list.len());
    for &xi in xi_list {
        if xi.abs() > band * (1.0 + 1e-12) {
            return Err(LevyError::domain(format!(
                "sdft: |xi| = {} outside the band [-pi/h, pi/h] = [±{band}]",
                xi.abs()
            )));
        }
        let mut re = KahanSum::new();
        let mut im = KahanSum::new();
        for (j, v) in u.iter() {
            let (s, c) = (-xi * u.x(j)).sin_cos();
            re.add(v * c);
            im.add(v * s);
        }
        out.push(Complex64::new(u.h() * re.value(), u.h() * im.value()));
    }
    Ok(out)
}

/// Declared decay envelope of a spectrum, used to pick the truncation point
/// of the inverse-transform reference quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayBound {
    /// `|u^(xi)| <= c (1+|xi|)^{-p}`
    Power { c: f64, p: f64 },
    /// `|u^(xi)| <= c exp(-rate |xi|)`
    Exponential { c: f64, rate: f64 },
    /// `|u^(xi)| <= c exp(-scale xi^2)`
    Gaussian { c: f64, scale: f64 },
}

/// A spectrum `xi -> u^(xi)` together with its decay bound.
pub struct SpectrumOracle {
    eval: Box<dyn Fn(f64) -> Complex64 + Send + Sync>,
    decay: DecayBound,
}

impl SpectrumOracle {
    pub fn new(eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static, decay: DecayBound) -> Self {
        Self {
            eval: Box::new(eval),
            decay,
        }
    }

    /// Spectrum of the standard Gaussian density `exp(-x^2/2)/sqrt(2 pi)`:
    /// `u^(xi) = exp(-xi^2/2)`.
    pub fn standard_gaussian() -> Self {
        Self::new(
            |xi: f64| Complex64::new((-0.5 * xi * xi).exp(), 0.0),
            DecayBound::Gaussian { c: 1.0, scale: 0.5 },
        )
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        (self.eval)(xi)
    }

    pub fn decay(&self) -> DecayBound {
        self.decay
    }
}

/// Upper bound on `int_X^inf |xi|^growth envelope(xi) dxi`, valid once X is
/// past the integrand's peak.
fn tail_bound(decay: DecayBound, growth: f64, x: f64) -> f64 {
    match decay {
        DecayBound::Power { c, p } => c * x.powf(growth + 1.0 - p) / (p - growth - 1.0),
        DecayBound::Exponential { c, rate } => {
            2.0 * c * x.powf(growth) * (-rate * x).exp() / rate
        }
        DecayBound::Gaussian { c, scale } => {
            c * x.powf(growth - 1.0) * (-scale * x * x).exp() / scale
        }
    }
}

fn truncation_limit(params: &StableParams, decay: DecayBound, tail_tol: f64) -> Result<f64> {
    let alpha = params.alpha();
    // |psi(xi)| <= coef * |xi|^growth for |xi| >= 1; the alpha = 1 logarithm
    // is absorbed into a slightly larger exponent.
    let (growth, coef) = if alpha == 1.0 {
        (1.5, 1.0 + params.beta().abs())
    } else {
        (alpha, 1.0 + (params.beta() * (alpha * PI / 2.0).tan()).abs())
    };
    if let DecayBound::Power { p, .. } = decay {
        if p < growth + 2.0 {
            return Err(LevyError::contract(format!(
                "reference_apply: declared power decay p = {p} is too weak \
                 (need p >= alpha + 2)"
            )));
        }
    }
    let mut x = 4.0f64.max((growth + 2.0) / 2.0);
    for _ in 0..200 {
        if coef * tail_bound(decay, growth, x) <= tail_tol {
            // Doubled once as safety margin.
            return Ok(2.0 * x);
        }
        x *= 2.0;
    }
    Err(LevyError::contract(
        "reference_apply: could not satisfy the tail bound; decay too weak".to_string(),
    ))
}

/// High-accuracy reference values of the continuous generator applied to a
/// function with known spectrum:
/// `(A u)(x) = (1/2 pi) int psi(xi) u^(xi) e^{i x xi} dxi`,
/// truncated where the declared decay bound pushes the tail below `tol/2`
/// and integrated adaptively to the remaining budget.
pub fn reference_apply(
    params: &StableParams,
    spectrum: &SpectrumOracle,
    x_points: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    params.require_normalized("reference_apply")?;
    if !(tol > 0.0) {
        return Err(LevyError::contract(format!(
            "reference_apply: tol = {tol} must be positive"
        )));
    }
    let limit = truncation_limit(params, spectrum.decay(), tol * PI / 2.0)?;
    let mut out = Vec::with_capacity(x_points.len());
    for &x in x_points {
        let integrand = |xi: f64| {
            let val = psi_exact(params, xi) * spectrum.eval(xi);
            let (s, c) = (x * xi).sin_cos();
            val.re * c - val.im * s
        };
        let v = quad::adaptive_with_budget(&integrand, 0.0, limit, tol * PI / 2.0, 40_000)?;
        out.push(v / PI);
    }
    Ok(out)
}

/// A test function with both a physical-space sampler and a known spectrum.
pub struct AnalyticFunction {
    value: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    spectrum: SpectrumOracle,
}

impl AnalyticFunction {
    pub fn new(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        spectrum: SpectrumOracle,
    ) -> Self {
        Self {
            value: Box::new(value),
            spectrum,
        }
    }

    /// Standard Gaussian density and its spectrum.
    pub fn standard_gaussian() -> Self {
        Self::new(
            |x: f64| (-0.5 * x * x).exp() / (2.0 * PI).sqrt(),
            SpectrumOracle::standard_gaussian(),
        )
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    pub fn spectrum(&self) -> &SpectrumOracle {
        &self.spectrum
    }
}

/// One (scheme, h) record of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub scheme: SchemeKind,
    pub h: f64,
    pub sup_error: f64,
    /// Least-squares slope of log(sup_error) against log(h), repeated on
    /// every row of the scheme's block.
    pub slope: f64,
}

/// Sup-norm error of each scheme against [`reference_apply`] on the window,
/// for each grid size, with fitted convergence slopes.
///
/// The test function is sampled on `[-8, 8]`; errors are measured at the
/// grid points inside `window`.
pub fn convergence_study(
    schemes: &[SchemeKind],
    params: &StableParams,
    func: &AnalyticFunction,
    h_list: &[f64],
    window: (f64, f64),
) -> Result<Vec<ConvergenceRow>> {
    params.require_normalized("convergence_study")?;
    if h_list.len() < 3 {
        return Err(LevyError::contract(
            "convergence_study: need at least 3 grid sizes".to_string(),
        ));
    }
    if h_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(LevyError::contract(
            "convergence_study: h_list must be strictly decreasing".to_string(),
        ));
    }
    let (a, b) = window;
    if !(a < b) {
        return Err(LevyError::contract(format!(
            "convergence_study: empty window [{a}, {b}]"
        )));
    }

    let mut per_scheme: Vec<Vec<(f64, f64)>> = vec![Vec::new(); schemes.len()];
    for &h in h_list {
        let lo = (a / h).ceil() as i64;
        let hi = (b / h).floor() as i64;
        let sample_hw = (SAMPLING_HALF_WIDTH / h).ceil() as i64;
        let u = GridFunction::from_fn(h, -sample_hw, sample_hw, |x| func.value(x))?;
        let x_pts: Vec<f64> = (lo..=hi).map(|j| j as f64 * h).collect();
        let reference = reference_apply(params, func.spectrum(), &x_pts, 1e-9)?;
        let j_need = (hi.max(-lo) + sample_hw) as usize + 1;

        for (si, &scheme) in schemes.iter().enumerate() {
            let table =
                weights::weights_for(scheme, params, h, j_need, weights::DEFAULT_QUAD_TOL)?;
            let au = apply_on_window(&table, &u, (lo, hi))?;
            let sup = au
                .samples()
                .iter()
                .zip(&reference)
                .map(|(n, r)| (n - r).abs())
                .fold(0.0f64, f64::max);
            per_scheme[si].push((h, sup));
        }
    }

    let mut rows = Vec::new();
    for (si, &scheme) in schemes.iter().enumerate() {
        let pts = &per_scheme[si];
        let slope = fit_log_slope(pts);
        for &(h, sup) in pts {
            rows.push(ConvergenceRow {
                scheme,
                h,
                sup_error: sup,
                slope,
            });
        }
    }
    Ok(rows)
}

fn fit_log_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.max(1e-300).ln()).collect();
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
