//! Convolution weights of the three schemes, including the `alpha = 1`
//! branches, with closed special-function paths and quadrature fallbacks.
//!
//! Every table stores `w_j` for `j = -J..J` *including* the `h^{-alpha}`
//! factor, so `(A_h u)_j = sum_k w_{j-k} u_k` applies directly.  The defining
//! frequency-side identity is
//!
//! ```text
//! w_j = -(h^{-a}/pi) int_0^pi M_e(x) cos(j x) dx
//!       + (h^{-a}/pi) beta tan(a pi/2) int_0^pi M_o(x) sin(j x) dx
//! ```
//!
//! (with the odd kernel `(2 beta/pi) S(x) ln`-variant at `alpha = 1`), so the
//! semi-discrete transform of the table converges to [`crate::symbols::psi_h`].

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{LevyError, Result};
use crate::kahan::KahanSum;
use crate::quad::{self, Trig};
use crate::specfun;
use crate::symbols::{SchemeKind, StableParams};

/// Default absolute tolerance per weight for quadrature-backed entries.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Largest |j| for which the spectral weights use the 1F2 series.  The series
/// terms peak near `exp(|j| pi)` before the alternating sum collapses, so in
/// double precision the closed form is only trustworthy for small |j|; see
/// the calibration test in `tests/weights_oracle.rs`.
pub const SPECTRAL_SERIES_LIMIT: i64 = 4;

/// Finite window of convolution weights for one (scheme, alpha, beta, h).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    scheme: SchemeKind,
    alpha: f64,
    beta: f64,
    h: f64,
    half_width: usize,
    values: Vec<f64>,
}

impl WeightTable {
    fn new(
        scheme: SchemeKind,
        params: &StableParams,
        h: f64,
        half_width: usize,
        values: Vec<f64>,
    ) -> Result<Self> {
        debug_assert_eq!(values.len(), 2 * half_width + 1);
        for (i, w) in values.iter().enumerate() {
            if !w.is_finite() {
                return Err(LevyError::accuracy(
                    format!(
                        "weight w_{} is not finite for {scheme}, alpha = {}, beta = {}",
                        i as i64 - half_width as i64,
                        params.alpha(),
                        params.beta()
                    ),
                    *w,
                    f64::INFINITY,
                ));
            }
        }
        Ok(Self {
            scheme,
            alpha: params.alpha(),
            beta: params.beta(),
            h,
            half_width,
            values,
        })
    }

    pub fn scheme(&self) -> SchemeKind {
        self.scheme
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Half-width J; the table holds `w_j` for `|j| <= J`.
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// `w_j`.  Panics if |j| exceeds the half-width.
    pub fn value(&self, j: i64) -> f64 {
        assert!(
            j.unsigned_abs() as usize <= self.half_width,
            "weight index {j} outside table of half-width {}",
            self.half_width
        );
        self.values[(j + self.half_width as i64) as usize]
    }

    /// Iterate `(j, w_j)` in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let j0 = -(self.half_width as i64);
        self.values.iter().enumerate().map(move |(i, w)| (j0 + i as i64, *w))
    }

    /// Compensated `sum_{|j| <= J} w_j`; tends to 0 as J grows.
    pub fn weight_sum(&self) -> f64 {
        let mut s = KahanSum::new();
        for &w in &self.values {
            s.add(w);
        }
        s.value()
    }
}

fn validate_inputs(params: &StableParams, h: f64, j_max: usize, context: &str) -> Result<()> {
    params.require_normalized(context)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(LevyError::contract(format!(
            "{context}: grid size h = {h} must be positive"
        )));
    }
    if j_max < 1 {
        return Err(LevyError::contract(format!(
            "{context}: half-width J = {j_max} must be >= 1"
        )));
    }
    Ok(())
}

/// Spectral weights: exact multiplier `M_e = M_o = |xi|^alpha`.
///
/// For `alpha != 1` the two Fourier integrals reduce to 1F2 evaluations; past
/// [`SPECTRAL_SERIES_LIMIT`] the series cancels catastrophically and the
/// integrals are evaluated by half-period Gauss-Kronrod panels instead.  At
/// `alpha = 1` the closed form uses the sine integral.
pub fn spectral_weights(params: &StableParams, h: f64, j_max: usize) -> Result<WeightTable> {
    validate_inputs(params, h, j_max, "spectral_weights")?;
    let alpha = params.alpha();
    let beta = params.beta();
    let scale = h.powf(-alpha);
    let mut values = vec![0.0; 2 * j_max + 1];

    if alpha == 1.0 {
        for j in -(j_max as i64)..=j_max as i64 {
            values[(j + j_max as i64) as usize] = spectral_weight_alpha_one(beta, h, j);
        }
        return WeightTable::new(SchemeKind::Spectral, params, h, j_max, values);
    }

    let tan_half = (alpha * PI / 2.0).tan();
    for j in -(j_max as i64)..=j_max as i64 {
        let m = j.unsigned_abs();
        let w = if (m as i64) <= SPECTRAL_SERIES_LIMIT {
            spectral_weight_series(alpha, beta, tan_half, j)
        } else {
            None
        };
        let w = match w {
            Some(v) => v,
            None => spectral_weight_quadrature(alpha, beta, tan_half, j, DEFAULT_QUAD_TOL / scale)?,
        };
        values[(j + j_max as i64) as usize] = scale * w;
    }
    WeightTable::new(SchemeKind::Spectral, params, h, j_max, values)
}

/// `h^alpha w_j` from the 1F2 closed form; `None` if the series declines.
fn spectral_weight_series(alpha: f64, beta: f64, tan_half: f64, j: i64) -> Option<f64> {
    let z = -(j as f64 * j as f64) * PI * PI / 4.0;
    let f_c = specfun::hyp1f2((alpha + 1.0) / 2.0, 0.5, (alpha + 3.0) / 2.0, z).ok()?;
    let even = -PI.powf(alpha) / (alpha + 1.0) * f_c;
    if beta == 0.0 {
        return Some(even);
    }
    let f_s = specfun::hyp1f2(alpha / 2.0 + 1.0, 1.5, alpha / 2.0 + 2.0, z).ok()?;
    let odd = PI.powf(alpha + 1.0) / (alpha + 2.0) * j as f64 * beta * tan_half * f_s;
    Some(even + odd)
}

/// `h^alpha w_j` from half-period Gauss-Kronrod panels.
fn spectral_weight_quadrature(
    alpha: f64,
    beta: f64,
    tan_half: f64,
    j: i64,
    tol: f64,
) -> Result<f64> {
    let m = j.unsigned_abs();
    let kernel = move |x: f64| x.powf(alpha);
    let share = (tol * PI / 2.0).max(1e-14);
    let i_c = quad::fourier_on_0_pi(&kernel, m, Trig::Cos, share, &[])?;
    let mut w = -i_c / PI;
    if beta != 0.0 {
        let i_s = quad::fourier_on_0_pi(&kernel, m, Trig::Sin, share, &[])?;
        w += (j.signum() as f64) * beta * tan_half * i_s / PI;
    }
    Ok(w)
}

/// Closed form at `alpha = 1`: `w_0 = -pi/(2h)` and for `j != 0`
/// `w_j = (1-(-1)^j)/(pi j^2 h) - (2 beta/(pi^2 j^2 h)) [(-1)^j j pi ln(pi) + Si(j pi)]`.
fn spectral_weight_alpha_one(beta: f64, h: f64, j: i64) -> f64 {
    if j == 0 {
        return -PI / (2.0 * h);
    }
    let m = j.unsigned_abs() as f64;
    let parity = if j % 2 == 0 { 1.0 } else { -1.0 };
    let even = (1.0 - parity) / (PI * m * m * h);
    let odd = -(2.0 * beta / (PI * PI * m * m * h))
        * (parity * m * PI * PI.ln() + specfun::sine_integral(m * PI));
    even + (j.signum() as f64) * odd
}

/// Grünwald-Letnikov weights for `alpha` in (0,1) or (1,2); undefined at
/// `alpha = 1`.  Off-center weights are nonnegative for every skewness.
pub fn gl_weights(params: &StableParams, h: f64, j_max: usize) -> Result<WeightTable> {
    validate_inputs(params, h, j_max, "gl_weights")?;
    let alpha = params.alpha();
    let beta = params.beta();
    if alpha == 1.0 {
        return Err(LevyError::unsupported(
            "GL weights are singular at alpha = 1; use the sp or rs scheme there".to_string(),
        ));
    }
    let scale = h.powf(-alpha);
    let cos_half = (alpha * PI / 2.0).cos();
    let j_max_i = j_max as i64;

    // g_k = (-1)^k binom(alpha, k) by the product recurrence.
    let mut g = vec![1.0f64; j_max + 2];
    for k in 1..g.len() {
        g[k] = g[k - 1] * (k as f64 - 1.0 - alpha) / k as f64;
    }

    let mut values = vec![0.0; 2 * j_max + 1];
    for j in -j_max_i..=j_max_i {
        let idx = (j + j_max_i) as usize;
        let w = if alpha < 1.0 {
            match j {
                0 => -1.0 / cos_half,
                j if j > 0 => -(1.0 + beta) / (2.0 * cos_half) * g[j as usize],
                j => -(1.0 - beta) / (2.0 * cos_half) * g[(-j) as usize],
            }
        } else {
            // Shifted-index variant for alpha in (1, 2).
            match j {
                0 => alpha / cos_half,
                1 => -(1.0 - beta + alpha * (alpha - 1.0) / 2.0 * (1.0 + beta)) / (2.0 * cos_half),
                -1 => -(1.0 + beta + alpha * (alpha - 1.0) / 2.0 * (1.0 - beta)) / (2.0 * cos_half),
                j if j > 1 => -(1.0 + beta) / (2.0 * cos_half) * g[(j + 1) as usize],
                j => -(1.0 - beta) / (2.0 * cos_half) * g[(-j + 1) as usize],
            }
        };
        values[idx] = scale * w;
    }
    WeightTable::new(SchemeKind::GrunwaldLetnikov, params, h, j_max, values)
}

/// Regularized spectral weights: multiplier `(2 - 2 cos xi)^(alpha/2)`.
///
/// For `alpha != 1`:
///
/// ```text
/// w_j = (1+beta) h^{-a} sin(pi a/2) Gamma(j - a/2) Gamma(1+a) / (pi Gamma(j+1+a/2))
///       - (-1)^j h^{-a} / (pi (j - a/2)) beta tan(pi a/2) 2F1(-a, j-a/2; j+1-a/2; -1)
/// ```
///
/// valid for negative `j` as well (checked against direct quadrature in the
/// test suite).  At `alpha = 1` the even part keeps a gamma-ratio closed form
/// while the odd part `(2 beta/(pi^2 h)) int_0^pi sqrt(2-2cos x) ln(x) sin(jx) dx`
/// is evaluated by quadrature to `quad_tol`, with an extra split at `x = 1/j`
/// to isolate the logarithmic endpoint.
pub fn rs_weights(
    params: &StableParams,
    h: f64,
    j_max: usize,
    quad_tol: f64,
) -> Result<WeightTable> {
    validate_inputs(params, h, j_max, "rs_weights")?;
    if !(quad_tol > 0.0) {
        return Err(LevyError::contract(format!(
            "rs_weights: quad_tol = {quad_tol} must be positive"
        )));
    }
    let alpha = params.alpha();
    let beta = params.beta();
    let j_max_i = j_max as i64;
    let mut values = vec![0.0; 2 * j_max + 1];

    if alpha == 1.0 {
        let kernel = |x: f64| (2.0 - 2.0 * x.cos()).max(0.0).sqrt() * x.ln();
        for j in -j_max_i..=j_max_i {
            let jf = j as f64;
            // Even part: -(1/(pi h)) int_0^pi sqrt(2-2cos) cos(j x) dx, whose
            // closed form is the gamma ratio below (even in j).
            let mut w = specfun::gamma_ratio(jf - 0.5, jf + 1.5)? / (PI * h);
            if beta != 0.0 && j != 0 {
                let m = j.unsigned_abs();
                let i_log =
                    quad::fourier_on_0_pi(&kernel, m, Trig::Sin, quad_tol * h, &[1.0 / m as f64])?;
                w += (j.signum() as f64) * (2.0 * beta / (PI * PI * h)) * i_log;
            }
            values[(j + j_max_i) as usize] = w;
        }
        return WeightTable::new(SchemeKind::RegularizedSpectral, params, h, j_max, values);
    }

    let scale = h.powf(-alpha);
    let sin_half = (alpha * PI / 2.0).sin();
    let tan_half = (alpha * PI / 2.0).tan();
    let gamma_1pa = specfun::gamma(1.0 + alpha)?;
    for j in -j_max_i..=j_max_i {
        let jf = j as f64;
        let parity = if j % 2 == 0 { 1.0 } else { -1.0 };
        let even = (1.0 + beta) * sin_half * gamma_1pa
            * specfun::gamma_ratio(jf - alpha / 2.0, jf + 1.0 + alpha / 2.0)?
            / PI;
        let w = if beta == 0.0 {
            even
        } else {
            match specfun::hyp2f1_neg1(-alpha, jf - alpha / 2.0, jf + 1.0 - alpha / 2.0) {
                Ok(f21) => even - parity / (PI * (jf - alpha / 2.0)) * beta * tan_half * f21,
                // The transformed 2F1 series underflows for very negative j;
                // integrate the defining Fourier pair instead.
                Err(LevyError::Accuracy { .. }) => {
                    rs_weight_quadrature(alpha, beta, tan_half, j, quad_tol / scale)?
                }
                Err(e) => return Err(e),
            }
        };
        values[(j + j_max_i) as usize] = scale * w;
    }
    WeightTable::new(SchemeKind::RegularizedSpectral, params, h, j_max, values)
}

/// `h^alpha w_j` for the regularized multiplier from half-period panels.
fn rs_weight_quadrature(alpha: f64, beta: f64, tan_half: f64, j: i64, tol: f64) -> Result<f64> {
    let m = j.unsigned_abs();
    let kernel = move |x: f64| (2.0 - 2.0 * x.cos()).max(0.0).powf(alpha / 2.0);
    let share = (tol * PI / 2.0).max(1e-14);
    let i_c = quad::fourier_on_0_pi(&kernel, m, Trig::Cos, share, &[])?;
    let mut w = -i_c / PI;
    if beta != 0.0 {
        let i_s = quad::fourier_on_0_pi(&kernel, m, Trig::Sin, share, &[])?;
        w += (j.signum() as f64) * beta * tan_half * i_s / PI;
    }
    Ok(w)
}

/// Build the table for any scheme.  `quad_tol` feeds the quadrature-backed
/// entries (the `alpha = 1` regularized odd part); closed-form paths ignore it.
pub fn weights_for(
    scheme: SchemeKind,
    params: &StableParams,
    h: f64,
    j_max: usize,
    quad_tol: f64,
) -> Result<WeightTable> {
    match scheme {
        SchemeKind::Spectral => spectral_weights(params, h, j_max),
        SchemeKind::GrunwaldLetnikov => gl_weights(params, h, j_max),
        SchemeKind::RegularizedSpectral => rs_weights(params, h, j_max, quad_tol),
    }
}

/// Semi-discrete transform of the table divided by `h`:
/// `sum_{|j| <= J} w_j e^{-i xi j h}`, which converges to
/// [`crate::symbols::psi_h`]`(xi)` as the half-width grows.
pub fn symbol_of_weights(table: &WeightTable, xi: f64) -> Complex64 {
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for (j, w) in table.iter() {
        let (s, c) = (-xi * j as f64 * table.h()).sin_cos();
        re.add(w * c);
        im.add(w * s);
    }
    Complex64::new(re.value(), im.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{psi_exact, psi_h};
    use approx::assert_abs_diff_eq;

    const ALPHA_GRID: [f64; 7] = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75];
    const BETA_GRID: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

    fn table(scheme: SchemeKind, alpha: f64, beta: f64, h: f64, j: usize) -> WeightTable {
        let p = StableParams::normalized(alpha, beta).unwrap();
        weights_for(scheme, &p, h, j, DEFAULT_QUAD_TOL).unwrap()
    }

    #[test]
    fn spectral_alpha_one_pinned_values() {
        // w_0 = -pi/(2h) independent of beta.
        for &beta in &[-1.0, 0.0, 0.7] {
            let t = table(SchemeKind::Spectral, 1.0, beta, 0.5, 4);
            assert_abs_diff_eq!(t.value(0), -PI, epsilon = 1e-14);
        }
        // Even j with beta = 0: both terms vanish.
        let t = table(SchemeKind::Spectral, 1.0, 0.0, 1.0, 4);
        assert_abs_diff_eq!(t.value(2), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn gl_center_weights_pinned() {
        // alpha = 0.5: h^a w_0 = -1/cos(pi/4) = -sqrt(2).
        let t = table(SchemeKind::GrunwaldLetnikov, 0.5, 0.3, 1.0, 4);
        assert_abs_diff_eq!(t.value(0), -2.0f64.sqrt(), epsilon = 1e-14);
        // alpha = 1.5: h^a w_0 = 1.5/cos(3 pi/4) = -1.5 sqrt(2).
        let t = table(SchemeKind::GrunwaldLetnikov, 1.5, -0.8, 1.0, 4);
        assert_abs_diff_eq!(t.value(0), -1.5 * 2.0f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn gl_one_sided_for_extreme_skewness() {
        let t = table(SchemeKind::GrunwaldLetnikov, 0.5, 1.0, 1.0, 8);
        for j in 1..=8 {
            assert_eq!(t.value(-j), 0.0, "beta = 1 table must vanish at j = {}", -j);
            assert!(t.value(j) > 0.0);
        }
    }

    #[test]
    fn gl_rejects_alpha_one() {
        let p = StableParams::normalized(1.0, 0.0).unwrap();
        assert!(gl_weights(&p, 0.5, 8).is_err());
    }

    #[test]
    fn rs_symmetric_weight_pinned() {
        // j = 1, beta = 0, h = 1: sin(pi a/2) Gamma(j - a/2) Gamma(1 + a) /
        // (pi Gamma(j + 1 + a/2)); cross-checked against direct quadrature
        // of the defining cosine integral (0.2157410404753517...).
        let t = table(SchemeKind::RegularizedSpectral, 0.5, 0.0, 1.0, 4);
        let expected = (PI / 4.0).sin()
            * specfun::gamma(0.75).unwrap()
            * specfun::gamma(1.5).unwrap()
            / (PI * specfun::gamma(2.25).unwrap());
        assert_abs_diff_eq!(t.value(1), expected, epsilon = 1e-13);
        assert_abs_diff_eq!(t.value(1), 0.215_741_040_475_351_7, epsilon = 1e-13);
    }

    #[test]
    fn center_weight_negative_everywhere() {
        for scheme in SchemeKind::ALL {
            for &alpha in &ALPHA_GRID {
                if !scheme.supports_alpha(alpha) {
                    continue;
                }
                for &beta in &BETA_GRID {
                    let t = table(scheme, alpha, beta, 0.7, 8);
                    assert!(
                        t.value(0) < 0.0,
                        "{scheme} alpha={alpha} beta={beta}: w_0 = {}",
                        t.value(0)
                    );
                }
            }
        }
    }

    #[test]
    fn mirror_identity_and_even_symmetry() {
        for scheme in SchemeKind::ALL {
            for &alpha in &[0.5, 1.0, 1.5] {
                if !scheme.supports_alpha(alpha) {
                    continue;
                }
                let plus = table(scheme, alpha, 0.5, 0.8, 12);
                let minus = table(scheme, alpha, -0.5, 0.8, 12);
                for j in -12i64..=12 {
                    let a = minus.value(j);
                    let b = plus.value(-j);
                    assert_abs_diff_eq!(a, b, epsilon = 1e-12 * b.abs().max(1e-3));
                }
                let sym = table(scheme, alpha, 0.0, 0.8, 12);
                for j in 1..=12i64 {
                    let a = sym.value(j);
                    let b = sym.value(-j);
                    assert_abs_diff_eq!(a, b, epsilon = 1e-12 * a.abs().max(1e-3));
                }
            }
        }
    }

    #[test]
    fn gl_positivity_across_grid() {
        for &alpha in &ALPHA_GRID {
            if alpha == 1.0 {
                continue;
            }
            for &beta in &BETA_GRID {
                let t = table(SchemeKind::GrunwaldLetnikov, alpha, beta, 1.0, 64);
                for j in 1..=64i64 {
                    assert!(
                        t.value(j) >= 0.0 && t.value(-j) >= 0.0,
                        "alpha={alpha} beta={beta} j={j}: {} / {}",
                        t.value(j),
                        t.value(-j)
                    );
                }
            }
        }
    }

    fn fitted_decay_slope(t: &WeightTable) -> f64 {
        let pts: Vec<(f64, f64)> = (10..=t.half_width() as i64)
            .map(|j| ((j as f64).ln(), t.value(j).abs().max(1e-300).ln()))
            .collect();
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    }

    #[test]
    fn weight_decay_matches_stable_index() {
        // |w_j| ~ |j|^{-1-alpha} wherever the origin kink of the multiplier
        // dominates the tail: GL for every skewness, and the even parts of
        // the other families.  (With beta != 0 the odd integrals of the sp
        // and rs families decay only like 1/j because their odd multiplier
        // does not vanish at the band edge.)
        for &alpha in &[0.5, 1.5] {
            for &beta in &[-0.5, 0.0, 0.5] {
                let t = table(SchemeKind::GrunwaldLetnikov, alpha, beta, 1.0, 64);
                let slope = fitted_decay_slope(&t);
                assert!(
                    slope <= -(1.0 + alpha) + 0.1,
                    "gl alpha={alpha} beta={beta}: decay slope {slope}"
                );
            }
            let t = table(SchemeKind::RegularizedSpectral, alpha, 0.0, 1.0, 64);
            let slope = fitted_decay_slope(&t);
            assert!(slope <= -(1.0 + alpha) + 0.1, "rs alpha={alpha}: {slope}");
        }
        let t = table(SchemeKind::Spectral, 0.5, 0.0, 1.0, 64);
        let slope = fitted_decay_slope(&t);
        assert!(slope <= -1.4, "sp alpha=0.5 beta=0: {slope}");

        // Skewed spectral tails are genuinely slower: ~1/j.
        let t = table(SchemeKind::Spectral, 0.5, 0.5, 1.0, 64);
        let slope = fitted_decay_slope(&t);
        assert!(slope <= -0.9 && slope >= -1.2, "sp alpha=0.5 beta=0.5: {slope}");
    }

    #[test]
    fn gl_weight_sum_within_binomial_tail() {
        for &alpha in &[0.5, 1.5] {
            for &beta in &[-0.5, 0.5] {
                let j_max = 256;
                let t = table(SchemeKind::GrunwaldLetnikov, alpha, beta, 1.0, j_max);
                let partial = t.weight_sum();
                // Tail of sum_k |g_k| beyond the table, plus the index shift slack.
                let mut tail = 0.0;
                for k in (j_max + 1)..(j_max + 200_000) {
                    tail += specfun::gen_binomial(alpha, k as u32).abs();
                }
                let bound = 2.0 * tail / (alpha * PI / 2.0).cos().abs() + 1e-12;
                assert!(
                    partial.abs() <= bound,
                    "alpha={alpha} beta={beta}: |sum| = {} > {}",
                    partial.abs(),
                    bound
                );
            }
        }
    }

    #[test]
    fn symbol_converges_to_multiplier() {
        // GL table at J = 2000: tail decays like J^{-alpha}.
        let p = StableParams::normalized(0.5, 0.5).unwrap();
        let t = gl_weights(&p, 1.0, 2000).unwrap();
        let got = symbol_of_weights(&t, 1.0);
        let want = psi_h(SchemeKind::GrunwaldLetnikov, &p, 1.0, 1.0).unwrap();
        let tail = 3.0 * 2000.0f64.powf(-0.5);
        assert!(
            (got - want).norm() < tail,
            "symbol {got} vs psi_h {want} (tail bound {tail})"
        );

        // Spectral table: inside the band the partial symbol approaches
        // psi_exact as the half-width grows.  (At exactly xi = pi/h the
        // transform of a real sequence is real and lands on the midpoint of
        // the symbol's band-edge jump, so the probe stays slightly inside.)
        let mut last = f64::INFINITY;
        for j_max in [200usize, 800, 3200] {
            let t = spectral_weights(&p, 1.0, j_max).unwrap();
            for &xi in &[2.0, 0.97 * PI] {
                let got = symbol_of_weights(&t, xi);
                let want = psi_exact(&p, xi);
                let diff = (got - want).norm();
                if xi == 2.0 {
                    assert!(diff < last, "no convergence at J={j_max}: {diff}");
                    last = diff;
                }
            }
        }
        let t = spectral_weights(&p, 1.0, 3200).unwrap();
        assert!((symbol_of_weights(&t, 2.0) - psi_exact(&p, 2.0)).norm() < 2e-3);
    }

    #[test]
    fn symbol_at_zero_is_weight_sum() {
        let t = table(SchemeKind::RegularizedSpectral, 0.75, 0.5, 0.5, 512);
        let s = symbol_of_weights(&t, 0.0);
        assert_abs_diff_eq!(s.re, t.weight_sum(), epsilon = 1e-12);
        assert_eq!(s.im, 0.0);
        // hat w(0) -> 0 with growing J.
        assert!(t.weight_sum().abs() < 0.05);
        let bigger = table(SchemeKind::RegularizedSpectral, 0.75, 0.5, 0.5, 2048);
        assert!(bigger.weight_sum().abs() < t.weight_sum().abs());
    }

    #[test]
    fn alpha_one_tables_match_their_symbol() {
        // Pins the sign of the log-kernel odd parts at alpha = 1 for both
        // the spectral and regularized families.
        for scheme in [SchemeKind::Spectral, SchemeKind::RegularizedSpectral] {
            let p = StableParams::normalized(1.0, 0.5).unwrap();
            let h = 0.5;
            let t = weights_for(scheme, &p, h, 4000, 1e-11).unwrap();
            for &xi in &[1.0, 2.5, -4.0] {
                let got = symbol_of_weights(&t, xi);
                let want = psi_h(scheme, &p, h, xi).unwrap();
                assert!(
                    (got - want).norm() < 5e-3,
                    "{scheme} xi={xi}: {got} vs {want}"
                );
            }
        }
    }
}
