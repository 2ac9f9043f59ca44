//! Mean first exit time from (-1, 1): solve `A_h u = -1` with `u = 0` on the
//! exterior, through the Toeplitz linear system of the discrete generator.
//!
//! The boundary nodes `x = +-1` belong to the exterior, so with `N = 1/h`
//! the unknowns are `u_j` for `|j| <= N - 1` and the system reads
//! `sum_{|k| < N} w_{j-k} u_k = -1`.

use crate::error::{LevyError, Result};
use crate::linalg;
use crate::symbols::{SchemeKind, StableParams};
use crate::weights::{self, WeightTable};

/// Options for the linear solve.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Absolute tolerance for quadrature-backed weights.
    pub quad_tol: f64,
    /// Relative residual target `||Au - b||_inf <= residual_tol * ||b||_inf`.
    pub residual_tol: f64,
    /// Iterative-refinement cap.
    pub max_refinements: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            quad_tol: weights::DEFAULT_QUAD_TOL,
            residual_tol: 1e-10,
            max_refinements: 8,
        }
    }
}

/// Toeplitz descriptor of the exit-time system `A_{j,k} = w_{j-k}`, `b = -1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSystem {
    /// `w_0, w_1, ..., w_{n-1}` (first column).
    pub first_col: Vec<f64>,
    /// `w_0, w_{-1}, ..., w_{-(n-1)}` (first row).
    pub first_row: Vec<f64>,
    /// Right-hand side, identically -1.
    pub rhs: Vec<f64>,
}

impl ToeplitzSystem {
    pub fn n(&self) -> usize {
        self.rhs.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i >= j {
            self.first_col[i - j]
        } else {
            self.first_row[j - i]
        }
    }

    /// Materialize the dense row-major matrix.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = self.entry(i, j);
            }
        }
        a
    }
}

/// Assemble the exit-time system for interior nodes `|j| < N` from a weight
/// table on the matching grid (`h N = 1`).  The table must reach
/// `|j| <= 2N - 2` to cover every entry.
pub fn assemble(table: &WeightTable, n_boundary: usize) -> Result<ToeplitzSystem> {
    if n_boundary < 1 {
        return Err(LevyError::contract(
            "assemble: N must be at least 1".to_string(),
        ));
    }
    let n = 2 * n_boundary - 1;
    let needed = 2 * n_boundary - 2;
    if table.half_width() < needed {
        return Err(LevyError::contract(format!(
            "assemble: table half-width {} < 2N - 2 = {needed}",
            table.half_width()
        )));
    }
    if (table.h() * n_boundary as f64 - 1.0).abs() > 1e-9 {
        return Err(LevyError::contract(format!(
            "assemble: grid does not align with the boundary (h N = {}, want 1)",
            table.h() * n_boundary as f64
        )));
    }
    let first_col = (0..n as i64).map(|m| table.value(m)).collect();
    let first_row = (0..n as i64).map(|m| table.value(-m)).collect();
    Ok(ToeplitzSystem {
        first_col,
        first_row,
        rhs: vec![-1.0; n],
    })
}

/// Interior mean-exit-time values on (-1, 1) with grid metadata.
#[derive(Debug, Clone)]
pub struct ExitTimeSolution {
    scheme: SchemeKind,
    params: StableParams,
    h: f64,
    n_boundary: usize,
    interior: Vec<f64>,
    residual_inf: f64,
    condition_estimate: f64,
}

impl ExitTimeSolution {
    pub fn scheme(&self) -> SchemeKind {
        self.scheme
    }

    pub fn params(&self) -> &StableParams {
        &self.params
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Interior values `u_j` for `j = -(N-1), ..., N-1`.
    pub fn interior(&self) -> &[f64] {
        &self.interior
    }

    /// Achieved residual `||A u - b||_inf`.
    pub fn residual_inf(&self) -> f64 {
        self.residual_inf
    }

    /// Pivot-ratio conditioning indicator from the factorization.
    pub fn condition_estimate(&self) -> f64 {
        self.condition_estimate
    }

    /// Value at the grid node closest to `x`, zero on or outside the boundary.
    pub fn value_at(&self, x: f64) -> f64 {
        let j = (x / self.h).round() as i64;
        let n = self.n_boundary as i64;
        if j.abs() >= n {
            0.0
        } else {
            self.interior[(j + n - 1) as usize]
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.interior.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `(x, u)` rows including the two boundary zeros at x = -1 and 1.
    pub fn rows_with_boundary(&self) -> Vec<(f64, f64)> {
        let n = self.n_boundary as i64;
        let mut rows = Vec::with_capacity(self.interior.len() + 2);
        rows.push((-1.0, 0.0));
        for (i, &u) in self.interior.iter().enumerate() {
            let j = i as i64 - (n - 1);
            rows.push((j as f64 * self.h, u));
        }
        rows.push((1.0, 0.0));
        rows
    }

    /// Number of sign changes of the second difference within `band` nodes of
    /// each boundary: an oscillation diagnostic for the non-monotone schemes.
    pub fn second_difference_sign_changes(&self, band: usize) -> usize {
        let u = &self.interior;
        let n = u.len();
        if n < 3 {
            return 0;
        }
        let second = |i: usize| u[i - 1] - 2.0 * u[i] + u[i + 1];
        let mut changes = 0;
        let mut prev: Option<f64> = None;
        for i in 1..(n - 1) {
            let j_from_left = i;
            let j_from_right = n - 1 - i;
            if j_from_left.min(j_from_right) > band {
                prev = None;
                continue;
            }
            let d = second(i);
            if let Some(p) = prev {
                if d * p < 0.0 {
                    changes += 1;
                }
            }
            prev = Some(d);
        }
        changes
    }
}

/// Solve the exit-time problem on `Omega = (-1, 1)` for a scheme at grid
/// size `h = 1/N`.
pub fn solve_exit_time(
    scheme: SchemeKind,
    params: &StableParams,
    h: f64,
    opts: &SolverOptions,
) -> Result<ExitTimeSolution> {
    params.require_normalized("solve_exit_time")?;
    if !(h > 0.0 && h <= 1.0) {
        return Err(LevyError::contract(format!(
            "solve_exit_time: h = {h} must lie in (0, 1]"
        )));
    }
    let n_boundary = (1.0 / h).round();
    if (n_boundary * h - 1.0).abs() > 1e-9 {
        return Err(LevyError::contract(format!(
            "solve_exit_time: 1/h = {} is not an integer",
            1.0 / h
        )));
    }
    let n_boundary = n_boundary as usize;
    if !scheme.supports_alpha(params.alpha()) {
        return Err(LevyError::unsupported(format!(
            "solve_exit_time: scheme {scheme} does not support alpha = {}",
            params.alpha()
        )));
    }
    let j_need = (2 * n_boundary).saturating_sub(2).max(1);
    let table = weights::weights_for(scheme, params, h, j_need, opts.quad_tol)?;
    let system = assemble(&table, n_boundary)?;
    let dense = system.to_dense();
    let solve = linalg::solve_refined(&dense, &system.rhs, opts.residual_tol, opts.max_refinements)?;
    Ok(ExitTimeSolution {
        scheme,
        params: *params,
        h,
        n_boundary,
        interior: solve.solution,
        residual_inf: solve.residual_inf,
        condition_estimate: solve.condition_estimate,
    })
}
