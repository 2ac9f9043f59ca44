//! Dense LU solve with partial pivoting and iterative refinement, sized for
//! the exit-time systems (n up to a few thousand).

use crate::error::{LevyError, Result};
use crate::kahan::KahanSum;

pub(crate) struct DenseSolve {
    pub solution: Vec<f64>,
    pub residual_inf: f64,
    /// Rough conditioning indicator: max |pivot| / min |pivot|.
    pub condition_estimate: f64,
}

struct LuFactors {
    lu: Vec<f64>,
    perm: Vec<usize>,
    n: usize,
    pivot_ratio: f64,
}

fn factor(mut lu: Vec<f64>, n: usize) -> Result<LuFactors> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut max_piv = 0.0f64;
    let mut min_piv = f64::INFINITY;
    for col in 0..n {
        // Partial pivoting.
        let mut best = col;
        let mut best_abs = lu[col * n + col].abs();
        for row in (col + 1)..n {
            let a = lu[row * n + col].abs();
            if a > best_abs {
                best = row;
                best_abs = a;
            }
        }
        if best_abs == 0.0 || !best_abs.is_finite() {
            return Err(LevyError::Solver {
                message: format!("singular pivot in column {col}"),
                condition: f64::INFINITY,
            });
        }
        if best != col {
            perm.swap(col, best);
            for k in 0..n {
                lu.swap(col * n + k, best * n + k);
            }
        }
        let piv = lu[col * n + col];
        max_piv = max_piv.max(piv.abs());
        min_piv = min_piv.min(piv.abs());
        for row in (col + 1)..n {
            let factor = lu[row * n + col] / piv;
            lu[row * n + col] = factor;
            if factor != 0.0 {
                let (head, tail) = lu.split_at_mut(row * n);
                let src = &head[col * n + col + 1..col * n + n];
                let dst = &mut tail[col + 1..n];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d -= factor * s;
                }
            }
        }
    }
    Ok(LuFactors {
        lu,
        perm,
        n,
        pivot_ratio: max_piv / min_piv,
    })
}

impl LuFactors {
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut s = x[i];
            for k in 0..i {
                s -= self.lu[i * n + k] * x[k];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in (i + 1)..n {
                s -= self.lu[i * n + k] * x[k];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }
}

fn residual(a: &[f64], x: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = KahanSum::new();
        acc.add(b[i]);
        let row = &a[i * n..(i + 1) * n];
        for (aij, xj) in row.iter().zip(x) {
            acc.add(-aij * xj);
        }
        r.push(acc.value());
    }
    r
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Solve `A x = b` (row-major dense `A`) with LU and iterative refinement
/// until the residual satisfies `||b - Ax||_inf <= tol * ||b||_inf`.
pub(crate) fn solve_refined(
    a: &[f64],
    b: &[f64],
    tol: f64,
    max_refinements: usize,
) -> Result<DenseSolve> {
    let n = b.len();
    assert_eq!(a.len(), n * n, "matrix/vector size mismatch");
    let factors = factor(a.to_vec(), n)?;
    let mut x = factors.solve(b);
    let target = tol * inf_norm(b).max(f64::MIN_POSITIVE);
    let mut r = residual(a, &x, b, n);
    let mut r_norm = inf_norm(&r);
    for _ in 0..max_refinements {
        if r_norm <= target {
            break;
        }
        let dx = factors.solve(&r);
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi += di;
        }
        r = residual(a, &x, b, n);
        let new_norm = inf_norm(&r);
        if new_norm >= r_norm {
            break; // refinement stalled
        }
        r_norm = new_norm;
    }
    if r_norm > target {
        return Err(LevyError::Solver {
            message: format!(
                "iterative refinement stalled at residual {r_norm:e} (target {target:e})"
            ),
            condition: factors.pivot_ratio,
        });
    }
    Ok(DenseSolve {
        solution: x,
        residual_inf: r_norm,
        condition_estimate: factors.pivot_ratio,
    })
}
