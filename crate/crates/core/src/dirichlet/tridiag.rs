//! Sturm-sequence bisection for symmetric tridiagonal matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::DiscreteOperator;
use crate::error::{Error, Result};

/// Bracket width at which bisection stops.
pub const TOL_EIG: f64 = 1e-10;

/// Number of eigenvalues strictly below `x`, from the signs of the pivots of
/// the `LDLᵀ` factorization of `T − xI`.
pub fn sturm_count(diagonal: &[f64], off_diagonal: &[f64], x: f64) -> usize {
    let n = diagonal.len();
    if n == 0 {
        return 0;
    }
    let guard = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = diagonal[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let safe = if q.abs() < guard { guard.copysign(q) } else { q };
        let e = off_diagonal[i - 1];
        q = (diagonal[i] - x) - e * e / safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Interval containing every eigenvalue.
pub fn gershgorin_bounds(diagonal: &[f64], off_diagonal: &[f64]) -> (f64, f64) {
    let n = diagonal.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off_diagonal[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off_diagonal[i].abs() } else { 0.0 };
        lo = lo.min(diagonal[i] - left - right);
        hi = hi.max(diagonal[i] + left + right);
    }
    let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    (lo - pad, hi + pad)
}

fn bisect(diagonal: &[f64], off_diagonal: &[f64], index: usize, bounds: (f64, f64), tol: f64) -> f64 {
    let (mut lo, mut hi) = bounds;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diagonal, off_diagonal, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The `count` smallest eigenvalues, ascending, each bracketed to `TOL_EIG`.
pub fn tridiag_eigen(op: &DiscreteOperator, count: usize) -> Result<Vec<f64>> {
    tridiag_eigen_with_tol(&op.diagonal, &op.off_diagonal, count, TOL_EIG)
}

/// Bisection for the `count` smallest eigenvalues. Each index is bisected
/// independently from the same Gershgorin bracket, so the result does not
/// depend on how the indices are scheduled across threads.
pub fn tridiag_eigen_with_tol(
    diagonal: &[f64],
    off_diagonal: &[f64],
    count: usize,
    tol: f64,
) -> Result<Vec<f64>> {
    let n = diagonal.len();
    if n == 0 || off_diagonal.len() + 1 != n {
        return Err(Error::InvalidInput(format!(
            "diagonal of length {n} needs an off-diagonal of length {}",
            n.saturating_sub(1)
        )));
    }
    if count > n {
        return Err(Error::InvalidInput(format!("count {count} exceeds matrix size {n}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let bounds = gershgorin_bounds(diagonal, off_diagonal);
    Ok((0..count)
        .into_par_iter()
        .map(|j| bisect(diagonal, off_diagonal, j, bounds, tol))
        .collect())
}

/// Solve `(T − σI) x = b` in place by Gaussian elimination with partial
/// pivoting. Zero pivots are replaced by a tiny multiple of the matrix scale.
fn shifted_solve(diagonal: &[f64], off_diagonal: &[f64], shift: f64, b: &mut [f64]) {
    let n = diagonal.len();
    let scale = diagonal
        .iter()
        .chain(off_diagonal)
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1.0);
    let tiny = f64::EPSILON * scale;
    let mut d: Vec<f64> = diagonal.iter().map(|v| v - shift).collect();
    let mut dl = off_diagonal.to_vec();
    let mut du = off_diagonal.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let nonzero = |v: f64| if v == 0.0 { tiny } else { v };

    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            let pivot = nonzero(d[i]);
            d[i] = pivot;
            let fact = dl[i] / pivot;
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            let bi = b[i];
            b[i] = b[i + 1];
            b[i + 1] = bi - fact * b[i + 1];
        }
        dl[i] = 0.0;
    }
    d[n - 1] = nonzero(d[n - 1]);

    b[n - 1] /= d[n - 1];
    if n > 1 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
}

/// Unit eigenvector for a converged eigenvalue by inverse iteration.
pub fn inverse_iteration(op: &DiscreteOperator, eigenvalue: f64, iterations: usize) -> Vec<f64> {
    let n = op.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for _ in 0..iterations.max(1) {
        shifted_solve(&op.diagonal, &op.off_diagonal, eigenvalue, &mut v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}
