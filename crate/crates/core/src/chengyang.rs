//! Growth bounds for eigenvalues from the Cheng–Yang recursion.
//!
//! For positive nondecreasing `μ₁ ≤ … ≤ μ_{k+1}` satisfying
//! `Σ_{i≤k} (μ_{k+1} − μᵢ)² ≤ (4/n) Σ_{i≤k} μᵢ(μ_{k+1} − μᵢ)`, the statistics
//! `Λₖ` (mean), `Tₖ` (mean square) and `Fₖ = (1 + 2/n)Λₖ² − Tₖ` obey
//! `F_{k+1} ≤ C(n,k) ((k+1)/k)^{4/n} Fₖ`. Iterating gives explicit bounds
//! of the form `μ_{k+1} ≤ (1 + a(min{n, k−1})/n) k^{2/n} μ₁`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::{admissible_interval, shift_constant, TOL_CHECK};
use crate::sum::CompensatedSum;

/// Upper end of the dimension scan in [`a2max`].
pub const A2_SCAN_LIMIT: usize = 400;

/// Largest `m` for which [`a_coeff`] is defined (`a3(m+1)` needs `m+1 < 400`).
pub const A_COEFF_MAX: usize = A2_SCAN_LIMIT - 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequenceStats {
    pub k: usize,
    pub n: usize,
    pub lambda_k: f64,
    pub t_k: f64,
    pub f_k: f64,
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDimension("n must be at least 1".into()));
    }
    Ok(())
}

fn check_positive_sorted(mu: &[f64]) -> Result<()> {
    for (index, &value) in mu.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonpositiveEntry { index, value });
        }
        if index > 0 && value < mu[index - 1] {
            return Err(Error::InvalidInput(format!(
                "sequence decreases at position {index}"
            )));
        }
    }
    Ok(())
}

fn stats_unchecked(mu: &[f64], n: usize) -> SequenceStats {
    let k = mu.len();
    let mut s1 = CompensatedSum::new();
    let mut s2 = CompensatedSum::new();
    for &m in mu {
        s1.add(m);
        s2.add(m * m);
    }
    let lambda_k = s1.value() / k as f64;
    let t_k = s2.value() / k as f64;
    SequenceStats {
        k,
        n,
        lambda_k,
        t_k,
        f_k: (1.0 + 2.0 / n as f64) * lambda_k * lambda_k - t_k,
    }
}

/// `Λₖ`, `Tₖ`, `Fₖ` of the whole slice (`k = mu.len()`).
pub fn sequence_stats(mu: &[f64], n: usize) -> Result<SequenceStats> {
    check_dim(n)?;
    if mu.is_empty() {
        return Err(Error::InvalidInput("empty sequence".into()));
    }
    check_positive_sorted(mu)?;
    Ok(stats_unchecked(mu, n))
}

/// `C(n,k) = 1 − (1/3n) (k/(k+1))^{4/n} (1+2/n)(1+4/n)/(k+1)³`.
pub fn recursion_coefficient(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    let kf = k as f64;
    1.0 - (kf / (kf + 1.0)).powf(4.0 / nf) * (1.0 + 2.0 / nf) * (1.0 + 4.0 / nf)
        / (3.0 * nf * (kf + 1.0).powi(3))
}

/// Hypothesis and conclusion of the recursion at one index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecursionStep {
    pub k: usize,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub f_k: f64,
    pub f_next: f64,
    /// `C(n,k) ((k+1)/k)^{4/n} Fₖ`
    pub f_bound: f64,
}

fn hypothesis_at(mu: &[f64], k: usize, n: usize) -> bool {
    let next = mu[k];
    let mut lhs = CompensatedSum::new();
    let mut rhs = CompensatedSum::new();
    for &m in &mu[..k] {
        let d = next - m;
        lhs.add(d * d);
        rhs.add(m * d);
    }
    let (lhs, rhs) = (lhs.value(), 4.0 / n as f64 * rhs.value());
    rhs - lhs >= -TOL_CHECK * rhs.max(1.0)
}

/// Evaluate the recursion at every `k` in `1..mu.len()`.
pub fn recursion_check(mu: &[f64], n: usize) -> Result<Vec<RecursionStep>> {
    check_dim(n)?;
    if mu.len() < 2 {
        return Err(Error::InvalidInput("need at least two values".into()));
    }
    check_positive_sorted(mu)?;
    let mut current = stats_unchecked(&mu[..1], n);
    let mut steps = Vec::with_capacity(mu.len() - 1);
    for k in 1..mu.len() {
        let next = stats_unchecked(&mu[..=k], n);
        let growth = ((k as f64 + 1.0) / k as f64).powf(4.0 / n as f64);
        let f_bound = recursion_coefficient(n, k) * growth * current.f_k;
        steps.push(RecursionStep {
            k,
            hypothesis_holds: hypothesis_at(mu, k, n),
            conclusion_holds: next.f_k <= f_bound + TOL_CHECK * f_bound.abs().max(1.0),
            f_k: current.f_k,
            f_next: next.f_k,
            f_bound,
        });
        current = next;
    }
    Ok(steps)
}

/// A random positive nondecreasing sequence satisfying the recursion
/// hypothesis at every prefix: `μ₁` uniform in `[0.1, 10]`, then each next
/// value uniform over the admissible interval of the quadratic inequality
/// intersected with `[μ_k, ∞)`.
pub fn sample_admissible_sequence<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    len: usize,
) -> Result<Vec<f64>> {
    check_dim(n)?;
    let mut mu = Vec::with_capacity(len);
    if len == 0 {
        return Ok(mu);
    }
    mu.push(rng.gen_range(0.1..=10.0));
    while mu.len() < len {
        let (lo, hi) = admissible_interval(&mu, n)?;
        let last = mu[mu.len() - 1];
        let lo = lo.max(last);
        let next = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
        mu.push(next);
    }
    Ok(mu)
}

/// `a₁(n) = n(1+4/n)(1 + 8/(n+1) + 8/(n+1)²)^{1/2} / (n+1)^{2/n} − n`.
pub fn a1(n: usize) -> f64 {
    let nf = n as f64;
    let np1 = nf + 1.0;
    nf * (1.0 + 4.0 / nf) * (1.0 + 8.0 / np1 + 8.0 / (np1 * np1)).sqrt() / np1.powf(2.0 / nf) - nf
}

/// `a₂(k,n) = (n / k^{2/n}) (1 + 4(n+k+4)/(n² + 5n − 4(k−1))) − n`.
pub fn a2(k: usize, n: usize) -> Result<f64> {
    if k == 0 || n < k {
        return Err(Error::Domain(format!("a2 needs 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let (kf, nf) = (k as f64, n as f64);
    let denominator = nf * nf + 5.0 * nf - 4.0 * (kf - 1.0);
    if denominator <= 0.0 {
        return Err(Error::Domain(format!("a2 denominator {denominator} at k = {k}, n = {n}")));
    }
    Ok(nf / kf.powf(2.0 / nf) * (1.0 + 4.0 * (nf + kf + 4.0) / denominator) - nf)
}

/// `max { a₂(k,n) : k ≤ n ≤ 400 }` over integer `n`.
pub fn a2max(k: usize) -> Result<f64> {
    if k == 0 || k > A2_SCAN_LIMIT {
        return Err(Error::Domain(format!("a2max needs 1 <= k <= {A2_SCAN_LIMIT}, got {k}")));
    }
    (k..=A2_SCAN_LIMIT).try_fold(f64::NEG_INFINITY, |best, n| Ok(best.max(a2(k, n)?)))
}

/// `a₃(k) = 4/(1 − k/400) − 2 ln k`.
pub fn a3(k: usize) -> Result<f64> {
    if k == 0 || k >= A2_SCAN_LIMIT {
        return Err(Error::Domain(format!("a3 needs 1 <= k < {A2_SCAN_LIMIT}, got {k}")));
    }
    let kf = k as f64;
    Ok(4.0 / (1.0 - kf / A2_SCAN_LIMIT as f64) - 2.0 * kf.ln())
}

/// `a(0) = 4`, `a(m) = max{a₁(m), a₂max(m+1), a₃(m+1)}`.
pub fn a_coeff(m: usize) -> Result<f64> {
    if m == 0 {
        return Ok(4.0);
    }
    if m > A_COEFF_MAX {
        return Err(Error::Domain(format!("a(m) is tabulated for m <= {A_COEFF_MAX}, got {m}")));
    }
    Ok(a1(m).max(a2max(m + 1)?).max(a3(m + 1)?))
}

/// Closed-form cap `2.2 − 4 ln(1 + (m−3)/50)` quoted for `a(m)`.
pub fn a_coeff_cap(m: usize) -> f64 {
    2.2 - 4.0 * (1.0 + (m as f64 - 3.0) / 50.0).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub k: usize,
    pub a1: f64,
    pub a2_next: f64,
    pub a3_next: f64,
}

/// Printed upper bounds for `(a₁(k), a₂(k+1), a₃(k+1))`, `k = 1..=41`.
pub const TABLE1_REFERENCE: [[f64; 3]; 41] = [
    [2.31, 2.62, 2.64],
    [2.27, 2.05, 1.84],
    [2.2, 2.00, 1.27],
    [2.12, 1.96, 0.84],
    [2.03, 1.90, 0.48],
    [1.94, 1.84, 0.18],
    [1.86, 1.77, -0.07],
    [1.77, 1.70, -0.30],
    [1.69, 1.63, -0.50],
    [1.61, 1.56, -0.68],
    [1.53, 1.49, -0.84],
    [1.46, 1.42, -0.99],
    [1.39, 1.35, -1.13],
    [1.32, 1.29, -1.26],
    [1.25, 1.22, -1.37],
    [1.18, 1.16, -1.48],
    [1.12, 1.10, -1.59],
    [1.06, 1.04, -1.68],
    [1.00, 0.98, -1.78],
    [0.94, 0.92, -1.86],
    [0.89, 0.87, -1.94],
    [0.83, 0.82, -2.02],
    [0.78, 0.76, -2.10],
    [0.72, 0.71, -2.17],
    [0.67, 0.66, -2.23],
    [0.62, 0.61, -2.30],
    [0.58, 0.57, -2.36],
    [0.53, 0.52, -2.42],
    [0.48, 0.47, -2.47],
    [0.44, 0.43, -2.53],
    [0.39, 0.38, -2.58],
    [0.35, 0.34, -2.63],
    [0.31, 0.30, -2.68],
    [0.27, 0.26, -2.72],
    [0.23, 0.22, -2.77],
    [0.19, 0.18, -2.81],
    [0.15, 0.14, -2.85],
    [0.11, 0.10, -2.89],
    [0.07, 0.07, -2.93],
    [0.03, 0.03, -2.97],
    [-0.00, -0.01, -3.00],
];

/// Rows `k = 1..=41` of the coefficient table.
pub fn table1() -> Vec<Table1Row> {
    (1..=41)
        .map(|k| Table1Row {
            k,
            a1: a1(k),
            a2_next: a2max(k + 1).expect("k + 1 <= 42 is in range"),
            a3_next: a3(k + 1).expect("k + 1 <= 42 is in range"),
        })
        .collect()
}

/// Round half away from zero to two decimals.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// A computed table value agrees with a printed entry when it rounds to within
/// one unit of the last printed digit. The entry `-0.00` stands for a value
/// in `(-0.005, 0]`; it compares equal to `0.0`.
pub fn table_entry_agrees(computed: f64, printed: f64) -> bool {
    (round2(computed) - printed).abs() <= 0.01 + 1e-9
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("k,a1,a2_next,a3_next\n");
    for r in rows {
        out.push_str(&format!("{},{:.2},{:.2},{:.2}\n", r.k, r.a1, r.a2_next, r.a3_next));
    }
    out
}

/// Markdown layout: blocks of ten `k` columns with one row per coefficient.
pub fn table1_markdown(rows: &[Table1Row]) -> String {
    let mut out = String::new();
    for (b, block) in rows.chunks(10).enumerate() {
        if b > 0 {
            out.push('\n');
        }
        let cells = |f: &dyn Fn(&Table1Row) -> String| {
            block.iter().map(f).collect::<Vec<_>>().join(" | ")
        };
        out.push_str(&format!("| k | {} |\n", cells(&|r| r.k.to_string())));
        out.push_str(&format!("|---|{}\n", "---:|".repeat(block.len())));
        out.push_str(&format!("| a1(k) ≤ | {} |\n", cells(&|r| format!("{:.2}", r.a1))));
        out.push_str(&format!("| a2(k+1) ≤ | {} |\n", cells(&|r| format!("{:.2}", r.a2_next))));
        out.push_str(&format!("| a3(k+1) ≤ | {} |\n", cells(&|r| format!("{:.2}", r.a3_next))));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundSource {
    Thm12,
    Thm52,
    Eq44,
}

/// Upper bound for a shifted eigenvalue.
///
/// For the closed problem `bound_value` bounds `λₖ + shift` with
/// `μ₁ = shift`; for the Dirichlet problem it bounds `λ_{k+1} + shift` with
/// `μ₁ = λ₁ + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChengYangBound {
    pub k: usize,
    pub n: usize,
    pub shift: f64,
    pub mu_1: f64,
    pub coefficient_a: f64,
    pub bound_value: f64,
    /// `μ₁ k^{2/n}`, valid once `n ≥ 41` and `k ≥ 41`.
    pub simplified_bound: Option<f64>,
    pub source: BoundSource,
}

impl ChengYangBound {
    /// Bound on the unshifted eigenvalue.
    pub fn eigenvalue_bound(&self) -> f64 {
        let best = match self.simplified_bound {
            Some(s) => s.min(self.bound_value),
            None => self.bound_value,
        };
        best - self.shift
    }
}

fn growth_bound(
    n: usize,
    shift: f64,
    mu_1: f64,
    k: usize,
    source: BoundSource,
    a_cache: &mut dyn FnMut(usize) -> Result<f64>,
) -> Result<ChengYangBound> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let m = n.min(k - 1);
    let growth = (k as f64).powf(2.0 / n as f64);
    let simplified = (n >= 41 && k >= 41).then_some(mu_1 * growth);
    let (coefficient_a, bound_value) = if m <= A_COEFF_MAX {
        let a = a_cache(m)?;
        (a, (1.0 + a / n as f64) * mu_1 * growth)
    } else {
        // a(m) < 0 for every tabulated m >= 41, so coefficient 0 still bounds
        (0.0, mu_1 * growth)
    };
    Ok(ChengYangBound {
        k,
        n,
        shift,
        mu_1,
        coefficient_a,
        bound_value,
        simplified_bound: simplified,
        source,
    })
}

fn closed_shift(n: usize, min_x2: f64) -> Result<f64> {
    check_dim(n)?;
    if !(min_x2 >= 0.0) || min_x2 >= 2.0 * n as f64 {
        return Err(Error::InvalidShift {
            min_x2,
            two_n: 2.0 * n as f64,
        });
    }
    Ok(shift_constant(n, min_x2))
}

/// Bound on `λₖ + shift` for the closed problem on a compact self-shrinker.
pub fn thm12_bound(n: usize, min_x2: f64, k: usize) -> Result<ChengYangBound> {
    let shift = closed_shift(n, min_x2)?;
    growth_bound(n, shift, shift, k, BoundSource::Thm12, &mut a_coeff)
}

/// Bound on `λ_{k+1} + shift` for the Dirichlet problem.
pub fn thm52_bound(n: usize, inf_x2: f64, lambda_1: f64, k: usize) -> Result<ChengYangBound> {
    let shift = closed_shift(n, inf_x2)?;
    if !(lambda_1 > 0.0) {
        return Err(Error::InvalidInput(format!("lambda_1 must be positive, got {lambda_1}")));
    }
    growth_bound(n, shift, lambda_1 + shift, k, BoundSource::Thm52, &mut a_coeff)
}

/// `thm12_bound` or `thm52_bound` for `k = 1..=k_max`, computing each `a(m)` once.
pub fn bound_sweep(
    source: BoundSource,
    n: usize,
    x2: f64,
    lambda_1: Option<f64>,
    k_max: usize,
) -> Result<Vec<ChengYangBound>> {
    let shift = closed_shift(n, x2)?;
    let mu_1 = match (source, lambda_1) {
        (BoundSource::Thm52, Some(l)) if l > 0.0 => l + shift,
        (BoundSource::Thm52, _) => {
            return Err(Error::InvalidInput("Dirichlet bound needs lambda_1 > 0".into()))
        }
        (BoundSource::Thm12, _) => shift,
        (BoundSource::Eq44, _) => {
            return Err(Error::InvalidInput("use eq44_bound for the one-step bound".into()))
        }
    };
    let mut cache: Vec<Option<f64>> = vec![None; n.min(A_COEFF_MAX) + 1];
    let mut lookup = |m: usize| -> Result<f64> {
        if let Some(v) = cache[m] {
            return Ok(v);
        }
        let v = a_coeff(m)?;
        cache[m] = Some(v);
        Ok(v)
    };
    (1..=k_max)
        .map(|k| growth_bound(n, shift, mu_1, k, source, &mut lookup))
        .collect()
}

/// `(1 + 4/n) k^{2/n} μ₁`.
pub fn eq44_bound(n: usize, mu_1: f64, k: usize) -> f64 {
    (1.0 + 4.0 / n as f64) * (k as f64).powf(2.0 / n as f64) * mu_1
}
