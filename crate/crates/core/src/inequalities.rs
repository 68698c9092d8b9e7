//! Universal inequalities for eigenvalues of the drift Laplacian.
//!
//! The quadratic inequality
//!
//! ```text
//! Σᵢ (λ_{k+1} − λᵢ)² ≤ (4/n) Σᵢ (λ_{k+1} − λᵢ)(λᵢ + (2n − min|X|²)/4)
//! ```
//!
//! holds for the closed problem on a compact self-shrinker (sum over
//! `i = 0..=k`) and for the Dirichlet problem on a bounded domain (sum over
//! `i = 1..=k`, with `min` replaced by the infimum over the domain). The
//! index origin is taken from the sequence kind.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PositionNormStats;
use crate::spectrum::{EigenvalueSequence, ProblemKind};
use crate::sum::CompensatedSum;

/// Relative tolerance for every inequality verdict.
pub const TOL_CHECK: f64 = 1e-9;

/// `(2n − min|X|²)/4`.
pub fn shift_constant(n: usize, min_x2: f64) -> f64 {
    (2.0 * n as f64 - min_x2) / 4.0
}

/// Both sides of the quadratic inequality at one truncation index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YangReport {
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub relative_gap: f64,
    pub satisfied: bool,
    pub shift: f64,
    pub kind: ProblemKind,
}

impl YangReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDimension("n must be at least 1".into()));
    }
    Ok(())
}

fn check_min_x2(min_x2: f64) -> Result<()> {
    if !(min_x2.is_finite() && min_x2 >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "min|X|^2 must be a nonnegative number, got {min_x2}"
        )));
    }
    Ok(())
}

/// Evaluate the inequality on `values`, where `values[..len-1]` are the
/// summed eigenvalues and the last entry is `λ_{k+1}`.
fn evaluate(values: &[f64], n: usize, shift: f64) -> (f64, f64) {
    let (next, prefix) = values.split_last().expect("nonempty");
    let mut lhs = CompensatedSum::new();
    let mut rhs = CompensatedSum::new();
    for &lambda in prefix {
        let d = next - lambda;
        lhs.add(d * d);
        rhs.add(d * (lambda + shift));
    }
    (lhs.value(), 4.0 / n as f64 * rhs.value())
}

fn verdict(lhs: f64, rhs: f64) -> bool {
    rhs - lhs >= -TOL_CHECK * rhs.max(1.0)
}

/// Check the quadratic inequality on `seq` at index `k`.
pub fn yang_check(seq: &EigenvalueSequence, n: usize, min_x2: f64, k: usize) -> Result<YangReport> {
    check_dim(n)?;
    check_min_x2(min_x2)?;
    // closed: λ₀..λ_{k+1}; Dirichlet: λ₁..λ_{k+1}
    let needed = match seq.kind() {
        ProblemKind::Closed => k + 2,
        ProblemKind::Dirichlet => k + 1,
    };
    let values = seq.expanded_prefix(needed);
    if values.len() < needed {
        return Err(Error::InsufficientSpectrum {
            needed,
            available: values.len(),
        });
    }
    let shift = shift_constant(n, min_x2);
    let (lhs, rhs) = evaluate(&values, n, shift);
    let gap = rhs - lhs;
    Ok(YangReport {
        k,
        lhs,
        rhs,
        gap,
        relative_gap: gap / rhs.max(f64::MIN_POSITIVE),
        satisfied: verdict(lhs, rhs),
        shift,
        kind: seq.kind(),
    })
}

/// Reports for every `k` in `k_range`, stopping with an error if the spectrum
/// runs out.
pub fn yang_sweep(
    seq: &EigenvalueSequence,
    n: usize,
    min_x2: f64,
    k_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<YangReport>> {
    k_range.map(|k| yang_check(seq, n, min_x2, k)).collect()
}

/// Roots of `k x² − (2 + 4/n) S₁ x + (1 + 4/n) S₂ = 0`, the equality case
/// of the inequality for positive values `mu` and unknown next value `x`.
pub(crate) fn admissible_interval(mu: &[f64], n: usize) -> Result<(f64, f64)> {
    let k = mu.len() as f64;
    let nf = n as f64;
    let mut s1 = CompensatedSum::new();
    let mut s2 = CompensatedSum::new();
    for &m in mu {
        s1.add(m);
        s2.add(m * m);
    }
    let b = (2.0 + 4.0 / nf) * s1.value();
    let c = (1.0 + 4.0 / nf) * s2.value();
    let disc = b * b - 4.0 * k * c;
    if disc < 0.0 {
        // Rounding can push an exact double root slightly negative.
        if disc >= -1e-12 * b * b {
            let r = b / (2.0 * k);
            return Ok((r, r));
        }
        return Err(Error::NegativeDiscriminant(disc));
    }
    let root = disc.sqrt();
    let hi = (b + root) / (2.0 * k);
    // lower root from Vieta to avoid cancellation
    let lo = if hi > 0.0 { c / (k * hi) } else { (b - root) / (2.0 * k) };
    Ok((lo, hi))
}

/// Largest value of the next eigenvalue allowed by the inequality given the
/// summed prefix (`λ₀..λ_k` for a closed spectrum, `λ₁..λ_k` for Dirichlet).
pub fn yang_next_bound(prefix: &[f64], n: usize, min_x2: f64) -> Result<f64> {
    check_dim(n)?;
    check_min_x2(min_x2)?;
    if prefix.is_empty() {
        return Err(Error::InvalidInput("prefix must not be empty".into()));
    }
    if prefix.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidInput("prefix must be sorted".into()));
    }
    let shift = shift_constant(n, min_x2);
    let mu: Vec<f64> = prefix.iter().map(|l| l + shift).collect();
    let (_, hi) = admissible_interval(&mu, n)?;
    Ok(hi - shift)
}

/// Result of the lower-order inequality `Σ_{j=1}^n (λ_{j+1} − λ₁) ≤ (2n − inf|X|²) + 4λ₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerOrderReport {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

pub fn lower_order_check(seq: &EigenvalueSequence, n: usize, inf_x2: f64) -> Result<LowerOrderReport> {
    check_dim(n)?;
    check_min_x2(inf_x2)?;
    if seq.kind() != ProblemKind::Dirichlet {
        return Err(Error::InvalidInput(
            "lower-order check applies to Dirichlet spectra".into(),
        ));
    }
    let values = seq.expanded_prefix(n + 1);
    if values.len() < n + 1 {
        return Err(Error::InsufficientSpectrum {
            needed: n + 1,
            available: values.len(),
        });
    }
    let first = values[0];
    let mut lhs = CompensatedSum::new();
    for &v in &values[1..] {
        lhs.add(v - first);
    }
    let lhs = lhs.value();
    let rhs = (2.0 * n as f64 - inf_x2) + 4.0 * first;
    Ok(LowerOrderReport {
        lhs,
        rhs,
        satisfied: verdict(lhs, rhs),
    })
}

/// `min|X|² ≤ n ≤ max|Xᴺ|²`, defined for compact models only.
pub fn prop21_check(stats: &PositionNormStats) -> Result<bool> {
    if !stats.compact {
        return Err(Error::NotApplicable(
            "the position-norm chain is stated for compact shrinkers".into(),
        ));
    }
    let n = stats.n as f64;
    Ok(stats.min_x2 <= n && n <= stats.max_xn2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ou_spectrum, sphere_spectrum, sphere_spectrum_covering, ShrinkerModel};
    use crate::spectrum::{Level, Provenance};

    #[test]
    fn shift_examples() {
        assert_eq!(shift_constant(3, 3.0), 0.75);
        assert_eq!(shift_constant(2, 0.0), 1.0);
        assert_eq!(shift_constant(5, 5.0), 1.25);
    }

    #[test]
    fn sphere_first_index_is_equality() {
        let r = yang_check(&sphere_spectrum(3, 3).unwrap(), 3, 3.0, 0).unwrap();
        assert_eq!((r.lhs, r.rhs, r.gap), (1.0, 1.0, 0.0));
        assert!(r.satisfied);
    }

    #[test]
    fn sphere_sharp_for_all_k() {
        let s = sphere_spectrum_covering(2, 40).unwrap();
        for k in 0..=30 {
            let r = yang_check(&s, 2, 2.0, k).unwrap();
            assert!(r.relative_gap.abs() <= 1e-9, "k = {k}: {r:?}");
        }
    }

    #[test]
    fn ou_plane_first_index() {
        let r = yang_check(&ou_spectrum(2, 3).unwrap(), 2, 0.0, 0).unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 2.0));
        assert!(r.satisfied);
    }

    #[test]
    fn insufficient_spectrum() {
        let s = sphere_spectrum(2, 2).unwrap(); // 4 eigenvalues
        assert!(yang_check(&s, 2, 2.0, 2).is_ok());
        assert_eq!(
            yang_check(&s, 2, 2.0, 3),
            Err(Error::InsufficientSpectrum { needed: 5, available: 4 })
        );
    }

    #[test]
    fn dirichlet_origin_starts_at_one() {
        let s = EigenvalueSequence::new(
            ProblemKind::Dirichlet,
            1,
            vec![Level::new(1.0, 1), Level::new(2.0, 1)],
            Provenance::External,
        )
        .unwrap();
        // k = 1: (λ₂ − λ₁)² ≤ 4 (λ₂ − λ₁)(λ₁ + 1/2)
        let r = yang_check(&s, 1, 0.0, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 6.0));
        assert!(yang_check(&s, 1, 0.0, 2).is_err());
    }

    #[test]
    fn violation_detected() {
        let s = EigenvalueSequence::new(
            ProblemKind::Closed,
            2,
            vec![Level::new(0.0, 1), Level::new(10.0, 1)],
            Provenance::External,
        )
        .unwrap();
        let r = yang_check(&s, 2, 2.0, 0).unwrap();
        assert!(!r.satisfied);
        assert!(r.gap < 0.0);
    }

    #[test]
    fn next_bound_examples() {
        assert!((yang_next_bound(&[0.0], 3, 3.0).unwrap() - 1.0).abs() < 1e-15);
        for n in 1..8 {
            for min_x2 in [0.0, 0.5, n as f64] {
                let expected = (2.0 * n as f64 - min_x2) / n as f64;
                let got = yang_next_bound(&[0.0], n, min_x2).unwrap();
                assert!((got - expected).abs() < 1e-12);
            }
        }
        // S⁴: level 1 has multiplicity 5, the next level is 5/2
        let b = yang_next_bound(&[0.0, 1.0, 1.0, 1.0, 1.0], 4, 4.0).unwrap();
        assert!(b >= 1.0, "{b}");
        let b = yang_next_bound(&[0.0, 1.0, 1.0, 1.0, 1.0, 1.0], 4, 4.0).unwrap();
        assert!(b >= 2.5 - 1e-12, "{b}");
    }

    #[test]
    fn iterated_next_bound_dominates_sphere() {
        let n = 3;
        let sphere = sphere_spectrum_covering(n, 60).unwrap().expanded();
        let mut prefix = vec![0.0];
        for i in 1..60 {
            let next = yang_next_bound(&prefix, n, n as f64).unwrap();
            assert!(next + 1e-9 >= sphere[i], "i = {i}: {next} < {}", sphere[i]);
            prefix.push(next);
        }
    }

    #[test]
    fn lower_order_examples() {
        let constant = EigenvalueSequence::new(
            ProblemKind::Dirichlet,
            3,
            vec![Level::new(2.0, 4)],
            Provenance::External,
        )
        .unwrap();
        let r = lower_order_check(&constant, 3, 0.0).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.satisfied);
        assert!(lower_order_check(&constant, 4, 0.0).is_err());
        let closed = sphere_spectrum(2, 3).unwrap();
        assert!(lower_order_check(&closed, 2, 2.0).is_err());
    }

    #[test]
    fn prop21() {
        for n in [1, 5] {
            let stats = ShrinkerModel::sphere(n).unwrap().position_norm_stats();
            assert!(prop21_check(&stats).unwrap());
        }
        let flat = ShrinkerModel::euclidean(2).unwrap().position_norm_stats();
        assert!(matches!(prop21_check(&flat), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn report_json_fields() {
        let r = yang_check(&sphere_spectrum(3, 3).unwrap(), 3, 3.0, 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["k", "lhs", "rhs", "gap", "relative_gap", "satisfied", "shift", "kind"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["kind"], "closed");
    }
}
