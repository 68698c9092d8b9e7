//! Closed-form spectra of the drift Laplacian `Δ − ⟨X, ∇·⟩` on the model
//! self-shrinkers: the round sphere `Sⁿ(√n)`, flat `ℝⁿ` (where the operator is
//! the Ornstein–Uhlenbeck operator) and the cylinders `Sᵏ(√k) × ℝⁿ⁻ᵏ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{EigenvalueSequence, Level, ProblemKind, Provenance};

/// Absolute tolerance for grouping coinciding sums in product spectra.
///
/// Model levels are rationals with denominator at most `n`, so distinct
/// levels are separated by far more than this.
pub const TOL_MERGE: f64 = 1e-12;

/// Binomial coefficient with `C(a, b) = 0` for `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> Result<u128> {
    if b < 0 || a < 0 || b > a {
        return Ok(0);
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc
            .checked_mul(a - i)
            .ok_or_else(|| Error::InvalidInput(format!("binomial C({a}, {b}) overflows")))?
            / (i + 1);
    }
    Ok(acc)
}

fn to_mult(value: u128) -> Result<usize> {
    usize::try_from(value).map_err(|_| Error::InvalidInput("multiplicity overflows usize".into()))
}

/// Multiplicity of degree-`l` spherical harmonics on `Sⁿ`.
pub fn spherical_harmonic_multiplicity(l: usize, n: usize) -> Result<usize> {
    let (l, n) = (l as i64, n as i64);
    let value = binomial(n + l, l)? - binomial(n + l - 2, l - 2)?;
    to_mult(value)
}

/// `ℓ(ℓ+n−1)/n`, with the numerator formed in integer arithmetic.
pub fn sphere_level(l: usize, n: usize) -> f64 {
    let numerator = (l as u128) * (l as u128 + n as u128 - 1);
    numerator as f64 / n as f64
}

fn check_dim(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDimension(format!("{what} must be at least 1")));
    }
    Ok(())
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    Ok(())
}

/// First `count` distinct levels of the drift Laplacian on `Sⁿ(√n)`.
///
/// Position is normal on the sphere, so the drift term drops and the levels
/// are the Laplace–Beltrami eigenvalues of the unit sphere rescaled by `1/n`.
pub fn sphere_spectrum(n: usize, count: usize) -> Result<EigenvalueSequence> {
    check_dim(n, "sphere dimension")?;
    check_count(count)?;
    let entries = (0..count)
        .map(|l| Ok(Level::new(sphere_level(l, n), spherical_harmonic_multiplicity(l, n)?)))
        .collect::<Result<Vec<_>>>()?;
    EigenvalueSequence::new(ProblemKind::Closed, n, entries, Provenance::ClosedForm)
}

/// Smallest sphere spectrum whose expansion has at least `eigen_count` entries.
pub fn sphere_spectrum_covering(n: usize, eigen_count: usize) -> Result<EigenvalueSequence> {
    check_dim(n, "sphere dimension")?;
    let mut total = 0usize;
    let mut levels = 0usize;
    while total < eigen_count.max(1) {
        total = total.saturating_add(spherical_harmonic_multiplicity(levels, n)?);
        levels += 1;
    }
    sphere_spectrum(n, levels)
}

/// Spectrum of the Ornstein–Uhlenbeck operator on `ℝⁿ` with Gaussian weight:
/// the integers `m ≥ 0`, each with the multiplicity of degree-`m` monomials in
/// `n` variables (products of Hermite polynomials).
pub fn ou_spectrum(n: usize, count: usize) -> Result<EigenvalueSequence> {
    check_dim(n, "dimension")?;
    check_count(count)?;
    let entries = (0..count)
        .map(|m| {
            let mult = binomial((m + n - 1) as i64, (n - 1) as i64)?;
            Ok(Level::new(m as f64, to_mult(mult)?))
        })
        .collect::<Result<Vec<_>>>()?;
    EigenvalueSequence::new(ProblemKind::Closed, n, entries, Provenance::ClosedForm)
}

/// Spectrum of the cylinder `Sᵏ(√k) × ℝⁿ⁻ᵏ`.
pub fn cylinder_spectrum(k: usize, n: usize, count: usize) -> Result<EigenvalueSequence> {
    if k < 1 || k >= n {
        return Err(Error::InvalidDimension(format!(
            "cylinder needs 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    check_count(count)?;
    // Both factors start at 0 and grow at least linearly, so `count` levels of
    // each cover the first `count` levels of the product.
    let sphere = sphere_spectrum(k, count)?;
    let flat = ou_spectrum(n - k, count)?;
    merge_spectra(&sphere, &flat, count)
}

/// Spectrum of a product: all sums of a level of `a` and a level of `b`, with
/// multiplicities multiplied and accumulated over coinciding sums.
///
/// For a truncated (non-exhaustive) input the result is exact only up to
/// `largest(a) + smallest(b)`; asking for more returns
/// [`Error::InsufficientInputLevels`].
pub fn merge_spectra(
    a: &EigenvalueSequence,
    b: &EigenvalueSequence,
    count: usize,
) -> Result<EigenvalueSequence> {
    check_count(count)?;
    if a.kind() != b.kind() {
        return Err(Error::InvalidInput(format!(
            "cannot merge {} and {} spectra",
            a.kind().as_str(),
            b.kind().as_str()
        )));
    }
    let mut sums: Vec<(f64, usize)> = Vec::with_capacity(a.num_levels() * b.num_levels());
    for la in a.entries() {
        for lb in b.entries() {
            let mult = la
                .mult
                .checked_mul(lb.mult)
                .ok_or_else(|| Error::InvalidInput("multiplicity overflows usize".into()))?;
            sums.push((la.lambda + lb.lambda, mult));
        }
    }
    sums.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut entries: Vec<Level> = Vec::new();
    for (value, mult) in sums {
        match entries.last_mut() {
            Some(last) if (value - last.lambda).abs() <= TOL_MERGE => last.mult += mult,
            _ => {
                if entries.len() == count {
                    break;
                }
                entries.push(Level::new(value, mult));
            }
        }
    }

    let top = entries[entries.len() - 1].lambda;
    for (truncated, other, label) in [(a, b, "first"), (b, a, "second")] {
        if truncated.is_exhaustive() {
            continue;
        }
        let reach = truncated.largest() + other.smallest();
        if top > reach + TOL_MERGE {
            return Err(Error::InsufficientInputLevels(format!(
                "level {top} exceeds the exact range {reach} of the {label} factor"
            )));
        }
    }
    let exhaustive = a.is_exhaustive()
        && b.is_exhaustive()
        && entries.iter().map(|l| l.mult).sum::<usize>()
            == a.total_multiplicity() * b.total_multiplicity();

    let provenance = match (a.provenance(), b.provenance()) {
        (Provenance::ClosedForm, Provenance::ClosedForm) => Provenance::ClosedForm,
        (Provenance::Numerical, _) | (_, Provenance::Numerical) => Provenance::Numerical,
        _ => Provenance::External,
    };
    let seq = EigenvalueSequence::new(a.kind(), a.n() + b.n(), entries, provenance)?;
    Ok(if exhaustive { seq.into_exhaustive() } else { seq })
}

/// Which model self-shrinker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelVariant {
    /// `Sⁿ(√n)`.
    Sphere { n: usize },
    /// A flat `ℝⁿ` through the origin.
    Euclidean { n: usize },
    /// `Sᵏ(√k) × ℝⁿ⁻ᵏ`.
    Cylinder { k: usize, n: usize },
}

/// A model self-shrinker together with its codimension in the ambient space.
///
/// The codimension plays no role in any computed quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkerModel {
    pub variant: ModelVariant,
    pub codimension: usize,
}

/// Statistics of the position vector over a model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositionNormStats {
    pub n: usize,
    pub compact: bool,
    pub min_x2: f64,
    pub max_xn2: f64,
    pub weighted_mean_x2: f64,
}

impl ShrinkerModel {
    pub fn sphere(n: usize) -> Result<Self> {
        Self::new(ModelVariant::Sphere { n })
    }

    pub fn euclidean(n: usize) -> Result<Self> {
        Self::new(ModelVariant::Euclidean { n })
    }

    pub fn cylinder(k: usize, n: usize) -> Result<Self> {
        Self::new(ModelVariant::Cylinder { k, n })
    }

    pub fn new(variant: ModelVariant) -> Result<Self> {
        match variant {
            ModelVariant::Sphere { n } | ModelVariant::Euclidean { n } => check_dim(n, "dimension")?,
            ModelVariant::Cylinder { k, n } => {
                if k < 1 || k >= n {
                    return Err(Error::InvalidDimension(format!(
                        "cylinder needs 1 <= k < n, got k = {k}, n = {n}"
                    )));
                }
            }
        }
        Ok(Self {
            variant,
            codimension: 1,
        })
    }

    pub fn with_codimension(mut self, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidDimension("codimension must be at least 1".into()));
        }
        self.codimension = p;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        match self.variant {
            ModelVariant::Sphere { n }
            | ModelVariant::Euclidean { n }
            | ModelVariant::Cylinder { n, .. } => n,
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self.variant, ModelVariant::Sphere { .. })
    }

    pub fn spectrum(&self, count: usize) -> Result<EigenvalueSequence> {
        match self.variant {
            ModelVariant::Sphere { n } => sphere_spectrum(n, count),
            ModelVariant::Euclidean { n } => ou_spectrum(n, count),
            ModelVariant::Cylinder { k, n } => cylinder_spectrum(k, n, count),
        }
    }

    /// `min |X|²`, `max |Xᴺ|²` and the Gaussian-weighted mean of `|X|²`.
    pub fn position_norm_stats(&self) -> PositionNormStats {
        let n = self.dim();
        let (min_x2, max_xn2, weighted_mean_x2) = match self.variant {
            // |X|² ≡ n and X is normal
            ModelVariant::Sphere { n } => (n as f64, n as f64, n as f64),
            // Xᴺ = 0; the Gaussian second moment in ℝⁿ is n
            ModelVariant::Euclidean { n } => (0.0, 0.0, n as f64),
            // |X|² = k + |t|², only the sphere factor is normal
            ModelVariant::Cylinder { k, n } => (k as f64, k as f64, n as f64),
        };
        PositionNormStats {
            n,
            compact: self.is_compact(),
            min_x2,
            max_xn2,
            weighted_mean_x2,
        }
    }
}

/// Free-function form of [`ShrinkerModel::position_norm_stats`].
pub fn position_norm_stats(model: &ShrinkerModel) -> PositionNormStats {
    model.position_norm_stats()
}
