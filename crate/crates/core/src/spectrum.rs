//! Eigenvalue sequences with multiplicities and their file formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which eigenvalue problem a sequence belongs to. Determines index origin:
/// closed spectra start at `λ₀ = 0`, Dirichlet spectra at `λ₁ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Closed,
    Dirichlet,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Closed => "closed",
            ProblemKind::Dirichlet => "dirichlet",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    ClosedForm,
    Numerical,
    External,
}

/// One distinct eigenvalue and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub lambda: f64,
    pub mult: usize,
}

impl Level {
    pub fn new(lambda: f64, mult: usize) -> Self {
        Self { lambda, mult }
    }
}

impl From<(f64, usize)> for Level {
    fn from((lambda, mult): (f64, usize)) -> Self {
        Self { lambda, mult }
    }
}

/// A sorted spectrum with multiplicities.
///
/// `exhaustive` marks a sequence that lists the whole spectrum rather than a
/// truncated prefix of it (the spectrum of a point, a toy two-level system).
/// Product spectra only need the truncation guard for non-exhaustive inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence")]
pub struct EigenvalueSequence {
    kind: ProblemKind,
    n: usize,
    entries: Vec<Level>,
    provenance: Provenance,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    exhaustive: bool,
}

#[derive(Deserialize)]
struct RawSequence {
    kind: ProblemKind,
    n: usize,
    entries: Vec<Level>,
    provenance: Provenance,
    #[serde(default)]
    exhaustive: bool,
}

impl TryFrom<RawSequence> for EigenvalueSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        let mut seq = EigenvalueSequence::new(raw.kind, raw.n, raw.entries, raw.provenance)?;
        seq.exhaustive = raw.exhaustive;
        Ok(seq)
    }
}

impl EigenvalueSequence {
    pub fn new(
        kind: ProblemKind,
        n: usize,
        entries: Vec<Level>,
        provenance: Provenance,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("n must be at least 1".into()));
        }
        if entries.is_empty() {
            return Err(Error::InvalidInput("spectrum has no entries".into()));
        }
        for (i, level) in entries.iter().enumerate() {
            if !level.lambda.is_finite() || level.lambda < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "eigenvalue {} at level {i} is not a nonnegative finite number",
                    level.lambda
                )));
            }
            if level.mult == 0 {
                return Err(Error::InvalidInput(format!("level {i} has multiplicity 0")));
            }
            if i > 0 && level.lambda <= entries[i - 1].lambda {
                return Err(Error::InvalidInput(format!(
                    "levels not strictly increasing at {i}: {} after {}",
                    level.lambda,
                    entries[i - 1].lambda
                )));
            }
        }
        match kind {
            ProblemKind::Closed => {
                let first = entries[0];
                if first.lambda != 0.0 || first.mult != 1 {
                    return Err(Error::InvalidInput(format!(
                        "closed spectrum must start at (0, 1), found ({}, {})",
                        first.lambda, first.mult
                    )));
                }
            }
            ProblemKind::Dirichlet => {
                if entries[0].lambda <= 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "Dirichlet spectrum must start above 0, found {}",
                        entries[0].lambda
                    )));
                }
            }
        }
        Ok(Self {
            kind,
            n,
            entries,
            provenance,
            exhaustive: false,
        })
    }

    /// Mark the sequence as listing the complete spectrum.
    pub fn into_exhaustive(mut self) -> Self {
        self.exhaustive = true;
        self
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Level] {
        &self.entries
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn num_levels(&self) -> usize {
        self.entries.len()
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|l| l.mult).sum()
    }

    pub fn smallest(&self) -> f64 {
        self.entries[0].lambda
    }

    pub fn largest(&self) -> f64 {
        self.entries[self.entries.len() - 1].lambda
    }

    /// Eigenvalues repeated according to multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.expanded_prefix(usize::MAX)
    }

    /// At most `limit` eigenvalues repeated according to multiplicity.
    pub fn expanded_prefix(&self, limit: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total_multiplicity().min(limit));
        'outer: for level in &self.entries {
            for _ in 0..level.mult {
                if out.len() == limit {
                    break 'outer;
                }
                out.push(level.lambda);
            }
        }
        out
    }

    /// Keep only the first `count` distinct levels.
    pub fn truncated(&self, count: usize) -> Self {
        let mut out = self.clone();
        out.entries.truncate(count.max(1));
        if out.entries.len() < self.entries.len() {
            out.exhaustive = false;
        }
        out
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Build a sequence from an ascending list of eigenvalues, grouping values
    /// that agree within `tol`.
    pub fn from_sorted_values(
        kind: ProblemKind,
        n: usize,
        values: &[f64],
        tol: f64,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut entries: Vec<Level> = Vec::new();
        for &v in values {
            match entries.last_mut() {
                Some(last) if (v - last.lambda).abs() <= tol => last.mult += 1,
                _ => entries.push(Level::new(v, 1)),
            }
        }
        Self::new(kind, n, entries, provenance)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectrum serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// `lambda,mult` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,mult\n");
        for level in &self.entries {
            out.push_str(&format!("{},{}\n", level.lambda, level.mult));
        }
        out
    }

    /// CSV carries no metadata, so kind and dimension are supplied by the caller.
    pub fn from_csv(text: &str, kind: ProblemKind, n: usize) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "lambda,mult" => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header `lambda,mult`, found {other:?}"
                )))
            }
        }
        let mut entries = Vec::new();
        for (row, line) in lines.enumerate() {
            let (l, m) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("row {row}: expected two columns")))?;
            let lambda = l
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("row {row}: {e}")))?;
            let mult = m
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("row {row}: {e}")))?;
            entries.push(Level::new(lambda, mult));
        }
        Self::new(kind, n, entries, Provenance::External)
    }
}
