//! Dirichlet eigenvalues of the Ornstein–Uhlenbeck operator `u″ − x u′` on
//! intervals, and on rectangles by separation of variables.
//!
//! The operator is conjugated by `e^{−x²/4}` into a symmetric form before
//! discretization, so the discrete problem is a symmetric tridiagonal matrix
//! solved by Sturm-sequence bisection. The conjugating factor never vanishes,
//! so the Dirichlet condition carries over unchanged.

mod operator;
mod solve;
mod tridiag;

pub use operator::{assemble_1d, potential, DiscreteOperator};
pub use solve::{
    convergence_orders, identity_residual_checks, rayleigh_quotient, solve, solve_1d,
    solve_1d_values, solve_rectangle, symmetrized_ground_state_residual, ConvergenceAnnex,
    ResidualReport,
};
pub use tridiag::{
    gershgorin_bounds, inverse_iteration, sturm_count, tridiag_eigen, tridiag_eigen_with_tol,
    TOL_EIG,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Discretization of the symmetrized operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stencil {
    /// Flux form of `−e^{x²/2}(e^{−x²/2}u′)′` with the Gaussian weight taken at
    /// cell faces, then conjugated. The matrix is a weighted graph Laplacian,
    /// hence positive definite, and `e^{−x²/4}` is an exact null vector of its
    /// interior rows.
    #[default]
    WeightedFlux,
    /// `−v″ + (x²/4 − 1/2)v` with the central second difference.
    Potential,
}

/// A Dirichlet eigenvalue problem on an interval or a coordinate rectangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProblem")]
pub struct DirichletProblem {
    pub dim: usize,
    pub bounds: Vec<(f64, f64)>,
    /// Interior grid points per axis.
    pub grid: usize,
    /// Eigenvalues (1-D) or distinct levels (2-D) to compute.
    pub count: usize,
    #[serde(default)]
    pub stencil: Stencil,
}

#[derive(Deserialize)]
struct RawProblem {
    dim: usize,
    bounds: Vec<(f64, f64)>,
    grid: usize,
    count: usize,
    #[serde(default)]
    stencil: Stencil,
}

impl TryFrom<RawProblem> for DirichletProblem {
    type Error = Error;

    fn try_from(raw: RawProblem) -> Result<Self> {
        let p = DirichletProblem {
            dim: raw.dim,
            bounds: raw.bounds,
            grid: raw.grid,
            count: raw.count,
            stencil: raw.stencil,
        };
        p.validate()?;
        Ok(p)
    }
}

impl DirichletProblem {
    pub fn interval(a: f64, b: f64, grid: usize, count: usize) -> Result<Self> {
        let p = Self {
            dim: 1,
            bounds: vec![(a, b)],
            grid,
            count,
            stencil: Stencil::default(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn rectangle(x: (f64, f64), y: (f64, f64), grid: usize, count: usize) -> Result<Self> {
        let p = Self {
            dim: 2,
            bounds: vec![x, y],
            grid,
            count,
            stencil: Stencil::default(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_stencil(mut self, stencil: Stencil) -> Self {
        self.stencil = stencil;
        self
    }

    pub fn with_grid(&self, grid: usize) -> Result<Self> {
        let mut p = self.clone();
        p.grid = grid;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim != 1 && self.dim != 2 {
            return Err(Error::InvalidDimension(format!("dim must be 1 or 2, got {}", self.dim)));
        }
        if self.bounds.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "expected {} axis bounds, got {}",
                self.dim,
                self.bounds.len()
            )));
        }
        for &(a, b) in &self.bounds {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::InvalidInput(format!("invalid interval ({a}, {b})")));
            }
        }
        if self.grid < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 interior points, got {}", self.grid)));
        }
        let capacity = self.grid.saturating_pow(self.dim as u32);
        if self.count == 0 || self.count > capacity {
            return Err(Error::InvalidInput(format!(
                "count must be in 1..={capacity}, got {}",
                self.count
            )));
        }
        Ok(())
    }

    /// Grid spacing along `axis`.
    pub fn spacing(&self, axis: usize) -> f64 {
        let (a, b) = self.bounds[axis];
        (b - a) / (self.grid as f64 + 1.0)
    }

    /// Squared distance from the origin to the closed domain.
    pub fn inf_x2(&self) -> f64 {
        self.bounds
            .iter()
            .map(|&(a, b)| {
                if a <= 0.0 && 0.0 <= b {
                    0.0
                } else {
                    (a * a).min(b * b)
                }
            })
            .sum()
    }

    /// The 1-D problem along one axis of a rectangle.
    pub fn axis(&self, axis: usize, count: usize) -> Result<Self> {
        let (a, b) = self.bounds[axis];
        Ok(Self::interval(a, b, self.grid, count.min(self.grid))?.with_stencil(self.stencil))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
