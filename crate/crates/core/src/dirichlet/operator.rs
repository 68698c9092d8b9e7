use serde::{Deserialize, Serialize};

use super::{DirichletProblem, Stencil};
use crate::error::{Error, Result};

/// Symmetric tridiagonal discretization of `−𝔏` after conjugation by
/// `e^{−x²/4}`, with the Dirichlet rows eliminated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
    /// Interior abscissae `x₁ … x_N`.
    pub grid: Vec<f64>,
    /// `e^{x²/4}`: multiply a symmetrized eigenvector by these to recover `u`.
    pub transform_weights: Vec<f64>,
    pub spacing: f64,
}

/// `q(x) = x²/4 − 1/2`, the potential of the conjugated operator.
pub fn potential(x: f64) -> f64 {
    x * x / 4.0 - 0.5
}

pub fn assemble_1d(problem: &DirichletProblem) -> Result<DiscreteOperator> {
    problem.validate()?;
    if problem.dim != 1 {
        return Err(Error::InvalidDimension(format!(
            "assemble_1d needs a 1-D problem, got dim = {}",
            problem.dim
        )));
    }
    let n = problem.grid;
    let (a, _) = problem.bounds[0];
    let h = problem.spacing(0);
    let h2 = h * h;
    let grid: Vec<f64> = (1..=n).map(|i| a + i as f64 * h).collect();

    let (diagonal, off) = match problem.stencil {
        Stencil::Potential => {
            let diagonal = grid.iter().map(|&x| 2.0 / h2 + potential(x)).collect();
            (diagonal, -1.0 / h2)
        }
        Stencil::WeightedFlux => {
            // Face weights w(x ± h/2)/w(x) = exp(∓xh/2 − h²/8) with w = e^{−x²/2};
            // the conjugated off-diagonal w(x+h/2)/√(w(x)w(x+h)) = e^{h²/8}.
            let damp = (-h2 / 8.0).exp();
            let diagonal = grid
                .iter()
                .map(|&x| 2.0 * damp * (x * h / 2.0).cosh() / h2)
                .collect();
            (diagonal, -(h2 / 8.0).exp() / h2)
        }
    };
    Ok(DiscreteOperator {
        diagonal,
        off_diagonal: vec![off; n - 1],
        transform_weights: grid.iter().map(|&x| (x * x / 4.0).exp()).collect(),
        grid,
        spacing: h,
    })
}

impl DiscreteOperator {
    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        assert_eq!(v.len(), n, "vector length must match the operator");
        (0..n)
            .map(|i| {
                let mut y = self.diagonal[i] * v[i];
                if i > 0 {
                    y += self.off_diagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    y += self.off_diagonal[i] * v[i + 1];
                }
                y
            })
            .collect()
    }
}
