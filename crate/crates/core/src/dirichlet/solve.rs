use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use super::{assemble_1d, tridiag_eigen, tridiag_eigen_with_tol, DirichletProblem, DiscreteOperator};
use crate::error::{Error, Result};
use crate::model::merge_spectra;
use crate::spectrum::{EigenvalueSequence, Level, ProblemKind, Provenance};

/// Ascending Dirichlet eigenvalues of a 1-D problem, without validation of
/// the result.
pub fn solve_1d_values(problem: &DirichletProblem) -> Result<Vec<f64>> {
    let op = assemble_1d(problem)?;
    tridiag_eigen(&op, problem.count)
}

/// Dirichlet spectrum of a 1-D problem. Fails if the computed eigenvalues are
/// not strictly positive and strictly increasing.
pub fn solve_1d(problem: &DirichletProblem) -> Result<EigenvalueSequence> {
    let values = solve_1d_values(problem)?;
    let entries = values.into_iter().map(|v| Level::new(v, 1)).collect();
    EigenvalueSequence::new(ProblemKind::Dirichlet, 1, entries, Provenance::Numerical)
}

/// Dirichlet spectrum of a coordinate rectangle: the operator separates, so
/// the spectrum is the sum spectrum of the two 1-D problems. `problem.count`
/// is the number of distinct levels returned.
pub fn solve_rectangle(problem: &DirichletProblem) -> Result<EigenvalueSequence> {
    problem.validate()?;
    if problem.dim != 2 {
        return Err(Error::InvalidDimension(format!(
            "solve_rectangle needs a 2-D problem, got dim = {}",
            problem.dim
        )));
    }
    let x = solve_1d(&problem.axis(0, problem.count)?)?;
    let y = if problem.bounds[0] == problem.bounds[1] {
        x.clone()
    } else {
        solve_1d(&problem.axis(1, problem.count)?)?
    };
    merge_spectra(&x, &y, problem.count)
}

/// Dispatch on the problem dimension.
pub fn solve(problem: &DirichletProblem) -> Result<EigenvalueSequence> {
    match problem.dim {
        1 => solve_1d(problem),
        _ => solve_rectangle(problem),
    }
}

/// `vᵀTv / vᵀv`.
pub fn rayleigh_quotient(v: &[f64], op: &DiscreteOperator) -> Result<f64> {
    if v.len() != op.len() {
        return Err(Error::InvalidInput(format!(
            "vector length {} does not match operator size {}",
            v.len(),
            op.len()
        )));
    }
    let norm2: f64 = v.iter().map(|x| x * x).sum();
    if norm2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let tv = op.apply(v);
    Ok(v.iter().zip(&tv).map(|(a, b)| a * b).sum::<f64>() / norm2)
}

/// Observed convergence orders per level under two grid halvings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceAnnex {
    pub grids: Vec<usize>,
    pub order_estimates: Vec<f64>,
}

/// Solve on `N`, `2N+1` and `4N+3` interior points (each step halves the
/// spacing exactly) and estimate `log₂((λ_h − λ_{h/2}) / (λ_{h/2} − λ_{h/4}))`
/// for every requested level.
pub fn convergence_orders(problem: &DirichletProblem) -> Result<ConvergenceAnnex> {
    let grids = vec![problem.grid, 2 * problem.grid + 1, 4 * problem.grid + 3];
    let mut runs = Vec::with_capacity(3);
    for &g in &grids {
        let p = problem.with_grid(g)?;
        let values = match p.dim {
            1 => {
                let op = assemble_1d(&p)?;
                tridiag_eigen_with_tol(&op.diagonal, &op.off_diagonal, p.count, 1e-13)?
            }
            _ => solve_rectangle(&p)?.entries().iter().map(|l| l.lambda).collect(),
        };
        runs.push(values);
    }
    let levels = runs.iter().map(Vec::len).min().unwrap_or(0);
    let order_estimates = (0..levels)
        .map(|j| ((runs[0][j] - runs[1][j]) / (runs[1][j] - runs[2][j])).abs().log2())
        .collect();
    Ok(ConvergenceAnnex {
        grids,
        order_estimates,
    })
}

/// Interior residuals of the unsymmetrized stencil `u″ − x u′` on three
/// polynomials whose images are known exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `max |𝔏ₕx + x|`
    pub linear: f64,
    /// `max |𝔏ₕx² − 2(1 − x²)|`
    pub quadratic: f64,
    /// `max |𝔏ₕ1|`
    pub constant: f64,
    pub spacing: f64,
}

/// Central differences are exact on these polynomials, so the residuals only
/// measure rounding. Samples and stencil are evaluated in double-double
/// arithmetic so that cancellation in the second difference does not swamp
/// the comparison.
pub fn identity_residual_checks(problem: &DirichletProblem) -> Result<ResidualReport> {
    problem.validate()?;
    if problem.dim != 1 {
        return Err(Error::InvalidDimension("residual checks need a 1-D problem".into()));
    }
    let (a, b) = problem.bounds[0];
    let n = problem.grid;
    let h = (TwoFloat::from(b) - a) / (n as f64 + 1.0);
    let node = |i: usize| TwoFloat::from(a) + h * i as f64;

    let residual = |f: &dyn Fn(TwoFloat) -> TwoFloat, image: &dyn Fn(TwoFloat) -> TwoFloat| {
        let mut worst = 0.0f64;
        for i in 1..=n {
            let (xm, x, xp) = (node(i - 1), node(i), node(i + 1));
            let (fm, f0, fp) = (f(xm), f(x), f(xp));
            let second = (fp - f0 * 2.0 + fm) / (h * h);
            let first = (fp - fm) / (h * 2.0);
            let r = second - x * first - image(x);
            worst = worst.max(f64::from(r).abs());
        }
        worst
    };
    let one = TwoFloat::from(1.0);
    Ok(ResidualReport {
        linear: residual(&|x| x, &|x| -x),
        quadratic: residual(&|x| x * x, &|x| (one - x * x) * 2.0),
        constant: residual(&|_| one, &|_| TwoFloat::from(0.0)),
        spacing: f64::from(h),
    })
}

/// `max |T v|` over rows not adjacent to the boundary, for `v = e^{−x²/4}`,
/// the ground state of the conjugated whole-line operator.
pub fn symmetrized_ground_state_residual(problem: &DirichletProblem) -> Result<f64> {
    let op = assemble_1d(problem)?;
    let v: Vec<f64> = op.grid.iter().map(|&x| (-x * x / 4.0).exp()).collect();
    let tv = op.apply(&v);
    Ok(tv[1..tv.len() - 1].iter().fold(0.0f64, |m, r| m.max(r.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::{inverse_iteration, Stencil};

    #[test]
    fn whole_line_limit() {
        let p = DirichletProblem::interval(-6.0, 6.0, 2000, 3).unwrap();
        let s = solve_1d(&p).unwrap();
        let v = s.expanded();
        assert!(v[0] > 0.0 && v[0] < 1e-6);
        assert!((v[1] - 1.0).abs() < 1e-4);
        assert!((v[2] - 2.0).abs() < 1e-3);
    }

    #[test]
    fn domain_monotonicity() {
        let small = solve_1d_values(&DirichletProblem::interval(-2.0, 2.0, 800, 5).unwrap()).unwrap();
        let large = solve_1d_values(&DirichletProblem::interval(-3.0, 3.0, 1200, 5).unwrap()).unwrap();
        for (s, l) in small.iter().zip(&large) {
            assert!(l < s);
        }
    }

    #[test]
    fn potential_stencil_rejected_when_ground_level_goes_negative() {
        // The potential form underestimates; on a wide interval the ground
        // level (≈ 7e-8) is pushed below zero.
        let p = DirichletProblem::interval(-6.0, 6.0, 4000, 2)
            .unwrap()
            .with_stencil(Stencil::Potential);
        assert!(solve_1d_values(&p).unwrap()[0] < 0.0);
        assert!(solve_1d(&p).is_err());
        let flux = DirichletProblem::interval(-6.0, 6.0, 4000, 2).unwrap();
        assert!(solve_1d(&flux).unwrap().smallest() > 0.0);
    }

    #[test]
    fn rectangle_separates() {
        let p1 = DirichletProblem::interval(-5.0, 5.0, 600, 4).unwrap();
        let one = solve_1d_values(&p1).unwrap();
        let sq = DirichletProblem::rectangle((-5.0, 5.0), (-5.0, 5.0), 600, 3).unwrap();
        let s = solve_rectangle(&sq).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.kind(), ProblemKind::Dirichlet);
        let e = s.entries();
        assert_eq!(e[0], Level::new(one[0] + one[0], 1));
        assert_eq!(e[1], Level::new(one[0] + one[1], 2));
        assert_eq!(e[2].lambda, (one[1] + one[1]).min(one[0] + one[2]));
    }

    #[test]
    fn rectangle_axis_swap_symmetry() {
        let a = DirichletProblem::rectangle((-2.0, 3.0), (-1.0, 1.5), 300, 6).unwrap();
        let b = DirichletProblem::rectangle((-1.0, 1.5), (-2.0, 3.0), 300, 6).unwrap();
        let (sa, sb) = (solve_rectangle(&a).unwrap(), solve_rectangle(&b).unwrap());
        for (x, y) in sa.entries().iter().zip(sb.entries()) {
            assert_eq!(x.mult, y.mult);
            assert!((x.lambda - y.lambda).abs() < 1e-12);
        }
    }

    #[test]
    fn rayleigh_quotients() {
        let p = DirichletProblem::interval(-1.0, 1.0, 400, 3).unwrap();
        let op = assemble_1d(&p).unwrap();
        let values = tridiag_eigen(&op, 3).unwrap();
        for (j, &lambda) in values.iter().enumerate() {
            let v = inverse_iteration(&op, lambda, 2);
            let rq = rayleigh_quotient(&v, &op).unwrap();
            assert!(((rq - lambda) / lambda).abs() <= 1e-8, "j = {j}: {rq} vs {lambda}");
        }
        let mut basis = vec![0.0; op.len()];
        basis[7] = 1.0;
        assert_eq!(rayleigh_quotient(&basis, &op).unwrap(), op.diagonal[7]);
        let zeros = vec![0.0; op.len()];
        assert_eq!(rayleigh_quotient(&zeros, &op), Err(Error::ZeroVector));
    }

    #[test]
    fn polynomial_identities() {
        let p = DirichletProblem::interval(-4.0, 4.0, 2000, 1).unwrap();
        let r = identity_residual_checks(&p).unwrap();
        assert!(r.linear <= 1e-10 && r.quadratic <= 1e-10, "{r:?}");
        assert_eq!(r.constant, 0.0);
    }

    #[test]
    fn ground_state_residual_order() {
        let coarse = DirichletProblem::interval(-8.0, 8.0, 1999, 1)
            .unwrap()
            .with_stencil(Stencil::Potential);
        let fine = coarse.with_grid(3999).unwrap();
        let rc = symmetrized_ground_state_residual(&coarse).unwrap();
        let rf = symmetrized_ground_state_residual(&fine).unwrap();
        let h = fine.spacing(0);
        assert!(rf <= h * h);
        assert!(((rc / rf).log2() - 2.0).abs() < 0.1, "{rc} {rf}");
        // the flux form annihilates it up to rounding
        let flux = fine.clone().with_stencil(Stencil::WeightedFlux);
        assert!(symmetrized_ground_state_residual(&flux).unwrap() < 1e-8);
    }
}
