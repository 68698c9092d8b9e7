//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and then asserts.
//! Runtime ceilings are checked in optimized builds only.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shrinker_spectra::chengyang::{
    a1, a2max, a3, bound_sweep, recursion_check, round2, sample_admissible_sequence, thm52_bound,
    BoundSource, TABLE1_REFERENCE,
};
use shrinker_spectra::dirichlet::{
    convergence_orders, identity_residual_checks, solve_1d, solve_rectangle, tridiag_eigen_with_tol,
    DirichletProblem,
};
use shrinker_spectra::inequalities::{lower_order_check, yang_check};
use shrinker_spectra::model::{merge_spectra, ou_spectrum, sphere_spectrum_covering};
use shrinker_spectra::verify::charpoly_eigenvalues;
use shrinker_spectra::EigenvalueSequence;

fn report(id: u32, title: &str, failures: &[String], started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {id} [{verdict}] {title}: {} failure(s), {:.2?} (limit {:?})",
        failures.len(),
        elapsed,
        limit
    );
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
    if !cfg!(debug_assertions) {
        assert!(elapsed <= limit, "criterion {id} took {elapsed:?}");
    }
}

#[test]
fn criterion_1_table1() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for (i, printed) in TABLE1_REFERENCE.iter().enumerate() {
        let k = i + 1;
        let computed = [a1(k), a2max(k + 1).unwrap(), a3(k + 1).unwrap()];
        for (name, (c, p)) in ["a1", "a2", "a3"].iter().zip(computed.iter().zip(printed)) {
            if (round2(*c) - p).abs() > 0.01 + 1e-9 {
                failures.push(format!("k = {k}: {name} = {c:.4}, printed {p}"));
            }
        }
    }
    assert_eq!(TABLE1_REFERENCE.len() * 3, 123);
    report(1, "coefficient table, 123 entries within 0.01", &failures, t, Duration::from_secs(1));
}

#[test]
fn criterion_2_sphere_sharpness() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=10 {
        let seq = sphere_spectrum_covering(n, 52).unwrap();
        for k in 0..=50 {
            let r = yang_check(&seq, n, n as f64, k).unwrap();
            let rel = r.gap.abs() / r.rhs;
            if rel > 1e-9 {
                failures.push(format!("n = {n}, k = {k}: |gap|/rhs = {rel:e}"));
            }
        }
    }
    report(2, "sphere attains equality, |gap|/rhs <= 1e-9", &failures, t, Duration::from_secs(1));
}

fn sphere_bound_failures(n: usize, ks: std::ops::RangeInclusive<usize>, simplified: bool) -> Vec<String> {
    let k_max = *ks.end();
    let lambda = sphere_spectrum_covering(n, k_max + 1).unwrap().expanded_prefix(k_max + 1);
    let bounds = bound_sweep(BoundSource::Thm12, n, n as f64, None, k_max).unwrap();
    let shift = n as f64 / 4.0;
    let mut failures = Vec::new();
    for k in ks {
        let b = &bounds[k - 1];
        let bound = if simplified {
            // (n/4) k^{2/n}, computed independently of the stored value
            let own = shift * (k as f64).powf(2.0 / n as f64);
            assert!((b.simplified_bound.unwrap() - own).abs() <= 1e-9 * own);
            own
        } else {
            b.bound_value
        };
        if lambda[k] + shift > bound + 1e-12 {
            failures.push(format!("n = {n}, k = {k}: {} > {bound}", lambda[k] + shift));
        }
    }
    failures
}

#[test]
fn criterion_3_growth_bound_dominates_sphere() {
    let t = Instant::now();
    let failures: Vec<String> = (2..=10).flat_map(|n| sphere_bound_failures(n, 1..=10_000, false)).collect();
    report(3, "growth bound >= sphere eigenvalues, k <= 10^4", &failures, t, Duration::from_secs(10));
}

#[test]
fn criterion_4_simplified_bound() {
    let t = Instant::now();
    let failures: Vec<String> = [41, 50]
        .into_iter()
        .flat_map(|n| sphere_bound_failures(n, 41..=10_000, true))
        .collect();
    report(4, "simplified bound (n/4) k^(2/n) for n, k >= 41", &failures, t, Duration::from_secs(10));
}

#[test]
fn criterion_5_recursion_suite() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(20_130_501);
    for n in [1, 2, 3, 5, 10] {
        for trial in 0..1000 {
            let mu = sample_admissible_sequence(&mut rng, n, 60).unwrap();
            for step in recursion_check(&mu, n).unwrap() {
                if !step.hypothesis_holds {
                    failures.push(format!("n = {n}, trial {trial}, k = {}: hypothesis broken", step.k));
                }
                if !step.conclusion_holds {
                    failures.push(format!(
                        "n = {n}, trial {trial}, k = {}: {} > {}",
                        step.k, step.f_next, step.f_bound
                    ));
                }
            }
        }
    }
    report(5, "recursion conclusion on 1000 sampled sequences per n", &failures, t, Duration::from_secs(30));
}

#[test]
fn criterion_6_solver_convergence() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let v = solve_1d(&DirichletProblem::interval(-6.0, 6.0, 6000, 4).unwrap())
        .unwrap()
        .expanded();
    if v[0] > 1e-6 {
        failures.push(format!("lambda_1 = {:e}", v[0]));
    }
    for j in 2..=4 {
        let err = (v[j - 1] - (j - 1) as f64).abs();
        if err > 1e-4 {
            failures.push(format!("|lambda_{j} - {}| = {err:e}", j - 1));
        }
    }
    let annex = convergence_orders(&DirichletProblem::interval(-4.0, 4.0, 500, 4).unwrap()).unwrap();
    for (j, p) in annex.order_estimates.iter().enumerate() {
        if (p - 2.0).abs() > 0.1 {
            failures.push(format!("order of lambda_{} = {p}", j + 1));
        }
    }
    report(6, "whole-line limit on (-6,6) and order 2 on (-4,4)", &failures, t, Duration::from_secs(60));
}

fn dirichlet_failures(label: &str, seq: &EigenvalueSequence, n: usize) -> Vec<String> {
    let mut failures = Vec::new();
    for k in 1..=30 {
        let r = yang_check(seq, n, 0.0, k).unwrap();
        if !r.satisfied {
            failures.push(format!("{label}: quadratic inequality at k = {k}, gap {}", r.gap));
        }
    }
    let lo = lower_order_check(seq, n, 0.0).unwrap();
    if !lo.satisfied {
        failures.push(format!("{label}: lower-order {} > {}", lo.lhs, lo.rhs));
    }
    let values = seq.expanded_prefix(31);
    for k in 1..=30 {
        let b = thm52_bound(n, 0.0, values[0], k).unwrap();
        if values[k] + b.shift > b.bound_value {
            failures.push(format!("{label}: k = {k}, {} > {}", values[k] + b.shift, b.bound_value));
        }
    }
    failures
}

#[test]
fn criterion_7_dirichlet_inequalities() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for l in [2.0, 4.0, 6.0] {
        let seq = solve_1d(&DirichletProblem::interval(-l, l, 4000, 31).unwrap()).unwrap();
        failures.extend(dirichlet_failures(&format!("(-{l},{l})"), &seq, 1));
    }
    let sq = solve_rectangle(&DirichletProblem::rectangle((-5.0, 5.0), (-5.0, 5.0), 4000, 31).unwrap()).unwrap();
    assert!(sq.total_multiplicity() >= 31);
    failures.extend(dirichlet_failures("(-5,5)^2", &sq, 2));
    report(7, "Dirichlet inequalities on solver output", &failures, t, Duration::from_secs(120));
}

#[test]
fn criterion_8_operator_identities() {
    let t = Instant::now();
    let r = identity_residual_checks(&DirichletProblem::interval(-4.0, 4.0, 2000, 1).unwrap()).unwrap();
    let mut failures = Vec::new();
    if r.linear > 1e-10 {
        failures.push(format!("linear residual {:e}", r.linear));
    }
    if r.quadratic > 1e-10 {
        failures.push(format!("quadratic residual {:e}", r.quadratic));
    }
    if r.constant != 0.0 {
        failures.push(format!("constant residual {:e}", r.constant));
    }
    report(8, "discrete operator on x and x^2", &failures, t, Duration::from_secs(1));
}

#[test]
fn criterion_9_oracles() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=200 {
        let values = tridiag_eigen_with_tol(&vec![2.0; n], &vec![-1.0; n - 1], n, 1e-10).unwrap();
        for (j, v) in values.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            if (v - exact).abs() > 1e-10 {
                failures.push(format!("Toeplitz N = {n}, j = {j}: {v} vs {exact}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0de);
    for trial in 0..100 {
        let n = rng.gen_range(1..=8);
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let e: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got = tridiag_eigen_with_tol(&d, &e, n, 1e-10).unwrap();
        let oracle = charpoly_eigenvalues(&d, &e);
        let err = got.iter().zip(&oracle).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if err > 1e-9 {
            failures.push(format!("random trial {trial} (N = {n}): error {err:e}"));
        }
    }
    let one = ou_spectrum(1, 10).unwrap();
    let merged = merge_spectra(&one, &one, 10).unwrap();
    if merged.entries() != ou_spectrum(2, 10).unwrap().entries() {
        failures.push("ou(1) merged with itself differs from ou(2)".into());
    }
    report(9, "Toeplitz, characteristic polynomial and merge oracles", &failures, t, Duration::from_secs(5));
}
