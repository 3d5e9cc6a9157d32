//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;

use num_complex::Complex64;
use rand::Rng;

use zeroseries::combinatorics::{
    identity_suite_partition, identity_suite_stirling, MultiIndex, OrderedMultiset,
};
use zeroseries::derivation::identity_suite_derivation;
use zeroseries::gkz::{recovery_formula_coeff, recovery_vs_main, x_series_coeff, GkzConfig};
use zeroseries::report::Check;
use zeroseries::root_series::{
    alpha_branch, coeff_closed, formula_forms_agree, newton_root, residual_check, ProblemSpec,
    RecursionOracle,
};
use zeroseries::sampling;
use zeroseries::scalar::{rat_int, Rational};

fn verdict(criterion: u32, what: &str, pass: bool) {
    println!(
        "criterion {criterion}: {} - {what}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {what}");
}

fn named_checks_pass(checks: &[Check], names: &[&str]) -> bool {
    names.iter().all(|name| {
        checks
            .iter()
            .find(|c| c.name == *name)
            .map(|c| c.pass)
            .unwrap_or(false)
    })
}

#[test]
fn criterion_1_closed_formula_vs_recursion_oracle() {
    let mut rng = sampling::rng(101);
    let mut pass = true;
    for d in 1..=3usize {
        for _ in 0..20 {
            let spec = ProblemSpec::new(
                sampling::nonzero_rational(&mut rng),
                sampling::nonzero_rational(&mut rng),
                (0..d).map(|_| sampling::nonzero_rational(&mut rng)).collect(),
                0,
            )
            .unwrap();
            let mut oracle = RecursionOracle::new(&spec);
            for n in MultiIndex::all_up_to(d, 6) {
                if n.order() == 0 {
                    continue;
                }
                let closed = coeff_closed(&n, &spec).unwrap();
                let rec = oracle
                    .coeff(&OrderedMultiset::from_multi_index(&n).unwrap())
                    .unwrap();
                if closed != rec {
                    eprintln!("mismatch at d={d}, n={:?}", n.entries());
                    pass = false;
                }
            }
        }
    }
    verdict(
        1,
        "closed coefficient formula equals the partition-recursion oracle (d<=3, total order<=6, 20 random specs each)",
        pass,
    );
}

#[test]
fn criterion_2_product_form_vs_falling_factorial_form() {
    let mut rng = sampling::rng(102);
    let mut pass = true;
    for _ in 0..100 {
        let d = rng.gen_range(1..=3usize);
        let spec = ProblemSpec::new(
            sampling::nonzero_rational(&mut rng),
            sampling::nonzero_rational(&mut rng),
            (0..d).map(|_| sampling::nonzero_rational(&mut rng)).collect(),
            0,
        )
        .unwrap();
        let max = if d == 3 { 3 } else { 6 };
        for n in MultiIndex::all_up_to(d, max) {
            if n.order() == 0 {
                continue;
            }
            if !formula_forms_agree(&n, &spec).unwrap() {
                pass = false;
            }
        }
    }
    verdict(
        2,
        "the two printed forms of the coefficient product agree exactly on 100 random rational specs",
        pass,
    );
}

#[test]
fn criterion_3_residual_scaling_and_explicit_quadratic_root() {
    let mut rng = sampling::rng(103);
    let mut pass = true;
    for trial in 0..10 {
        let d = rng.gen_range(1..=2usize);
        let b = loop {
            let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if z.norm() > 0.3 {
                break z;
            }
        };
        let beta = rat_int(rng.gen_range(1..=4i64));
        let gammas: Vec<Rational> = (0..d).map(|_| rat_int(rng.gen_range(1..=5i64))).collect();
        let spec = ProblemSpec::new(b, beta, gammas, 0).unwrap();
        let a: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1e-2..1e-2), rng.gen_range(-1e-2..1e-2)))
            .collect();
        for k in 2..=4u32 {
            let report = residual_check(&spec, k, &a, &[1.0, 0.6, 0.36]).unwrap();
            if !report.pass {
                eprintln!(
                    "trial={trial} K={k}: slope {:?} residuals {:?}",
                    report.slope, report.residuals
                );
                pass = false;
            }
        }
    }
    // quadratic: tracked root vs the explicit formula at |a| = 1e-3
    let spec = ProblemSpec::new(Complex64::new(1.0, 0.0), rat_int(2), vec![rat_int(1)], 0)
        .unwrap();
    let branch = alpha_branch(&spec).unwrap();
    let a = Complex64::new(1e-3, 0.0);
    let tracked = newton_root(&spec, &branch, &[a]).unwrap();
    let explicit =
        (-a + Complex64::new(0.0, 1.0) * (Complex64::new(4.0, 0.0) - a * a).sqrt()) / 2.0;
    if (tracked - explicit).norm() / explicit.norm() > 1e-12 {
        pass = false;
    }
    verdict(
        3,
        "truncation residual scales like s^{K+1} on 10 random numeric specs; quadratic root matches the explicit formula to 1e-12",
        pass,
    );
}

#[test]
fn criterion_4_subset_derivative_identity() {
    let checks = identity_suite_derivation(7);
    let pass = named_checks_pass(&checks, &["deriv_subset_poly", "deriv_subset_series"]);
    verdict(
        4,
        "subset derivative identity holds exactly over polynomials (M<=6, 50 trials) and truncated series (order 12, 20 trials)",
        pass,
    );
}

#[test]
fn criterion_5_partition_sum_constant_grid() {
    let checks = identity_suite_derivation(7);
    let pass = named_checks_pass(&checks, &["deriv_partition_constant", "deriv_sum_symmetry"]);
    verdict(
        5,
        "partition-sum collapses to the closed constant on the exhaustive N<=5 monomial grid, and is symmetric in its factors",
        pass,
    );
}

#[test]
fn criterion_6_partition_identities_in_nu() {
    let checks = identity_suite_partition(7);
    let pass = named_checks_pass(&checks, &["partition_nu", "partition_nu_one"]);
    verdict(
        6,
        "partition identities in nu and their nu=1 specialization hold at 200 random rational points each",
        pass,
    );
}

#[test]
fn criterion_7_stirling_suite() {
    let checks = identity_suite_stirling(7);
    let pass = checks.iter().all(|c| c.pass);
    verdict(
        7,
        "Stirling-number suite (power sums, shifted two-variable, generating function, binomial sum, falling-factorial and Newton identities, series reconstruction)",
        pass,
    );
}

#[test]
fn criterion_8_bracket_series_recovery() {
    let mut pass = true;
    for n in 2..=4usize {
        for i1 in 0..n {
            for i2 in (i1 + 1)..=n {
                let cfg = GkzConfig::new(n, i1, i2).unwrap();
                for nf in MultiIndex::all_up_to(n - 1, 4) {
                    let series = x_series_coeff(&nf, &cfg).unwrap();
                    if nf.order() == 0 {
                        continue;
                    }
                    let closed = recovery_formula_coeff(&nf, &cfg).unwrap();
                    if series != closed {
                        eprintln!("series/closed mismatch n={n} i1={i1} i2={i2} nf={:?}", nf.entries());
                        pass = false;
                    }
                    if !recovery_vs_main(&nf, &cfg).unwrap() {
                        eprintln!("closed/main mismatch n={n} i1={i1} i2={i2} nf={:?}", nf.entries());
                        pass = false;
                    }
                }
            }
        }
    }
    verdict(
        8,
        "bracket-series coefficients equal the closed recovery formula and the perturbed-root formula (n<=4, all index pairs, degree<=4)",
        pass,
    );
}

#[test]
fn criterion_9_deterministic_reports() {
    let bin = env!("CARGO_BIN_EXE_zeroseries");
    let dir = std::env::temp_dir();
    let out_a = dir.join("zeroseries_report_a.json");
    let out_b = dir.join("zeroseries_report_b.json");
    let mut pass = true;
    for out in [&out_a, &out_b] {
        let status = Command::new(bin)
            .args([
                "identities",
                "--seed",
                "7",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .expect("run the CLI binary");
        if !status.success() {
            pass = false;
        }
    }
    let a = std::fs::read(&out_a).unwrap_or_default();
    let b = std::fs::read(&out_b).unwrap_or_default();
    if a.is_empty() || a != b {
        pass = false;
    }
    verdict(
        9,
        "two runs of `identities --seed 7` produce byte-identical reports",
        pass,
    );
}
