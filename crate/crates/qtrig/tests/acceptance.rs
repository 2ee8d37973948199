//! Acceptance suite: every criterion below runs at its stated tolerance and
//! prints one pass/fail line (run with `--nocapture` to see them).
//!
//! 1. theta series vs both product forms, 200-point seeded grid, < 1e-12
//! 2. quasi-periodicity / k-transform / imaginary-transform / dual-derivative
//!    residuals < 1e-10
//! 3. sin_q & cos_q product forms vs their theta-ratio forms, < 1e-9
//! 4. full numeric identity sweep (`check all`) at 1e-9
//! 5. finite-difference constant relation: residual < 1e-5 at step 1e-3 and
//!    ~4x reduction on halving, three instances, two points each
//! 6. formal proofs of all formal-capable identities at their default orders
//! 7. mutation sensitivity: corrupted constants break both engines
//! 8. pinned oracle fixtures match to 1e-13

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtrig::catalog::{self, ConstantInstance, Mutation};
use qtrig::formal;
use qtrig::theta::{
    dual_prime_residual, jacobi_transform_residual, quasi_period_residuals, theta1_product,
    theta1_series, transform_k_residual, ModularPoint, ProductForm,
};
use qtrig::{GridSpec, QParameter, TruncationPolicy};

const PI: f64 = std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

fn report(criterion: &str, pass: bool, detail: String, elapsed: Duration, budget: Duration) {
    let status = if pass && elapsed < budget { "PASS" } else { "FAIL" };
    println!("{status} {criterion}: {detail} [{elapsed:.2?} < {budget:.2?}]");
    assert!(pass, "{criterion}: {detail}");
    assert!(
        elapsed < budget,
        "{criterion}: runtime {elapsed:?} exceeded {budget:?}"
    );
}

#[test]
fn criterion_1_theta_self_consistency() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut max_rel = 0.0f64;
    for _ in 0..200 {
        let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
        let abs_q: f64 = rng.gen_range(0.05..0.8);
        let tau = c(rng.gen_range(-0.9..0.9), -abs_q.ln() / PI);
        let m = ModularPoint::new(tau).unwrap();
        let s = theta1_series(z, &m, &policy).unwrap();
        let pe = theta1_product(z, &m, ProductForm::Exponential, &policy).unwrap();
        let ps = theta1_product(z, &m, ProductForm::Sine, &policy).unwrap();
        max_rel = max_rel.max(rel(s, pe)).max(rel(s, ps));
    }
    report(
        "criterion 1 (theta series vs product forms)",
        max_rel < 1e-12,
        format!("max rel err {max_rel:.3e} over 200 points, tolerance 1e-12"),
        started.elapsed(),
        Duration::from_secs(2),
    );
}

#[test]
fn criterion_2_transformation_residuals() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    // tau chosen so that -1/tau stays inside the principal window
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let taus: Vec<Complex64> = (0..10)
        .map(|_| c(rng.gen_range(-0.35..0.35), rng.gen_range(0.55..1.2)))
        .collect();
    let mut max_rel = 0.0f64;
    for tau in &taus {
        let m = ModularPoint::new(*tau).unwrap();
        for _ in 0..5 {
            let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-0.6..0.6));
            let (r_pi, r_pitau) = quasi_period_residuals(z, &m, &policy).unwrap();
            max_rel = max_rel.max(r_pi.norm()).max(r_pitau.norm());
            for k in [1u32, 2, 3, 4, 9] {
                max_rel = max_rel.max(transform_k_residual(z, &m, k, &policy).unwrap().norm());
            }
            max_rel = max_rel.max(jacobi_transform_residual(z, &m, &policy).unwrap().norm());
        }
        max_rel = max_rel.max(dual_prime_residual(&m, &policy).unwrap().norm());
    }
    report(
        "criterion 2 (quasi-period, k-transform, imaginary transform, dual derivative)",
        max_rel < 1e-10,
        format!("max rel residual {max_rel:.3e}, tolerance 1e-10"),
        started.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_3_qtrig_theta_bridge() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    let mut max_rel = 0.0f64;
    for q in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let qp = QParameter::from_real(q).unwrap();
        for i in 1..=50 {
            let z = c(PI * i as f64 / 51.0, 0.0);
            let s_prod = qtrig::sin_q(z, &qp, &policy).unwrap();
            let s_theta = qtrig::sin_q_via_theta(z, &qp, &policy).unwrap();
            max_rel = max_rel.max((s_prod - s_theta).norm() / 1f64.max(s_prod.norm()));
            let c_prod = qtrig::cos_q(z, &qp, &policy).unwrap();
            let c_theta = qtrig::cos_q_via_theta(z, &qp, &policy).unwrap();
            max_rel = max_rel.max((c_prod - c_theta).norm() / 1f64.max(c_prod.norm()));
        }
    }
    report(
        "criterion 3 (product forms vs dual-nome theta ratios)",
        max_rel < 1e-9,
        format!("max rel err {max_rel:.3e} over 5 nomes x 50 z, tolerance 1e-9"),
        started.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_4_full_numeric_sweep() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    let grid = GridSpec::default_identity_grid();
    let mut all_pass = true;
    let mut worst_id = String::new();
    let mut worst = 0.0f64;
    for desc in catalog::catalog() {
        let r = catalog::sweep(desc.id, &grid, &policy).unwrap();
        if r.max_rel_err > worst {
            worst = r.max_rel_err;
            worst_id = r.id.clone();
        }
        all_pass &= r.pass;
    }
    report(
        "criterion 4 (check all at 1e-9)",
        all_pass,
        format!("all 21 identities pass; worst {worst:.3e} ({worst_id})"),
        started.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_5_constant_relation_finite_differences() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    let cases = [
        (ConstantInstance::K2L2, [(0.7, 0.2), (0.45, 0.35)]),
        (ConstantInstance::K3L1A, [(0.5, 0.3), (0.3, 0.2)]),
        (ConstantInstance::K3L1B, [(0.4, 0.25), (0.6, 0.15)]),
    ];
    let mut pass = true;
    let mut detail = String::new();
    for (inst, points) in cases {
        for (x, q) in points {
            let qp = QParameter::from_real(q).unwrap();
            let r1 = catalog::verify_constant_relation(inst, c(x, 0.0), &qp, 1e-3, &policy)
                .unwrap()
                .rel_err;
            let r2 = catalog::verify_constant_relation(inst, c(x, 0.0), &qp, 5e-4, &policy)
                .unwrap()
                .rel_err;
            let ratio = r1 / r2;
            let ok = r1 < 1e-5 && (2.5..6.0).contains(&ratio);
            pass &= ok;
            detail.push_str(&format!(
                "{} x={x} q={q}: res {r1:.2e}, halving ratio {ratio:.2}; ",
                inst.id()
            ));
        }
    }
    report(
        "criterion 5 (constant relation, O(step^2) finite differences)",
        pass,
        detail,
        started.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_6_formal_proofs() {
    let started = Instant::now();
    let mut pass = true;
    let mut detail = String::new();
    for desc in catalog::catalog() {
        if !desc.modes.formal {
            continue;
        }
        let r = formal::prove(desc.id, None).unwrap();
        pass &= r.verified;
        detail.push_str(&format!("{} t^{}; ", r.id, r.order));
    }
    report(
        "criterion 6 (formal proofs at default orders)",
        pass,
        format!("verified {detail}"),
        started.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_7_mutation_sensitivity() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    let grid = GridSpec::default_identity_grid();
    let zs = grid.z_points();

    // numeric side: the corrupted identity must blow past the sweep tolerance
    let numeric_broken = |id: &str, m: Mutation| -> bool {
        let qp = QParameter::from_real(0.3).unwrap();
        zs.iter().any(|&z| {
            catalog::evaluate_mutated(id, m, z, &qp, &policy)
                .map(|r| r.rel_err > grid.tolerance)
                .unwrap_or(false)
        })
    };
    // formal side: the corrupted identity must be refuted outright
    let formal_refuted = |id: &str, m: Mutation| -> bool {
        formal::prove_mutated(id, m, None)
            .map(|r| r.outcome == formal::ProofOutcome::Refuted)
            .unwrap_or(false)
    };

    let half = numeric_broken("thm-2.1", Mutation::HalfToThird)
        && formal_refuted("thm-2.1", Mutation::HalfToThird);
    let nine = numeric_broken("thm-2.2", Mutation::PiExponentNineToEight)
        && numeric_broken("q-Triple", Mutation::PiExponentNineToEight)
        && numeric_broken("help-2-3", Mutation::PiExponentNineToEight)
        && formal_refuted("help-2-3", Mutation::PiExponentNineToEight);
    let sign = numeric_broken("thm-2.3", Mutation::SignFlipTheorem23)
        && formal_refuted("thm-2.3", Mutation::SignFlipTheorem23);

    report(
        "criterion 7 (mutation sensitivity)",
        half && nine && sign,
        format!("1/2->1/3: {half}; Pi exponent 9->8: {nine}; thm-2.3 sign flip: {sign}"),
        started.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_8_oracle_pinned_fixtures() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();

    // >=30-digit partial-product / direct-series oracle values
    let qpoch_01 = qtrig::qpoch_infinite(c(0.1, 0.0), c(0.1, 0.0), &policy).unwrap();
    let theta_pi2_i = theta1_series(
        c(PI / 2.0, 0.0),
        &ModularPoint::new(c(0.0, 1.0)).unwrap(),
        &policy,
    )
    .unwrap();
    let sinq_pi4 = qtrig::sin_q(
        c(PI / 4.0, 0.0),
        &QParameter::from_real(0.5).unwrap(),
        &policy,
    )
    .unwrap();
    let piq_01 = qtrig::pi_q(&QParameter::from_real(0.1).unwrap(), &policy).unwrap();
    let ratio_4 = {
        let qp = QParameter::from_real(0.3).unwrap();
        qtrig::pi_q(&qp, &policy).unwrap() / qtrig::pi_q(&qp.power(4).unwrap(), &policy).unwrap()
    };
    let ratio_9 = {
        let qp = QParameter::from_real(0.2).unwrap();
        qtrig::pi_q(&qp, &policy).unwrap() / qtrig::pi_q(&qp.power(9).unwrap(), &policy).unwrap()
    };

    let fixtures = [
        ("(0.1;0.1)_inf", qpoch_01.re, 0.890_010_099_998_999_0),
        ("theta1(pi/2|i)", theta_pi2_i.re, 0.913_579_138_156_116_8),
        ("sin_{0.5}(pi/4)", sinq_pi4.re, 0.707_106_781_185_941_0),
        ("Pi_{0.1}", piq_01.re, 0.681_671_955_137_055_7),
        ("Pi_{0.3}/Pi_{0.3^4}", ratio_4.re, 4.279_313_720_345_871),
        ("Pi_{0.2}/Pi_{0.2^9}", ratio_9.re, 36.485_434_528_572_84),
    ];
    let mut pass = true;
    let mut detail = String::new();
    for (name, got, want) in fixtures {
        let err = (got - want).abs() / want.abs().max(1.0);
        pass &= err < 1e-13;
        detail.push_str(&format!("{name}: {err:.2e}; "));
    }
    report(
        "criterion 8 (oracle-pinned fixtures at 1e-13)",
        pass,
        detail,
        started.elapsed(),
        Duration::from_secs(10),
    );
}
