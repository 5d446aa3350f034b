//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its observed margins (run with `--nocapture` to see them). Tolerances are
//! pinned in the assertions.

use std::time::Instant;

use samlab::analysis::{
    audit_theorem_conditions, certify_example1, certify_example2, fit_rate, RateModel,
    RateReference, TheoremTag,
};
use samlab::harness::{
    execute, find_preset, parse_config, run_sweep, serialize_config, summary_csv,
};
use samlab::linalg::{distance, norm, Matrix};
use samlab::optimizers::{
    run_thinned, step_eg, step_usam, OptimizerSpec, TerminationReason, Variant,
};
use samlab::problems::{make_quadratic, random_quadratic, QuadraticSpec};
use samlab::rng::Xoshiro256StarStar;
use samlab::schedules::{
    check_desingularizing_condition, check_desingularizing_subadditivity, diagnose_series,
    diminish, divergence_certificate, ScheduleFamily, ScheduleSpec,
};

fn constant(c: f64) -> ScheduleSpec {
    ScheduleSpec::stepsize(ScheduleFamily::Constant(c)).unwrap()
}

#[test]
fn criterion_01_example1_quadratic_trap() {
    let start = Instant::now();
    let a = Matrix::diagonal(&[1.0, 2.0]);
    let cert = certify_example1(&a, &[0.0, 0.0], 0.8, 0.1, &[0.2, 0.0], 10_000).unwrap();
    assert!(cert.passed, "{cert:?}");
    assert!(
        cert.min_distance > 0.0 && cert.max_distance < 0.4,
        "{cert:?}"
    );
    assert!((cert.trap_radius - 0.4).abs() < 1e-9);

    // GD contrast with the same stepsize reaches the minimizer
    let spec_q = QuadraticSpec::new(a, vec![0.0, 0.0]).unwrap();
    let p = make_quadratic(&spec_q);
    let gd = OptimizerSpec::new(Variant::Gd, constant(0.8));
    let trace = run_thinned(&p, &gd, &[0.2, 0.0], 10_000, 1).unwrap();
    let gd_dist = distance(&trace.final_x, &[0.0, 0.0]);
    assert!(gd_dist <= 1e-8, "GD distance {gd_dist}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 01 example1-trap: PASS (SAM stays in (0, 0.4), min distance {:.3e}, GD dist {gd_dist:.3e}, {elapsed:.2} s)",
        cert.min_distance
    );
}

#[test]
fn criterion_02_example2_nonstationary_limit() {
    let start = Instant::now();
    let t = ScheduleSpec::stepsize(ScheduleFamily::Harmonic { c: 0.5, shift: 1 }).unwrap();
    let horizon = 10_000u64;
    let cert = certify_example2(1.0, 2.0, &t, horizon).unwrap();
    assert!(cert.passed, "{cert:?}");
    let closed_form = 1.0 / (horizon as f64 + 1.0);
    assert!(
        (cert.final_gap - closed_form).abs() <= 1e-12,
        "gap {:.15e} vs closed form {closed_form:.15e}",
        cert.final_gap
    );
    assert!(cert.min_overshoot > 0.0, "x^k must stay above rho");
    assert!((cert.limit_gradient - 2.0).abs() < 1e-15);

    // the nonzero limit gradient is exactly what fails property (2)
    let outcome = execute(&find_preset("example2").unwrap()).unwrap();
    let report = outcome.report.unwrap();
    assert!(!report.verdicts[1], "property (2) must fail: {report:?}");
    assert!(report.liminf_grad > 1.9);

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 02 example2-nonstationary: PASS (|x^K - rho| = {:.6e} = 1/(K+1), limit gradient 2, {elapsed:.2} s)",
        cert.final_gap
    );
}

#[test]
fn criterion_03_theorem1_convex_regime() {
    let start = Instant::now();
    let config = find_preset("convex-T1").unwrap();
    let outcome = execute(&config).unwrap();
    let trace = &outcome.trace;
    assert_eq!(trace.terminated, TerminationReason::Horizon);

    let min_grad_full = trace.min_grad_norm();
    let min_grad_10k = trace.min_grad_norm_through(10_000);
    assert!(min_grad_full <= 1e-3, "min grad {min_grad_full:.3e}");
    assert!(
        min_grad_full <= min_grad_10k,
        "prefix minimum must be non-increasing in the horizon"
    );
    let report = outcome.report.unwrap();
    assert!(
        report.f_limit_gap <= 1e-4,
        "f gap {:.3e}",
        report.f_limit_gap
    );

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 03 convex-T1: PASS (min grad {min_grad_full:.3e} <= 1e-3, f gap {:.3e} <= 1e-4, {elapsed:.2} s)",
        report.f_limit_gap
    );
}

#[test]
fn criterion_04_corollary1_almost_constant_radius_and_sweep() {
    let start = Instant::now();
    // n = 20 log-quadratic, t_k = (0.1/20)/k, horizon 2000
    let base = find_preset("appendixF").unwrap();
    let run_cell = |variant: &str, radius: Option<&str>| {
        let mut config = base.clone();
        config.cells.clear();
        config.apply_override("optimizer.variant", variant).unwrap();
        if let Some(r) = radius {
            config.apply_override("optimizer.radius", r).unwrap();
        }
        execute(&config).unwrap()
    };
    let gd = run_cell("gd", None);
    let sam_const = run_cell("sam", Some("constant 0.1"));
    let sam_almost = run_cell("sam", Some("powerlaw 0.1 0.001"));

    let f_const = sam_const.final_f();
    let f_almost = sam_almost.final_f();
    let rel = (f_const - f_almost).abs() / f_const.abs().max(f_almost.abs());
    assert!(rel <= 0.05, "final f relative gap {rel:.4}");

    let gd_grad = gd.final_grad();
    for (name, outcome) in [("const", &sam_const), ("almost", &sam_almost)] {
        assert!(
            outcome.final_grad() <= 2.0 * gd_grad,
            "sam-{name} grad {:.3e} vs 2x GD {:.3e}",
            outcome.final_grad(),
            2.0 * gd_grad
        );
    }

    // full Appendix-F sweep: 20 cells, one summary row each
    let rows = run_sweep(&base, 4).unwrap();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.status == "ok"), "{rows:?}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 04 almost-constant-radius: PASS (f gap {:.2}% <= 5%, grads {:.2e}/{:.2e} <= 2x GD {:.2e}, 20-row sweep ok, {elapsed:.2} s)",
        100.0 * rel,
        sam_const.final_grad(),
        sam_almost.final_grad(),
        gd_grad
    );
}

#[test]
fn criterion_05_per_step_descent_inequalities() {
    let start = Instant::now();

    // (a) USAM with rho = nu/L, nu = 0.25, t = 0.9·(2−2ν)/(L(1+ν)²)
    let config = find_preset("usam-rate-q12").unwrap();
    let outcome = execute(&config).unwrap();
    let trace = &outcome.trace;
    let a = Matrix::diagonal(&[0.01, 4.0]);
    let spec_q = QuadraticSpec::new(a, vec![0.0, 0.0]).unwrap();
    let l = spec_q.lambda_max();
    let nu = 0.25;
    let t = 0.216;
    let delta = 2.0 - 2.0 * nu - l * (1.0 + nu) * (1.0 + nu) * t;
    assert!(delta > 0.01, "audit slack delta = {delta}");
    let mut checked = 0u64;
    let mut worst_slack = f64::INFINITY;
    for pair in trace.records.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        if cur.t == 0.0 {
            continue;
        }
        let bound = cur.f - 0.5 * delta * cur.t * cur.grad_norm * cur.grad_norm;
        worst_slack = worst_slack.min(bound - next.f);
        assert!(
            next.f <= bound + 1e-9 * (1.0 + cur.f.abs()),
            "descent violated at k={}: {} > {}",
            cur.k,
            next.f,
            bound
        );
        checked += 1;
    }
    assert!(checked >= 9_999, "only {checked} steps checked");

    // (b) SAM convex surrogate: f⁺ ≤ f − (t/2)‖∇f‖² + L³t²ρ²/2 once Lt < 1
    let config_sam = find_preset("convex-T1").unwrap();
    let mut config_sam = config_sam;
    config_sam.run.horizon = 10_000;
    config_sam.run.thin = Some(1);
    let sam_outcome = execute(&config_sam).unwrap();
    let l_sam = 2.0; // eig band [1, 2] by construction
    let mut checked_sam = 0u64;
    for pair in sam_outcome.trace.records.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        if cur.t == 0.0 || l_sam * cur.t >= 1.0 {
            continue;
        }
        let bound = cur.f - 0.5 * cur.t * cur.grad_norm * cur.grad_norm
            + 0.5 * l_sam.powi(3) * cur.t * cur.t * cur.rho_or_eps * cur.rho_or_eps;
        assert!(
            next.f <= bound + 1e-9 * (1.0 + cur.f.abs()),
            "surrogate descent violated at k={}",
            cur.k
        );
        checked_sam += 1;
    }
    assert!(checked_sam >= 9_999, "only {checked_sam} SAM steps checked");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 2.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 05 per-step-descent: PASS (USAM delta {delta:.3}, worst slack {worst_slack:.3e} over {checked} steps; SAM surrogate over {checked_sam} steps, {elapsed:.2} s)"
    );
}

#[test]
fn criterion_06_kl_rate_linear_q_half() {
    let start = Instant::now();
    let config = find_preset("usam-rate-q12").unwrap();
    let outcome = execute(&config).unwrap();
    let a = Matrix::diagonal(&[0.01, 4.0]);
    let spec_q = QuadraticSpec::new(a, vec![0.0, 0.0]).unwrap();
    let p = make_quadratic(&spec_q);

    let iterate_fit = fit_rate(
        &outcome.trace,
        &p,
        RateReference::Minimizer,
        0.5,
        RateModel::Linear,
    )
    .unwrap();
    assert!(
        iterate_fit.r_squared > 0.99,
        "R^2 = {}",
        iterate_fit.r_squared
    );
    assert!(iterate_fit.slope < 0.0, "slope = {}", iterate_fit.slope);

    let fgap_fit = fit_rate(
        &outcome.trace,
        &p,
        RateReference::FStar,
        0.5,
        RateModel::Linear,
    )
    .unwrap();
    let ratio_gap = (fgap_fit.slope - 2.0 * iterate_fit.slope).abs();
    assert!(
        ratio_gap <= 0.1 * (2.0 * iterate_fit.slope).abs(),
        "f-gap slope {:.6} vs 2x iterate slope {:.6}",
        fgap_fit.slope,
        2.0 * iterate_fit.slope
    );

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 2.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 06 kl-rate-q12: PASS (iterate slope {:.6}, R^2 {:.6}, f-gap slope {:.6} within 10% of 2x, {elapsed:.2} s)",
        iterate_fit.slope, iterate_fit.r_squared, fgap_fit.slope
    );
}

#[test]
fn criterion_07_schedule_audits() {
    let start = Instant::now();
    let horizon = 100_000u64;

    // Diminish 1/2/3 with eta1 = 0.1 pass the T1 stepsize hypotheses
    for idx in 1..=3u8 {
        let t = diminish(idx, 0.1).unwrap();
        let d = diagnose_series(&t, None, horizon).unwrap();
        assert!(
            d.tail_sum_sq < 1e-2,
            "diminish {idx} sq tail {:.3e}",
            d.tail_sum_sq
        );
        let cert = divergence_certificate(&t, horizon).unwrap();
        assert!(cert.passed, "diminish {idx} divergence: {cert:?}");
    }

    // Constant(0.1) fails square summability
    let c = constant(0.1);
    let dc = diagnose_series(&c, None, horizon).unwrap();
    assert!(dc.tail_sum_sq >= 1e-2);

    // spike radius with harmonic stepsize: product summable, sup stays at C
    let t = ScheduleSpec::stepsize(ScheduleFamily::Harmonic { c: 1.0, shift: 0 }).unwrap();
    let rho = ScheduleSpec::radius(ScheduleFamily::PerfectSquareSpike { c: 0.1, p: 1.0 }).unwrap();
    let d = diagnose_series(&t, Some(&rho), horizon).unwrap();
    assert!(d.tail_sum_product < 1e-2, "tail {:.3e}", d.tail_sum_product);
    assert_eq!(d.tail_sup, 0.1, "radius sup must not vanish");

    // and the packaged audit agrees end to end
    let config = find_preset("schedule-audit").unwrap();
    let report = samlab::harness::audit(&config, TheoremTag::T1).unwrap();
    assert!(report.all_passed, "{}", report.text_block());

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 07 schedule-audits: PASS (diminish 1/2/3 pass T1, constant fails, spike keeps sup 0.1, {elapsed:.2} s)"
    );
}

#[test]
fn criterion_08_inexactness_contracts() {
    let start = Instant::now();
    let spec_q = random_quadratic(20, 77, 1.0, 2.0).unwrap();
    let p = make_quadratic(&spec_q);
    let l = p.lipschitz_l.unwrap();
    let x1: Vec<f64> = (0..20).map(|i| 1.0 + 0.1 * i as f64).collect();
    let radius = ScheduleSpec::radius(ScheduleFamily::Constant(0.05)).unwrap();
    let horizon = 10_000u64;

    // normalized variants: ||g - grad|| <= L*rho at every one of 10^4 steps
    for variant in [Variant::Sam, Variant::Vasso, Variant::Fsam, Variant::Rsam] {
        let mut spec = OptimizerSpec::new(variant, constant(0.02)).with_seed(9);
        spec.radius = Some(radius.clone());
        spec.theta = Some(0.7);
        spec.sigma = Some(0.4);
        let trace = run_thinned(&p, &spec, &x1, horizon, horizon).unwrap();
        assert_eq!(trace.terminated, TerminationReason::Horizon, "{variant:?}");
        assert_eq!(trace.inexactness_violations, 0, "{variant:?}");
        for r in &trace.records {
            if r.t > 0.0 {
                assert!(
                    r.inexactness <= l * r.rho_or_eps * (1.0 + 1e-6) + 1e-12,
                    "{variant:?} k={} inexactness {:.3e}",
                    r.k,
                    r.inexactness
                );
            }
        }
    }

    // IGDr sandwich: (1-nu)||grad|| <= ||g|| <= (1+nu)||grad||, g = step/t
    let nu = 0.3;
    let mut igdr = OptimizerSpec::new(Variant::Igdr, constant(0.02)).with_seed(10);
    igdr.nu = Some(nu);
    let trace = run_thinned(&p, &igdr, &x1, horizon, horizon).unwrap();
    assert_eq!(trace.inexactness_violations, 0);
    for r in &trace.records {
        if r.t > 0.0 {
            let g_norm = r.step_norm / r.t;
            let tol = 1e-9 * (1.0 + r.grad_norm);
            assert!(g_norm >= (1.0 - nu) * r.grad_norm - tol, "k={}", r.k);
            assert!(g_norm <= (1.0 + nu) * r.grad_norm + tol, "k={}", r.k);
        }
    }

    // reduction identities, bit-exact
    let t = ScheduleSpec::stepsize(ScheduleFamily::Harmonic { c: 0.3, shift: 0 }).unwrap();
    let sam = {
        let mut s = OptimizerSpec::new(Variant::Sam, t.clone());
        s.radius = Some(radius.clone());
        run_thinned(&p, &s, &x1, 2_000, 1).unwrap()
    };
    let vasso = {
        let mut s = OptimizerSpec::new(Variant::Vasso, t.clone());
        s.radius = Some(radius.clone());
        s.theta = Some(1.0);
        run_thinned(&p, &s, &x1, 2_000, 1).unwrap()
    };
    let fsam = {
        let mut s = OptimizerSpec::new(Variant::Fsam, t.clone());
        s.radius = Some(radius.clone());
        s.theta = Some(0.5);
        s.sigma = Some(0.0);
        run_thinned(&p, &s, &x1, 2_000, 1).unwrap()
    };
    assert!(vasso.bitwise_eq(&sam), "VaSSO(theta=1) != SAM");
    assert!(fsam.bitwise_eq(&sam), "F-SAM(sigma=0) != SAM");

    let gd = run_thinned(
        &p,
        &OptimizerSpec::new(Variant::Gd, t.clone()),
        &x1,
        2_000,
        1,
    )
    .unwrap();
    let igdr0 = {
        let mut s = OptimizerSpec::new(Variant::Igdr, t.clone());
        s.nu = Some(0.0);
        run_thinned(&p, &s, &x1, 2_000, 1).unwrap()
    };
    assert!(igdr0.bitwise_eq(&gd), "IGDr(nu=0) != GD");

    // EG(rho) = USAM(-rho) pointwise over 10^4 random states
    let mut rng = Xoshiro256StarStar::seed_from_u64(123);
    for _ in 0..10_000 {
        let x = rng.gaussian_vector(20);
        let t = 0.1 * rng.next_f64();
        let rho = 0.2 * rng.next_f64();
        let eg = step_eg(&p, &x, t, rho);
        let usam = step_usam(&p, &x, t, -rho);
        assert!(eg
            .iter()
            .zip(&usam)
            .all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 08 inexactness-contracts: PASS (4 normalized variants bounded by L*rho, IGDr sandwich, reductions bit-exact, {elapsed:.2} s)"
    );
}

#[test]
fn criterion_09_desingularizing_diagnostics() {
    let start = Instant::now();
    let t = ScheduleSpec::stepsize(ScheduleFamily::Harmonic { c: 1.0, shift: 0 }).unwrap();
    let eps = ScheduleSpec::error(ScheduleFamily::PowerLaw { c: 1.0, p: 1.0 }).unwrap();
    let report = check_desingularizing_condition(&t, &eps, 1.0, 0.5, 100_000).unwrap();
    assert!(report.condition_holds, "tail {:.3e}", report.tail_sum);
    // dominated by the analytic bound scale C'/k^{1+pq} with 1+pq = 1.5
    let mut worst_ratio = 0.0f64;
    for (i, s) in report.summands.iter().enumerate() {
        let k = (i + 1) as f64;
        worst_ratio = worst_ratio.max(s * k.powf(1.5));
    }
    assert!(worst_ratio <= 3.0, "domination constant {worst_ratio:.3}");

    let eps_const = ScheduleSpec::error(ScheduleFamily::Constant(1.0)).unwrap();
    let bad = check_desingularizing_condition(&t, &eps_const, 1.0, 0.5, 100_000).unwrap();
    assert!(bad.inner_series_diverges);
    assert!(!bad.condition_holds);

    assert!(check_desingularizing_subadditivity(1.0, 0.5, 1.0, 100).unwrap());

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 2.0, "runtime {elapsed:.2} s");
    println!(
        "criterion 09 desingularizing: PASS (tail {:.3e} Cauchy, summands <= {worst_ratio:.3}/k^1.5, constant error fails, grid C=1 ok, {elapsed:.2} s)",
        report.tail_sum
    );
}

#[test]
fn criterion_10_determinism_and_plumbing() {
    let start = Instant::now();

    // identical seeds give byte-identical trace.csv
    let mut config = find_preset("example1").unwrap();
    config.run.horizon = 2_000;
    let t1 = samlab::harness::output::trace_csv(&execute(&config).unwrap().trace);
    let t2 = samlab::harness::output::trace_csv(&execute(&config).unwrap().trace);
    assert_eq!(t1, t2, "trace.csv must be byte-identical across runs");

    // sweep output independent of the parallelism degree
    let base = find_preset("appendixF").unwrap();
    let rows1 = run_sweep(&base, 1).unwrap();
    let rows8 = run_sweep(&base, 8).unwrap();
    assert_eq!(summary_csv(&rows1), summary_csv(&rows8));

    // config round-trip equality on every preset
    for preset in samlab::harness::all_presets() {
        let mut config = preset.config;
        config.preset = Some(preset.name.to_string());
        let parsed = parse_config(&serialize_config(&config)).unwrap();
        assert_eq!(config, parsed, "preset {}", preset.name);
    }

    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 10 determinism: PASS (trace bytes stable, sweep parallel-invariant, presets round-trip, {elapsed:.2} s)"
    );
}

#[test]
fn audits_match_remaining_theorem_examples() {
    // complements criterion 7: T4 accepts rho = nu/L and rejects oversized rho
    let spec_q = QuadraticSpec::new(Matrix::diagonal(&[0.01, 4.0]), vec![0.0, 0.0]).unwrap();
    let p = make_quadratic(&spec_q);
    let mut ok = OptimizerSpec::new(Variant::Usam, constant(0.216));
    ok.nu = Some(0.25);
    ok.radius = Some(ScheduleSpec::radius(ScheduleFamily::Constant(0.0625)).unwrap());
    let report = audit_theorem_conditions(&ok, &p, TheoremTag::T4, 10_000).unwrap();
    assert!(report.all_passed, "{}", report.text_block());

    let mut bad = ok.clone();
    bad.radius = Some(ScheduleSpec::radius(ScheduleFamily::Constant(0.2)).unwrap());
    let report = audit_theorem_conditions(&bad, &p, TheoremTag::T4, 10_000).unwrap();
    assert!(!report.all_passed);

    // C1 passes in the almost-constant regime with C < 2/L
    let mut almost = OptimizerSpec::new(
        Variant::Sam,
        ScheduleSpec::stepsize(ScheduleFamily::Harmonic { c: 1.0, shift: 0 }).unwrap(),
    );
    almost.radius =
        Some(ScheduleSpec::radius(ScheduleFamily::PowerLaw { c: 0.4, p: 0.001 }).unwrap());
    let report = audit_theorem_conditions(&almost, &p, TheoremTag::C1, 100_000).unwrap();
    assert!(report.all_passed, "{}", report.text_block());
}

#[test]
fn trace_cauchy_probe_via_three_sequences() {
    // IGD on a mildly conditioned log-quadratic satisfies the
    // three-sequences hypotheses with alpha vanishing
    let n = 10usize;
    let diag: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * i as f64 / (n - 1) as f64)
        .collect();
    let b = vec![0.5; n];
    let p = samlab::problems::make_log_quadratic(Matrix::diagonal(&diag), b).unwrap();
    let l = p.lipschitz_l.unwrap();
    let mut spec = OptimizerSpec::new(
        Variant::Igd,
        ScheduleSpec::stepsize(ScheduleFamily::Harmonic {
            c: 0.9 / l,
            shift: 0,
        })
        .unwrap(),
    )
    .with_seed(3);
    spec.error = Some(ScheduleSpec::error(ScheduleFamily::PowerLaw { c: 0.1, p: 1.0 }).unwrap());
    let x1: Vec<f64> = p
        .minimizer
        .clone()
        .unwrap()
        .iter()
        .map(|v| v + 0.001)
        .collect();
    let trace = run_thinned(&p, &spec, &x1, 20_000, 20_000).unwrap();
    let (alpha, beta, gamma) = samlab::analysis::three_sequences_from_trace(&trace, l);
    let report = samlab::analysis::check_three_sequences(&alpha, &beta, &gamma, 1e-3).unwrap();
    assert!(report.condition_a_holds, "{report:?}");
    assert!(
        report.gamma_summable_ok && report.beta_alpha_sq_summable_ok,
        "{report:?}"
    );
    assert!(
        report.alpha_vanished,
        "final grad {:.3e}",
        report.alpha_final
    );
    assert!(norm(&trace.final_x).is_finite());
}
