//! Config ingestion, presets, experiment execution, sweeps, and artifacts.

pub mod config;
pub mod output;
pub mod presets;

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::analysis::{
    assess_convergence, audit_theorem_conditions, certify_example1, certify_example2, fit_rate,
    AnalysisError, AuditReport, ConvergenceReport, RateFit, RateModel, RateReference, TheoremTag,
};
use crate::linalg::Matrix;
use crate::optimizers::{
    default_thin, run_thinned, IgdNoise, OptimizerError, OptimizerSpec, TerminationReason, Trace,
};
use crate::problems::{
    make_log_quadratic, make_quadratic, make_square_1d, random_log_quadratic, random_quadratic,
    Problem, ProblemError, QuadraticSpec,
};
use crate::rng::Xoshiro256StarStar;
use crate::schedules::{ScheduleError, ScheduleRole, ScheduleSpec};

pub use config::{
    parse_config, serialize_config, CertificateKind, ConfigError, ExperimentConfig, IgdNoiseKind,
    OptimizerConfig, OutputConfig, ProblemConfig, ProblemKind, RunConfig, SweepCell, X1Rule,
};
pub use presets::{all_presets, find_preset, Preset};

/// Salt mixed into the optimizer seed for the seeded-random x1 rule, so the
/// start point draw does not alias the runner's noise stream.
const X1_SEED_SALT: u64 = 0x517c_c1b7_2722_0a95;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Optimizer(#[from] OptimizerError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// A config resolved into runnable pieces.
pub struct Resolved {
    pub problem: Problem,
    pub spec: OptimizerSpec,
    pub x1: Vec<f64>,
    pub horizon: u64,
    pub thin: u64,
    pub tol_grad: f64,
    pub tol_cauchy: f64,
    pub fit: Option<(RateReference, f64, RateModel)>,
    pub certificate: Option<CertificateKind>,
    quadratic: Option<QuadraticSpec>,
}

fn missing(key: &str) -> HarnessError {
    ConfigError::MissingKey {
        key: key.to_string(),
    }
    .into()
}

fn invalid(key: &str, message: impl Into<String>) -> HarnessError {
    ConfigError::InvalidValue {
        key: key.to_string(),
        message: message.into(),
    }
    .into()
}

fn build_problem(pc: &ProblemConfig) -> Result<(Problem, Option<QuadraticSpec>), HarnessError> {
    let inline_matrix = |key: &str| -> Result<Matrix, HarnessError> {
        let rows = pc.a.as_ref().ok_or_else(|| missing(key))?;
        Matrix::from_rows(rows).map_err(|e| invalid(key, e.to_string()))
    };
    match pc.kind {
        ProblemKind::Quadratic => {
            let a = inline_matrix("problem.a")?;
            let b = pc.b.clone().ok_or_else(|| missing("problem.b"))?;
            let spec = QuadraticSpec::new(a, b)?;
            Ok((make_quadratic(&spec), Some(spec)))
        }
        ProblemKind::LogQuadratic => {
            let a = inline_matrix("problem.a")?;
            let b = pc.b.clone().ok_or_else(|| missing("problem.b"))?;
            Ok((make_log_quadratic(a, b)?, None))
        }
        ProblemKind::Square1d => Ok((make_square_1d(), None)),
        ProblemKind::RandomQuadratic => {
            let dim = pc.dim.ok_or_else(|| missing("problem.dim"))?;
            let seed = pc.seed.unwrap_or(0);
            let eig_min = pc.eig_min.unwrap_or(1.0);
            let eig_max = pc.eig_max.unwrap_or(2.0);
            let spec = random_quadratic(dim, seed, eig_min, eig_max)?;
            Ok((make_quadratic(&spec), Some(spec)))
        }
        ProblemKind::RandomLogQuadratic => {
            let dim = pc.dim.ok_or_else(|| missing("problem.dim"))?;
            let seed = pc.seed.unwrap_or(0);
            Ok((random_log_quadratic(dim, seed)?, None))
        }
    }
}

fn build_spec(oc: &OptimizerConfig) -> Result<OptimizerSpec, HarnessError> {
    let mut spec = OptimizerSpec::new(
        oc.variant,
        ScheduleSpec::new(oc.stepsize.clone(), ScheduleRole::Stepsize)?,
    );
    if let Some(r) = &oc.radius {
        spec.radius = Some(ScheduleSpec::new(r.clone(), ScheduleRole::Radius)?);
    }
    if let Some(e) = &oc.error {
        spec.error = Some(ScheduleSpec::new(e.clone(), ScheduleRole::Error)?);
    }
    spec.nu = oc.nu;
    spec.theta = oc.theta;
    spec.sigma = oc.sigma;
    spec.lambda = oc.lambda;
    spec.rng_seed = oc.seed;
    if let Some(tol) = oc.grad_zero_tol {
        spec.grad_zero_tol = tol;
    }
    spec.igd_noise = match oc.igd_noise {
        IgdNoiseKind::Random => IgdNoise::RandomUnit,
        IgdNoiseKind::Backstep => IgdNoise::Backstep {
            rho: oc
                .backstep_rho
                .ok_or_else(|| missing("optimizer.backstep_rho"))?,
        },
    };
    spec.validate()?;
    Ok(spec)
}

fn resolve_x1(rule: &X1Rule, problem: &Problem, seed: u64) -> Result<Vec<f64>, HarnessError> {
    let dim = problem.dim();
    let need_minimizer = || {
        problem.minimizer.clone().ok_or_else(|| {
            invalid(
                "run.x1",
                "rule references the minimizer but the problem has none",
            )
        })
    };
    let x1 = match rule {
        X1Rule::Absolute(v) => v.clone(),
        X1Rule::Minimizer => need_minimizer()?,
        X1Rule::MinimizerPlus(v) => {
            let m = need_minimizer()?;
            if v.len() != dim {
                return Err(invalid(
                    "run.x1",
                    format!("offset has length {}, problem dimension is {dim}", v.len()),
                ));
            }
            m.iter().zip(v).map(|(a, b)| a + b).collect()
        }
        X1Rule::MinimizerPlusUniform(c) => need_minimizer()?.iter().map(|a| a + c).collect(),
        X1Rule::MinimizerPlusRandUnit(c) => {
            let m = need_minimizer()?;
            let mut rng = Xoshiro256StarStar::seed_from_u64(seed ^ X1_SEED_SALT);
            let u = rng.unit_vector(dim);
            m.iter().zip(&u).map(|(a, b)| a + c * b).collect()
        }
    };
    if x1.len() != dim {
        return Err(invalid(
            "run.x1",
            format!("x1 has length {}, problem dimension is {dim}", x1.len()),
        ));
    }
    Ok(x1)
}

pub fn resolve(config: &ExperimentConfig) -> Result<Resolved, HarnessError> {
    let (problem, quadratic) = build_problem(&config.problem)?;
    let spec = build_spec(&config.optimizer)?;
    let x1 = resolve_x1(&config.run.x1, &problem, config.optimizer.seed)?;
    if config.run.horizon < 1 {
        return Err(invalid("run.horizon", "must be >= 1"));
    }
    Ok(Resolved {
        x1,
        horizon: config.run.horizon,
        thin: config
            .run
            .thin
            .unwrap_or_else(|| default_thin(problem.dim())),
        tol_grad: config.run.tol_grad,
        tol_cauchy: config.run.tol_cauchy,
        fit: config
            .run
            .fit
            .map(|r| (r, config.run.fit_window, config.run.fit_model)),
        certificate: config.run.certificate,
        problem,
        spec,
        quadratic,
    })
}

#[derive(Debug)]
pub struct RunOutcome {
    pub trace: Trace,
    pub report: Option<ConvergenceReport>,
    pub rate: Option<Result<RateFit, AnalysisError>>,
    pub certificate_text: Option<String>,
    pub certificate_passed: Option<bool>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.trace.terminated == TerminationReason::NonFinite {
            3
        } else {
            0
        }
    }

    pub fn final_f(&self) -> f64 {
        self.trace.final_record().f
    }

    pub fn final_grad(&self) -> f64 {
        self.trace.final_record().grad_norm
    }

    pub fn summary_text(&self, problem: &Problem) -> String {
        let mut s = String::new();
        let last = self.trace.final_record();
        s.push_str(&format!(
            "{} | {} | {} records | terminated: {}\n",
            problem.name(),
            self.trace.spec.variant.as_str(),
            last.k,
            self.trace.terminated.as_str()
        ));
        s.push_str(&format!(
            "final f = {:.6e}, final grad norm = {:.6e}\n",
            last.f, last.grad_norm
        ));
        if let Some(report) = &self.report {
            s.push_str(&report.text_block());
        }
        match &self.rate {
            Some(Ok(fit)) => {
                s.push_str(&format!(
                    "rate fit ({:?}): slope {:.6}, R^2 {:.6}",
                    fit.model, fit.slope, fit.r_squared
                ));
                if let Some(q) = fit.implied_q {
                    s.push_str(&format!(", implied q {q:.4}"));
                }
                s.push('\n');
            }
            Some(Err(e)) => s.push_str(&format!("rate fit unavailable: {e}\n")),
            None => {}
        }
        if let Some(text) = &self.certificate_text {
            s.push_str(text);
        }
        s
    }
}

/// Executes a single-run config: run, assess, optional rate fit, optional
/// counterexample certificate.
pub fn execute(config: &ExperimentConfig) -> Result<RunOutcome, HarnessError> {
    let resolved = resolve(config)?;
    let trace = run_thinned(
        &resolved.problem,
        &resolved.spec,
        &resolved.x1,
        resolved.horizon,
        resolved.thin,
    )?;
    let report = if trace.terminated == TerminationReason::NonFinite {
        None
    } else {
        Some(assess_convergence(
            &trace,
            &resolved.problem,
            resolved.tol_grad,
            resolved.tol_cauchy,
        )?)
    };
    let rate = resolved.fit.map(|(reference, window, model)| {
        fit_rate(&trace, &resolved.problem, reference, window, model)
    });
    let (certificate_text, certificate_passed) = match resolved.certificate {
        None => (None, None),
        Some(kind) => {
            let (text, passed) = run_certificate(kind, config, &resolved)?;
            (Some(text), Some(passed))
        }
    };
    Ok(RunOutcome {
        trace,
        report,
        rate,
        certificate_text,
        certificate_passed,
    })
}

fn run_certificate(
    kind: CertificateKind,
    config: &ExperimentConfig,
    resolved: &Resolved,
) -> Result<(String, bool), HarnessError> {
    match kind {
        CertificateKind::Example1 => {
            let quad = resolved
                .quadratic
                .as_ref()
                .ok_or_else(|| invalid("run.certificate", "example1 needs a quadratic problem"))?;
            let t = constant_value(&resolved.spec.stepsize).ok_or_else(|| {
                invalid("optimizer.stepsize", "example1 needs a constant stepsize")
            })?;
            let rho = resolved
                .spec
                .radius
                .as_ref()
                .and_then(constant_value)
                .ok_or_else(|| invalid("optimizer.radius", "example1 needs a constant radius"))?;
            let cert = certify_example1(
                quad.matrix(),
                quad.rhs(),
                t,
                rho,
                &resolved.x1,
                resolved.horizon,
            )?;
            let text = format!(
                "example1 certificate: {}\n  stepsize window ({:.6}, {:.6}), trap radius {:.6}\n  distance range [{:.6e}, {:.6e}], per-step floor {:.6}, min margin {:.3e}\n",
                if cert.passed { "PASS" } else { "FAIL" },
                cert.window.0,
                cert.window.1,
                cert.trap_radius,
                cert.min_distance,
                cert.max_distance,
                cert.per_step_floor,
                cert.min_step_margin,
            );
            Ok((text, cert.passed))
        }
        CertificateKind::Example2 => {
            let rho = config
                .optimizer
                .backstep_rho
                .ok_or_else(|| missing("optimizer.backstep_rho"))?;
            let x1 = resolved
                .x1
                .first()
                .copied()
                .ok_or_else(|| invalid("run.x1", "example2 is one-dimensional"))?;
            let cert = certify_example2(rho, x1, &resolved.spec.stepsize, resolved.horizon)?;
            let text = format!(
                "example2 certificate: {}\n  |x^K - rho| = {:.6e} (telescoped {:.6e}), min overshoot {:.3e}\n  max recursion residual {:.3e}, gradient at limit {:.3}\n",
                if cert.passed { "PASS" } else { "FAIL" },
                cert.final_gap,
                cert.telescoped_gap,
                cert.min_overshoot,
                cert.max_recursion_residual,
                cert.limit_gradient,
            );
            Ok((text, cert.passed))
        }
    }
}

fn constant_value(spec: &ScheduleSpec) -> Option<f64> {
    match spec.family {
        crate::schedules::ScheduleFamily::Constant(c) => Some(c),
        _ => None,
    }
}

/// Runs a config end to end and writes artifacts into `out_dir`:
/// trace.csv, report.csv, optional trace.svg, optional certificate.txt.
pub fn execute_to_dir(
    config: &ExperimentConfig,
    out_dir: &Path,
    svg: bool,
) -> Result<RunOutcome, HarnessError> {
    let resolved = resolve(config)?;
    let outcome = execute(config)?;
    let io = |path: &Path, source: std::io::Error| HarnessError::Io {
        path: path.display().to_string(),
        source,
    };
    std::fs::create_dir_all(out_dir).map_err(|e| io(out_dir, e))?;
    if config.output.csv {
        let trace_path = out_dir.join("trace.csv");
        std::fs::write(&trace_path, output::trace_csv(&outcome.trace))
            .map_err(|e| io(&trace_path, e))?;
        if let Some(report) = &outcome.report {
            let report_path = out_dir.join("report.csv");
            std::fs::write(&report_path, output::report_csv(report))
                .map_err(|e| io(&report_path, e))?;
        }
    }
    if svg && config.output.svg {
        let svg_path = out_dir.join("trace.svg");
        std::fs::write(
            &svg_path,
            output::trace_svg(&outcome.trace, &resolved.problem),
        )
        .map_err(|e| io(&svg_path, e))?;
    }
    if let Some(text) = &outcome.certificate_text {
        let cert_path = out_dir.join("certificate.txt");
        std::fs::write(&cert_path, text).map_err(|e| io(&cert_path, e))?;
    }
    Ok(outcome)
}

/// One sweep summary row. Failures are recorded in `status`, never raised.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub label: String,
    pub status: String,
    pub final_f: Option<f64>,
    pub final_grad: Option<f64>,
    pub dist_to_minimizer: Option<f64>,
    pub rate_slope: Option<f64>,
}

pub const SUMMARY_CSV_HEADER: &str =
    "index,label,status,final_f,final_grad,dist_to_minimizer,rate_slope";

pub fn summary_csv(rows: &[SweepRow]) -> String {
    let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut s = String::from(SUMMARY_CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.index,
            r.label,
            r.status,
            cell(r.final_f),
            cell(r.final_grad),
            cell(r.dist_to_minimizer),
            cell(r.rate_slope),
        ));
    }
    s
}

fn cell_config(base: &ExperimentConfig, cell: &SweepCell) -> Result<ExperimentConfig, ConfigError> {
    let mut config = ExperimentConfig {
        cells: Vec::new(),
        ..base.clone()
    };
    for (key, value) in &cell.overrides {
        config.apply_override(key, value)?;
    }
    Ok(config)
}

fn run_cell(base: &ExperimentConfig, index: usize, cell: &SweepCell) -> SweepRow {
    let mut row = SweepRow {
        index,
        label: cell.label.clone(),
        status: "ok".into(),
        final_f: None,
        final_grad: None,
        dist_to_minimizer: None,
        rate_slope: None,
    };
    let attempt = || -> Result<(RunOutcome, Option<f64>), HarnessError> {
        let config = cell_config(base, cell)?;
        let resolved = resolve(&config)?;
        let outcome = execute(&config)?;
        let dist = resolved
            .problem
            .minimizer
            .as_ref()
            .map(|m| crate::linalg::distance(&outcome.trace.final_x, m));
        Ok((outcome, dist))
    };
    match attempt() {
        Ok((outcome, dist)) => {
            if outcome.trace.terminated == TerminationReason::NonFinite {
                row.status = "nonfinite".into();
            }
            row.final_f = Some(outcome.final_f());
            row.final_grad = Some(outcome.final_grad());
            row.dist_to_minimizer = dist;
            row.rate_slope = match &outcome.rate {
                Some(Ok(fit)) => Some(fit.slope),
                _ => None,
            };
        }
        Err(e) => row.status = format!("error: {e}").replace(',', ";"),
    }
    row
}

/// Runs every cell of a sweep config, up to `parallel` at a time. Row order
/// equals cell order regardless of completion order, and the summary is
/// byte-identical for any parallelism degree.
pub fn run_sweep(base: &ExperimentConfig, parallel: usize) -> Result<Vec<SweepRow>, HarnessError> {
    if base.cells.is_empty() {
        return Err(invalid("cell", "sweep config has no [cell] sections"));
    }
    let parallel = parallel.clamp(1, base.cells.len());
    let slots: Mutex<Vec<Option<SweepRow>>> = Mutex::new(vec![None; base.cells.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..parallel {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::SeqCst);
                if index >= base.cells.len() {
                    break;
                }
                let row = run_cell(base, index, &base.cells[index]);
                slots.lock().expect("sweep worker poisoned")[index] = Some(row);
            });
        }
    });
    let rows: Vec<SweepRow> = slots
        .into_inner()
        .expect("sweep workers finished")
        .into_iter()
        .map(|r| r.expect("every cell produced a row"))
        .collect();
    Ok(rows)
}

/// Writes the sweep summary to `out_dir/summary.csv` and returns the rows.
pub fn run_sweep_to_dir(
    base: &ExperimentConfig,
    parallel: usize,
    out_dir: &Path,
) -> Result<Vec<SweepRow>, HarnessError> {
    let rows = run_sweep(base, parallel)?;
    std::fs::create_dir_all(out_dir).map_err(|e| HarnessError::Io {
        path: out_dir.display().to_string(),
        source: e,
    })?;
    let path = out_dir.join("summary.csv");
    std::fs::write(&path, summary_csv(&rows)).map_err(|e| HarnessError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    Ok(rows)
}

/// Audits the config's schedules against a theorem's hypotheses.
pub fn audit(config: &ExperimentConfig, theorem: TheoremTag) -> Result<AuditReport, HarnessError> {
    let resolved = resolve(config)?;
    Ok(audit_theorem_conditions(
        &resolved.spec,
        &resolved.problem,
        theorem,
        resolved.horizon,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_and_execute_example1_preset() {
        let mut config = find_preset("example1").unwrap();
        config.run.horizon = 500; // keep the unit test quick
        let outcome = execute(&config).unwrap();
        assert_eq!(outcome.exit_code(), 0);
        assert_eq!(outcome.certificate_passed, Some(true));
        let report = outcome.report.unwrap();
        assert!(!report.verdicts[4]);
    }

    #[test]
    fn execute_example2_preset_small() {
        let mut config = find_preset("example2").unwrap();
        config.run.horizon = 1000;
        let outcome = execute(&config).unwrap();
        assert_eq!(outcome.certificate_passed, Some(true));
        let gap = (outcome.trace.final_x[0] - 1.0).abs();
        assert!((gap - 1.0 / 1001.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_rows_keep_input_order_and_parallel_degree_is_invisible() {
        let mut base = find_preset("appendixF").unwrap();
        // shrink to the n=2 cells for speed
        base.cells.truncate(5);
        let rows1 = run_sweep(&base, 1).unwrap();
        let rows8 = run_sweep(&base, 8).unwrap();
        assert_eq!(rows1, rows8);
        assert_eq!(summary_csv(&rows1), summary_csv(&rows8));
        assert_eq!(rows1.len(), 5);
        assert!(rows1.iter().enumerate().all(|(i, r)| r.index == i));
        assert!(rows1.iter().all(|r| r.status == "ok"), "{rows1:?}");
    }

    #[test]
    fn single_cell_sweep_matches_direct_run() {
        let mut base = find_preset("appendixF").unwrap();
        base.cells.truncate(1);
        let rows = run_sweep(&base, 1).unwrap();
        assert_eq!(rows.len(), 1);
        let direct = {
            let config = cell_config(&base, &base.cells[0]).unwrap();
            execute(&config).unwrap()
        };
        assert_eq!(rows[0].final_f, Some(direct.final_f()));
        assert_eq!(rows[0].final_grad, Some(direct.final_grad()));
    }

    #[test]
    fn sweep_records_cell_failures_without_aborting() {
        let mut base = find_preset("appendixF").unwrap();
        base.cells.truncate(2);
        // dimension mismatch inside the cell: x1 offset vector of wrong length
        base.cells[0]
            .overrides
            .push(("run.x1".into(), "minimizer + 1 2 3".into()));
        let rows = run_sweep(&base, 2).unwrap();
        assert!(rows[0].status.starts_with("error"));
        assert_eq!(rows[1].status, "ok");
    }

    #[test]
    fn missing_radius_error_names_the_key() {
        let mut config = find_preset("example1").unwrap();
        config.optimizer.radius = None;
        match execute(&config) {
            Err(HarnessError::Optimizer(OptimizerError::MissingField { field, .. })) => {
                assert_eq!(field, "radius")
            }
            other => panic!("expected MissingField, got {other:?}"),
        }
    }

    #[test]
    fn execute_writes_artifacts() {
        let dir = std::env::temp_dir().join(format!("samlab-harness-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let mut config = find_preset("example1").unwrap();
        config.run.horizon = 200;
        let outcome = execute_to_dir(&config, &dir, true).unwrap();
        assert_eq!(outcome.exit_code(), 0);
        assert!(dir.join("trace.csv").exists());
        assert!(dir.join("report.csv").exists());
        assert!(dir.join("trace.svg").exists());
        assert!(dir.join("certificate.txt").exists());
        let trace = std::fs::read_to_string(dir.join("trace.csv")).unwrap();
        assert!(trace.starts_with("k,f,grad_norm,t_k,rho_or_eps,step_norm,inexactness\n"));
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn audit_glue_runs_on_schedule_audit_preset() {
        let mut config = find_preset("schedule-audit").unwrap();
        config.run.horizon = 10_000;
        let report = audit(&config, TheoremTag::T1).unwrap();
        assert!(report.all_passed, "{}", report.text_block());
    }
}
