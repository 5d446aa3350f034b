//! Shipped experiment presets, one per acceptance scenario.

use super::config::{
    CertificateKind, ExperimentConfig, IgdNoiseKind, OptimizerConfig, OutputConfig, ProblemConfig,
    ProblemKind, RunConfig, SweepCell, X1Rule,
};
use crate::analysis::{RateModel, RateReference};
use crate::optimizers::Variant;
use crate::schedules::ScheduleFamily;

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub config: ExperimentConfig,
}

pub fn all_presets() -> Vec<Preset> {
    vec![
        Preset {
            name: "example1",
            description: "constant-stepsize SAM trapped on a 2-d quadratic; GD contrast converges",
            config: example1(),
        },
        Preset {
            name: "example2",
            description: "constant-error IGD on x^2 converging to the nonstationary point rho",
            config: example2(),
        },
        Preset {
            name: "appendixF",
            description: "log-quadratic sweep: GD vs SAM with constant and almost-constant radii",
            config: appendix_f(),
        },
        Preset {
            name: "convex-T1",
            description: "SAM with diminishing stepsize on a random 20-d strongly convex quadratic",
            config: convex_t1(),
        },
        Preset {
            name: "usam-rate-q12",
            description: "USAM linear-rate run on a strongly convex quadratic (KL exponent 1/2)",
            config: usam_rate_q12(),
        },
        Preset {
            name: "schedule-audit",
            description: "harmonic stepsize with perfect-square-spike radius for theorem audits",
            config: schedule_audit(),
        },
    ]
}

pub fn find_preset(name: &str) -> Option<ExperimentConfig> {
    all_presets().into_iter().find(|p| p.name == name).map(|p| {
        let mut config = p.config;
        config.preset = Some(name.to_string());
        config
    })
}

fn example1() -> ExperimentConfig {
    let mut problem = ProblemConfig::of_kind(ProblemKind::Quadratic);
    problem.a = Some(vec![vec![1.0, 0.0], vec![0.0, 2.0]]);
    problem.b = Some(vec![0.0, 0.0]);
    let mut optimizer = OptimizerConfig::new(Variant::Sam, ScheduleFamily::Constant(0.8));
    optimizer.radius = Some(ScheduleFamily::Constant(0.1));
    optimizer.seed = 1;
    let mut run = RunConfig::new(X1Rule::MinimizerPlus(vec![0.2, 0.0]), 10_000);
    run.thin = Some(1);
    run.certificate = Some(CertificateKind::Example1);
    ExperimentConfig {
        preset: None,
        problem,
        optimizer,
        run,
        output: OutputConfig::default(),
        cells: Vec::new(),
    }
}

fn example2() -> ExperimentConfig {
    let problem = ProblemConfig::of_kind(ProblemKind::Square1d);
    // t_k = 1/(2k+2)
    let mut optimizer =
        OptimizerConfig::new(Variant::Igd, ScheduleFamily::Harmonic { c: 0.5, shift: 1 });
    optimizer.error = Some(ScheduleFamily::Constant(2.0));
    optimizer.igd_noise = IgdNoiseKind::Backstep;
    optimizer.backstep_rho = Some(1.0);
    optimizer.seed = 2;
    let mut run = RunConfig::new(X1Rule::Absolute(vec![2.0]), 10_000);
    run.thin = Some(1);
    run.certificate = Some(CertificateKind::Example2);
    ExperimentConfig {
        preset: None,
        problem,
        optimizer,
        run,
        output: OutputConfig::default(),
        cells: Vec::new(),
    }
}

fn appendix_f() -> ExperimentConfig {
    let mut problem = ProblemConfig::of_kind(ProblemKind::RandomLogQuadratic);
    problem.dim = Some(20);
    problem.seed = Some(7);
    let mut optimizer = OptimizerConfig::new(
        Variant::Gd,
        ScheduleFamily::Harmonic {
            c: 0.1 / 20.0,
            shift: 0,
        },
    );
    optimizer.seed = 7;
    let mut run = RunConfig::new(X1Rule::MinimizerPlusUniform(0.1 / 400.0), 2_000);
    run.tol_grad = 1e-3;
    run.tol_cauchy = 1e-2;
    let mut cells = Vec::new();
    for n in [2usize, 20, 50, 100] {
        let base: Vec<(String, String)> = vec![
            ("problem.dim".into(), n.to_string()),
            (
                "optimizer.stepsize".into(),
                format!("harmonic {}", 0.1 / n as f64),
            ),
            (
                "run.x1".into(),
                format!("minimizer + uniform {}", 0.1 / (n * n) as f64),
            ),
            ("run.horizon".into(), (100 * n).to_string()),
        ];
        let methods: [(&str, Vec<(String, String)>); 5] = [
            ("gd", vec![("optimizer.variant".into(), "gd".into())]),
            (
                "sam-const",
                vec![
                    ("optimizer.variant".into(), "sam".into()),
                    ("optimizer.radius".into(), "constant 0.1".into()),
                ],
            ),
            (
                "sam-p1",
                vec![
                    ("optimizer.variant".into(), "sam".into()),
                    ("optimizer.radius".into(), "powerlaw 0.1 1".into()),
                ],
            ),
            (
                "sam-p0.1",
                vec![
                    ("optimizer.variant".into(), "sam".into()),
                    ("optimizer.radius".into(), "powerlaw 0.1 0.1".into()),
                ],
            ),
            (
                "sam-p0.001",
                vec![
                    ("optimizer.variant".into(), "sam".into()),
                    ("optimizer.radius".into(), "powerlaw 0.1 0.001".into()),
                ],
            ),
        ];
        for (method, extra) in methods {
            let mut overrides = base.clone();
            overrides.extend(extra);
            cells.push(SweepCell {
                label: format!("{method}-n{n}"),
                overrides,
            });
        }
    }
    ExperimentConfig {
        preset: None,
        problem,
        optimizer,
        run,
        output: OutputConfig::default(),
        cells,
    }
}

fn convex_t1() -> ExperimentConfig {
    let mut problem = ProblemConfig::of_kind(ProblemKind::RandomQuadratic);
    problem.dim = Some(20);
    problem.seed = Some(11);
    problem.eig_min = Some(1.0);
    problem.eig_max = Some(2.0);
    // t_k = 0.5/(L·k) with L = eig_max = 2
    let mut optimizer =
        OptimizerConfig::new(Variant::Sam, ScheduleFamily::Harmonic { c: 0.25, shift: 0 });
    optimizer.radius = Some(ScheduleFamily::Constant(0.05));
    optimizer.seed = 11;
    let mut run = RunConfig::new(X1Rule::MinimizerPlusRandUnit(0.01), 100_000);
    run.thin = Some(10);
    run.tol_grad = 1e-3;
    run.tol_cauchy = 1e-2;
    ExperimentConfig {
        preset: None,
        problem,
        optimizer,
        run,
        output: OutputConfig::default(),
        cells: Vec::new(),
    }
}

fn usam_rate_q12() -> ExperimentConfig {
    let mut problem = ProblemConfig::of_kind(ProblemKind::Quadratic);
    problem.a = Some(vec![vec![0.01, 0.0], vec![0.0, 4.0]]);
    problem.b = Some(vec![0.0, 0.0]);
    // nu = 0.25, L = 4: t = 0.9·(2−2ν)/(L(1+ν)²) = 0.216, rho = nu/L
    let mut optimizer = OptimizerConfig::new(Variant::Usam, ScheduleFamily::Constant(0.216));
    optimizer.radius = Some(ScheduleFamily::Constant(0.0625));
    optimizer.nu = Some(0.25);
    optimizer.seed = 5;
    let mut run = RunConfig::new(X1Rule::Absolute(vec![1.0, 1.0]), 10_000);
    run.thin = Some(1);
    run.fit = Some(RateReference::Minimizer);
    run.fit_window = 0.5;
    run.fit_model = RateModel::Linear;
    ExperimentConfig {
        preset: None,
        problem,
        optimizer,
        run,
        output: OutputConfig::default(),
        cells: Vec::new(),
    }
}

fn schedule_audit() -> ExperimentConfig {
    let mut problem = ProblemConfig::of_kind(ProblemKind::Quadratic);
    problem.a = Some(vec![vec![1.0, 0.0], vec![0.0, 2.0]]);
    problem.b = Some(vec![0.0, 0.0]);
    let mut optimizer =
        OptimizerConfig::new(Variant::Sam, ScheduleFamily::Harmonic { c: 0.1, shift: 0 });
    optimizer.radius = Some(ScheduleFamily::PerfectSquareSpike { c: 0.1, p: 1.0 });
    optimizer.seed = 3;
    let mut run = RunConfig::new(X1Rule::MinimizerPlus(vec![0.1, 0.1]), 100_000);
    run.thin = Some(10);
    ExperimentConfig {
        preset: None,
        problem,
        optimizer,
        run,
        output: OutputConfig::default(),
        cells: Vec::new(),
    }
}
