//! Experiment configuration: plain text with `[section]` headers and
//! `key = value` lines.
//!
//! The format is deliberately trivial: `#` starts a comment, floats accept
//! decimal or scientific notation, vectors are whitespace-separated, matrix
//! rows are separated by `;`. Unknown keys are rejected with the offending
//! key named. `parse(serialize(config)) == config` holds for every config
//! this module can produce.

use crate::analysis::{RateModel, RateReference};
use crate::optimizers::Variant;
use crate::schedules::ScheduleFamily;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown key `{key}`")]
    UnknownKey { key: String },
    #[error("missing required key `{key}`")]
    MissingKey { key: String },
    #[error("invalid value for `{key}`: {message}")]
    InvalidValue { key: String, message: String },
}

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Quadratic,
    LogQuadratic,
    Square1d,
    RandomQuadratic,
    RandomLogQuadratic,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Quadratic => "quadratic",
            ProblemKind::LogQuadratic => "log-quadratic",
            ProblemKind::Square1d => "square-1d",
            ProblemKind::RandomQuadratic => "random-quadratic",
            ProblemKind::RandomLogQuadratic => "random-log-quadratic",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "quadratic" => ProblemKind::Quadratic,
            "log-quadratic" => ProblemKind::LogQuadratic,
            "square-1d" => ProblemKind::Square1d,
            "random-quadratic" => ProblemKind::RandomQuadratic,
            "random-log-quadratic" => ProblemKind::RandomLogQuadratic,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemConfig {
    pub kind: ProblemKind,
    pub a: Option<Vec<Vec<f64>>>,
    pub b: Option<Vec<f64>>,
    pub dim: Option<usize>,
    pub seed: Option<u64>,
    pub eig_min: Option<f64>,
    pub eig_max: Option<f64>,
}

impl ProblemConfig {
    pub fn of_kind(kind: ProblemKind) -> Self {
        Self {
            kind,
            a: None,
            b: None,
            dim: None,
            seed: None,
            eig_min: None,
            eig_max: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgdNoiseKind {
    Random,
    Backstep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub variant: Variant,
    pub stepsize: ScheduleFamily,
    pub radius: Option<ScheduleFamily>,
    pub error: Option<ScheduleFamily>,
    pub nu: Option<f64>,
    pub theta: Option<f64>,
    pub sigma: Option<f64>,
    pub lambda: Option<f64>,
    pub seed: u64,
    pub grad_zero_tol: Option<f64>,
    pub igd_noise: IgdNoiseKind,
    pub backstep_rho: Option<f64>,
}

impl OptimizerConfig {
    pub fn new(variant: Variant, stepsize: ScheduleFamily) -> Self {
        Self {
            variant,
            stepsize,
            radius: None,
            error: None,
            nu: None,
            theta: None,
            sigma: None,
            lambda: None,
            seed: 0,
            grad_zero_tol: None,
            igd_noise: IgdNoiseKind::Random,
            backstep_rho: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum X1Rule {
    Absolute(Vec<f64>),
    Minimizer,
    MinimizerPlus(Vec<f64>),
    /// minimizer + c·(1, 1, ..., 1)
    MinimizerPlusUniform(f64),
    /// minimizer + c·(seeded random unit vector)
    MinimizerPlusRandUnit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Example1,
    Example2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub x1: X1Rule,
    pub horizon: u64,
    pub thin: Option<u64>,
    pub tol_grad: f64,
    pub tol_cauchy: f64,
    pub fit: Option<RateReference>,
    pub fit_window: f64,
    pub fit_model: RateModel,
    pub certificate: Option<CertificateKind>,
}

impl RunConfig {
    pub fn new(x1: X1Rule, horizon: u64) -> Self {
        Self {
            x1,
            horizon,
            thin: None,
            tol_grad: 1e-6,
            tol_cauchy: 1e-6,
            fit: None,
            fit_window: 0.5,
            fit_model: RateModel::Linear,
            certificate: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub dir: Option<String>,
    pub csv: bool,
    pub svg: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: None,
            csv: true,
            svg: true,
        }
    }
}

/// One sweep cell: a label plus dotted-key overrides applied to the base
/// config (for example `problem.dim = 50`).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub label: String,
    pub overrides: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub preset: Option<String>,
    pub problem: ProblemConfig,
    pub optimizer: OptimizerConfig,
    pub run: RunConfig,
    pub output: OutputConfig,
    pub cells: Vec<SweepCell>,
}

impl ExperimentConfig {
    pub fn is_sweep(&self) -> bool {
        !self.cells.is_empty()
    }

    /// Applies one dotted-key override, e.g. ("optimizer.variant", "sam").
    pub fn apply_override(&mut self, dotted_key: &str, value: &str) -> Result<(), ConfigError> {
        let (section, key) = dotted_key
            .split_once('.')
            .ok_or_else(|| invalid(dotted_key, "override keys look like section.key"))?;
        match section {
            "problem" => set_problem_key(&mut self.problem, key, value),
            "optimizer" => set_optimizer_key(&mut self.optimizer, key, value),
            "run" => set_run_key(&mut self.run, key, value),
            "output" => set_output_key(&mut self.output, key, value),
            other => Err(ConfigError::UnknownKey {
                key: format!("{other}.{key}"),
            }),
        }
    }
}

fn parse_f64(key: &str, s: &str) -> Result<f64, ConfigError> {
    s.parse::<f64>()
        .map_err(|_| invalid(key, format!("`{s}` is not a number")))
}

fn parse_u64(key: &str, s: &str) -> Result<u64, ConfigError> {
    s.parse::<u64>()
        .map_err(|_| invalid(key, format!("`{s}` is not a nonnegative integer")))
}

fn parse_usize(key: &str, s: &str) -> Result<usize, ConfigError> {
    s.parse::<usize>()
        .map_err(|_| invalid(key, format!("`{s}` is not a nonnegative integer")))
}

fn parse_bool(key: &str, s: &str) -> Result<bool, ConfigError> {
    match s {
        "true" | "on" | "yes" => Ok(true),
        "false" | "off" | "no" => Ok(false),
        _ => Err(invalid(key, format!("`{s}` is not a boolean"))),
    }
}

fn parse_vector(key: &str, s: &str) -> Result<Vec<f64>, ConfigError> {
    let vals: Result<Vec<f64>, _> = s.split_whitespace().map(|t| parse_f64(key, t)).collect();
    let vals = vals?;
    if vals.is_empty() {
        return Err(invalid(key, "expected at least one number"));
    }
    Ok(vals)
}

fn parse_matrix(key: &str, s: &str) -> Result<Vec<Vec<f64>>, ConfigError> {
    let rows: Result<Vec<Vec<f64>>, _> = s.split(';').map(|r| parse_vector(key, r)).collect();
    rows
}

pub fn parse_schedule(key: &str, s: &str) -> Result<ScheduleFamily, ConfigError> {
    let tokens: Vec<&str> = s.split_whitespace().collect();
    let arity = |want: usize| -> Result<(), ConfigError> {
        if tokens.len() != want + 1 {
            Err(invalid(
                key,
                format!("`{}` takes {want} parameter(s)", tokens[0]),
            ))
        } else {
            Ok(())
        }
    };
    match tokens.first() {
        Some(&"constant") => {
            arity(1)?;
            Ok(ScheduleFamily::Constant(parse_f64(key, tokens[1])?))
        }
        Some(&"harmonic") => {
            if tokens.len() == 2 {
                Ok(ScheduleFamily::Harmonic {
                    c: parse_f64(key, tokens[1])?,
                    shift: 0,
                })
            } else if tokens.len() == 3 {
                Ok(ScheduleFamily::Harmonic {
                    c: parse_f64(key, tokens[1])?,
                    shift: parse_u64(key, tokens[2])?,
                })
            } else {
                Err(invalid(key, "`harmonic` takes c and an optional shift"))
            }
        }
        Some(&"powerlaw") => {
            arity(2)?;
            Ok(ScheduleFamily::PowerLaw {
                c: parse_f64(key, tokens[1])?,
                p: parse_f64(key, tokens[2])?,
            })
        }
        Some(&"epochlog") => {
            arity(1)?;
            Ok(ScheduleFamily::EpochLog(parse_f64(key, tokens[1])?))
        }
        Some(&"square-spike") => {
            arity(2)?;
            Ok(ScheduleFamily::PerfectSquareSpike {
                c: parse_f64(key, tokens[1])?,
                p: parse_f64(key, tokens[2])?,
            })
        }
        Some(&"custom") => {
            if tokens.len() < 2 {
                return Err(invalid(key, "`custom` needs at least one value"));
            }
            let vals: Result<Vec<f64>, _> =
                tokens[1..].iter().map(|t| parse_f64(key, t)).collect();
            Ok(ScheduleFamily::Custom(vals?))
        }
        _ => Err(invalid(
            key,
            format!(
                "unknown schedule family `{}` (expected constant, harmonic, powerlaw, epochlog, square-spike or custom)",
                tokens.first().unwrap_or(&"")
            ),
        )),
    }
}

pub fn schedule_to_string(family: &ScheduleFamily) -> String {
    match family {
        ScheduleFamily::Constant(c) => format!("constant {c}"),
        ScheduleFamily::Harmonic { c, shift: 0 } => format!("harmonic {c}"),
        ScheduleFamily::Harmonic { c, shift } => format!("harmonic {c} {shift}"),
        ScheduleFamily::PowerLaw { c, p } => format!("powerlaw {c} {p}"),
        ScheduleFamily::EpochLog(c) => format!("epochlog {c}"),
        ScheduleFamily::PerfectSquareSpike { c, p } => format!("square-spike {c} {p}"),
        ScheduleFamily::Custom(vals) => {
            let body: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
            format!("custom {}", body.join(" "))
        }
    }
}

fn parse_x1(s: &str) -> Result<X1Rule, ConfigError> {
    let key = "run.x1";
    let tokens: Vec<&str> = s.split_whitespace().collect();
    match tokens.as_slice() {
        ["minimizer"] => Ok(X1Rule::Minimizer),
        ["minimizer", "+", "uniform", c] => Ok(X1Rule::MinimizerPlusUniform(parse_f64(key, c)?)),
        ["minimizer", "+", "randunit", c] => Ok(X1Rule::MinimizerPlusRandUnit(parse_f64(key, c)?)),
        ["minimizer", "+", rest @ ..] if !rest.is_empty() => {
            let vals: Result<Vec<f64>, _> = rest.iter().map(|t| parse_f64(key, t)).collect();
            Ok(X1Rule::MinimizerPlus(vals?))
        }
        rest if !rest.is_empty() && rest[0] != "minimizer" => {
            let vals: Result<Vec<f64>, _> = rest.iter().map(|t| parse_f64(key, t)).collect();
            Ok(X1Rule::Absolute(vals?))
        }
        _ => Err(invalid(key, format!("cannot parse x1 rule `{s}`"))),
    }
}

fn x1_to_string(rule: &X1Rule) -> String {
    let join = |v: &[f64]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    match rule {
        X1Rule::Absolute(v) => join(v),
        X1Rule::Minimizer => "minimizer".into(),
        X1Rule::MinimizerPlus(v) => format!("minimizer + {}", join(v)),
        X1Rule::MinimizerPlusUniform(c) => format!("minimizer + uniform {c}"),
        X1Rule::MinimizerPlusRandUnit(c) => format!("minimizer + randunit {c}"),
    }
}

fn set_problem_key(p: &mut ProblemConfig, key: &str, value: &str) -> Result<(), ConfigError> {
    match key {
        "kind" => {
            p.kind = ProblemKind::parse(value)
                .ok_or_else(|| invalid("problem.kind", format!("unknown kind `{value}`")))?
        }
        "a" => p.a = Some(parse_matrix("problem.a", value)?),
        "b" => p.b = Some(parse_vector("problem.b", value)?),
        "dim" => p.dim = Some(parse_usize("problem.dim", value)?),
        "seed" => p.seed = Some(parse_u64("problem.seed", value)?),
        "eig_min" => p.eig_min = Some(parse_f64("problem.eig_min", value)?),
        "eig_max" => p.eig_max = Some(parse_f64("problem.eig_max", value)?),
        other => {
            return Err(ConfigError::UnknownKey {
                key: format!("problem.{other}"),
            })
        }
    }
    Ok(())
}

fn set_optimizer_key(o: &mut OptimizerConfig, key: &str, value: &str) -> Result<(), ConfigError> {
    match key {
        "variant" => {
            o.variant = Variant::parse(value)
                .ok_or_else(|| invalid("optimizer.variant", format!("unknown variant `{value}`")))?
        }
        "stepsize" => o.stepsize = parse_schedule("optimizer.stepsize", value)?,
        "radius" => o.radius = Some(parse_schedule("optimizer.radius", value)?),
        "error" => o.error = Some(parse_schedule("optimizer.error", value)?),
        "nu" => o.nu = Some(parse_f64("optimizer.nu", value)?),
        "theta" => o.theta = Some(parse_f64("optimizer.theta", value)?),
        "sigma" => o.sigma = Some(parse_f64("optimizer.sigma", value)?),
        "lambda" => o.lambda = Some(parse_f64("optimizer.lambda", value)?),
        "seed" => o.seed = parse_u64("optimizer.seed", value)?,
        "grad_zero_tol" => o.grad_zero_tol = Some(parse_f64("optimizer.grad_zero_tol", value)?),
        "igd_noise" => {
            o.igd_noise = match value {
                "random" => IgdNoiseKind::Random,
                "backstep" => IgdNoiseKind::Backstep,
                _ => {
                    return Err(invalid(
                        "optimizer.igd_noise",
                        format!("expected `random` or `backstep`, got `{value}`"),
                    ))
                }
            }
        }
        "backstep_rho" => o.backstep_rho = Some(parse_f64("optimizer.backstep_rho", value)?),
        other => {
            return Err(ConfigError::UnknownKey {
                key: format!("optimizer.{other}"),
            })
        }
    }
    Ok(())
}

fn set_run_key(r: &mut RunConfig, key: &str, value: &str) -> Result<(), ConfigError> {
    match key {
        "x1" => r.x1 = parse_x1(value)?,
        "horizon" => r.horizon = parse_u64("run.horizon", value)?,
        "thin" => r.thin = Some(parse_u64("run.thin", value)?),
        "tol_grad" => r.tol_grad = parse_f64("run.tol_grad", value)?,
        "tol_cauchy" => r.tol_cauchy = parse_f64("run.tol_cauchy", value)?,
        "fit" => {
            r.fit = Some(RateReference::parse(value).ok_or_else(|| {
                invalid(
                    "run.fit",
                    format!("expected minimizer, f-star or grad, got `{value}`"),
                )
            })?)
        }
        "fit_window" => r.fit_window = parse_f64("run.fit_window", value)?,
        "fit_model" => {
            r.fit_model = match value {
                "linear" => RateModel::Linear,
                "power" => RateModel::Power,
                _ => {
                    return Err(invalid(
                        "run.fit_model",
                        format!("expected `linear` or `power`, got `{value}`"),
                    ))
                }
            }
        }
        "certificate" => {
            r.certificate = Some(match value {
                "example1" => CertificateKind::Example1,
                "example2" => CertificateKind::Example2,
                _ => {
                    return Err(invalid(
                        "run.certificate",
                        format!("expected `example1` or `example2`, got `{value}`"),
                    ))
                }
            })
        }
        other => {
            return Err(ConfigError::UnknownKey {
                key: format!("run.{other}"),
            })
        }
    }
    Ok(())
}

fn set_output_key(o: &mut OutputConfig, key: &str, value: &str) -> Result<(), ConfigError> {
    match key {
        "dir" => o.dir = Some(value.to_string()),
        "csv" => o.csv = parse_bool("output.csv", value)?,
        "svg" => o.svg = parse_bool("output.svg", value)?,
        other => {
            return Err(ConfigError::UnknownKey {
                key: format!("output.{other}"),
            })
        }
    }
    Ok(())
}

/// Parses the config text format. Every section may appear once, except
/// `[cell]` which may repeat; `problem`, `optimizer` and `run` must carry
/// their required keys.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        Top,
        Problem,
        Optimizer,
        Run,
        Output,
        Cell,
    }

    let mut preset: Option<String> = None;
    // section accumulators; kind/variant/stepsize/x1/horizon are placeholders
    // until their required keys arrive
    let mut problem = ProblemConfig::of_kind(ProblemKind::Square1d);
    let mut problem_keys: Vec<String> = Vec::new();
    let mut optimizer = OptimizerConfig::new(Variant::Gd, ScheduleFamily::Constant(0.0));
    let mut optimizer_keys: Vec<String> = Vec::new();
    let mut run = RunConfig::new(X1Rule::Minimizer, 0);
    let mut run_keys: Vec<String> = Vec::new();
    let mut output = OutputConfig::default();
    let mut cells: Vec<SweepCell> = Vec::new();
    let mut section = Section::Top;
    let mut seen_sections: Vec<String> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ConfigError::Parse {
            line: lineno + 1,
            message,
        };
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err("unterminated section header".into()))?
                .trim();
            section = match name {
                "problem" => Section::Problem,
                "optimizer" => Section::Optimizer,
                "run" => Section::Run,
                "output" => Section::Output,
                "cell" => Section::Cell,
                other => return Err(err(format!("unknown section `[{other}]`"))),
            };
            if name != "cell" {
                if seen_sections.iter().any(|s| s == name) {
                    return Err(err(format!("duplicate section `[{name}]`")));
                }
                seen_sections.push(name.to_string());
            } else {
                cells.push(SweepCell {
                    label: format!("cell-{}", cells.len() + 1),
                    overrides: Vec::new(),
                });
            }
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        let track = |keys: &mut Vec<String>, key: &str| -> Result<(), ConfigError> {
            if keys.iter().any(|k| k == key) {
                Err(err(format!("duplicate key `{key}`")))
            } else {
                keys.push(key.to_string());
                Ok(())
            }
        };
        match section {
            Section::Top => match key {
                "preset" => preset = Some(value.to_string()),
                other => {
                    return Err(ConfigError::UnknownKey {
                        key: other.to_string(),
                    })
                }
            },
            Section::Problem => {
                track(&mut problem_keys, key)?;
                set_problem_key(&mut problem, key, value)?;
            }
            Section::Optimizer => {
                track(&mut optimizer_keys, key)?;
                set_optimizer_key(&mut optimizer, key, value)?;
            }
            Section::Run => {
                track(&mut run_keys, key)?;
                set_run_key(&mut run, key, value)?;
            }
            Section::Output => set_output_key(&mut output, key, value)?,
            Section::Cell => {
                let cell = cells.last_mut().expect("pushed at section header");
                if key == "label" {
                    cell.label = value.to_string();
                } else {
                    // validated eagerly against a scratch copy so bad override
                    // keys are reported at parse time
                    let mut scratch = ExperimentConfig {
                        preset: None,
                        problem: problem.clone(),
                        optimizer: optimizer.clone(),
                        run: run.clone(),
                        output: output.clone(),
                        cells: Vec::new(),
                    };
                    scratch.apply_override(key, value)?;
                    cell.overrides.push((key.to_string(), value.to_string()));
                }
            }
        }
    }

    for (keys, required, name) in [
        (&problem_keys, "kind", "problem.kind"),
        (&optimizer_keys, "variant", "optimizer.variant"),
        (&optimizer_keys, "stepsize", "optimizer.stepsize"),
        (&run_keys, "x1", "run.x1"),
        (&run_keys, "horizon", "run.horizon"),
    ] {
        if !keys.iter().any(|k| k == required) {
            return Err(ConfigError::MissingKey {
                key: name.to_string(),
            });
        }
    }

    Ok(ExperimentConfig {
        preset,
        problem,
        optimizer,
        run,
        output,
        cells,
    })
}

/// Canonical text form; `parse_config` inverts it exactly.
pub fn serialize_config(config: &ExperimentConfig) -> String {
    let mut s = String::new();
    if let Some(preset) = &config.preset {
        s.push_str(&format!("preset = {preset}\n\n"));
    }

    s.push_str("[problem]\n");
    s.push_str(&format!("kind = {}\n", config.problem.kind.as_str()));
    if let Some(a) = &config.problem.a {
        let rows: Vec<String> = a
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        s.push_str(&format!("a = {}\n", rows.join(" ; ")));
    }
    if let Some(b) = &config.problem.b {
        let body: Vec<String> = b.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("b = {}\n", body.join(" ")));
    }
    if let Some(dim) = config.problem.dim {
        s.push_str(&format!("dim = {dim}\n"));
    }
    if let Some(seed) = config.problem.seed {
        s.push_str(&format!("seed = {seed}\n"));
    }
    if let Some(v) = config.problem.eig_min {
        s.push_str(&format!("eig_min = {v}\n"));
    }
    if let Some(v) = config.problem.eig_max {
        s.push_str(&format!("eig_max = {v}\n"));
    }

    s.push_str("\n[optimizer]\n");
    s.push_str(&format!(
        "variant = {}\n",
        config.optimizer.variant.as_str()
    ));
    s.push_str(&format!(
        "stepsize = {}\n",
        schedule_to_string(&config.optimizer.stepsize)
    ));
    if let Some(r) = &config.optimizer.radius {
        s.push_str(&format!("radius = {}\n", schedule_to_string(r)));
    }
    if let Some(e) = &config.optimizer.error {
        s.push_str(&format!("error = {}\n", schedule_to_string(e)));
    }
    for (name, v) in [
        ("nu", config.optimizer.nu),
        ("theta", config.optimizer.theta),
        ("sigma", config.optimizer.sigma),
        ("lambda", config.optimizer.lambda),
    ] {
        if let Some(v) = v {
            s.push_str(&format!("{name} = {v}\n"));
        }
    }
    s.push_str(&format!("seed = {}\n", config.optimizer.seed));
    if let Some(v) = config.optimizer.grad_zero_tol {
        s.push_str(&format!("grad_zero_tol = {v}\n"));
    }
    if config.optimizer.igd_noise == IgdNoiseKind::Backstep {
        s.push_str("igd_noise = backstep\n");
    }
    if let Some(v) = config.optimizer.backstep_rho {
        s.push_str(&format!("backstep_rho = {v}\n"));
    }

    s.push_str("\n[run]\n");
    s.push_str(&format!("x1 = {}\n", x1_to_string(&config.run.x1)));
    s.push_str(&format!("horizon = {}\n", config.run.horizon));
    if let Some(thin) = config.run.thin {
        s.push_str(&format!("thin = {thin}\n"));
    }
    s.push_str(&format!("tol_grad = {}\n", config.run.tol_grad));
    s.push_str(&format!("tol_cauchy = {}\n", config.run.tol_cauchy));
    if let Some(fit) = config.run.fit {
        s.push_str(&format!("fit = {}\n", fit.as_str()));
        s.push_str(&format!("fit_window = {}\n", config.run.fit_window));
        s.push_str(&format!(
            "fit_model = {}\n",
            match config.run.fit_model {
                RateModel::Linear => "linear",
                RateModel::Power => "power",
            }
        ));
    }
    if let Some(cert) = config.run.certificate {
        s.push_str(&format!(
            "certificate = {}\n",
            match cert {
                CertificateKind::Example1 => "example1",
                CertificateKind::Example2 => "example2",
            }
        ));
    }

    s.push_str("\n[output]\n");
    if let Some(dir) = &config.output.dir {
        s.push_str(&format!("dir = {dir}\n"));
    }
    s.push_str(&format!("csv = {}\n", config.output.csv));
    s.push_str(&format!("svg = {}\n", config.output.svg));

    for cell in &config.cells {
        s.push_str("\n[cell]\n");
        s.push_str(&format!("label = {}\n", cell.label));
        for (k, v) in &cell.overrides {
            s.push_str(&format!("{k} = {v}\n"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# quadratic trap demo
[problem]
kind = quadratic
a = 1 0 ; 0 2
b = 0 0

[optimizer]
variant = sam
stepsize = constant 0.8
radius = constant 0.1
seed = 1

[run]
x1 = minimizer + 0.2 0
horizon = 10000
certificate = example1

[output]
csv = true
svg = false
";

    #[test]
    fn parses_sample() {
        let c = parse_config(SAMPLE).unwrap();
        assert_eq!(c.problem.kind, ProblemKind::Quadratic);
        assert_eq!(c.problem.a.as_ref().unwrap()[1][1], 2.0);
        assert_eq!(c.optimizer.variant, Variant::Sam);
        assert_eq!(c.optimizer.stepsize, ScheduleFamily::Constant(0.8));
        assert_eq!(c.run.horizon, 10_000);
        assert_eq!(c.run.x1, X1Rule::MinimizerPlus(vec![0.2, 0.0]));
        assert_eq!(c.run.certificate, Some(CertificateKind::Example1));
        assert!(!c.output.svg);
    }

    #[test]
    fn round_trip_is_identity() {
        let c = parse_config(SAMPLE).unwrap();
        let text = serialize_config(&c);
        let c2 = parse_config(&text).unwrap();
        assert_eq!(c, c2);
        assert_eq!(text, serialize_config(&c2));
    }

    #[test]
    fn unknown_key_named_in_error() {
        let bad = SAMPLE.replace("radius = constant 0.1", "radius_typo = constant 0.1");
        match parse_config(&bad) {
            Err(ConfigError::UnknownKey { key }) => assert_eq!(key, "optimizer.radius_typo"),
            other => panic!("expected UnknownKey, got {other:?}"),
        }
    }

    #[test]
    fn missing_required_key_named() {
        let bad = SAMPLE.replace("horizon = 10000", "");
        match parse_config(&bad) {
            Err(ConfigError::MissingKey { key }) => assert_eq!(key, "run.horizon"),
            other => panic!("expected MissingKey, got {other:?}"),
        }
    }

    #[test]
    fn scientific_notation_accepted() {
        let text = SAMPLE.replace("stepsize = constant 0.8", "stepsize = constant 8e-1");
        let c = parse_config(&text).unwrap();
        assert_eq!(c.optimizer.stepsize, ScheduleFamily::Constant(0.8));
    }

    #[test]
    fn duplicate_key_rejected() {
        let bad = SAMPLE.replace("seed = 1", "seed = 1\nseed = 2");
        assert!(matches!(parse_config(&bad), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn cells_parse_with_overrides() {
        let text = format!(
            "{SAMPLE}\n[cell]\nlabel = a\noptimizer.variant = gd\n\n[cell]\nlabel = b\nrun.horizon = 50\n"
        );
        let c = parse_config(&text).unwrap();
        assert_eq!(c.cells.len(), 2);
        assert_eq!(c.cells[0].label, "a");
        assert_eq!(
            c.cells[0].overrides,
            vec![("optimizer.variant".to_string(), "gd".to_string())]
        );
        let rt = parse_config(&serialize_config(&c)).unwrap();
        assert_eq!(c, rt);
    }

    #[test]
    fn bad_override_key_rejected_at_parse() {
        let text = format!("{SAMPLE}\n[cell]\nlabel = a\noptimizer.bogus = 1\n");
        match parse_config(&text) {
            Err(ConfigError::UnknownKey { key }) => assert_eq!(key, "optimizer.bogus"),
            other => panic!("expected UnknownKey, got {other:?}"),
        }
    }

    #[test]
    fn schedule_grammar_round_trips() {
        for text in [
            "constant 0.5",
            "harmonic 0.1",
            "harmonic 0.5 1",
            "powerlaw 0.1 0.001",
            "epochlog 0.1",
            "square-spike 0.1 1",
            "custom 0.3 0.2 0.1",
        ] {
            let fam = parse_schedule("k", text).unwrap();
            assert_eq!(schedule_to_string(&fam), text);
        }
    }
}
