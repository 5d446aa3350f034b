//! One-step update rules for the nine algorithm variants and the
//! deterministic iteration runner.
//!
//! All variants share the shape x^{k+1} = x^k − t_k·g^k and differ only in
//! how the inexact gradient g^k is produced:
//!
//! * GD        g = ∇f(x)
//! * SAM       g = ∇f(x + ρ·∇f(x)/‖∇f(x)‖)
//! * USAM      g = ∇f(x + ρ·∇f(x))
//! * EG        g = ∇f(x − ρ·∇f(x))
//! * RSAM      g = ∇f(x + ρ·d/‖d‖), d = Δ + λ·∇f(x+Δ), Δ random
//! * VaSSO     g = ∇f(x + ρ·d/‖d‖), d^k = (1−θ)d^{k−1} + θ∇f(x)
//! * F-SAM     g = ∇f(x + ρ·d/‖d‖), d = ∇f(x) − σ·m^k, m^k averaged
//! * IGD       g = ∇f(x) + η·u with η ≤ ε_k
//! * IGDr      g = ∇f(x) + η·u with η ≤ ν‖∇f(x)‖
//!
//! Reductions (VaSSO θ=1, F-SAM σ=0, IGDr ν=0, EG(ρ) = USAM(−ρ)) are
//! bit-exact because every variant funnels through the same shared helpers.

use crate::linalg::{axpy, distance, norm};
use crate::problems::Problem;
use crate::rng::Xoshiro256StarStar;
use crate::schedules::{ScheduleError, ScheduleSpec};

pub const DEFAULT_GRAD_ZERO_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Gd,
    Sam,
    Usam,
    Eg,
    Rsam,
    Vasso,
    Fsam,
    Igd,
    Igdr,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Gd => "gd",
            Variant::Sam => "sam",
            Variant::Usam => "usam",
            Variant::Eg => "eg",
            Variant::Rsam => "rsam",
            Variant::Vasso => "vasso",
            Variant::Fsam => "fsam",
            Variant::Igd => "igd",
            Variant::Igdr => "igdr",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        Some(match s {
            "gd" => Variant::Gd,
            "sam" => Variant::Sam,
            "usam" => Variant::Usam,
            "eg" => Variant::Eg,
            "rsam" => Variant::Rsam,
            "vasso" => Variant::Vasso,
            "fsam" => Variant::Fsam,
            "igd" => Variant::Igd,
            "igdr" => Variant::Igdr,
            _ => return None,
        })
    }

    fn needs_radius(&self) -> bool {
        matches!(
            self,
            Variant::Sam
                | Variant::Usam
                | Variant::Eg
                | Variant::Rsam
                | Variant::Vasso
                | Variant::Fsam
        )
    }
}

/// How IGD picks its gradient perturbation.
#[derive(Debug, Clone, PartialEq)]
pub enum IgdNoise {
    /// Fresh uniform random unit direction, magnitude uniform in [0, ε_k].
    RandomUnit,
    /// Deterministic counterexample mode: g = ∇f(x − ρ·∇f(x)/‖∇f(x)‖),
    /// a constant-error oracle with ‖g − ∇f(x)‖ ≤ L·ρ.
    Backstep { rho: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerSpec {
    pub variant: Variant,
    pub stepsize: ScheduleSpec,
    pub radius: Option<ScheduleSpec>,
    pub error: Option<ScheduleSpec>,
    pub nu: Option<f64>,
    pub theta: Option<f64>,
    pub sigma: Option<f64>,
    pub lambda: Option<f64>,
    pub rng_seed: u64,
    pub grad_zero_tol: f64,
    pub igd_noise: IgdNoise,
}

impl OptimizerSpec {
    pub fn new(variant: Variant, stepsize: ScheduleSpec) -> Self {
        Self {
            variant,
            stepsize,
            radius: None,
            error: None,
            nu: None,
            theta: None,
            sigma: None,
            lambda: None,
            rng_seed: 0,
            grad_zero_tol: DEFAULT_GRAD_ZERO_TOL,
            igd_noise: IgdNoise::RandomUnit,
        }
    }

    pub fn with_radius(mut self, radius: ScheduleSpec) -> Self {
        self.radius = Some(radius);
        self
    }

    pub fn with_error(mut self, error: ScheduleSpec) -> Self {
        self.error = Some(error);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), OptimizerError> {
        let missing = |field: &str| OptimizerError::MissingField {
            variant: self.variant,
            field: field.to_string(),
        };
        if self.variant.needs_radius() && self.radius.is_none() {
            return Err(missing("radius"));
        }
        if self.variant == Variant::Igd && self.error.is_none() {
            return Err(missing("error"));
        }
        if self.variant == Variant::Igdr {
            match self.nu {
                None => return Err(missing("nu")),
                Some(nu) if !(0.0..1.0).contains(&nu) => {
                    return Err(OptimizerError::InvalidField {
                        field: "nu".into(),
                        reason: format!("must lie in [0,1), got {nu}"),
                    })
                }
                _ => {}
            }
        }
        if matches!(self.variant, Variant::Vasso | Variant::Fsam) {
            match self.theta {
                None => return Err(missing("theta")),
                Some(theta) if !(theta > 0.0 && theta <= 1.0) => {
                    return Err(OptimizerError::InvalidField {
                        field: "theta".into(),
                        reason: format!("must lie in (0,1], got {theta}"),
                    })
                }
                _ => {}
            }
        }
        if self.variant == Variant::Fsam && self.sigma.is_none() {
            return Err(missing("sigma"));
        }
        if !(self.grad_zero_tol > 0.0 && self.grad_zero_tol.is_finite()) {
            return Err(OptimizerError::InvalidField {
                field: "grad_zero_tol".into(),
                reason: "must be positive and finite".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OptimizerError {
    #[error("{variant:?} requires optimizer.{field}")]
    MissingField { variant: Variant, field: String },
    #[error("optimizer.{field} invalid: {reason}")]
    InvalidField { field: String, reason: String },
    #[error("gradient is numerically zero (stationary point)")]
    StationaryPoint,
    #[error("perturbation direction is numerically zero")]
    ZeroDirection,
    #[error("x1 has dimension {got}, problem expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

fn stationary_threshold(tol: f64, x: &[f64]) -> f64 {
    // tolerance is relative to ‖x‖ + 1
    tol * (1.0 + norm(x))
}

/// x + (ρ/‖d‖)·d followed by a gradient evaluation there. Shared by every
/// normalized variant so that their reductions agree bit for bit.
fn normalized_probe_grad(problem: &Problem, x: &[f64], rho: f64, d: &[f64]) -> Vec<f64> {
    let dn = norm(d);
    let probe = axpy(x, rho / dn, d);
    problem.eval_grad(&probe)
}

fn unnormalized_probe_grad(
    problem: &Problem,
    x: &[f64],
    signed_rho: f64,
    grad: &[f64],
) -> Vec<f64> {
    let probe = axpy(x, signed_rho, grad);
    problem.eval_grad(&probe)
}

/// One SAM step: x − t·∇f(x + ρ·∇f(x)/‖∇f(x)‖).
/// Exactly two gradient evaluations; signals a stationary point instead of
/// dividing by a vanishing gradient norm.
pub fn step_sam(
    problem: &Problem,
    x: &[f64],
    t: f64,
    rho: f64,
) -> Result<Vec<f64>, OptimizerError> {
    let grad = problem.eval_grad(x);
    if norm(&grad) <= stationary_threshold(DEFAULT_GRAD_ZERO_TOL, x) {
        return Err(OptimizerError::StationaryPoint);
    }
    let out = step_general_normalized(problem, x, t, rho, &grad)?;
    Ok(out.next)
}

/// Result of one normalized-framework step.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedStep {
    pub next: Vec<f64>,
    /// the gradient actually used, g = ∇f(x + ρ·d/‖d‖)
    pub g: Vec<f64>,
}

/// One step of the general normalized framework with direction d:
/// x − t·∇f(x + ρ·d/‖d‖). SAM is the special case d = ∇f(x).
pub fn step_general_normalized(
    problem: &Problem,
    x: &[f64],
    t: f64,
    rho: f64,
    d: &[f64],
) -> Result<NormalizedStep, OptimizerError> {
    if norm(d) <= stationary_threshold(DEFAULT_GRAD_ZERO_TOL, x) {
        return Err(OptimizerError::ZeroDirection);
    }
    let g = normalized_probe_grad(problem, x, rho, d);
    let next = axpy(x, -t, &g);
    Ok(NormalizedStep { next, g })
}

/// RSAM with an explicit perturbation vector Δ (the deterministic core and
/// test hook). Falls back to an unperturbed gradient step when Δ + λg
/// degenerates.
pub fn step_rsam_with_delta(
    problem: &Problem,
    x: &[f64],
    t: f64,
    rho: f64,
    lambda: f64,
    delta: &[f64],
) -> Vec<f64> {
    let g_probe = problem.eval_grad(&axpy(x, 1.0, delta));
    let d = axpy(delta, lambda, &g_probe);
    match step_general_normalized(problem, x, t, rho, &d) {
        Ok(step) => step.next,
        Err(_) => {
            let grad = problem.eval_grad(x);
            axpy(x, -t, &grad)
        }
    }
}

/// RSAM drawing Δ ~ N(0, (ρ/√n)²·I) from the supplied generator.
pub fn step_rsam(
    problem: &Problem,
    x: &[f64],
    t: f64,
    rho: f64,
    lambda: f64,
    rng: &mut Xoshiro256StarStar,
) -> Vec<f64> {
    let delta = draw_rsam_delta(problem.dim(), rho, rng);
    step_rsam_with_delta(problem, x, t, rho, lambda, &delta)
}

fn draw_rsam_delta(n: usize, rho: f64, rng: &mut Xoshiro256StarStar) -> Vec<f64> {
    let sd = rho / (n as f64).sqrt();
    rng.gaussian_vector(n).iter().map(|z| sd * z).collect()
}

/// VaSSO step: d^k = (1−θ)d^{k−1} + θ∇f(x), then the normalized step.
/// Returns the next iterate together with the new direction state.
pub fn step_vasso(
    problem: &Problem,
    x: &[f64],
    t: f64,
    rho: f64,
    theta: f64,
    d_prev: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let grad = problem.eval_grad(x);
    let d: Vec<f64> = d_prev
        .iter()
        .zip(&grad)
        .map(|(dp, g)| (1.0 - theta) * dp + theta * g)
        .collect();
    let next = match step_general_normalized(problem, x, t, rho, &d) {
        Ok(step) => step.next,
        Err(_) => axpy(x, -t, &grad),
    };
    (next, d)
}

/// F-SAM step: m^k = (1−θ)m^{k−1} + θ∇f(x), d^k = ∇f(x) − σ·m^k.
/// d^k can vanish away from stationarity (e.g. σ = 1 under a constant
/// gradient); the step then degrades to plain gradient descent.
pub fn step_fsam(
    problem: &Problem,
    x: &[f64],
    t: f64,
    rho: f64,
    theta: f64,
    sigma: f64,
    m_prev: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let grad = problem.eval_grad(x);
    let m: Vec<f64> = m_prev
        .iter()
        .zip(&grad)
        .map(|(mp, g)| (1.0 - theta) * mp + theta * g)
        .collect();
    let d: Vec<f64> = grad.iter().zip(&m).map(|(g, mi)| g - sigma * mi).collect();
    let next = match step_general_normalized(problem, x, t, rho, &d) {
        Ok(step) => step.next,
        Err(_) => axpy(x, -t, &grad),
    };
    (next, m)
}

/// USAM step: x − t·∇f(x + ρ·∇f(x)). Well defined at stationary points.
pub fn step_usam(problem: &Problem, x: &[f64], t: f64, rho: f64) -> Vec<f64> {
    let grad = problem.eval_grad(x);
    let g = unnormalized_probe_grad(problem, x, rho, &grad);
    axpy(x, -t, &g)
}

/// Extragradient step: x − t·∇f(x − ρ·∇f(x)); identical to USAM with the
/// radius negated.
pub fn step_eg(problem: &Problem, x: &[f64], t: f64, rho: f64) -> Vec<f64> {
    let grad = problem.eval_grad(x);
    let g = unnormalized_probe_grad(problem, x, -rho, &grad);
    axpy(x, -t, &g)
}

/// IGD step with g = ∇f(x) + η·u, η uniform in [0, eps]. Returns the next
/// iterate and the realized inexactness ‖g − ∇f(x)‖.
pub fn step_igd(
    problem: &Problem,
    x: &[f64],
    t: f64,
    eps: f64,
    noise_direction: &[f64],
    rng: &mut Xoshiro256StarStar,
) -> (Vec<f64>, f64) {
    let grad = problem.eval_grad(x);
    let eta = rng.next_f64() * eps;
    let g = axpy(&grad, eta, noise_direction);
    (axpy(x, -t, &g), distance(&g, &grad))
}

/// Deterministic counterexample oracle: g = ∇f(x − ρ·∇f(x)/‖∇f(x)‖).
pub fn step_igd_backstep(
    problem: &Problem,
    x: &[f64],
    t: f64,
    rho: f64,
) -> Result<(Vec<f64>, f64), OptimizerError> {
    let grad = problem.eval_grad(x);
    let gn = norm(&grad);
    if gn <= stationary_threshold(DEFAULT_GRAD_ZERO_TOL, x) {
        return Err(OptimizerError::StationaryPoint);
    }
    let g = normalized_probe_grad(problem, x, -rho, &grad);
    Ok((axpy(x, -t, &g), distance(&g, &grad)))
}

/// IGDr step with relative error: g = ∇f(x) + η·u, η uniform in
/// [0, ν‖∇f(x)‖], so (1−ν)‖∇f‖ ≤ ‖g‖ ≤ (1+ν)‖∇f‖.
pub fn step_igdr(
    problem: &Problem,
    x: &[f64],
    t: f64,
    nu: f64,
    noise_direction: &[f64],
    rng: &mut Xoshiro256StarStar,
) -> (Vec<f64>, f64) {
    let grad = problem.eval_grad(x);
    let eta = rng.next_f64() * nu * norm(&grad);
    let g = axpy(&grad, eta, noise_direction);
    (axpy(x, -t, &g), distance(&g, &grad))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationReason {
    Horizon,
    Stationary,
    NonFinite,
}

impl TerminationReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            TerminationReason::Horizon => "horizon",
            TerminationReason::Stationary => "stationary",
            TerminationReason::NonFinite => "nonfinite",
        }
    }
}

/// Per-iteration record. Fields f and grad_norm describe the iterate x^k
/// *before* the step; t, rho_or_eps, step_norm and inexactness describe the
/// step taken from it. The trailing record of a trace carries the final
/// iterate with zeroed step fields.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub k: u64,
    pub f: f64,
    pub grad_norm: f64,
    pub t: f64,
    pub rho_or_eps: f64,
    pub step_norm: f64,
    pub inexactness: f64,
    /// full iterate, stored every `thin` iterations (always for the final record)
    pub x: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub problem_name: String,
    pub spec: OptimizerSpec,
    pub records: Vec<TraceRecord>,
    pub final_x: Vec<f64>,
    pub terminated: TerminationReason,
    /// steps whose realized ‖g−∇f‖ exceeded the variant's theoretical bound
    pub inexactness_violations: u64,
}

impl Trace {
    pub fn final_record(&self) -> &TraceRecord {
        self.records.last().expect("traces are never empty")
    }

    pub fn min_grad_norm(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.grad_norm)
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum gradient norm over records with k ≤ upto.
    pub fn min_grad_norm_through(&self, upto: u64) -> f64 {
        self.records
            .iter()
            .filter(|r| r.k <= upto)
            .map(|r| r.grad_norm)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn bitwise_eq(&self, other: &Trace) -> bool {
        if self.records.len() != other.records.len() {
            return false;
        }
        let field_eq = |a: f64, b: f64| a.to_bits() == b.to_bits();
        let vec_eq = |a: &[f64], b: &[f64]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
        };
        self.records.iter().zip(&other.records).all(|(a, b)| {
            a.k == b.k
                && field_eq(a.f, b.f)
                && field_eq(a.grad_norm, b.grad_norm)
                && field_eq(a.t, b.t)
                && field_eq(a.rho_or_eps, b.rho_or_eps)
                && field_eq(a.step_norm, b.step_norm)
                && field_eq(a.inexactness, b.inexactness)
                && match (&a.x, &b.x) {
                    (Some(xa), Some(xb)) => vec_eq(xa, xb),
                    (None, None) => true,
                    _ => false,
                }
        }) && vec_eq(&self.final_x, &other.final_x)
            && self.terminated == other.terminated
    }
}

pub fn default_thin(dim: usize) -> u64 {
    if dim <= 100 {
        1
    } else {
        10
    }
}

/// Iterates the variant's step rule for k = 1..=horizon or until a
/// stationary point or nonfinite value stops it early. Fully deterministic
/// given the spec's rng_seed.
pub fn run(
    problem: &Problem,
    spec: &OptimizerSpec,
    x1: &[f64],
    horizon: u64,
) -> Result<Trace, OptimizerError> {
    run_thinned(problem, spec, x1, horizon, default_thin(problem.dim()))
}

pub fn run_thinned(
    problem: &Problem,
    spec: &OptimizerSpec,
    x1: &[f64],
    horizon: u64,
    thin: u64,
) -> Result<Trace, OptimizerError> {
    spec.validate()?;
    if x1.len() != problem.dim() {
        return Err(OptimizerError::DimensionMismatch {
            expected: problem.dim(),
            got: x1.len(),
        });
    }
    if horizon < 1 {
        return Err(OptimizerError::InvalidField {
            field: "horizon".into(),
            reason: "must be >= 1".into(),
        });
    }
    let thin = thin.max(1);
    let n = problem.dim();
    let lambda = spec.lambda.unwrap_or(1.0);
    let mut rng = Xoshiro256StarStar::seed_from_u64(spec.rng_seed);
    let mut x = x1.to_vec();
    let mut d_prev: Option<Vec<f64>> = None;
    let mut m_prev: Option<Vec<f64>> = None;
    let mut records: Vec<TraceRecord> = Vec::new();
    let mut violations = 0u64;
    let mut terminated = TerminationReason::Horizon;

    // the Lipschitz metadata itself is computed numerically, so the bound
    // check allows a small relative slack on top of it
    let lipschitz = problem.lipschitz_l;
    let bound_slack = |bound: f64| bound * (1.0 + 1e-6) + 1e-12;

    let mut k = 1u64;
    while k <= horizon {
        let f = problem.eval_f(&x);
        let grad = problem.eval_grad(&x);
        let gn = norm(&grad);
        if !f.is_finite() || !gn.is_finite() {
            terminated = TerminationReason::NonFinite;
            break;
        }
        if gn <= stationary_threshold(spec.grad_zero_tol, &x) {
            terminated = TerminationReason::Stationary;
            break;
        }
        let t = spec.stepsize.value(k)?;
        let rho = match &spec.radius {
            Some(r) => r.value(k)?,
            None => 0.0,
        };
        let eps = match &spec.error {
            Some(e) => e.value(k)?,
            None => 0.0,
        };

        // produce the inexact gradient for this variant
        let (g, rho_or_eps, bound): (Vec<f64>, f64, Option<f64>) = match spec.variant {
            Variant::Gd => (grad.clone(), 0.0, Some(0.0)),
            Variant::Sam => {
                let g = normalized_probe_grad(problem, &x, rho, &grad);
                (g, rho, lipschitz.map(|l| l * rho))
            }
            Variant::Vasso => {
                let theta = spec.theta.expect("validated");
                let dp = d_prev.get_or_insert_with(|| grad.clone());
                let d: Vec<f64> = dp
                    .iter()
                    .zip(&grad)
                    .map(|(dpi, gi)| (1.0 - theta) * dpi + theta * gi)
                    .collect();
                let g = if norm(&d) <= stationary_threshold(spec.grad_zero_tol, &x) {
                    grad.clone() // degenerate direction, fall back to plain GD
                } else {
                    normalized_probe_grad(problem, &x, rho, &d)
                };
                *dp = d;
                (g, rho, lipschitz.map(|l| l * rho))
            }
            Variant::Fsam => {
                let theta = spec.theta.expect("validated");
                let sigma = spec.sigma.expect("validated");
                let mp = m_prev.get_or_insert_with(|| grad.clone());
                let m: Vec<f64> = mp
                    .iter()
                    .zip(&grad)
                    .map(|(mpi, gi)| (1.0 - theta) * mpi + theta * gi)
                    .collect();
                let d: Vec<f64> = grad
                    .iter()
                    .zip(&m)
                    .map(|(gi, mi)| gi - sigma * mi)
                    .collect();
                let g = if norm(&d) <= stationary_threshold(spec.grad_zero_tol, &x) {
                    grad.clone()
                } else {
                    normalized_probe_grad(problem, &x, rho, &d)
                };
                *mp = m;
                (g, rho, lipschitz.map(|l| l * rho))
            }
            Variant::Rsam => {
                let delta = draw_rsam_delta(n, rho, &mut rng);
                let g_probe = problem.eval_grad(&axpy(&x, 1.0, &delta));
                let d = axpy(&delta, lambda, &g_probe);
                let g = if norm(&d) <= stationary_threshold(spec.grad_zero_tol, &x) {
                    grad.clone()
                } else {
                    normalized_probe_grad(problem, &x, rho, &d)
                };
                (g, rho, lipschitz.map(|l| l * rho))
            }
            Variant::Usam => {
                let g = unnormalized_probe_grad(problem, &x, rho, &grad);
                (g, rho, lipschitz.map(|l| l * rho * gn))
            }
            Variant::Eg => {
                let g = unnormalized_probe_grad(problem, &x, -rho, &grad);
                (g, rho, lipschitz.map(|l| l * rho * gn))
            }
            Variant::Igd => match &spec.igd_noise {
                IgdNoise::RandomUnit => {
                    let dir = rng.unit_vector(n);
                    let eta = rng.next_f64() * eps;
                    let g = axpy(&grad, eta, &dir);
                    (g, eps, Some(eps))
                }
                IgdNoise::Backstep { rho: bs_rho } => {
                    let g = normalized_probe_grad(problem, &x, -bs_rho, &grad);
                    (g, eps, Some(eps))
                }
            },
            Variant::Igdr => {
                let nu = spec.nu.expect("validated");
                let dir = rng.unit_vector(n);
                let eta = rng.next_f64() * nu * gn;
                let g = axpy(&grad, eta, &dir);
                (g, nu * gn, Some(nu * gn))
            }
        };

        let inexactness = distance(&g, &grad);
        if let Some(b) = bound {
            if inexactness > bound_slack(b) {
                violations += 1;
            }
        }
        let next = axpy(&x, -t, &g);
        records.push(TraceRecord {
            k,
            f,
            grad_norm: gn,
            t,
            rho_or_eps,
            step_norm: distance(&next, &x),
            inexactness,
            x: if (k - 1).is_multiple_of(thin) {
                Some(x.clone())
            } else {
                None
            },
        });
        x = next;
        k += 1;
    }

    // trailing record for the final iterate (or the offending one when a
    // nonfinite value stopped the run)
    let f = problem.eval_f(&x);
    let gn = norm(&problem.eval_grad(&x));
    if !f.is_finite() || !gn.is_finite() {
        terminated = TerminationReason::NonFinite;
    }
    records.push(TraceRecord {
        k,
        f,
        grad_norm: gn,
        t: 0.0,
        rho_or_eps: 0.0,
        step_norm: 0.0,
        inexactness: 0.0,
        x: Some(x.clone()),
    });

    Ok(Trace {
        problem_name: problem.name().to_string(),
        spec: spec.clone(),
        records,
        final_x: x,
        terminated,
        inexactness_violations: violations,
    })
}
