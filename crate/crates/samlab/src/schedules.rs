//! Stepsize, radius, and error sequences with summability diagnostics.
//!
//! The convergence theorems in this lab all hinge on conditions like
//! Σt_k = ∞, Σt_k² < ∞, Σt_kρ_k < ∞ or limsup ρ_k < 2/L. None of these can
//! be *proved* on a finite prefix, so the diagnostics here are explicit
//! numerical certificates: divergence is certified by partial sums still
//! growing between K and 10K, summability by a vanishing tail over the
//! window (K/2, K]. The tolerances are documented constants, not claims
//! about limits.

/// Heuristic divergence certificate: S(10K) − S(K) must exceed this.
pub const DIVERGENCE_TOL: f64 = 0.1;
/// Tail-Cauchy summability certificate: Σ over (K/2, K] must fall below this.
pub const TAIL_CAUCHY_TOL: f64 = 1e-2;
/// Empirical "t_k ↓ 0" certificate: monotone and t_K ≤ t_1/100.
pub const VANISHING_RATIO: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleFamily {
    /// c for every k.
    Constant(f64),
    /// c/(k + shift); shift 0 is the plain harmonic sequence.
    Harmonic { c: f64, shift: u64 },
    /// c/k^p.
    PowerLaw { c: f64, p: f64 },
    /// c/(m·ln m) with m = ⌊k/5⌋ + 2.
    EpochLog(f64),
    /// c at perfect-square indices, c/k^p elsewhere.
    PerfectSquareSpike { c: f64, p: f64 },
    /// Explicit values; indices past the end repeat the final entry.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleRole {
    Stepsize,
    Radius,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleSpec {
    pub family: ScheduleFamily,
    pub role: ScheduleRole,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScheduleError {
    #[error("schedule index k = 0 rejected; sequences start at k = 1")]
    ZeroIndex,
    #[error("invalid schedule: {0}")]
    Invalid(String),
    #[error("q must lie in (0,1), got {0}")]
    InvalidExponent(f64),
}

impl ScheduleSpec {
    pub fn new(family: ScheduleFamily, role: ScheduleRole) -> Result<Self, ScheduleError> {
        let ok = match &family {
            ScheduleFamily::Constant(c) => *c >= 0.0 && c.is_finite(),
            ScheduleFamily::Harmonic { c, .. } => *c >= 0.0 && c.is_finite(),
            ScheduleFamily::PowerLaw { c, p } => *c >= 0.0 && c.is_finite() && p.is_finite(),
            ScheduleFamily::EpochLog(c) => *c >= 0.0 && c.is_finite(),
            ScheduleFamily::PerfectSquareSpike { c, p } => {
                *c >= 0.0 && c.is_finite() && p.is_finite()
            }
            ScheduleFamily::Custom(values) => {
                !values.is_empty() && values.iter().all(|v| *v >= 0.0 && v.is_finite())
            }
        };
        if !ok {
            return Err(ScheduleError::Invalid(format!(
                "values must be nonnegative and finite: {family:?}"
            )));
        }
        Ok(Self { family, role })
    }

    pub fn stepsize(family: ScheduleFamily) -> Result<Self, ScheduleError> {
        Self::new(family, ScheduleRole::Stepsize)
    }

    pub fn radius(family: ScheduleFamily) -> Result<Self, ScheduleError> {
        Self::new(family, ScheduleRole::Radius)
    }

    pub fn error(family: ScheduleFamily) -> Result<Self, ScheduleError> {
        Self::new(family, ScheduleRole::Error)
    }

    /// k-th value of the sequence, k ≥ 1. Pure and deterministic.
    pub fn value(&self, k: u64) -> Result<f64, ScheduleError> {
        if k == 0 {
            return Err(ScheduleError::ZeroIndex);
        }
        Ok(match &self.family {
            ScheduleFamily::Constant(c) => *c,
            ScheduleFamily::Harmonic { c, shift } => c / (k + shift) as f64,
            ScheduleFamily::PowerLaw { c, p } => c / (k as f64).powf(*p),
            ScheduleFamily::EpochLog(c) => {
                let m = (k / 5 + 2) as f64;
                c / (m * m.ln())
            }
            ScheduleFamily::PerfectSquareSpike { c, p } => {
                if k.isqrt() * k.isqrt() == k {
                    *c
                } else {
                    c / (k as f64).powf(*p)
                }
            }
            ScheduleFamily::Custom(values) => {
                let idx = ((k - 1) as usize).min(values.len() - 1);
                values[idx]
            }
        })
    }
}

/// eval_schedule(spec, k): the k-th sequence value; k = 0 is rejected.
pub fn eval_schedule(spec: &ScheduleSpec, k: u64) -> Result<f64, ScheduleError> {
    spec.value(k)
}

/// Partial-sum and tail statistics of a sequence (and optionally a product
/// with a companion sequence) over 1..=horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesDiagnostics {
    pub horizon: u64,
    /// Σ_{k≤K} t_k
    pub partial_sum: f64,
    /// Σ_{k≤K} t_k²
    pub partial_sum_sq: f64,
    /// Σ_{k≤K} t_k·o_k when a companion is given, else 0
    pub partial_sum_product: f64,
    /// Σ_{K/2<k≤K} t_k²
    pub tail_sum_sq: f64,
    /// Σ_{K/2<k≤K} t_k·o_k
    pub tail_sum_product: f64,
    /// max over K/2 ≤ k ≤ K of o_k (of t_k itself when no companion)
    pub tail_sup: f64,
    /// t nonincreasing over the whole prefix
    pub monotone_decreasing: bool,
}

impl SeriesDiagnostics {
    pub fn sq_tail_cauchy(&self) -> bool {
        self.tail_sum_sq < TAIL_CAUCHY_TOL
    }

    pub fn product_tail_cauchy(&self) -> bool {
        self.tail_sum_product < TAIL_CAUCHY_TOL
    }
}

/// Scans t (and optionally a companion sequence) up to `horizon`.
pub fn diagnose_series(
    t: &ScheduleSpec,
    other: Option<&ScheduleSpec>,
    horizon: u64,
) -> Result<SeriesDiagnostics, ScheduleError> {
    if horizon < 1 {
        return Err(ScheduleError::Invalid("horizon must be >= 1".into()));
    }
    let half = horizon / 2;
    let mut d = SeriesDiagnostics {
        horizon,
        partial_sum: 0.0,
        partial_sum_sq: 0.0,
        partial_sum_product: 0.0,
        tail_sum_sq: 0.0,
        tail_sum_product: 0.0,
        tail_sup: f64::NEG_INFINITY,
        monotone_decreasing: true,
    };
    let mut prev = f64::INFINITY;
    for k in 1..=horizon {
        let tk = t.value(k)?;
        if tk > prev {
            d.monotone_decreasing = false;
        }
        prev = tk;
        let ok = match other {
            Some(o) => o.value(k)?,
            None => tk,
        };
        d.partial_sum += tk;
        d.partial_sum_sq += tk * tk;
        if other.is_some() {
            d.partial_sum_product += tk * ok;
        }
        if k > half {
            d.tail_sum_sq += tk * tk;
            if other.is_some() {
                d.tail_sum_product += tk * ok;
            }
        }
        if k >= half.max(1) {
            d.tail_sup = d.tail_sup.max(ok);
        }
    }
    Ok(d)
}

/// Divergence certificate for Σt_k: partial sums at K and 10K.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceCertificate {
    pub sum_at_horizon: f64,
    pub sum_at_10x_horizon: f64,
    pub passed: bool,
}

/// The sum cannot be proven divergent numerically; this certifies that the
/// partial sums still grow by more than [`DIVERGENCE_TOL`] between K and 10K,
/// which catches condition mix-ups in configs.
pub fn divergence_certificate(
    t: &ScheduleSpec,
    horizon: u64,
) -> Result<DivergenceCertificate, ScheduleError> {
    if horizon < 1 {
        return Err(ScheduleError::Invalid("horizon must be >= 1".into()));
    }
    let mut sum = 0.0;
    let mut sum_at_horizon = 0.0;
    for k in 1..=(10 * horizon) {
        sum += t.value(k)?;
        if k == horizon {
            sum_at_horizon = sum;
        }
    }
    Ok(DivergenceCertificate {
        sum_at_horizon,
        sum_at_10x_horizon: sum,
        passed: sum - sum_at_horizon > DIVERGENCE_TOL,
    })
}

/// Empirical t_k ↓ 0 certificate: nonincreasing and t_K ≤ t_1/100.
pub fn vanishing_certificate(t: &ScheduleSpec, horizon: u64) -> Result<bool, ScheduleError> {
    let d = diagnose_series(t, None, horizon)?;
    let first = t.value(1)?;
    let last = t.value(horizon)?;
    Ok(d.monotone_decreasing && last <= VANISHING_RATIO * first.max(f64::MIN_POSITIVE))
}

/// Asymptotic decay of a named family: values ~ c/(k^exponent · ln^log_power k).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Decay {
    c: f64,
    exponent: f64,
    log_power: f64,
}

impl Decay {
    fn product(self, other: Decay) -> Decay {
        Decay {
            c: self.c * other.c,
            exponent: self.exponent + other.exponent,
            log_power: self.log_power + other.log_power,
        }
    }

    /// Bertrand series test for Σ c/(k^e · ln^l k).
    fn summable(self) -> bool {
        if self.c == 0.0 {
            return true;
        }
        if self.exponent > 1.0 {
            true
        } else if self.exponent < 1.0 {
            false
        } else {
            self.log_power > 1.0
        }
    }
}

fn family_decay(family: &ScheduleFamily) -> Option<Decay> {
    Some(match family {
        ScheduleFamily::Constant(c) => Decay {
            c: *c,
            exponent: 0.0,
            log_power: 0.0,
        },
        ScheduleFamily::Harmonic { c, .. } => Decay {
            c: *c,
            exponent: 1.0,
            log_power: 0.0,
        },
        ScheduleFamily::PowerLaw { c, p } => Decay {
            c: *c,
            exponent: *p,
            log_power: 0.0,
        },
        ScheduleFamily::EpochLog(c) => Decay {
            c: *c,
            exponent: 1.0,
            log_power: 1.0,
        },
        ScheduleFamily::PerfectSquareSpike { .. } | ScheduleFamily::Custom(_) => return None,
    })
}

/// Analytic verdict on the convergence of a series, where the family
/// combination admits one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SummabilityVerdict {
    Summable(String),
    Divergent(String),
    Unknown,
}

fn verdict_from_decay(d: Decay) -> SummabilityVerdict {
    let desc = format!(
        "~ {:.3e}/k^{}{}",
        d.c,
        d.exponent,
        if d.log_power > 0.0 {
            format!("·ln^{}k", d.log_power)
        } else {
            String::new()
        }
    );
    if d.summable() {
        SummabilityVerdict::Summable(desc)
    } else {
        SummabilityVerdict::Divergent(desc)
    }
}

/// Analytic verdict for Σ t_k².
pub fn square_summability_analytic(t: &ScheduleSpec) -> SummabilityVerdict {
    match family_decay(&t.family) {
        Some(d) => verdict_from_decay(d.product(d)),
        None => SummabilityVerdict::Unknown,
    }
}

/// Analytic verdict for Σ t_k·o_k. A perfect-square spike factor splits the
/// series into its spike part (the partner sampled at squares, which steps
/// k = j² twice as fast) and its power-law remainder.
pub fn product_summability_analytic(t: &ScheduleSpec, other: &ScheduleSpec) -> SummabilityVerdict {
    match (
        family_decay(&t.family),
        family_decay(&other.family),
        &t.family,
        &other.family,
    ) {
        (Some(dt), Some(do_), _, _) => verdict_from_decay(dt.product(do_)),
        (Some(dt), None, _, ScheduleFamily::PerfectSquareSpike { c, p })
        | (None, Some(dt), ScheduleFamily::PerfectSquareSpike { c, p }, _) => {
            // spike part: Σ_j partner(j²)·C, decay exponent doubles
            let at_squares = Decay {
                c: dt.c * c,
                exponent: 2.0 * dt.exponent,
                log_power: dt.log_power,
            };
            // off-square part: partner times C/k^p
            let off_squares = dt.product(Decay {
                c: *c,
                exponent: *p,
                log_power: 0.0,
            });
            if at_squares.summable() && off_squares.summable() {
                SummabilityVerdict::Summable(format!(
                    "spike split: squares ~ 1/j^{}, rest ~ 1/k^{}",
                    at_squares.exponent, off_squares.exponent
                ))
            } else {
                SummabilityVerdict::Divergent("spike split has a divergent part".into())
            }
        }
        _ => SummabilityVerdict::Unknown,
    }
}

/// Diagnostics for the KL summability condition
/// Σ_k t_k · (φ′(Σ_{i≥k} t_iε_i))⁻¹ < ∞ with φ(t) = M·t^(1−q),
/// i.e. (φ′(s))⁻¹ = s^q / (M(1−q)).
#[derive(Debug, Clone, PartialEq)]
pub struct DesingularizingReport {
    pub horizon: u64,
    /// t_k·(φ′(s_k))⁻¹ for k = 1..=K
    pub summands: Vec<f64>,
    pub partial_sum: f64,
    /// Σ over (K/2, K] of the summands
    pub tail_sum: f64,
    /// analytic bound added to every inner tail Σ_{i>K} t_iε_i
    pub inner_tail_bound: f64,
    /// Σ t_kε_k itself failed its summability certificate
    pub inner_series_diverges: bool,
    /// overall verdict: inner series summable and summand tail Cauchy
    pub condition_holds: bool,
}

/// Evaluates the condition numerically up to `horizon`. Inner tails are
/// truncated at the horizon; for t harmonic (unshifted) with power-law ε the
/// products are c/k^(1+p) and the truncation is padded with the analytic
/// bound Σ_{i>K} c/i^(1+p) ≤ c/(p·K^p); otherwise the truncated tail is used
/// as-is (an underestimate, reported via `inner_tail_bound` = 0).
pub fn check_desingularizing_condition(
    t: &ScheduleSpec,
    eps: &ScheduleSpec,
    m: f64,
    q: f64,
    horizon: u64,
) -> Result<DesingularizingReport, ScheduleError> {
    if !(0.0 < q && q < 1.0) {
        return Err(ScheduleError::InvalidExponent(q));
    }
    if m <= 0.0 {
        return Err(ScheduleError::Invalid(format!(
            "M must be positive, got {m}"
        )));
    }
    if horizon < 2 {
        return Err(ScheduleError::Invalid("horizon must be >= 2".into()));
    }
    let inner_tail_bound = match (&t.family, &eps.family) {
        (ScheduleFamily::Harmonic { c: ct, shift: 0 }, ScheduleFamily::PowerLaw { c: ce, p })
            if *p > 0.0 =>
        {
            ct * ce / (p * (horizon as f64).powf(*p))
        }
        _ => 0.0,
    };

    // suffix sums of t_k·ε_k, padded with the analytic tail bound
    let mut products = Vec::with_capacity(horizon as usize);
    for k in 1..=horizon {
        products.push(t.value(k)? * eps.value(k)?);
    }
    let mut suffix = vec![0.0; horizon as usize + 1];
    suffix[horizon as usize] = inner_tail_bound;
    for k in (0..horizon as usize).rev() {
        suffix[k] = suffix[k + 1] + products[k];
    }

    let phi_prime_inv = |s: f64| s.powf(q) / (m * (1.0 - q));
    let mut summands = Vec::with_capacity(horizon as usize);
    let mut partial_sum = 0.0;
    let mut tail_sum = 0.0;
    let half = horizon / 2;
    for k in 1..=horizon {
        let summand = t.value(k)? * phi_prime_inv(suffix[(k - 1) as usize]);
        partial_sum += summand;
        if k > half {
            tail_sum += summand;
        }
        summands.push(summand);
    }

    // the whole condition is vacuous if Σ t_kε_k itself diverges
    let inner_tail: f64 = products[(half as usize)..].iter().sum();
    let inner_series_diverges = inner_tail >= TAIL_CAUCHY_TOL;

    Ok(DesingularizingReport {
        horizon,
        summands,
        partial_sum,
        tail_sum,
        inner_tail_bound,
        inner_series_diverges,
        condition_holds: !inner_series_diverges && tail_sum < TAIL_CAUCHY_TOL,
    })
}

/// Grid check that the desingularizing function φ(t) = M·t^(1−q) satisfies
/// the subadditivity assumption with C = 1, i.e. (x+y)^q ≤ x^q + y^q for
/// x, y in (0, η).
pub fn check_desingularizing_subadditivity(
    m: f64,
    q: f64,
    eta: f64,
    grid: usize,
) -> Result<bool, ScheduleError> {
    if !(0.0 < q && q < 1.0) {
        return Err(ScheduleError::InvalidExponent(q));
    }
    let phi_prime_inv = |s: f64| s.powf(q) / (m * (1.0 - q));
    for i in 1..=grid {
        let x = eta * i as f64 / (grid as f64 + 1.0);
        for j in 1..=grid {
            let y = eta * j as f64 / (grid as f64 + 1.0);
            if phi_prime_inv(x + y) > phi_prime_inv(x) + phi_prime_inv(y) + 1e-12 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The three named diminishing stepsize families with initial value η₁:
/// η₁/k, η₁/k^0.5001, and η₁/(m·ln m) with m = ⌊k/5⌋ + 2.
pub fn diminish(index: u8, eta1: f64) -> Result<ScheduleSpec, ScheduleError> {
    let family = match index {
        1 => ScheduleFamily::Harmonic { c: eta1, shift: 0 },
        2 => ScheduleFamily::PowerLaw { c: eta1, p: 0.5001 },
        3 => ScheduleFamily::EpochLog(eta1),
        other => {
            return Err(ScheduleError::Invalid(format!(
                "diminish index must be 1, 2 or 3, got {other}"
            )))
        }
    };
    ScheduleSpec::stepsize(family)
}
