//! samlab: a deterministic desk-scale laboratory for sharpness-aware
//! minimization and inexact gradient descent.
//!
//! The crate builds analytic test problems, runs SAM and its variants (USAM,
//! extragradient, RSAM, VaSSO, F-SAM) plus the two inexact-gradient
//! abstractions (absolute-error IGD, relative-error IGDr) under named
//! stepsize/radius/error schedules, and checks the resulting traces against
//! the fundamental convergence properties, the quadratic-trap and
//! constant-error counterexamples, KL rate predictions, and the summability
//! hypotheses of the convergence theorems.
//!
//! Everything is seeded and single-threaded per run: identical configs
//! produce bit-identical traces.

pub mod analysis;
pub mod harness;
pub mod linalg;
pub mod optimizers;
pub mod problems;
pub mod rng;
pub mod schedules;

pub use analysis::{
    assess_convergence, audit_theorem_conditions, certify_example1, certify_example2, fit_rate,
    AnalysisError, AuditReport, ConvergenceReport, RateFit, RateModel, RateReference, TheoremTag,
};
pub use optimizers::{run, run_thinned, OptimizerError, OptimizerSpec, Trace, Variant};
pub use problems::{
    make_log_quadratic, make_quadratic, make_square_1d, random_log_quadratic, random_quadratic,
    Problem, ProblemError, QuadraticSpec,
};
pub use schedules::{
    diagnose_series, eval_schedule, ScheduleError, ScheduleFamily, ScheduleRole, ScheduleSpec,
    SeriesDiagnostics,
};
