//! Objective/gradient oracles with verified metadata.
//!
//! Every test function used by the lab is wrapped in a [`Problem`]: an
//! analytic objective, its analytic gradient, and whatever constants are
//! known about it (gradient Lipschitz constant, descent constant, strong
//! convexity modulus, minimizer, KL exponent). Problems are immutable after
//! construction and cheap to clone, so sweep workers can share them freely.

use std::sync::Arc;

use crate::linalg::{self, Matrix};
use crate::rng::Xoshiro256StarStar;

type ScalarFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;

#[derive(Clone)]
pub struct Problem {
    name: String,
    dim: usize,
    f: Arc<ScalarFn>,
    grad: Arc<GradFn>,
    pub lipschitz_l: Option<f64>,
    pub descent_l: Option<f64>,
    pub strong_convexity_mu: Option<f64>,
    pub minimizer: Option<Vec<f64>>,
    pub kl_exponent_q: Option<f64>,
}

impl std::fmt::Debug for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("lipschitz_l", &self.lipschitz_l)
            .field("descent_l", &self.descent_l)
            .field("strong_convexity_mu", &self.strong_convexity_mu)
            .field("kl_exponent_q", &self.kl_exponent_q)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProblemError {
    #[error("matrix is not symmetric: max |A_ij - A_ji| = {asymmetry:e} exceeds 1e-12")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("problem validation failed: {0}")]
    ValidationFailed(String),
    #[error("could not generate an invertible matrix after {0} attempts")]
    GenerationFailed(usize),
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        grad: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            dim,
            f: Arc::new(f),
            grad: Arc::new(grad),
            lipschitz_l: None,
            descent_l: None,
            strong_convexity_mu: None,
            minimizer: None,
            kl_exponent_q: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval_f(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    pub fn eval_grad_into(&self, x: &[f64], out: &mut [f64]) {
        (self.grad)(x, out);
    }

    pub fn eval_grad(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.eval_grad_into(x, &mut out);
        out
    }

    /// Optimal value, when the minimizer is known.
    pub fn f_star(&self) -> Option<f64> {
        self.minimizer.as_ref().map(|m| self.eval_f(m))
    }

    /// Central finite differences of f at x with step h = 1e-6·(1+‖x‖).
    pub fn finite_difference_grad(&self, x: &[f64]) -> Vec<f64> {
        let h = 1e-6 * (1.0 + linalg::norm(x));
        let mut g = vec![0.0; self.dim];
        let mut xp = x.to_vec();
        for i in 0..self.dim {
            let orig = xp[i];
            xp[i] = orig + h;
            let fp = self.eval_f(&xp);
            xp[i] = orig - h;
            let fm = self.eval_f(&xp);
            xp[i] = orig;
            g[i] = (fp - fm) / (2.0 * h);
        }
        g
    }

    /// Checks the analytic gradient against central differences at `samples`
    /// seeded points; the metadata constants on sampled pairs; and the
    /// minimizer's stationarity. Tolerances: 1e-5 relative for the gradient,
    /// 1e-10 for the minimizer.
    pub fn validate(&self, seed: u64, samples: usize) -> Result<(), ProblemError> {
        let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
        let mut points = Vec::with_capacity(samples);
        for _ in 0..samples {
            points.push(rng.gaussian_vector(self.dim));
        }
        for x in &points {
            let g = self.eval_grad(x);
            let fd = self.finite_difference_grad(x);
            let err = linalg::distance(&g, &fd);
            let scale = 1.0 + linalg::norm(&g);
            if err > 1e-5 * scale {
                return Err(ProblemError::ValidationFailed(format!(
                    "gradient/finite-difference mismatch {err:e} at relative scale {scale:e}"
                )));
            }
        }
        for pair in points.windows(2) {
            let (x, y) = (&pair[0], &pair[1]);
            let gx = self.eval_grad(x);
            let gy = self.eval_grad(y);
            let dxy = linalg::distance(x, y);
            if let Some(l) = self.lipschitz_l {
                let dg = linalg::distance(&gx, &gy);
                if dg > l * dxy * (1.0 + 1e-6) + 1e-12 {
                    return Err(ProblemError::ValidationFailed(format!(
                        "gradient Lipschitz violation: |Δg| = {dg:e} > L|Δx| = {:e}",
                        l * dxy
                    )));
                }
            }
            if let Some(l) = self.descent_l {
                let lhs = self.eval_f(y);
                let rhs =
                    self.eval_f(x) + linalg::dot(&gx, &linalg::sub(y, x)) + 0.5 * l * dxy * dxy;
                if lhs > rhs + 1e-9 * (1.0 + rhs.abs()) {
                    return Err(ProblemError::ValidationFailed(format!(
                        "descent condition violation: f(y) = {lhs:e} > bound {rhs:e}"
                    )));
                }
            }
        }
        if let Some(min) = &self.minimizer {
            let g = self.eval_grad(min);
            let gn = linalg::norm(&g);
            if gn > 1e-10 {
                return Err(ProblemError::ValidationFailed(format!(
                    "gradient at stored minimizer has norm {gn:e} > 1e-10"
                )));
            }
        }
        Ok(())
    }
}

/// Symmetric positive-definite quadratic data with cached eigen bounds.
#[derive(Debug, Clone)]
pub struct QuadraticSpec {
    a: Matrix,
    b: Vec<f64>,
    lambda_min: f64,
    lambda_max: f64,
}

impl QuadraticSpec {
    /// Validates symmetry (entrywise 1e-12) and positive definiteness, then
    /// caches eigen bounds computed by power/inverse power iteration.
    pub fn new(a: Matrix, b: Vec<f64>) -> Result<Self, ProblemError> {
        if b.len() != a.dim() {
            return Err(ProblemError::ShapeMismatch(format!(
                "b has length {} but A is {}x{}",
                b.len(),
                a.dim(),
                a.dim()
            )));
        }
        let asymmetry = a.max_asymmetry();
        if asymmetry > 1e-12 {
            return Err(ProblemError::NotSymmetric { asymmetry });
        }
        let lambda_min = a
            .eigen_min_symmetric()
            .map_err(|_| ProblemError::NotPositiveDefinite)?;
        if lambda_min <= 0.0 {
            return Err(ProblemError::NotPositiveDefinite);
        }
        let lambda_max = a.eigen_max_symmetric();
        Ok(Self {
            a,
            b,
            lambda_min,
            lambda_max,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn minimizer(&self) -> Vec<f64> {
        // PD, so the solve cannot fail
        self.a.solve(&self.b).expect("positive definite")
    }
}

/// f(x) = ½⟨Ax,x⟩ − ⟨b,x⟩ with metadata from the cached eigen bounds.
pub fn make_quadratic(spec: &QuadraticSpec) -> Problem {
    let a = spec.a.clone();
    let b = spec.b.clone();
    let minimizer = spec.minimizer();
    let a_f = a.clone();
    let b_f = b.clone();
    let mut p = Problem::new(
        format!("quadratic-{}d", a.dim()),
        a.dim(),
        move |x| 0.5 * linalg::dot(&a_f.matvec(x), x) - linalg::dot(&b_f, x),
        move |x, out| {
            let ax = a.matvec(x);
            for i in 0..out.len() {
                out[i] = ax[i] - b[i];
            }
        },
    );
    p.lipschitz_l = Some(spec.lambda_max);
    p.descent_l = Some(spec.lambda_max);
    p.strong_convexity_mu = Some(spec.lambda_min);
    p.minimizer = Some(minimizer);
    p.kl_exponent_q = Some(0.5);
    p
}

/// f(x) = Σᵢ log(1 + (Ax−b)ᵢ²); each scalar log(1+t²) has a 2-Lipschitz
/// derivative, so L ≤ 2‖A‖₂² is a valid (conservative) gradient Lipschitz
/// bound. When A is invertible the solution of Ax = b is a global minimizer
/// with f = 0.
pub fn make_log_quadratic(a: Matrix, b: Vec<f64>) -> Result<Problem, ProblemError> {
    if b.len() != a.dim() {
        return Err(ProblemError::ShapeMismatch(format!(
            "b has length {} but A is {}x{}",
            b.len(),
            a.dim(),
            a.dim()
        )));
    }
    let spectral = a.spectral_norm();
    let minimizer = a.solve(&b).ok();
    let a_f = a.clone();
    let b_f = b.clone();
    let a_g = a.clone();
    let b_g = b.clone();
    let mut p = Problem::new(
        format!("log-quadratic-{}d", a.dim()),
        a.dim(),
        move |x| {
            let r = linalg::sub(&a_f.matvec(x), &b_f);
            r.iter().map(|ri| (1.0 + ri * ri).ln()).sum()
        },
        move |x, out| {
            let r = linalg::sub(&a_g.matvec(x), &b_g);
            let d: Vec<f64> = r.iter().map(|ri| 2.0 * ri / (1.0 + ri * ri)).collect();
            let g = a_g.matvec_transpose(&d);
            out.copy_from_slice(&g);
        },
    );
    p.lipschitz_l = Some(2.0 * spectral * spectral);
    p.descent_l = Some(2.0 * spectral * spectral);
    p.minimizer = minimizer;
    Ok(p)
}

/// f(x) = x² on the line; the constant-error counterexample lives here.
pub fn make_square_1d() -> Problem {
    let mut p = Problem::new(
        "square-1d",
        1,
        |x| x[0] * x[0],
        |x, out| {
            out[0] = 2.0 * x[0];
        },
    );
    p.lipschitz_l = Some(2.0);
    p.descent_l = Some(2.0);
    p.strong_convexity_mu = Some(2.0);
    p.minimizer = Some(vec![0.0]);
    p.kl_exponent_q = Some(0.5);
    p
}

/// Random strongly convex quadratic: A = Q D Qᵀ with Q orthogonal from the
/// seed and D holding `eig_min`, `eig_max` plus uniform draws in between, so
/// the extreme eigenvalues (and hence L and μ) are known exactly by
/// construction. b is chosen so the minimizer is a seeded Gaussian point.
pub fn random_quadratic(
    dim: usize,
    seed: u64,
    eig_min: f64,
    eig_max: f64,
) -> Result<QuadraticSpec, ProblemError> {
    if dim == 0 || eig_min <= 0.0 || eig_max < eig_min {
        return Err(ProblemError::ShapeMismatch(format!(
            "invalid quadratic generator parameters dim={dim} eig_min={eig_min} eig_max={eig_max}"
        )));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let q = linalg::random_orthogonal(dim, &mut rng);
    let mut d = vec![0.0; dim];
    for (i, di) in d.iter_mut().enumerate() {
        *di = match i {
            0 => eig_min,
            1 if dim > 1 => eig_max,
            _ => eig_min + (eig_max - eig_min) * rng.next_f64(),
        };
    }
    let mut a = Matrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut s = 0.0;
            for (k, dk) in d.iter().enumerate() {
                s += q[(i, k)] * dk * q[(j, k)];
            }
            a[(i, j)] = s;
        }
    }
    let a = a.symmetrized();
    let x_star = rng.gaussian_vector(dim);
    let b = a.matvec(&x_star);
    QuadraticSpec::new(a, b)
}

/// Random data for the log-quadratic objective: i.i.d. standard normal
/// entries for A and b, regenerated (bumping the seed) until the solve
/// residual certifies invertibility below 1e-8.
pub fn random_log_quadratic(dim: usize, seed: u64) -> Result<Problem, ProblemError> {
    const MAX_ATTEMPTS: usize = 100;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = Xoshiro256StarStar::seed_from_u64(seed.wrapping_add(attempt as u64));
        let rows: Vec<Vec<f64>> = (0..dim).map(|_| rng.gaussian_vector(dim)).collect();
        let a = Matrix::from_rows(&rows).expect("square by construction");
        let b = rng.gaussian_vector(dim);
        if let Ok(x) = a.solve(&b) {
            let residual = linalg::distance(&a.matvec(&x), &b);
            if residual < 1e-8 * (1.0 + linalg::norm(&b)) {
                return make_log_quadratic(a, b);
            }
        }
    }
    Err(ProblemError::GenerationFailed(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{distance, norm};

    #[test]
    fn identity_quadratic_basics() {
        let spec = QuadraticSpec::new(Matrix::identity(2), vec![0.0, 0.0]).unwrap();
        let p = make_quadratic(&spec);
        assert_eq!(p.eval_f(&[3.0, 4.0]), 12.5);
        assert_eq!(p.eval_grad(&[3.0, 4.0]), vec![3.0, 4.0]);
        assert_eq!(p.minimizer.as_deref(), Some(&[0.0, 0.0][..]));
        assert!((p.lipschitz_l.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn diagonal_quadratic_minimizer_by_inspection() {
        let spec = QuadraticSpec::new(Matrix::diagonal(&[1.0, 4.0]), vec![1.0, 4.0]).unwrap();
        assert!((spec.lambda_min() - 1.0).abs() < 1e-8);
        assert!((spec.lambda_max() - 4.0).abs() < 1e-8);
        let p = make_quadratic(&spec);
        assert!(distance(p.minimizer.as_ref().unwrap(), &[1.0, 1.0]) < 1e-12);
        assert!((p.strong_convexity_mu.unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn non_symmetric_rejected() {
        let a = Matrix::from_rows(&[vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        match QuadraticSpec::new(a, vec![0.0, 0.0]) {
            Err(ProblemError::NotSymmetric { .. }) => {}
            other => panic!("expected NotSymmetric, got {other:?}"),
        }
    }

    #[test]
    fn non_positive_definite_rejected() {
        let a = Matrix::diagonal(&[1.0, -0.5]);
        assert_eq!(
            QuadraticSpec::new(a, vec![0.0, 0.0]).unwrap_err(),
            ProblemError::NotPositiveDefinite
        );
    }

    #[test]
    fn random_quadratic_gradient_matches_finite_differences() {
        let spec = random_quadratic(5, 101, 0.5, 3.0).unwrap();
        let p = make_quadratic(&spec);
        p.validate(7, 20).unwrap();
    }

    #[test]
    fn quadratic_expansion_identity() {
        let spec = random_quadratic(4, 55, 1.0, 5.0).unwrap();
        let p = make_quadratic(&spec);
        let min = p.minimizer.clone().unwrap();
        let f_min = p.eval_f(&min);
        let mut rng = Xoshiro256StarStar::seed_from_u64(3);
        for _ in 0..20 {
            let v = rng.gaussian_vector(4);
            let x = linalg::add(&min, &v);
            let quad_form = 0.5 * linalg::dot(&spec.matrix().matvec(&v), &v);
            assert!((p.eval_f(&x) - f_min - quad_form).abs() < 1e-10);
        }
    }

    #[test]
    fn log_quadratic_scalar_values() {
        let p = make_log_quadratic(Matrix::identity(1), vec![0.0]).unwrap();
        assert_eq!(p.eval_f(&[0.0]), 0.0);
        assert_eq!(p.eval_grad(&[0.0]), vec![0.0]);
        assert!((p.eval_f(&[1.0]) - 2.0f64.ln()).abs() < 1e-15);
        assert!((p.eval_grad(&[1.0])[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_quadratic_gradient_matches_finite_differences() {
        let p = random_log_quadratic(20, 2024).unwrap();
        p.validate(11, 10).unwrap();
    }

    #[test]
    fn log_quadratic_nonnegative_and_zero_at_solution() {
        let p = random_log_quadratic(8, 77).unwrap();
        let min = p.minimizer.clone().unwrap();
        assert!(p.eval_f(&min).abs() < 1e-12);
        let mut rng = Xoshiro256StarStar::seed_from_u64(13);
        for _ in 0..50 {
            let x = rng.gaussian_vector(8);
            assert!(p.eval_f(&x) >= 0.0);
        }
    }

    #[test]
    fn square_1d_values() {
        let p = make_square_1d();
        assert_eq!(p.eval_f(&[3.0]), 9.0);
        assert_eq!(p.eval_grad(&[3.0]), vec![6.0]);
        assert_eq!(p.eval_grad(&[0.0]), vec![0.0]);
        assert_eq!(p.eval_f(&[-1.0]), 1.0);
        assert_eq!(p.eval_grad(&[-1.0]), vec![-2.0]);
    }

    #[test]
    fn builtin_problems_validate_at_many_points() {
        let problems = vec![
            make_quadratic(&random_quadratic(5, 42, 0.5, 2.5).unwrap()),
            random_log_quadratic(5, 42).unwrap(),
            make_square_1d(),
        ];
        for p in problems {
            p.validate(0xfd, 100)
                .unwrap_or_else(|e| panic!("{} failed validation: {e}", p.name()));
        }
    }

    #[test]
    fn random_quadratic_eigen_band_exact() {
        let spec = random_quadratic(20, 9, 1.0, 2.0).unwrap();
        assert!((spec.lambda_min() - 1.0).abs() < 1e-7);
        assert!((spec.lambda_max() - 2.0).abs() < 1e-7);
        let p = make_quadratic(&spec);
        let g = p.eval_grad(p.minimizer.as_ref().unwrap());
        assert!(norm(&g) < 1e-10);
    }
}
