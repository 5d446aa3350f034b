//! Small dense linear algebra over `Vec<f64>`.
//!
//! Problems here live in R^n with n at most a few hundred, so plain
//! row-major storage, Cholesky/LU solves and power iteration cover
//! everything without an external solver.

use crate::rng::Xoshiro256StarStar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is singular or too ill-conditioned to factor")]
    Singular,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| c * x).collect()
}

/// a + c*b
pub fn axpy(a: &[f64], c: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LinalgError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| dot(&self.data[i * self.n..(i + 1) * self.n], x))
            .collect()
    }

    pub fn matvec_transpose(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        let mut out = vec![0.0; self.n];
        for (i, xi) in x.iter().enumerate() {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xi;
            }
        }
        out
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn symmetrized(&self) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = 0.5 * (self[(i, j)] + self[(j, i)]);
            }
        }
        m
    }

    /// Cholesky factor L with A = L Lᵀ; fails on non-PD input.
    pub fn cholesky(&self) -> Result<Matrix, LinalgError> {
        let n = self.n;
        let mut l = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if s <= 0.0 || !s.is_finite() {
                        return Err(LinalgError::NotPositiveDefinite);
                    }
                    l[(i, i)] = s.sqrt();
                } else {
                    l[(i, j)] = s / l[(j, j)];
                }
            }
        }
        Ok(l)
    }

    /// LU factorization with partial pivoting; returns (LU, perm).
    pub fn lu(&self) -> Result<(Matrix, Vec<usize>), LinalgError> {
        let n = self.n;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_val = lu[(col, col)].abs();
            for r in (col + 1)..n {
                let v = lu[(r, col)].abs();
                if v > pivot_val {
                    pivot_val = v;
                    pivot_row = r;
                }
            }
            if pivot_val < 1e-300 || !pivot_val.is_finite() {
                return Err(LinalgError::Singular);
            }
            if pivot_row != col {
                for c in 0..n {
                    let tmp = lu[(col, c)];
                    lu[(col, c)] = lu[(pivot_row, c)];
                    lu[(pivot_row, c)] = tmp;
                }
                perm.swap(col, pivot_row);
            }
            let p = lu[(col, col)];
            for r in (col + 1)..n {
                let factor = lu[(r, col)] / p;
                lu[(r, col)] = factor;
                for c in (col + 1)..n {
                    let v = factor * lu[(col, c)];
                    lu[(r, c)] -= v;
                }
            }
        }
        Ok((lu, perm))
    }

    /// Solve A x = b via LU with one step of iterative refinement.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
        let (lu, perm) = self.lu()?;
        let mut x = lu_solve(&lu, &perm, b);
        // refinement pushes the residual to ~machine epsilon
        let r = sub(&self.matvec(&x), b);
        let dx = lu_solve(&lu, &perm, &r);
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi -= di;
        }
        Ok(x)
    }

    /// Largest eigenvalue of a symmetric PD matrix by power iteration
    /// (Rayleigh quotient, tolerance 1e-10).
    pub fn eigen_max_symmetric(&self) -> f64 {
        self.power_iterate(|v| self.matvec(v))
    }

    /// Smallest eigenvalue of a symmetric PD matrix by inverse power
    /// iteration on Cholesky solves.
    pub fn eigen_min_symmetric(&self) -> Result<f64, LinalgError> {
        let l = self.cholesky()?;
        let inv_lambda = self.power_iterate(|v| cholesky_solve(&l, v));
        if inv_lambda <= 0.0 {
            return Err(LinalgError::NotPositiveDefinite);
        }
        Ok(1.0 / inv_lambda)
    }

    /// Spectral norm ‖A‖₂ via power iteration on AᵀA.
    pub fn spectral_norm(&self) -> f64 {
        let sq = self.power_iterate(|v| self.matvec_transpose(&self.matvec(v)));
        sq.max(0.0).sqrt()
    }

    fn power_iterate(&self, apply: impl Fn(&[f64]) -> Vec<f64>) -> f64 {
        let n = self.n;
        let mut rng = Xoshiro256StarStar::seed_from_u64(0x5eed_0001 ^ n as u64);
        let mut v = rng.unit_vector(n);
        let mut quotient = 0.0;
        let mut stall = 0;
        for _ in 0..100_000 {
            let w = apply(&v);
            let nw = norm(&w);
            if nw == 0.0 {
                return 0.0;
            }
            let next = dot(&v, &w);
            for (vi, wi) in v.iter_mut().zip(&w) {
                *vi = wi / nw;
            }
            // the Rayleigh quotient converges like (λ₂/λ₁)^{2k}, so require
            // the change to stall well below the target accuracy
            if (next - quotient).abs() <= 1e-13 * (1.0 + next.abs()) && quotient != 0.0 {
                stall += 1;
                if stall >= 3 {
                    return next;
                }
            } else {
                stall = 0;
            }
            quotient = next;
        }
        quotient
    }
}

fn lu_solve(lu: &Matrix, perm: &[usize], b: &[f64]) -> Vec<f64> {
    let n = lu.dim();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[perm[i]];
        for j in 0..i {
            s -= lu[(i, j)] * y[j];
        }
        y[i] = s;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for j in (i + 1)..n {
            s -= lu[(i, j)] * x[j];
        }
        x[i] = s / lu[(i, i)];
    }
    x
}

/// Solve (L Lᵀ) x = b given a Cholesky factor.
pub fn cholesky_solve(l: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = l.dim();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for j in 0..i {
            s -= l[(i, j)] * y[j];
        }
        y[i] = s / l[(i, i)];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for j in (i + 1)..n {
            s -= l[(j, i)] * x[j];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Random orthogonal matrix from modified Gram-Schmidt on Gaussian columns.
pub fn random_orthogonal(n: usize, rng: &mut Xoshiro256StarStar) -> Matrix {
    let mut q = Matrix::zeros(n);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = rng.gaussian_vector(n);
        for c in &cols {
            let proj = dot(&v, c);
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= proj * ci;
            }
        }
        let nv = norm(&v);
        if nv < 1e-8 {
            continue; // essentially dependent draw, retry
        }
        for vi in &mut v {
            *vi /= nv;
        }
        cols.push(v);
    }
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            q[(i, j)] = c[i];
        }
    }
    q
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_recovers_known_solution() {
        let a = Matrix::from_rows(&[vec![4.0, 1.0], vec![1.0, 3.0]]).unwrap();
        let x_true = vec![1.0, -2.0];
        let b = a.matvec(&x_true);
        let x = a.solve(&b).unwrap();
        assert!(distance(&x, &x_true) < 1e-12);
    }

    #[test]
    fn singular_matrix_rejected() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(a.solve(&[1.0, 1.0]).unwrap_err(), LinalgError::Singular);
    }

    #[test]
    fn eigen_bounds_on_diagonal_matrix() {
        let a = Matrix::diagonal(&[1.0, 4.0]);
        assert!((a.eigen_max_symmetric() - 4.0).abs() < 1e-8);
        assert!((a.eigen_min_symmetric().unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn eigen_bounds_on_rotated_spectrum() {
        let mut rng = Xoshiro256StarStar::seed_from_u64(5);
        let q = random_orthogonal(6, &mut rng);
        let d = [0.5, 0.9, 1.3, 2.0, 2.7, 3.5];
        // A = Q D Qᵀ
        let n = 6;
        let mut a = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for (k, dk) in d.iter().enumerate() {
                    s += q[(i, k)] * dk * q[(j, k)];
                }
                a[(i, j)] = s;
            }
        }
        let a = a.symmetrized();
        assert!((a.eigen_max_symmetric() - 3.5).abs() < 1e-7);
        assert!((a.eigen_min_symmetric().unwrap() - 0.5).abs() < 1e-7);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(a.cholesky().is_err());
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let a = Matrix::diagonal(&[-3.0, 2.0]);
        assert!((a.spectral_norm() - 3.0).abs() < 1e-8);
    }

    #[test]
    fn orthogonal_matrix_preserves_norms() {
        let mut rng = Xoshiro256StarStar::seed_from_u64(9);
        let q = random_orthogonal(8, &mut rng);
        let v = rng.gaussian_vector(8);
        assert!((norm(&q.matvec(&v)) - norm(&v)).abs() < 1e-10);
    }
}
