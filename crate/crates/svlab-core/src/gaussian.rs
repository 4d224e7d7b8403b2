//! Pure permutationally invariant n-mode Gaussian states.
//!
//! The family is parametrized by the mode count and a single local mixedness
//! factor `a`: every single-mode block of the covariance matrix is `diag(a, a)`
//! and every pairwise block is `diag(z_plus, z_minus)` with the couplings
//! chosen so the global state is pure. Quadratures are ordered
//! `(q1, p1, ..., qn, pn)` and the vacuum covariance is the identity.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Condition-number limit above which covariance inversion refuses to proceed.
const CONDITION_LIMIT: f64 = 1e12;
/// Absolute eigenvalue slack in the physicality test.
const PHYSICALITY_SLACK: f64 = 1e-9;
/// Relative asymmetry allowed when accepting a covariance matrix.
const SYMMETRY_TOL: f64 = 1e-12;

/// A pure permutationally invariant Gaussian state of `n_modes` modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricGaussianState {
    n_modes: usize,
    a: f64,
}

impl SymmetricGaussianState {
    /// Requires `n_modes >= 2` and `a >= 1`; `a = 1` is the vacuum.
    pub fn new(n_modes: usize, a: f64) -> Result<Self> {
        if n_modes < 2 {
            return Err(Error::domain(
                "n_modes",
                format!("need at least 2 modes, got {n_modes}"),
            ));
        }
        if !(a >= 1.0) {
            return Err(Error::domain(
                "a",
                format!("local mixedness factor must be >= 1, got {a}"),
            ));
        }
        Ok(Self { n_modes, a })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// The `(z_plus, z_minus)` pair of this state.
    pub fn couplings(&self) -> (f64, f64) {
        // Constructor already validated the domain.
        coupling_terms(self.n_modes, self.a).expect("state invariants hold")
    }
}

/// Pairwise coupling strengths `(z_plus, z_minus)` of the pure n-mode family.
///
/// For `a >= 1` the radicand `(a^2-1)(a^2 n^2 - (n-2)^2)` is nonnegative, so
/// both couplings are real; at `a = 1` they are exactly zero.
pub fn coupling_terms(n_modes: usize, a: f64) -> Result<(f64, f64)> {
    if n_modes < 2 {
        return Err(Error::domain(
            "n_modes",
            format!("need at least 2 modes, got {n_modes}"),
        ));
    }
    if !(a >= 1.0) {
        return Err(Error::domain(
            "a",
            format!("local mixedness factor must be >= 1, got {a}"),
        ));
    }
    let n = n_modes as f64;
    let a2m1 = a * a - 1.0;
    let radicand = a2m1 * (a * a * n * n - (n - 2.0) * (n - 2.0));
    let root = radicand.sqrt();
    let denom = 2.0 * a * (n - 1.0);
    let z_plus = (a2m1 * (n - 2.0) + root) / denom;
    let z_minus = (a2m1 * (n - 2.0) - root) / denom;
    Ok((z_plus, z_minus))
}

/// A validated real symmetric covariance matrix in `(q1,p1,...,qn,pn)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    mat: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Accepts a square matrix of even dimension, symmetric to 1e-12 relative.
    pub fn from_matrix(mat: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = mat.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::Dimension(format!(
                "covariance matrix must be 2n x 2n, got {rows} x {cols}"
            )));
        }
        let scale = mat.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1.0);
        for i in 0..rows {
            for j in (i + 1)..rows {
                let asym = (mat[(i, j)] - mat[(j, i)]).abs();
                if asym > SYMMETRY_TOL * scale {
                    return Err(Error::Dimension(format!(
                        "matrix is not symmetric: |m[{i},{j}] - m[{j},{i}]| = {asym:.3e}"
                    )));
                }
            }
        }
        Ok(Self { mat })
    }

    /// Vacuum covariance of `n_modes` modes.
    pub fn identity(n_modes: usize) -> Self {
        Self {
            mat: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn n_modes(&self) -> usize {
        self.mat.nrows() / 2
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }
}

/// Direct sum of `n` single-mode symplectic forms `[[0, 1], [-1, 0]]`.
pub(crate) fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

/// Covariance matrix of the state: `diag(a, a)` blocks on the diagonal and
/// identical `diag(z_plus, z_minus)` blocks everywhere off the diagonal.
pub fn build_covariance(state: &SymmetricGaussianState) -> CovarianceMatrix {
    let n = state.n_modes();
    let (z_plus, z_minus) = state.couplings();
    let mut mat = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (dq, dp) = if i == j {
                (state.a(), state.a())
            } else {
                (z_plus, z_minus)
            };
            mat[(2 * i, 2 * j)] = dq;
            mat[(2 * i + 1, 2 * j + 1)] = dp;
        }
    }
    CovarianceMatrix { mat }
}

/// Physicality of a covariance matrix: all eigenvalues of the Hermitian
/// matrix `sigma + i*Omega` must be `>= -1e-9`.
///
/// Uses the real embedding `[[sigma, -Omega], [Omega, sigma]]`, which is
/// symmetric and carries the same spectrum with doubled multiplicity.
pub fn check_physical(cov: &CovarianceMatrix) -> bool {
    let d = cov.dim();
    let n = cov.n_modes();
    let omega = symplectic_form(n);
    let mut emb = DMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            let s = cov.mat[(i, j)];
            let w = omega[(i, j)];
            emb[(i, j)] = s;
            emb[(d + i, d + j)] = s;
            emb[(i, d + j)] = -w;
            emb[(d + i, j)] = w;
        }
    }
    let eig = emb.symmetric_eigen();
    eig.eigenvalues.iter().all(|&l| l >= -PHYSICALITY_SLACK)
}

/// Purity `(det sigma)^(-1/2)`; 1 for pure states.
pub fn purity(cov: &CovarianceMatrix) -> Result<f64> {
    let det = cov.mat.clone().lu().determinant();
    if det <= 0.0 {
        return Err(Error::domain(
            "covariance",
            format!("determinant {det:.3e} is not positive"),
        ));
    }
    Ok(det.powf(-0.5))
}

/// Wigner distribution `W(xi) = exp(-xi^T sigma^-1 xi) / (pi^n sqrt(det sigma))`
/// at a phase-space point ordered `(q1, p1, ..., qn, pn)`.
///
/// The quadratic form is evaluated through a Cholesky factorization; these
/// block matrices carry highly degenerate spectra, where iterative
/// eigensolvers can mis-pair eigenvectors, while the factorization stays
/// exact. Near-singular input trips the condition guard instead of silently
/// losing precision.
pub fn wigner(cov: &CovarianceMatrix, point: &[f64]) -> Result<f64> {
    let d = cov.dim();
    if point.len() != d {
        return Err(Error::Dimension(format!(
            "phase point has {} coordinates, covariance needs {d}",
            point.len()
        )));
    }
    let chol = match cov.mat.clone().cholesky() {
        Some(c) => c,
        None => {
            return Err(Error::IllConditioned {
                cond: f64::INFINITY,
                limit: CONDITION_LIMIT,
            })
        }
    };
    // Exact 1-norm condition number; the inverse columns come from d
    // triangular solves, cheap at these dimensions.
    let norm1 = (0..d)
        .map(|j| cov.mat.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let mut inv_norm1 = 0.0f64;
    for j in 0..d {
        let mut e = DVector::zeros(d);
        e[j] = 1.0;
        let col = chol.solve(&e);
        inv_norm1 = inv_norm1.max(col.iter().map(|x| x.abs()).sum());
    }
    let cond = norm1 * inv_norm1;
    if !cond.is_finite() || cond > CONDITION_LIMIT {
        return Err(Error::IllConditioned {
            cond,
            limit: CONDITION_LIMIT,
        });
    }
    let xi = DVector::from_column_slice(point);
    let quad = xi.dot(&chol.solve(&xi));
    let l = chol.l();
    let log_det: f64 = (0..d).map(|k| 2.0 * l[(k, k)].ln()).sum();
    let n = cov.n_modes() as f64;
    Ok((-quad - 0.5 * log_det - n * std::f64::consts::PI.ln()).exp())
}

/// Local mixedness factor of the three-mode squeezed family as a function of
/// the squeezing parameter `r >= 0`; equals 1 at `r = 0`.
pub fn a_from_squeezing(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::domain(
            "r",
            format!("squeezing parameter must be >= 0, got {r}"),
        ));
    }
    Ok((5.0 + 4.0 * (2.0 * r).cosh()).sqrt() / 3.0)
}
