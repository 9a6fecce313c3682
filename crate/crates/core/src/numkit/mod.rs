//! Dense complex linear-algebra kernels.
//!
//! Everything here is a pure function of its inputs. Matrices are
//! `nalgebra::DMatrix<Complex64>`; the kernels add input validation, residual
//! reporting and the Sylvester solvers on top of nalgebra's factorizations.

mod det;
mod expm;
mod linsolve;
mod svd;
mod sylvester;

use num_complex::Complex64;
use thiserror::Error;

pub use det::{determinant, log_determinant, LogDeterminant};
pub use expm::matrix_exponential;
pub use linsolve::{linear_solve, linear_solve_with, LinearSolveOptions};
pub use svd::{svd, svd_with, Svd, SvdOptions};
pub use sylvester::{
    solve_sylvester, solve_sylvester_with, spectrum, SylvesterMethod, SylvesterOptions,
};

pub use nalgebra::DMatrix;

/// Dense complex matrix used throughout the crate.
pub type ComplexMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has an empty dimension")]
    Empty,
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("singular matrix: pivot {pivot:.3e} at step {index} is below tolerance {tolerance:.3e}")]
    SingularMatrix {
        index: usize,
        pivot: f64,
        tolerance: f64,
    },
    #[error(
        "near-singular Sylvester pencil: |λ_A + λ_B| = {gap:.3e} < {tolerance:.3e} \
         for λ_A = {lambda_a:.6e}, λ_B = {lambda_b:.6e}"
    )]
    NearSingularPencil {
        lambda_a: Complex64,
        lambda_b: Complex64,
        gap: f64,
        tolerance: f64,
    },
    #[error("{what} did not converge within {max_iterations} iterations")]
    ConvergenceFailure {
        what: &'static str,
        max_iterations: usize,
    },
}

/// Diagnostics attached to every solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    /// Relative residual of the solved equation (definition depends on the solver).
    pub residual_norm: f64,
    /// `None` when no estimate was computed.
    pub condition_estimate: Option<f64>,
    /// True when a shift or fallback was applied to obtain the solution.
    pub regularized: bool,
}

impl SolveReport {
    pub fn with_regularized(mut self, regularized: bool) -> Self {
        self.regularized |= regularized;
        self
    }
}

pub(crate) fn check_finite(m: &ComplexMatrix) -> Result<(), NumError> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(NumError::Empty);
    }
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(NumError::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

pub(crate) fn check_square(m: &ComplexMatrix) -> Result<usize, NumError> {
    if m.nrows() != m.ncols() {
        return Err(NumError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Relative anti-Hermitian part, ‖M − M†‖_F / ‖M‖_F (0 for the zero matrix).
pub fn hermiticity_error(m: &ComplexMatrix) -> f64 {
    let norm = m.norm();
    if norm == 0.0 {
        return 0.0;
    }
    (m - m.adjoint()).norm() / norm
}

/// Maximum absolute row sum.
pub(crate) fn inf_norm(m: &ComplexMatrix) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub(crate) fn one_norm(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}
