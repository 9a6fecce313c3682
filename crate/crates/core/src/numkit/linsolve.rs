use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{check_finite, check_square, inf_norm, one_norm, ComplexMatrix, NumError, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSolveOptions {
    /// Pivots below `pivot_tolerance · ‖A‖_∞` are treated as zero.
    pub pivot_tolerance: f64,
    /// When set, a singular `A` is replaced by `A + δ‖A‖_∞ I` instead of failing.
    pub regularization: Option<f64>,
    pub estimate_condition: bool,
}

impl Default for LinearSolveOptions {
    fn default() -> Self {
        Self {
            pivot_tolerance: 1e-12,
            regularization: None,
            estimate_condition: true,
        }
    }
}

/// Solves `A X = B` by LU with partial pivoting.
pub fn linear_solve(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Result<(ComplexMatrix, SolveReport), NumError> {
    linear_solve_with(a, b, &LinearSolveOptions::default())
}

pub fn linear_solve_with(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &LinearSolveOptions,
) -> Result<(ComplexMatrix, SolveReport), NumError> {
    let n = check_square(a)?;
    if b.nrows() != n {
        return Err(NumError::DimensionMismatch(format!(
            "A is {n}x{n} but B has {} rows",
            b.nrows()
        )));
    }
    check_finite(a)?;
    check_finite(b)?;

    let scale = inf_norm(a);
    let tolerance = opts.pivot_tolerance * scale;
    let mut regularized = false;
    let mut lu = a.clone().lu();
    if let Err(err) = check_pivots(&lu, tolerance) {
        match opts.regularization {
            Some(delta) if delta > 0.0 => {
                let shift = Complex64::new(delta * scale.max(1.0), 0.0);
                let shifted = a + DMatrix::<Complex64>::identity(n, n) * shift;
                lu = shifted.lu();
                check_pivots(&lu, tolerance)?;
                regularized = true;
            }
            _ => return Err(err),
        }
    }

    let x = lu
        .solve(b)
        .ok_or(NumError::SingularMatrix {
            index: 0,
            pivot: 0.0,
            tolerance,
        })?;

    let b_norm = b.norm();
    let residual = (a * &x - b).norm();
    let residual_norm = if b_norm > 0.0 { residual / b_norm } else { residual };
    let condition_estimate = if opts.estimate_condition {
        lu.try_inverse().map(|inv| one_norm(a) * one_norm(&inv))
    } else {
        None
    };

    Ok((
        x,
        SolveReport {
            residual_norm,
            condition_estimate,
            regularized,
        },
    ))
}

fn check_pivots(
    lu: &nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    tolerance: f64,
) -> Result<(), NumError> {
    let u = lu.u();
    for i in 0..u.nrows() {
        let pivot = u[(i, i)].norm();
        if !(pivot > tolerance) {
            return Err(NumError::SingularMatrix {
                index: i,
                pivot,
                tolerance,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_returns_rhs() {
        let a = ComplexMatrix::identity(3, 3);
        let b = ComplexMatrix::from_fn(3, 2, |i, j| Complex64::new(i as f64 + 1.0, j as f64 - 0.5));
        let (x, report) = linear_solve(&a, &b).unwrap();
        assert_eq!(x, b);
        assert_eq!(report.residual_norm, 0.0);
        assert!(!report.regularized);
    }

    #[test]
    fn diagonal_inverse() {
        let a = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2.0), c(4.0)]));
        let (x, _) = linear_solve(&a, &ComplexMatrix::identity(2, 2)).unwrap();
        assert!((x[(0, 0)] - c(0.5)).norm() < 1e-15);
        assert!((x[(1, 1)] - c(0.25)).norm() < 1e-15);
        assert_eq!(x[(0, 1)], c(0.0));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = ComplexMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(2.0), c(4.0)]);
        let b = ComplexMatrix::identity(2, 2);
        assert!(matches!(
            linear_solve(&a, &b),
            Err(NumError::SingularMatrix { .. })
        ));
        let opts = LinearSolveOptions {
            regularization: Some(1e-8),
            ..Default::default()
        };
        let (_, report) = linear_solve_with(&a, &b, &opts).unwrap();
        assert!(report.regularized);
    }

    #[test]
    fn shape_errors() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            linear_solve(&a, &ComplexMatrix::zeros(2, 1)),
            Err(NumError::NotSquare { .. })
        ));
        let a = ComplexMatrix::identity(2, 2);
        assert!(matches!(
            linear_solve(&a, &ComplexMatrix::zeros(3, 1)),
            Err(NumError::DimensionMismatch(_))
        ));
        let mut b = ComplexMatrix::zeros(2, 1);
        b[(1, 0)] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            linear_solve(&a, &b),
            Err(NumError::NonFinite { row: 1, col: 0 })
        ));
    }
}
