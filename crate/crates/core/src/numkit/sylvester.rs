//! Sylvester equation `A·X + X·B = −C`.
//!
//! Two independent routes are provided. The Kronecker route vectorizes the
//! equation into a dense `(nm)×(nm)` linear system and is only practical for
//! small problems; it is the reference. The Schur route (Bartels–Stewart with
//! complex triangular factors) is O(n³) and is the default.
//!
//! Both routes first move a common scalar between `A` and `B`
//! (`A + σI`, `B − σI`), which leaves the equation unchanged but centres the
//! two spectra. For `B = A†` with a large common imaginary diagonal (optical
//! carrier frequencies) this removes the carrier from the arithmetic and
//! keeps the residual at the level of the coupling terms.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

use super::{
    check_finite, check_square, linear_solve_with, ComplexMatrix, LinearSolveOptions, NumError,
    SolveReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SylvesterMethod {
    /// Dense solve of `(I ⊗ A + Bᵀ ⊗ I) vec X = −vec C`.
    Kronecker,
    /// Bartels–Stewart on complex Schur forms.
    Schur,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SylvesterOptions {
    pub method: SylvesterMethod,
    /// Pencil pairs with `|λ_i(A) + λ_j(B)| < pencil_tolerance · max(‖A‖_F, ‖B‖_F)`
    /// are rejected.
    pub pencil_tolerance: f64,
    /// Iteration cap for the Schur decompositions (0 = unlimited).
    pub max_schur_iterations: usize,
}

impl Default for SylvesterOptions {
    fn default() -> Self {
        Self {
            method: SylvesterMethod::Schur,
            pencil_tolerance: 1e-10,
            max_schur_iterations: 100_000,
        }
    }
}

pub fn solve_sylvester(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<(ComplexMatrix, SolveReport), NumError> {
    solve_sylvester_with(a, b, c, &SylvesterOptions::default())
}

/// Eigenvalues of a square matrix, read off its complex Schur form.
pub fn spectrum(m: &ComplexMatrix, max_iterations: usize) -> Result<Vec<Complex64>, NumError> {
    check_square(m)?;
    check_finite(m)?;
    let schur = Schur::try_new(m.clone(), f64::EPSILON, max_iterations).ok_or(
        NumError::ConvergenceFailure {
            what: "Schur decomposition",
            max_iterations,
        },
    )?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().copied().collect())
}

pub fn solve_sylvester_with(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    opts: &SylvesterOptions,
) -> Result<(ComplexMatrix, SolveReport), NumError> {
    let n = check_square(a)?;
    let m = check_square(b)?;
    if c.nrows() != n || c.ncols() != m {
        return Err(NumError::DimensionMismatch(format!(
            "A is {n}x{n}, B is {m}x{m}, C is {}x{}",
            c.nrows(),
            c.ncols()
        )));
    }
    check_finite(a)?;
    check_finite(b)?;
    check_finite(c)?;

    let sigma = (b.trace() / m as f64 - a.trace() / n as f64) / 2.0;
    let a_shift = a + DMatrix::<Complex64>::identity(n, n) * sigma;
    let b_shift = b - DMatrix::<Complex64>::identity(m, m) * sigma;

    let schur_a = schur(&a_shift, opts.max_schur_iterations)?;
    let schur_b = schur(&b_shift, opts.max_schur_iterations)?;
    let scale = a.norm().max(b.norm());
    let min_gap = check_pencil(&schur_a.1, &schur_b.1, opts.pencil_tolerance * scale)?;

    let x = match opts.method {
        SylvesterMethod::Kronecker => kronecker_solve(&a_shift, &b_shift, c)?,
        SylvesterMethod::Schur => bartels_stewart(&schur_a, &schur_b, c),
    };

    let residual = (a * &x + &x * b + c).norm();
    let condition_estimate = if min_gap > 0.0 {
        Some(scale / min_gap)
    } else {
        None
    };
    Ok((
        x,
        SolveReport {
            residual_norm: residual / c.norm().max(1.0),
            condition_estimate,
            regularized: false,
        },
    ))
}

fn schur(
    m: &ComplexMatrix,
    max_iterations: usize,
) -> Result<(ComplexMatrix, ComplexMatrix), NumError> {
    Schur::try_new(m.clone(), f64::EPSILON, max_iterations)
        .map(|s| s.unpack())
        .ok_or(NumError::ConvergenceFailure {
            what: "Schur decomposition",
            max_iterations,
        })
}

/// Returns the smallest `|λ_i(A) + λ_j(B)|`, or the offending pair.
fn check_pencil(t_a: &ComplexMatrix, t_b: &ComplexMatrix, tolerance: f64) -> Result<f64, NumError> {
    let mut min_gap = f64::INFINITY;
    for &la in t_a.diagonal().iter() {
        for &lb in t_b.diagonal().iter() {
            let gap = (la + lb).norm();
            if gap < tolerance {
                return Err(NumError::NearSingularPencil {
                    lambda_a: la,
                    lambda_b: lb,
                    gap,
                    tolerance,
                });
            }
            min_gap = min_gap.min(gap);
        }
    }
    Ok(min_gap)
}

fn kronecker_solve(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<ComplexMatrix, NumError> {
    let n = a.nrows();
    let m = b.nrows();
    let size = n * m;
    // Column-major vec: X[(i, j)] ↦ i + j·n.
    let mut k = DMatrix::<Complex64>::zeros(size, size);
    for j in 0..m {
        for i in 0..n {
            let row = i + j * n;
            for p in 0..n {
                k[(row, p + j * n)] += a[(i, p)];
            }
            for q in 0..m {
                k[(row, i + q * n)] += b[(q, j)];
            }
        }
    }
    let rhs = DMatrix::from_iterator(size, 1, c.iter().map(|z| -z));
    let opts = LinearSolveOptions {
        pivot_tolerance: 0.0,
        regularization: None,
        estimate_condition: false,
    };
    let (vec_x, _) = linear_solve_with(&k, &rhs, &opts)?;
    Ok(DMatrix::from_iterator(n, m, vec_x.iter().copied()))
}

fn bartels_stewart(
    (u, t): &(ComplexMatrix, ComplexMatrix),
    (v, r): &(ComplexMatrix, ComplexMatrix),
    c: &ComplexMatrix,
) -> ComplexMatrix {
    let n = t.nrows();
    let m = r.nrows();
    // T Y + Y R = F with F = −U† C V; T, R upper triangular.
    let f = -(u.adjoint() * c * v);
    let mut y = DMatrix::<Complex64>::zeros(n, m);
    let mut rhs = DVector::<Complex64>::zeros(n);
    for j in 0..m {
        rhs.copy_from(&f.column(j));
        for k in 0..j {
            let rkj = r[(k, j)];
            if rkj != Complex64::new(0.0, 0.0) {
                rhs.axpy(-rkj, &y.column(k), Complex64::new(1.0, 0.0));
            }
        }
        let shift = r[(j, j)];
        for i in (0..n).rev() {
            let mut acc = rhs[i];
            for p in (i + 1)..n {
                acc -= t[(i, p)] * y[(p, j)];
            }
            y[(i, j)] = acc / (t[(i, i)] + shift);
        }
    }
    u * y * v.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn random_hurwitz(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let m = random_matrix(rng, n);
        // Shift by more than the spectral radius bound.
        let shift = m.norm() + 0.5;
        m - ComplexMatrix::identity(n, n) * Complex64::new(shift, 0.0)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let m = random_matrix(rng, n);
        (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
    }

    #[test]
    fn scalar_shift_case() {
        let a = -ComplexMatrix::identity(3, 3);
        let c0 = ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new((i * 3 + j) as f64, i as f64));
        for method in [SylvesterMethod::Kronecker, SylvesterMethod::Schur] {
            let opts = SylvesterOptions {
                method,
                ..Default::default()
            };
            let (x, report) = solve_sylvester_with(&a, &a, &c0, &opts).unwrap();
            assert!((x - &c0 * Complex64::new(0.5, 0.0)).norm() < 1e-13);
            assert!(report.residual_norm < 1e-14);
        }
    }

    #[test]
    fn routes_agree_on_random_lyapunov() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 4, 7, 10] {
            let a = random_hurwitz(&mut rng, n);
            let c = random_hermitian(&mut rng, n);
            let kron = SylvesterOptions {
                method: SylvesterMethod::Kronecker,
                ..Default::default()
            };
            let (xk, rk) = solve_sylvester_with(&a, &a.adjoint(), &c, &kron).unwrap();
            let (xs, rs) = solve_sylvester(&a, &a.adjoint(), &c).unwrap();
            assert!(rk.residual_norm < 1e-10, "kron residual {}", rk.residual_norm);
            assert!(rs.residual_norm < 1e-10, "schur residual {}", rs.residual_norm);
            assert!((&xk - &xs).norm() / xk.norm() < 1e-8);
            assert!(super::super::hermiticity_error(&xs) < 1e-10);
        }
    }

    #[test]
    fn rectangular_sylvester() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hurwitz(&mut rng, 3);
        let b = random_hurwitz(&mut rng, 5);
        let c = ComplexMatrix::from_fn(3, 5, |i, j| Complex64::new(i as f64 - j as f64, 1.0));
        let (x, report) = solve_sylvester(&a, &b, &c).unwrap();
        assert!(report.residual_norm < 1e-12);
        assert!((&a * &x + &x * &b + &c).norm() < 1e-10);
    }

    #[test]
    fn near_singular_pencil_reports_pair() {
        // A = diag(iω), B = A† gives λ_A + λ_B = 0 exactly.
        let a = ComplexMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 2.0),
        ]));
        let c = ComplexMatrix::identity(2, 2);
        match solve_sylvester(&a, &a.adjoint(), &c) {
            Err(NumError::NearSingularPencil { gap, .. }) => assert!(gap < 1e-12),
            other => panic!("expected NearSingularPencil, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        let a = ComplexMatrix::identity(2, 2);
        let c = ComplexMatrix::zeros(3, 2);
        assert!(matches!(
            solve_sylvester(&a, &a, &c),
            Err(NumError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn carrier_shift_keeps_residual_small() {
        // Large common imaginary diagonal, as in optical-frequency generators.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 12;
        let base = random_hurwitz(&mut rng, n);
        let a = &base - ComplexMatrix::identity(n, n) * Complex64::new(0.0, 1800.0);
        let c = random_hermitian(&mut rng, n);
        let (_, report) = solve_sylvester(&a, &a.adjoint(), &c).unwrap();
        assert!(report.residual_norm < 1e-12, "{}", report.residual_norm);
        let _ = rng.gen::<f64>();
    }
}
