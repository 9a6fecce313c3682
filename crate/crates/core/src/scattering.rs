//! Asymptotic input → output map of the covariance matrix.
//!
//! With `W_ε = W − εI` (the regularized generator, ε → 0⁺):
//!
//! * `Θ̃` solves `W_ε Θ̃ + Θ̃ W_ε† + Θ_in = 0`, the time integral of the
//!   input correlations;
//! * `S = (W† − ε)(W − ε)⁻¹ = W_ε† W_ε⁻¹`;
//! * `Θ_out = Θ̃ W_ε† + W_ε Θ̃ + SΘ̃S†·W_ε + W_ε†·SΘ̃S† + Θ_in`.
//!
//! Because the first, second and last terms of `Θ_out` are exactly the
//! residual of the Lyapunov equation, the reduced form `SΘ̃S†·W_ε + W_ε†·SΘ̃S†`
//! must agree with the full expression to solver precision. Both are
//! computed and their gap is returned as a diagnostic.

use num_complex::Complex64;
use thiserror::Error;

use crate::model::{DynamicalMatrix, FrequencyGrid};
use crate::numkit::{
    linear_solve, solve_sylvester_with, ComplexMatrix, NumError, SolveReport, SylvesterOptions,
};
use crate::states::{CovarianceMatrix, JointSpectralAmplitude, JointSpectralIntensity, StateError};

#[derive(Debug, Error)]
pub enum ScatteringError {
    #[error("{stage} failed: {source}")]
    Solve {
        stage: &'static str,
        #[source]
        source: NumError,
    },
    #[error("dimension mismatch: generator is {generator}x{generator}, covariance is {covariance}x{covariance}")]
    DimensionMismatch { generator: usize, covariance: usize },
    #[error("epsilon must be finite and nonnegative, got {0}")]
    InvalidEpsilon(f64),
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationOptions {
    /// ε used when an unregularized (ε = 0) solve hits a singular pencil.
    pub fallback_epsilon: f64,
    pub sylvester: SylvesterOptions,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self {
            fallback_epsilon: 1e-3,
            sylvester: SylvesterOptions::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TimeIntegratedCovariance {
    pub covariance: CovarianceMatrix,
    pub report: SolveReport,
    pub epsilon_used: f64,
}

/// Solves `W_ε X + X W_ε† + Θ_in = 0`; an ε = 0 request that hits a singular
/// pencil is retried at `opts.fallback_epsilon` and flagged as regularized.
pub fn time_integrated_covariance(
    w: &DynamicalMatrix,
    theta_in: &CovarianceMatrix,
    epsilon: f64,
    opts: &PropagationOptions,
) -> Result<TimeIntegratedCovariance, ScatteringError> {
    check_dims(w, theta_in)?;
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(ScatteringError::InvalidEpsilon(epsilon));
    }
    let solve = |eps: f64| {
        let a = w.shifted(eps);
        let b = a.adjoint();
        solve_sylvester_with(&a, &b, &theta_in.matrix, &opts.sylvester)
    };
    let (x, report, epsilon_used) = match solve(epsilon) {
        Ok((x, report)) => (x, report, epsilon),
        Err(NumError::NearSingularPencil { .. }) if epsilon == 0.0 => {
            let eps = opts.fallback_epsilon;
            let (x, report) = solve(eps).map_err(|source| ScatteringError::Solve {
                stage: "time-integrated covariance (regularized retry)",
                source,
            })?;
            (x, report.with_regularized(true), eps)
        }
        Err(source) => {
            return Err(ScatteringError::Solve {
                stage: "time-integrated covariance",
                source,
            })
        }
    };
    Ok(TimeIntegratedCovariance {
        covariance: CovarianceMatrix::new(x, theta_in.layout),
        report,
        epsilon_used,
    })
}

#[derive(Debug, Clone)]
pub struct ScatteringMatrix {
    pub matrix: ComplexMatrix,
    /// Evaluation point z.
    pub z_used: Complex64,
    pub report: SolveReport,
    /// `‖S(W − z) − (W† − z)‖_F / ‖W‖_F`.
    pub defining_residual: f64,
}

/// `S = (W† − z)(W − z)⁻¹`, obtained from `(W − z)ᵀ Sᵀ = (W† − z)ᵀ`.
pub fn scattering_matrix(w: &DynamicalMatrix, z: Complex64) -> Result<ScatteringMatrix, ScatteringError> {
    let d = w.dim();
    let shift = ComplexMatrix::identity(d, d) * z;
    let w_in = &w.matrix - &shift;
    let w_out = w.matrix.adjoint() - &shift;
    let (s_t, report) = linear_solve(&w_in.transpose(), &w_out.transpose()).map_err(|source| {
        ScatteringError::Solve {
            stage: "scattering matrix",
            source,
        }
    })?;
    let s = s_t.transpose();
    let norm = w.matrix.norm().max(f64::MIN_POSITIVE);
    let defining_residual = (&s * &w_in - &w_out).norm() / norm;
    Ok(ScatteringMatrix {
        matrix: s,
        z_used: z,
        report,
        defining_residual,
    })
}

#[derive(Debug, Clone)]
pub struct PropagationResult {
    /// Θ_out(t → +∞).
    pub theta_out: CovarianceMatrix,
    /// Θ̃_in(z = 0) of the regularized generator.
    pub theta_tilde_in: CovarianceMatrix,
    pub scattering: ScatteringMatrix,
    pub epsilon_used: f64,
    pub lyapunov_report: SolveReport,
    /// `‖full − reduced‖_F / ‖full‖_F`.
    pub reduced_form_gap: f64,
}

impl PropagationResult {
    pub fn regularized(&self) -> bool {
        self.lyapunov_report.regularized || self.scattering.report.regularized
    }
}

pub fn propagate(
    theta_in: &CovarianceMatrix,
    w: &DynamicalMatrix,
    epsilon: f64,
    opts: &PropagationOptions,
) -> Result<PropagationResult, ScatteringError> {
    let integrated = time_integrated_covariance(w, theta_in, epsilon, opts)?;
    let eps = integrated.epsilon_used;
    let scattering = scattering_matrix(w, Complex64::new(eps, 0.0))?;

    let w_eps = w.shifted(eps);
    let w_eps_adj = w_eps.adjoint();
    let x = &integrated.covariance.matrix;
    let s = &scattering.matrix;
    let y = s * x * s.adjoint();

    let reduced = &y * &w_eps + &w_eps_adj * &y;
    let full = x * &w_eps_adj + &w_eps * x + &reduced + &theta_in.matrix;
    let full_norm = full.norm();
    let reduced_form_gap = if full_norm > 0.0 {
        (&full - &reduced).norm() / full_norm
    } else {
        (&full - &reduced).norm()
    };

    Ok(PropagationResult {
        theta_out: CovarianceMatrix::new(full, theta_in.layout),
        theta_tilde_in: integrated.covariance,
        scattering,
        epsilon_used: eps,
        lyapunov_report: integrated.report,
        reduced_form_gap,
    })
}

/// The reduced form alone, `SΘ̃S†·W_ε + W_ε†·SΘ̃S†`.
pub fn reduced_output(result: &PropagationResult, w: &DynamicalMatrix) -> ComplexMatrix {
    let w_eps = w.shifted(result.epsilon_used);
    let s = &result.scattering.matrix;
    let y = s * &result.theta_tilde_in.matrix * s.adjoint();
    &y * &w_eps + w_eps.adjoint() * &y
}

/// Signal–idler block of an output covariance, as a (raw) amplitude.
pub fn extract_output_jsa(
    theta_out: &CovarianceMatrix,
    grid: &FrequencyGrid,
) -> Result<JointSpectralAmplitude, ScatteringError> {
    Ok(JointSpectralAmplitude::new(grid.clone(), theta_out.signal_idler_block())?)
}

/// `|F|²`, unnormalized.
pub fn jsi_of(jsa: &JointSpectralAmplitude) -> JointSpectralIntensity {
    jsa.intensity()
}

fn check_dims(w: &DynamicalMatrix, theta: &CovarianceMatrix) -> Result<(), ScatteringError> {
    if w.dim() != theta.dim() || theta.matrix.nrows() != w.dim() {
        return Err(ScatteringError::DimensionMismatch {
            generator: w.dim(),
            covariance: theta.dim(),
        });
    }
    Ok(())
}
