//! Entanglement and Gaussian-state metrics.

use num_complex::Complex64;
use thiserror::Error;

use crate::numkit::{linear_solve, log_determinant, svd, ComplexMatrix, NumError};
use crate::states::{CovarianceMatrix, JointSpectralAmplitude};

#[derive(Debug, Error)]
pub enum ObservableError {
    #[error("amplitude is identically zero")]
    DegenerateState,
    #[error("covariance matrix is singular")]
    SingularCovariance,
    #[error("covariance determinant is not positive (log|det| = {log_magnitude}, phase = {phase})")]
    NonPositiveDeterminant { log_magnitude: f64, phase: f64 },
    #[error("phase-space point has length {got}, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error(transparent)]
    Numeric(#[from] NumError),
}

/// Which matrix the Schmidt decomposition is taken of.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EntropyVariant {
    /// The complex amplitude F.
    #[default]
    Amplitude,
    /// The magnitude |F| (phase discarded, i.e. √JSI).
    Magnitude,
}

/// Schmidt coefficients r_n, nonincreasing, with Σ r_n² = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    values: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Renormalizes arbitrary nonnegative coefficients.
    pub fn from_coefficients(mut values: Vec<f64>) -> Result<Self, ObservableError> {
        values.sort_by(|a, b| b.total_cmp(a));
        let total: f64 = values.iter().map(|r| r * r).sum();
        if !(total > 0.0) || values.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(ObservableError::DegenerateState);
        }
        let scale = total.sqrt().recip();
        values.iter_mut().for_each(|r| *r *= scale);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Inverse participation of the weights, 1/Σ r_n⁴.
    pub fn schmidt_number(&self) -> f64 {
        1.0 / self.values.iter().map(|r| r.powi(4)).sum::<f64>()
    }
}

pub fn schmidt(jsa: &JointSpectralAmplitude) -> Result<SchmidtSpectrum, ObservableError> {
    schmidt_of_matrix(jsa.values())
}

pub fn schmidt_with(
    jsa: &JointSpectralAmplitude,
    variant: EntropyVariant,
) -> Result<SchmidtSpectrum, ObservableError> {
    match variant {
        EntropyVariant::Amplitude => schmidt_of_matrix(jsa.values()),
        EntropyVariant::Magnitude => {
            schmidt_of_matrix(&jsa.values().map(|z| Complex64::new(z.norm(), 0.0)))
        }
    }
}

fn schmidt_of_matrix(m: &ComplexMatrix) -> Result<SchmidtSpectrum, ObservableError> {
    if m.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(ObservableError::DegenerateState);
    }
    SchmidtSpectrum::from_coefficients(svd(m)?.singular_values)
}

/// `S = −Σ r_n² ln r_n²` in nats, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(spectrum: &SchmidtSpectrum) -> f64 {
    let s: f64 = spectrum
        .values
        .iter()
        .map(|r| r * r)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum();
    s.max(0.0)
}

pub fn entropy_of(jsa: &JointSpectralAmplitude, variant: EntropyVariant) -> Result<f64, ObservableError> {
    Ok(von_neumann_entropy(&schmidt_with(jsa, variant)?))
}

/// Gaussian Wigner function `exp(−½ (α−ᾱ)† Θ⁻¹ (α−ᾱ)) / ((2π)^{d/2} √|det Θ|)`
/// at a real phase-space point α of length `d = dim Θ`.
pub fn wigner(
    theta: &ComplexMatrix,
    alpha: &[f64],
    mean: Option<&[f64]>,
) -> Result<f64, ObservableError> {
    let d = theta.nrows();
    if alpha.len() != d {
        return Err(ObservableError::PointDimension {
            expected: d,
            got: alpha.len(),
        });
    }
    if let Some(mean) = mean {
        if mean.len() != d {
            return Err(ObservableError::PointDimension {
                expected: d,
                got: mean.len(),
            });
        }
    }
    let shifted = ComplexMatrix::from_fn(d, 1, |i, _| {
        Complex64::new(alpha[i] - mean.map_or(0.0, |m| m[i]), 0.0)
    });
    let (solved, _) = linear_solve(theta, &shifted).map_err(|e| match e {
        NumError::SingularMatrix { .. } => ObservableError::SingularCovariance,
        other => ObservableError::Numeric(other),
    })?;
    let quadratic = (shifted.adjoint() * solved)[(0, 0)].re;
    let log_det = log_determinant(theta)?;
    if log_det.is_zero() {
        return Err(ObservableError::SingularCovariance);
    }
    let half_dim = d as f64 / 2.0;
    let log_norm = half_dim * (2.0 * std::f64::consts::PI).ln() + 0.5 * log_det.log_magnitude;
    Ok((-0.5 * quadratic - log_norm).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Purity {
    /// μ = 1/√|det Θ|.
    pub mu: f64,
    pub log_abs_det: f64,
    /// Phase of det Θ; 0 or π for an exactly Hermitian matrix.
    pub det_phase: f64,
}

/// Purity from the covariance determinant, computed in log space.
///
/// The formula is used as is: no vacuum-convention factor is applied, so
/// `Θ = I` gives μ = 1 and `Θ = ½I` gives μ = 2^{d/2}.
pub fn purity(theta: &CovarianceMatrix) -> Result<Purity, ObservableError> {
    purity_of_matrix(&theta.matrix)
}

pub fn purity_of_matrix(theta: &ComplexMatrix) -> Result<Purity, ObservableError> {
    let log_det = log_determinant(theta)?;
    if !log_det.log_magnitude.is_finite() {
        return Err(ObservableError::NonPositiveDeterminant {
            log_magnitude: log_det.log_magnitude,
            phase: log_det.phase,
        });
    }
    Ok(Purity {
        mu: (-0.5 * log_det.log_magnitude).exp(),
        log_abs_det: log_det.log_magnitude,
        det_phase: log_det.phase,
    })
}
