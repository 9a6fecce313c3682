//! End-to-end run: input amplitude → output covariance → observables.

use thiserror::Error;

use crate::model::{build_dynamical_matrix, DynamicalMatrix, ModelError, SystemParams};
use crate::observables::{entropy_of, purity, EntropyVariant, ObservableError, Purity};
use crate::scattering::{extract_output_jsa, propagate, PropagationOptions, PropagationResult, ScatteringError};
use crate::states::{assemble_input_covariance, JointSpectralAmplitude, JointSpectralIntensity, StateError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("model: {0}")]
    Model(#[from] ModelError),
    #[error("propagation: {0}")]
    Scattering(#[from] ScatteringError),
    #[error("state: {0}")]
    State(#[from] StateError),
    #[error("observable: {0}")]
    Observable(#[from] ObservableError),
}

#[derive(Debug, Clone, Default)]
pub struct SimulationOptions {
    pub propagation: PropagationOptions,
    pub entropy_variant: EntropyVariant,
}

/// Residuals and flags collected along the way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub epsilon_used: f64,
    pub regularized: bool,
    pub lyapunov_residual: f64,
    pub scattering_solve_residual: f64,
    /// `‖S(W−z) − (W†−z)‖ / ‖W‖`.
    pub scattering_defining_residual: f64,
    /// Relative gap between the full and reduced output expressions.
    pub reduced_form_gap: f64,
    pub output_hermiticity: f64,
    pub lyapunov_condition: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub input_jsa: JointSpectralAmplitude,
    pub output_jsa: JointSpectralAmplitude,
    pub input_jsi: JointSpectralIntensity,
    /// Normalized output intensity.
    pub output_jsi: JointSpectralIntensity,
    pub input_entropy: f64,
    pub output_entropy: f64,
    /// Output purity; `Err` carries the message when the determinant vanishes.
    pub purity: Result<Purity, String>,
    pub diagnostics: Diagnostics,
    pub propagation: PropagationResult,
}

pub fn simulate(
    jsa: &JointSpectralAmplitude,
    params: &SystemParams,
    opts: &SimulationOptions,
) -> Result<Simulation, PipelineError> {
    let w = build_dynamical_matrix(jsa.grid(), params)?;
    simulate_with_generator(jsa, &w, params.epsilon, opts)
}

pub fn simulate_with_generator(
    jsa: &JointSpectralAmplitude,
    w: &DynamicalMatrix,
    epsilon: f64,
    opts: &SimulationOptions,
) -> Result<Simulation, PipelineError> {
    let theta_in = assemble_input_covariance(jsa, w.layout.materials);
    let result = propagate(&theta_in, w, epsilon, &opts.propagation)?;
    let output_jsa = extract_output_jsa(&result.theta_out, jsa.grid())?;
    let output_jsi = output_jsa.intensity().normalized()?;
    let input_jsi = jsa.intensity().normalized()?;

    let diagnostics = Diagnostics {
        epsilon_used: result.epsilon_used,
        regularized: result.regularized(),
        lyapunov_residual: result.lyapunov_report.residual_norm,
        scattering_solve_residual: result.scattering.report.residual_norm,
        scattering_defining_residual: result.scattering.defining_residual,
        reduced_form_gap: result.reduced_form_gap,
        output_hermiticity: result.theta_out.hermiticity_error(),
        lyapunov_condition: result.lyapunov_report.condition_estimate,
    };

    Ok(Simulation {
        input_entropy: entropy_of(jsa, opts.entropy_variant)?,
        output_entropy: entropy_of(&output_jsa, opts.entropy_variant)?,
        purity: purity(&result.theta_out).map_err(|e| e.to_string()),
        input_jsa: jsa.clone(),
        output_jsa,
        input_jsi,
        output_jsi,
        diagnostics,
        propagation: result,
    })
}
