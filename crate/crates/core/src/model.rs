//! Frequency grid, system parameters and the block dynamical matrix.
//!
//! Energies are in meV with ħ = 1, so times are in ħ/meV. The mode vector is
//! ordered `(signal₁…signalₙ, idler₁…idlerₙ, cavity, material₁…material_M)`.

use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::numkit::ComplexMatrix;

/// hc in meV·nm.
pub const HC_MEV_NM: f64 = 1_239_841.98;

const UNIFORMITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("{axis} axis is not uniformly spaced (spacing {min:.12e}..{max:.12e})")]
    NonUniformAxis {
        axis: &'static str,
        min: f64,
        max: f64,
    },
    #[error("{axis} axis is not strictly increasing at index {index}")]
    NonMonotoneAxis { axis: &'static str, index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("input must be strictly positive, got {0}")]
    NonPositiveInput(f64),
}

/// Discretized signal and idler axes, `n` modes each, uniform spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    signal: Vec<f64>,
    idler: Vec<f64>,
}

impl FrequencyGrid {
    /// Uniform axes inclusive of both endpoints; a single mode sits at the
    /// midpoint of its range.
    pub fn uniform(
        n: usize,
        signal_range: (f64, f64),
        idler_range: (f64, f64),
    ) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::InvalidRange("mode count must be at least 1".into()));
        }
        let signal = linspace(n, signal_range, "signal")?;
        let idler = linspace(n, idler_range, "idler")?;
        Ok(Self { signal, idler })
    }

    /// Validates explicit axes (same length, strictly increasing, uniform).
    pub fn from_axes(signal: Vec<f64>, idler: Vec<f64>) -> Result<Self, ModelError> {
        if signal.is_empty() || signal.len() != idler.len() {
            return Err(ModelError::InvalidRange(format!(
                "signal and idler axes must have the same nonzero length (got {} and {})",
                signal.len(),
                idler.len()
            )));
        }
        check_axis(&signal, "signal")?;
        check_axis(&idler, "idler")?;
        Ok(Self { signal, idler })
    }

    pub fn n(&self) -> usize {
        self.signal.len()
    }

    pub fn signal_axis(&self) -> &[f64] {
        &self.signal
    }

    pub fn idler_axis(&self) -> &[f64] {
        &self.idler
    }

    /// Δω_s; 1 meV for a single-mode axis.
    pub fn signal_spacing(&self) -> f64 {
        spacing(&self.signal)
    }

    pub fn idler_spacing(&self) -> f64 {
        spacing(&self.idler)
    }

    /// Δω_s·Δω_i, the weight of one cell in discrete integrals.
    pub fn cell_area(&self) -> f64 {
        self.signal_spacing() * self.idler_spacing()
    }

    /// Signal and idler roles exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            signal: self.idler.clone(),
            idler: self.signal.clone(),
        }
    }

    pub fn nearest_signal_index(&self, omega: f64) -> usize {
        nearest(&self.signal, omega)
    }

    pub fn nearest_idler_index(&self, omega: f64) -> usize {
        nearest(&self.idler, omega)
    }
}

pub fn build_grid(
    n: usize,
    signal_range: (f64, f64),
    idler_range: (f64, f64),
) -> Result<FrequencyGrid, ModelError> {
    FrequencyGrid::uniform(n, signal_range, idler_range)
}

fn linspace(n: usize, (lo, hi): (f64, f64), axis: &str) -> Result<Vec<f64>, ModelError> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(ModelError::InvalidRange(format!("{axis} range is not finite")));
    }
    if n == 1 {
        if lo > hi {
            return Err(ModelError::InvalidRange(format!(
                "{axis} range ({lo}, {hi}) is reversed"
            )));
        }
        return Ok(vec![0.5 * (lo + hi)]);
    }
    if !(lo < hi) {
        return Err(ModelError::InvalidRange(format!(
            "{axis} range ({lo}, {hi}) must satisfy min < max"
        )));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|k| if k == n - 1 { hi } else { lo + step * k as f64 })
        .collect())
}

fn check_axis(axis: &[f64], name: &'static str) -> Result<(), ModelError> {
    if let Some(index) = axis.iter().position(|x| !x.is_finite()) {
        return Err(ModelError::NonMonotoneAxis { axis: name, index });
    }
    if let Some(index) = axis.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(ModelError::NonMonotoneAxis {
            axis: name,
            index: index + 1,
        });
    }
    if axis.len() < 3 {
        return Ok(());
    }
    let steps: Vec<f64> = axis.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = (axis[axis.len() - 1] - axis[0]) / steps.len() as f64;
    let (min, max) = steps
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &s| (a.min(s), b.max(s)));
    if (max - mean).abs() > UNIFORMITY_TOLERANCE * mean
        || (mean - min).abs() > UNIFORMITY_TOLERANCE * mean
    {
        return Err(ModelError::NonUniformAxis { axis: name, min, max });
    }
    Ok(())
}

fn spacing(axis: &[f64]) -> f64 {
    if axis.len() < 2 {
        1.0
    } else {
        (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64
    }
}

fn nearest(axis: &[f64], omega: f64) -> usize {
    axis.iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| (*a - omega).abs().total_cmp(&(*b - omega).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Sign pattern of the cavity–material entries of the dynamical matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MaterialCouplingSign {
    /// `−√κ` in both the cavity row and the material row.
    #[default]
    AsPrinted,
    /// `+√κ` in the cavity row and `−√κ` in the material row, as obtained from
    /// the Heisenberg equations of `−i√κ(a S⁺ − a† S⁻)`. Makes `W` anti-Hermitian.
    Antisymmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Cavity frequency ω_c (meV).
    pub omega_c: f64,
    /// Material frequencies Ω_j (meV); empty for an empty cavity.
    pub material_freqs: Vec<f64>,
    /// Photon–cavity coupling g (meV), uniform over photon modes.
    pub g: f64,
    /// Cavity–material coupling √κ (meV).
    pub sqrt_kappa: f64,
    /// Laplace regularization ε (meV), applied at solve time.
    pub epsilon: f64,
    /// Scale g by √Δω per channel so that grid refinement has a continuum limit.
    pub continuum_scaling: bool,
    pub coupling_sign: MaterialCouplingSign,
}

impl SystemParams {
    pub fn new(omega_c: f64, material_freqs: Vec<f64>, g: f64, sqrt_kappa: f64) -> Self {
        Self {
            omega_c,
            material_freqs,
            g,
            sqrt_kappa,
            epsilon: 1e-3,
            continuum_scaling: false,
            coupling_sign: MaterialCouplingSign::AsPrinted,
        }
    }

    pub fn material_count(&self) -> usize {
        self.material_freqs.len()
    }

    /// Same parameters with `count` identical copies of the first material
    /// frequency (or of ω_c when none is configured).
    pub fn with_material_count(&self, count: usize) -> Self {
        let omega = self.material_freqs.first().copied().unwrap_or(self.omega_c);
        Self {
            material_freqs: vec![omega; count],
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let positive = |name: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(ModelError::InvalidParams(format!("{name} must be positive, got {x}")))
            }
        };
        let nonnegative = |name: &str, x: f64| {
            if x.is_finite() && x >= 0.0 {
                Ok(())
            } else {
                Err(ModelError::InvalidParams(format!(
                    "{name} must be nonnegative, got {x}"
                )))
            }
        };
        positive("omega_c", self.omega_c)?;
        for omega in &self.material_freqs {
            positive("material frequency", *omega)?;
        }
        nonnegative("g", self.g)?;
        nonnegative("sqrt_kappa", self.sqrt_kappa)?;
        nonnegative("epsilon", self.epsilon)?;
        Ok(())
    }
}

/// Index ranges of the blocks in the mode vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockLayout {
    pub n: usize,
    pub materials: usize,
}

impl BlockLayout {
    pub fn new(n: usize, materials: usize) -> Self {
        Self { n, materials }
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1 + self.materials
    }

    pub fn signal(&self) -> Range<usize> {
        0..self.n
    }

    pub fn idler(&self) -> Range<usize> {
        self.n..2 * self.n
    }

    pub fn cavity(&self) -> usize {
        2 * self.n
    }

    pub fn material(&self) -> Range<usize> {
        2 * self.n + 1..self.dim()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalMatrix {
    pub matrix: ComplexMatrix,
    pub layout: BlockLayout,
}

impl DynamicalMatrix {
    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    /// `W − εI`.
    pub fn shifted(&self, epsilon: f64) -> ComplexMatrix {
        let d = self.dim();
        &self.matrix - DMatrix::<Complex64>::identity(d, d) * Complex64::new(epsilon, 0.0)
    }
}

/// Generator of `dx/dt = W x`: photon modes rotate freely and couple to the
/// cavity through `−ig`; each material mode couples to the cavity only.
pub fn build_dynamical_matrix(
    grid: &FrequencyGrid,
    params: &SystemParams,
) -> Result<DynamicalMatrix, ModelError> {
    params.validate()?;
    let n = grid.n();
    let layout = BlockLayout::new(n, params.material_count());
    let d = layout.dim();
    let mut w = DMatrix::<Complex64>::zeros(d, d);
    let cavity = layout.cavity();

    let (g_signal, g_idler) = if params.continuum_scaling {
        (
            params.g * grid.signal_spacing().sqrt(),
            params.g * grid.idler_spacing().sqrt(),
        )
    } else {
        (params.g, params.g)
    };

    for (k, &omega) in grid.signal_axis().iter().enumerate() {
        let i = layout.signal().start + k;
        w[(i, i)] = Complex64::new(0.0, -omega);
        w[(i, cavity)] = Complex64::new(0.0, -g_signal);
        w[(cavity, i)] = Complex64::new(0.0, -g_signal);
    }
    for (k, &omega) in grid.idler_axis().iter().enumerate() {
        let i = layout.idler().start + k;
        w[(i, i)] = Complex64::new(0.0, -omega);
        w[(i, cavity)] = Complex64::new(0.0, -g_idler);
        w[(cavity, i)] = Complex64::new(0.0, -g_idler);
    }
    w[(cavity, cavity)] = Complex64::new(0.0, -params.omega_c);

    let kappa = params.sqrt_kappa;
    let (cavity_row, material_row) = match params.coupling_sign {
        MaterialCouplingSign::AsPrinted => (-kappa, -kappa),
        MaterialCouplingSign::Antisymmetric => (kappa, -kappa),
    };
    for (j, &omega) in params.material_freqs.iter().enumerate() {
        let m = layout.material().start + j;
        w[(m, m)] = Complex64::new(0.0, -omega);
        w[(cavity, m)] = Complex64::new(cavity_row, 0.0);
        w[(m, cavity)] = Complex64::new(material_row, 0.0);
    }

    Ok(DynamicalMatrix { matrix: w, layout })
}

pub fn mev_to_nm(energy_mev: f64) -> Result<f64, ModelError> {
    if !(energy_mev.is_finite() && energy_mev > 0.0) {
        return Err(ModelError::NonPositiveInput(energy_mev));
    }
    Ok(HC_MEV_NM / energy_mev)
}

pub fn nm_to_mev(wavelength_nm: f64) -> Result<f64, ModelError> {
    if !(wavelength_nm.is_finite() && wavelength_nm > 0.0) {
        return Err(ModelError::NonPositiveInput(wavelength_nm));
    }
    Ok(HC_MEV_NM / wavelength_nm)
}
