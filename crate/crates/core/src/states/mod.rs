//! Input joint spectral amplitudes and the input covariance matrix.
//!
//! Amplitude and intensity grids are indexed `[signal, idler]`. The discrete
//! normalization is `Σ|F|² Δω_s Δω_i = 1`.

mod gridfile;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{BlockLayout, FrequencyGrid, ModelError};
use crate::numkit::{hermiticity_error, ComplexMatrix};

pub use gridfile::{
    load_jsa, load_jsi, save_jsa, save_jsi, AxisUnits, GridCells, GridFile, CORNER_LABEL,
};

#[derive(Debug, Error)]
pub enum StateError {
    #[error("gaussian width must be positive, got {0}")]
    DegenerateWidth(f64),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("grid values are {rows}x{cols} but the grid has {n} modes per channel")]
    ShapeMismatch { rows: usize, cols: usize, n: usize },
    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("negative intensity {value} at ({row}, {col})")]
    NegativeIntensity { row: usize, col: usize, value: f64 },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Grid(#[from] ModelError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Complex amplitude F(ω_s, ω_i) on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectralAmplitude {
    grid: FrequencyGrid,
    values: DMatrix<Complex64>,
}

impl JointSpectralAmplitude {
    pub fn new(grid: FrequencyGrid, values: DMatrix<Complex64>) -> Result<Self, StateError> {
        check_shape(&grid, values.nrows(), values.ncols())?;
        for ((row, col), z) in indexed(&values) {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(StateError::NonFinite { row, col });
            }
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &DMatrix<Complex64> {
        &self.values
    }

    /// `Σ|F|² Δω_s Δω_i`.
    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.cell_area()
    }

    pub fn normalized(mut self) -> Result<Self, StateError> {
        let norm = self.norm_squared();
        if !(norm > 0.0) {
            return Err(StateError::ZeroNorm);
        }
        let scale = Complex64::new(norm.sqrt().recip(), 0.0);
        self.values *= scale;
        Ok(self)
    }

    /// Unnormalized `|F|²`.
    pub fn intensity(&self) -> JointSpectralIntensity {
        JointSpectralIntensity {
            grid: self.grid.clone(),
            values: self.values.map(|z| z.norm_sqr()),
        }
    }
}

/// Nonnegative intensity |F|² on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectralIntensity {
    grid: FrequencyGrid,
    values: DMatrix<f64>,
}

impl JointSpectralIntensity {
    pub fn new(grid: FrequencyGrid, values: DMatrix<f64>) -> Result<Self, StateError> {
        check_shape(&grid, values.nrows(), values.ncols())?;
        for ((row, col), &value) in indexed(&values) {
            if !value.is_finite() {
                return Err(StateError::NonFinite { row, col });
            }
            if value < 0.0 {
                return Err(StateError::NegativeIntensity { row, col, value });
            }
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn total(&self) -> f64 {
        self.values.sum()
    }

    /// Scaled so that `Σ J Δω_s Δω_i = 1`.
    pub fn normalized(mut self) -> Result<Self, StateError> {
        let integral = self.total() * self.grid.cell_area();
        if !(integral > 0.0) {
            return Err(StateError::ZeroNorm);
        }
        self.values /= integral;
        Ok(self)
    }

    /// Scaled to unit sum over cells, the display normalization.
    pub fn unit_sum(&self) -> Result<DMatrix<f64>, StateError> {
        let total = self.total();
        if !(total > 0.0) {
            return Err(StateError::ZeroNorm);
        }
        Ok(&self.values / total)
    }

    /// `(signal index, idler index)` of the largest cell; first in row-major
    /// order on ties.
    pub fn argmax(&self) -> (usize, usize) {
        let n = self.grid.n();
        let mut best = (0, 0);
        let mut best_value = f64::NEG_INFINITY;
        for i in 0..n {
            for j in 0..n {
                if self.values[(i, j)] > best_value {
                    best_value = self.values[(i, j)];
                    best = (i, j);
                }
            }
        }
        best
    }

    /// Intensity-weighted mean `(ω_s, ω_i)`.
    pub fn centroid(&self) -> Result<(f64, f64), StateError> {
        let p = self.unit_sum()?;
        let mut s = 0.0;
        let mut i_mean = 0.0;
        for ((row, col), &w) in indexed(&p) {
            s += w * self.grid.signal_axis()[row];
            i_mean += w * self.grid.idler_axis()[col];
        }
        Ok((s, i_mean))
    }

    /// Fraction of the total intensity within `radius` (meV) of `center`.
    pub fn disk_mass(&self, center: (f64, f64), radius: f64) -> Result<f64, StateError> {
        let p = self.unit_sum()?;
        let r2 = radius * radius;
        Ok(indexed(&p)
            .filter(|((row, col), _)| {
                let ds = self.grid.signal_axis()[*row] - center.0;
                let di = self.grid.idler_axis()[*col] - center.1;
                ds * ds + di * di <= r2
            })
            .map(|(_, &w)| w)
            .sum())
    }

    /// Total variation distance between the unit-sum versions of two
    /// intensities on the same grid.
    pub fn total_variation(&self, other: &Self) -> Result<f64, StateError> {
        let n = self.grid.n();
        check_shape(&other.grid, n, n)?;
        let a = self.unit_sum()?;
        let b = other.unit_sum()?;
        Ok(0.5 * a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).sum::<f64>())
    }
}

fn check_shape(grid: &FrequencyGrid, rows: usize, cols: usize) -> Result<(), StateError> {
    let n = grid.n();
    if rows != n || cols != n {
        return Err(StateError::ShapeMismatch { rows, cols, n });
    }
    Ok(())
}

fn indexed<T>(m: &DMatrix<T>) -> impl Iterator<Item = ((usize, usize), &T)> {
    let rows = m.nrows();
    m.iter().enumerate().map(move |(k, v)| ((k % rows, k / rows), v))
}

/// Double Gaussian in sum and difference frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianJsaParams {
    /// Centre of ω_s + ω_i (meV).
    pub pump_center: f64,
    /// Width σ₊ along ω_s + ω_i (meV).
    pub sum_width: f64,
    /// Width σ₋ along ω_s − ω_i (meV).
    pub diff_width: f64,
    /// Centre Δ of ω_s − ω_i (meV).
    pub diff_offset: f64,
}

impl GaussianJsaParams {
    /// Parameters whose peak sits at `(omega_s, omega_i)`.
    pub fn peaked_at(omega_s: f64, omega_i: f64, sum_width: f64, diff_width: f64) -> Self {
        Self {
            pump_center: omega_s + omega_i,
            sum_width,
            diff_width,
            diff_offset: omega_s - omega_i,
        }
    }
}

/// `F ∝ exp(−(ω_s+ω_i−p)²/2σ₊²)·exp(−(ω_s−ω_i−Δ)²/2σ₋²)`, normalized.
pub fn gaussian_jsa(
    grid: &FrequencyGrid,
    params: &GaussianJsaParams,
) -> Result<JointSpectralAmplitude, StateError> {
    for width in [params.sum_width, params.diff_width] {
        if !(width.is_finite() && width > 0.0) {
            return Err(StateError::DegenerateWidth(width));
        }
    }
    let n = grid.n();
    let values = DMatrix::from_fn(n, n, |i, j| {
        let ws = grid.signal_axis()[i];
        let wi = grid.idler_axis()[j];
        let sum = (ws + wi - params.pump_center) / params.sum_width;
        let diff = (ws - wi - params.diff_offset) / params.diff_width;
        Complex64::new((-0.5 * (sum * sum + diff * diff)).exp(), 0.0)
    });
    JointSpectralAmplitude::new(grid.clone(), values)?.normalized()
}

/// Flat-phase amplitude `F = √J`. Measured intensities carry no phase; the
/// zero-phase choice is an assumption, not a reconstruction.
pub fn jsa_from_jsi(jsi: &JointSpectralIntensity) -> JointSpectralAmplitude {
    JointSpectralAmplitude {
        grid: jsi.grid.clone(),
        values: jsi.values.map(|x| Complex64::new(x.sqrt(), 0.0)),
    }
}

/// Hermitian second-moment matrix of the full mode vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    pub matrix: ComplexMatrix,
    pub layout: BlockLayout,
}

impl CovarianceMatrix {
    pub fn new(matrix: ComplexMatrix, layout: BlockLayout) -> Self {
        debug_assert_eq!(matrix.nrows(), layout.dim());
        Self { matrix, layout }
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn hermiticity_error(&self) -> f64 {
        hermiticity_error(&self.matrix)
    }

    /// The `[signal, idler]` off-diagonal block.
    pub fn signal_idler_block(&self) -> DMatrix<Complex64> {
        let n = self.layout.n;
        self.matrix
            .view((self.layout.signal().start, self.layout.idler().start), (n, n))
            .into_owned()
    }
}

/// Vacuum ½ on the diagonal, `F` in the signal–idler block, `F†` in the
/// idler–signal block, no cavity or material correlations.
pub fn assemble_input_covariance(jsa: &JointSpectralAmplitude, materials: usize) -> CovarianceMatrix {
    let layout = BlockLayout::new(jsa.grid.n(), materials);
    let d = layout.dim();
    let mut theta = DMatrix::<Complex64>::identity(d, d) * Complex64::new(0.5, 0.0);
    let n = layout.n;
    theta
        .view_mut((layout.signal().start, layout.idler().start), (n, n))
        .copy_from(&jsa.values);
    theta
        .view_mut((layout.idler().start, layout.signal().start), (n, n))
        .copy_from(&jsa.values.adjoint());
    CovarianceMatrix::new(theta, layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_grid;
    use proptest::prelude::*;

    fn reference_params() -> GaussianJsaParams {
        GaussianJsaParams {
            pump_center: 3609.0,
            sum_width: 10.0,
            diff_width: 3.0,
            diff_offset: -29.0,
        }
    }

    #[test]
    fn gaussian_peak_position() {
        let grid = build_grid(121, (1740.0, 1860.0), (1740.0, 1860.0)).unwrap();
        let jsa = gaussian_jsa(&grid, &reference_params()).unwrap();
        let (i, j) = jsa.intensity().argmax();
        assert_eq!(grid.signal_axis()[i], 1790.0);
        assert_eq!(grid.idler_axis()[j], 1819.0);
    }

    #[test]
    fn gaussian_rejects_zero_width() {
        let grid = build_grid(4, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let mut p = reference_params();
        p.diff_width = 0.0;
        assert!(matches!(
            gaussian_jsa(&grid, &p),
            Err(StateError::DegenerateWidth(_))
        ));
    }

    #[test]
    fn equal_widths_factorize() {
        let grid = build_grid(9, (0.0, 8.0), (1.0, 9.0)).unwrap();
        let p = GaussianJsaParams {
            pump_center: 9.0,
            sum_width: 2.0,
            diff_width: 2.0,
            diff_offset: 0.0,
        };
        let f = gaussian_jsa(&grid, &p).unwrap();
        let v = f.values();
        // Rank one: every 2×2 minor vanishes.
        for i in 1..9 {
            for j in 1..9 {
                let minor = v[(0, 0)] * v[(i, j)] - v[(0, j)] * v[(i, 0)];
                assert!(minor.norm() < 1e-14);
            }
        }
    }

    #[test]
    fn jsi_ops() {
        let grid = build_grid(2, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let jsi = JointSpectralIntensity::new(
            grid.clone(),
            DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]),
        )
        .unwrap()
        .normalized()
        .unwrap();
        assert!((jsi.values()[(0, 0)] - 0.5).abs() < 1e-15);
        assert_eq!(jsi.argmax(), (0, 0));
        let (cs, ci) = jsi.centroid().unwrap();
        assert!((cs - 0.5).abs() < 1e-15 && (ci - 0.5).abs() < 1e-15);
        assert!((jsi.disk_mass((0.0, 0.0), 0.1).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            JointSpectralIntensity::new(grid, DMatrix::from_row_slice(2, 2, &[1.0, -0.1, 0.0, 1.0])),
            Err(StateError::NegativeIntensity { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn flat_phase_reconstruction() {
        let grid = build_grid(8, (0.0, 7.0), (0.0, 7.0)).unwrap();
        let f = gaussian_jsa(&grid, &reference_params_small()).unwrap();
        let back = jsa_from_jsi(&f.intensity());
        assert!((back.values() - f.values()).norm() < 1e-15);

        let n = 8;
        let constant = 1.0 / (n * n) as f64 / grid.cell_area();
        let jsi = JointSpectralIntensity::new(grid.clone(), DMatrix::from_element(n, n, constant)).unwrap();
        let flat = jsa_from_jsi(&jsi);
        assert!(flat.values().iter().all(|z| (z.re - constant.sqrt()).abs() < 1e-15 && z.im == 0.0));
    }

    fn reference_params_small() -> GaussianJsaParams {
        GaussianJsaParams::peaked_at(3.0, 4.0, 3.0, 1.0)
    }

    #[test]
    fn covariance_single_mode_pattern() {
        let grid = build_grid(1, (1.0, 1.0), (2.0, 2.0)).unwrap();
        let f = Complex64::new(0.3, -0.2);
        let jsa = JointSpectralAmplitude::new(grid, DMatrix::from_element(1, 1, f)).unwrap();
        let theta = assemble_input_covariance(&jsa, 1);
        assert_eq!(theta.dim(), 4);
        assert_eq!(theta.matrix[(0, 1)], f);
        assert_eq!(theta.matrix[(1, 0)], f.conj());
        for i in 0..4 {
            assert_eq!(theta.matrix[(i, i)], Complex64::new(0.5, 0.0));
        }
        assert_eq!(theta.matrix[(2, 3)], Complex64::new(0.0, 0.0));
        assert_eq!(theta.matrix[(0, 2)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_amplitude_gives_vacuum() {
        let grid = build_grid(3, (0.0, 2.0), (0.0, 2.0)).unwrap();
        let jsa = JointSpectralAmplitude::new(grid, DMatrix::zeros(3, 3)).unwrap();
        let theta = assemble_input_covariance(&jsa, 2);
        let d = theta.dim();
        assert_eq!(theta.matrix, ComplexMatrix::identity(d, d) * Complex64::new(0.5, 0.0));
        assert!(matches!(jsa.normalized(), Err(StateError::ZeroNorm)));
    }

    proptest! {
        #[test]
        fn gaussian_is_normalized(
            n in 2usize..24, pump in 3550.0f64..3650.0, sp in 0.5f64..40.0,
            sm in 0.5f64..40.0, delta in -40.0f64..40.0,
        ) {
            let grid = build_grid(n, (1740.0, 1860.0), (1740.0, 1860.0)).unwrap();
            let params = GaussianJsaParams { pump_center: pump, sum_width: sp, diff_width: sm, diff_offset: delta };
            // Far-off-grid parameters can underflow to an all-zero grid.
            if let Ok(f) = gaussian_jsa(&grid, &params) {
                let direct: f64 = f.values().iter().map(|z| z.norm_sqr()).sum::<f64>()
                    * grid.signal_spacing() * grid.idler_spacing();
                prop_assert!((direct - 1.0).abs() < 1e-10);
            }
        }

        #[test]
        fn symmetric_gaussian_is_exchange_symmetric(
            n in 2usize..16, sp in 0.5f64..20.0, sm in 0.5f64..20.0,
        ) {
            let grid = build_grid(n, (1.0, 30.0), (1.0, 30.0)).unwrap();
            let params = GaussianJsaParams { pump_center: 31.0, sum_width: sp, diff_width: sm, diff_offset: 0.0 };
            let f = gaussian_jsa(&grid, &params).unwrap();
            let v = f.values();
            prop_assert!((v - v.transpose()).norm() < 1e-14);
        }

        #[test]
        fn input_covariance_is_hermitian(
            n in 1usize..6, m in 0usize..3,
            re in proptest::collection::vec(-1.0f64..1.0, 36),
            im in proptest::collection::vec(-1.0f64..1.0, 36),
        ) {
            let grid = build_grid(n, (0.0, 1.0), (0.0, 1.0)).unwrap();
            let values = DMatrix::from_fn(n, n, |i, j| Complex64::new(re[i * 6 + j], im[i * 6 + j]));
            let jsa = JointSpectralAmplitude::new(grid, values.clone()).unwrap();
            let theta = assemble_input_covariance(&jsa, m);
            prop_assert!((&theta.matrix - theta.matrix.adjoint()).norm() < 1e-12);
            for i in 0..theta.dim() {
                prop_assert_eq!(theta.matrix[(i, i)], Complex64::new(0.5, 0.0));
            }
            prop_assert_eq!(theta.signal_idler_block(), values);
        }
    }
}
