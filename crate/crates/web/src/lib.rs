//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Three operations are exported: the input JSI of a Gaussian source, a full
//! propagation returning input and output JSI panels, and the output entropy
//! along a list of √κ values. Grids are square over 1740–1860 meV.

use biphoton::model::{build_grid, FrequencyGrid, SystemParams};
use biphoton::pipeline::{simulate, SimulationOptions};
use biphoton::states::{gaussian_jsa, GaussianJsaParams, JointSpectralAmplitude, JointSpectralIntensity};
use wasm_bindgen::prelude::*;

pub const RANGE: (f64, f64) = (1740.0, 1860.0);
pub const MAX_N: usize = 64;

#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub n: usize,
    pub omega_c: f64,
    pub materials: usize,
    pub g: f64,
    pub sqrt_kappa: f64,
    pub epsilon: f64,
    pub omega_s: f64,
    pub omega_i: f64,
    pub sum_width: f64,
    pub diff_width: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            n: 32,
            omega_c: 1809.0,
            materials: 1,
            g: 0.1,
            sqrt_kappa: 20.0,
            epsilon: 1e-3,
            omega_s: 1790.0,
            omega_i: 1819.0,
            sum_width: 10.0,
            diff_width: 3.0,
        }
    }
}

#[wasm_bindgen]
impl Scenario {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Scenario {
        Scenario::default()
    }

    /// Frequencies of the (shared) signal and idler axis in meV.
    pub fn axis(&self) -> Vec<f64> {
        self.grid().map(|g| g.signal_axis().to_vec()).unwrap_or_default()
    }
}

impl Scenario {
    fn grid(&self) -> Result<FrequencyGrid, String> {
        if !(2..=MAX_N).contains(&self.n) {
            return Err(format!("n must be between 2 and {MAX_N}, got {}", self.n));
        }
        build_grid(self.n, RANGE, RANGE).map_err(|e| e.to_string())
    }

    fn input(&self) -> Result<JointSpectralAmplitude, String> {
        let params = GaussianJsaParams::peaked_at(self.omega_s, self.omega_i, self.sum_width, self.diff_width);
        gaussian_jsa(&self.grid()?, &params).map_err(|e| e.to_string())
    }

    fn system(&self, sqrt_kappa: f64) -> SystemParams {
        let mut p = SystemParams::new(self.omega_c, vec![self.omega_c; self.materials], self.g, sqrt_kappa);
        p.epsilon = self.epsilon;
        p
    }
}

/// Input and output intensities on the same grid, row = signal, column = idler.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Panel {
    n: usize,
    input: Vec<f64>,
    output: Vec<f64>,
    pub entropy_in: f64,
    pub entropy_out: f64,
    pub total_variation: f64,
    pub lyapunov_residual: f64,
    pub epsilon_used: f64,
}

#[wasm_bindgen]
impl Panel {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major, normalized so that the maximum is 1.
    #[wasm_bindgen(getter)]
    pub fn input(&self) -> Vec<f64> {
        self.input.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn output(&self) -> Vec<f64> {
        self.output.clone()
    }
}

fn row_major_peak_one(jsi: &JointSpectralIntensity) -> Vec<f64> {
    let v = jsi.values();
    let max = v.max();
    let scale = if max > 0.0 { 1.0 / max } else { 0.0 };
    let (rows, cols) = v.shape();
    (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .map(|(i, j)| v[(i, j)] * scale)
        .collect()
}

pub fn compute_input(s: &Scenario) -> Result<Vec<f64>, String> {
    Ok(row_major_peak_one(&s.input()?.intensity()))
}

pub fn compute_panel(s: &Scenario) -> Result<Panel, String> {
    let jsa = s.input()?;
    let sim = simulate(&jsa, &s.system(s.sqrt_kappa), &SimulationOptions::default()).map_err(|e| e.to_string())?;
    Ok(Panel {
        n: s.n,
        input: row_major_peak_one(&sim.input_jsi),
        output: row_major_peak_one(&sim.output_jsi),
        entropy_in: sim.input_entropy,
        entropy_out: sim.output_entropy,
        total_variation: sim.input_jsi.total_variation(&sim.output_jsi).map_err(|e| e.to_string())?,
        lyapunov_residual: sim.diagnostics.lyapunov_residual,
        epsilon_used: sim.diagnostics.epsilon_used,
    })
}

pub fn compute_curve(s: &Scenario, kappas: &[f64]) -> Result<Vec<f64>, String> {
    let jsa = s.input()?;
    kappas
        .iter()
        .map(|&k| {
            simulate(&jsa, &s.system(k), &SimulationOptions::default())
                .map(|sim| sim.output_entropy)
                .map_err(|e| format!("sqrt(kappa) = {k}: {e}"))
        })
        .collect()
}

#[wasm_bindgen(js_name = inputJsi)]
pub fn input_jsi(s: &Scenario) -> Result<Vec<f64>, JsError> {
    compute_input(s).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = propagate)]
pub fn propagate_panel(s: &Scenario) -> Result<Panel, JsError> {
    compute_panel(s).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = entropyCurve)]
pub fn entropy_curve(s: &Scenario, kappas: Vec<f64>) -> Result<Vec<f64>, JsError> {
    compute_curve(s, &kappas).map_err(|e| JsError::new(&e))
}
