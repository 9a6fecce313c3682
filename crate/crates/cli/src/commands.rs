//! `run`, `sweep` and `convert`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use biphoton::model::SystemParams;
use biphoton::observables::schmidt_with;
use biphoton::pipeline::{simulate, Diagnostics, PipelineError, Simulation, SimulationOptions};
use biphoton::states::{save_jsi, AxisUnits, GridFile, JointSpectralAmplitude};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RunConfig, SCHEMA_VERSION};
use crate::error::{CliError, Result};
use crate::heatmap::render_heatmap;

pub const PURITY_NOTE: &str = "mu = 1/sqrt(|det Theta_out|) with no vacuum rescaling: Theta = I gives 1, Theta = I/2 gives 2^(d/2)";

#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides<'a> {
    pub out: Option<&'a Path>,
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PuritySummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_abs_det: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_phase: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsSummary {
    pub epsilon_used: f64,
    pub regularized: bool,
    pub lyapunov_residual: f64,
    pub scattering_solve_residual: f64,
    pub scattering_defining_residual: f64,
    pub reduced_form_gap: f64,
    pub output_hermiticity: f64,
    pub lyapunov_condition: Option<f64>,
}

impl From<Diagnostics> for DiagnosticsSummary {
    fn from(d: Diagnostics) -> Self {
        Self {
            epsilon_used: d.epsilon_used,
            regularized: d.regularized,
            lyapunov_residual: d.lyapunov_residual,
            scattering_solve_residual: d.scattering_solve_residual,
            scattering_defining_residual: d.scattering_defining_residual,
            reduced_form_gap: d.reduced_form_gap,
            output_hermiticity: d.output_hermiticity,
            lyapunov_condition: d.lyapunov_condition,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub schema_version: u32,
    pub entropy_units: &'static str,
    pub entropy_input: f64,
    pub entropy_output: f64,
    pub purity: PuritySummary,
    pub input_argmax: [f64; 2],
    pub output_argmax: [f64; 2],
    pub total_variation: f64,
    pub diagnostics: DiagnosticsSummary,
}

impl RunSummary {
    fn from_simulation(sim: &Simulation) -> Result<Self> {
        let grid = sim.input_jsi.grid();
        let at = |(i, j): (usize, usize)| [grid.signal_axis()[i], grid.idler_axis()[j]];
        let purity = match &sim.purity {
            Ok(p) => PuritySummary {
                mu: Some(p.mu),
                log_abs_det: Some(p.log_abs_det),
                det_phase: Some(p.det_phase),
                error: None,
                note: PURITY_NOTE,
            },
            Err(e) => PuritySummary {
                mu: None,
                log_abs_det: None,
                det_phase: None,
                error: Some(e.clone()),
                note: PURITY_NOTE,
            },
        };
        let total_variation = sim
            .input_jsi
            .total_variation(&sim.output_jsi)
            .map_err(|e| CliError::Solver(e.to_string()))?;
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            entropy_units: "nats",
            entropy_input: sim.input_entropy,
            entropy_output: sim.output_entropy,
            purity,
            input_argmax: at(sim.input_jsi.argmax()),
            output_argmax: at(sim.output_jsi.argmax()),
            total_variation,
            diagnostics: sim.diagnostics.into(),
        })
    }
}

fn pipeline_error(e: PipelineError) -> CliError {
    match e {
        PipelineError::Model(e) => CliError::Config(e.to_string()),
        PipelineError::State(e) => CliError::Config(e.to_string()),
        other => CliError::Solver(other.to_string()),
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let json = serde_json::to_string_pretty(value).expect("summary serializes");
    write_text(path, &(json + "\n"))
}

fn save_grid(jsi: &biphoton::states::JointSpectralIntensity, path: &Path) -> Result<()> {
    save_jsi(jsi, path, AxisUnits::MilliElectronVolt).map_err(|e| match e {
        biphoton::states::StateError::Io(source) => CliError::io(path, source),
        other => CliError::Solver(other.to_string()),
    })
}

fn simulation_options(config: &RunConfig) -> SimulationOptions {
    SimulationOptions {
        entropy_variant: config.flags.entropy_variant(),
        ..SimulationOptions::default()
    }
}

fn apply_overrides(config: &RunConfig, overrides: &Overrides) -> Result<RunConfig> {
    let mut config = config.clone();
    if let Some(eps) = overrides.epsilon {
        config.system.epsilon = eps;
        config.validate()?;
    }
    Ok(config)
}

fn schmidt_table(sim: &Simulation, config: &RunConfig) -> Result<String> {
    let variant = config.flags.entropy_variant();
    let spectrum = |jsa: &JointSpectralAmplitude| {
        schmidt_with(jsa, variant).map_err(|e| CliError::Solver(e.to_string()))
    };
    let input = spectrum(&sim.input_jsa)?;
    let output = spectrum(&sim.output_jsa)?;
    let mut csv = String::from("index,input,output\n");
    for (k, (a, b)) in input.values().iter().zip(output.values()).enumerate() {
        writeln!(csv, "{k},{a:e},{b:e}").unwrap();
    }
    Ok(csv)
}

/// Writes the output artifacts of one simulation into `dir`.
fn write_point(sim: &Simulation, config: &RunConfig, dir: &Path, with_input: bool) -> Result<RunSummary> {
    create_dir(dir)?;
    if with_input {
        save_grid(&sim.input_jsi, &dir.join("input_jsi.csv"))?;
        render_heatmap(&sim.input_jsi, &dir.join("input_jsi.pgm"))?;
    }
    save_grid(&sim.output_jsi, &dir.join("output_jsi.csv"))?;
    render_heatmap(&sim.output_jsi, &dir.join("output_jsi.pgm"))?;
    write_text(&dir.join("schmidt.csv"), &schmidt_table(sim, config)?)?;
    let summary = RunSummary::from_simulation(sim)?;
    write_json(&dir.join("summary.json"), &summary)?;
    Ok(summary)
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub summary: RunSummary,
}

/// Single pipeline run. Artifacts: input/output JSI grids and heatmaps,
/// Schmidt coefficients, `summary.json` and the resolved `config.toml`.
pub fn run(config: &RunConfig, overrides: &Overrides, env_out: Option<&str>) -> Result<RunOutcome> {
    let config = apply_overrides(config, overrides)?;
    let dir = config.output_dir(overrides.out, env_out);
    let jsa = config.input_jsa()?;
    let sim = simulate(&jsa, &config.system_params(), &simulation_options(&config)).map_err(pipeline_error)?;
    let summary = write_point(&sim, &config, &dir, true)?;
    write_text(
        &dir.join("config.toml"),
        &toml::to_string(&config).map_err(|e| CliError::Config(e.to_string()))?,
    )?;
    Ok(RunOutcome { dir, summary })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub parameter: &'static str,
    pub value: f64,
    pub materials: usize,
    pub directory: String,
    pub summary: RunSummary,
}

pub const SWEEP_INDEX_HEADER: &str = "parameter,value,materials,entropy_input,entropy_output,purity_mu,epsilon_used,regularized,lyapunov_residual,reduced_form_gap,output_hermiticity,directory";

fn sweep_index(rows: &[SweepRow]) -> String {
    let mut csv = String::from(SWEEP_INDEX_HEADER);
    csv.push('\n');
    for r in rows {
        let s = &r.summary;
        let d = &s.diagnostics;
        let mu = s.purity.mu.map_or(String::from("nan"), |m| format!("{m:e}"));
        writeln!(
            csv,
            "{},{},{},{:e},{:e},{},{:e},{},{:e},{:e},{:e},{}",
            r.parameter,
            r.value,
            r.materials,
            s.entropy_input,
            s.entropy_output,
            mu,
            d.epsilon_used,
            d.regularized,
            d.lyapunov_residual,
            d.reduced_form_gap,
            d.output_hermiticity,
            r.directory,
        )
        .unwrap();
    }
    csv
}

/// Sweep over one parameter (and optionally over material counts). Points run
/// in parallel and write into their own `points/<name>` directory; the
/// coordinator writes `entropy.csv` once all points are done.
pub fn sweep(config: &RunConfig, overrides: &Overrides, env_out: Option<&str>) -> Result<(PathBuf, Vec<SweepRow>)> {
    let config = apply_overrides(config, overrides)?;
    let spec = config
        .sweep
        .clone()
        .ok_or_else(|| CliError::Config("`sweep` needs a [sweep] section".into()))?;
    let dir = config.output_dir(overrides.out, env_out);
    create_dir(&dir)?;
    let jsa = config.input_jsa()?;
    let base = config.system_params();
    let counts = spec
        .material_counts
        .clone()
        .unwrap_or_else(|| vec![base.material_count()]);
    let points: Vec<(usize, f64)> = counts
        .iter()
        .flat_map(|&m| spec.values.iter().map(move |&v| (m, v)))
        .collect();

    save_grid(&jsa.intensity().normalized().map_err(|e| CliError::Config(e.to_string()))?, &dir.join("input_jsi.csv"))?;
    let options = simulation_options(&config);
    let rows = points
        .par_iter()
        .map(|&(materials, value)| {
            let mut params: SystemParams = base.with_material_count(materials);
            spec.parameter.apply(&mut params, value);
            let name = format!("{}={}_M{}", spec.parameter.name(), value, materials);
            let sim = simulate(&jsa, &params, &options).map_err(|e| match pipeline_error(e) {
                CliError::Solver(msg) => CliError::Solver(format!("sweep point {name}: {msg}")),
                other => other,
            })?;
            let summary = write_point(&sim, &config, &dir.join("points").join(&name), false)?;
            Ok(SweepRow {
                parameter: spec.parameter.name(),
                value,
                materials,
                directory: format!("points/{name}"),
                summary,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    write_text(&dir.join("entropy.csv"), &sweep_index(&rows))?;
    write_text(
        &dir.join("config.toml"),
        &toml::to_string(&config).map_err(|e| CliError::Config(e.to_string()))?,
    )?;
    Ok((dir, rows))
}

/// Rewrites a grid file with its axes in `to` (default: the other unit).
pub fn convert(input: &Path, output: &Path, to: Option<AxisUnits>) -> Result<AxisUnits> {
    let file = GridFile::read(input).map_err(|e| match e {
        biphoton::states::StateError::Io(source) => CliError::io(input, source),
        other => CliError::Config(format!("{}: {other}", input.display())),
    })?;
    let target = to.unwrap_or(file.units.other());
    let converted = file
        .with_units(target)
        .map_err(|e| CliError::Config(format!("{}: {e}", input.display())))?;
    converted.write(output).map_err(|e| match e {
        biphoton::states::StateError::Io(source) => CliError::io(output, source),
        other => CliError::Config(other.to_string()),
    })?;
    Ok(target)
}
