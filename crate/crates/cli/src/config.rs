//! Run configuration (TOML).
//!
//! ```toml
//! schema_version = 1
//!
//! [grid]                      # omitted when the input is a file
//! n = 64
//! signal_range = [1740.0, 1860.0]
//! idler_range = [1740.0, 1860.0]
//! units = "meV"               # or "nm"; ranges are converted to meV
//!
//! [system]
//! omega_c = 1809.0
//! material_freqs = [1809.0]
//! g = 0.1
//! sqrt_kappa = 488.0
//! epsilon = 1e-3
//!
//! [input]
//! kind = "gaussian"           # or kind = "file" with path = "jsi.csv"
//! omega_s = 1790.0
//! omega_i = 1819.0
//! sum_width = 10.0
//! diff_width = 3.0
//!
//! [sweep]                     # used by `sweep` only
//! parameter = "sqrt_kappa"    # sqrt_kappa | g | epsilon | omega_c
//! values = [50.0, 150.0, 300.0, 488.0]
//! material_counts = [1, 2]
//!
//! [output]
//! dir = "out"
//!
//! [flags]
//! continuum_scaling = false
//! sign_convention = "as_printed"   # or "antisymmetric"
//! entropy_variant = "amplitude"    # or "magnitude"
//! ```

use std::path::{Path, PathBuf};

use biphoton::model::{build_grid, nm_to_mev, FrequencyGrid, MaterialCouplingSign, SystemParams};
use biphoton::observables::EntropyVariant;
use biphoton::states::{gaussian_jsa, jsa_from_jsi, load_jsi, GaussianJsaParams, JointSpectralAmplitude};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable that overrides the configured output directory.
pub const OUTPUT_DIR_ENV: &str = "BIPHOTON_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    pub system: SystemSpec,
    pub input: InputSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: usize,
    pub signal_range: [f64; 2],
    pub idler_range: [f64; 2],
    #[serde(default)]
    pub units: Units,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Units {
    #[default]
    #[serde(rename = "meV")]
    MilliElectronVolt,
    #[serde(rename = "nm")]
    Nanometer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub omega_c: f64,
    #[serde(default)]
    pub material_freqs: Vec<f64>,
    pub g: f64,
    #[serde(default)]
    pub sqrt_kappa: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_epsilon() -> f64 {
    1e-3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InputSpec {
    Gaussian {
        omega_s: f64,
        omega_i: f64,
        sum_width: f64,
        diff_width: f64,
    },
    File {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    SqrtKappa,
    G,
    Epsilon,
    OmegaC,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::SqrtKappa => "sqrt_kappa",
            SweepParameter::G => "g",
            SweepParameter::Epsilon => "epsilon",
            SweepParameter::OmegaC => "omega_c",
        }
    }

    pub fn apply(self, params: &mut SystemParams, value: f64) {
        match self {
            SweepParameter::SqrtKappa => params.sqrt_kappa = value,
            SweepParameter::G => params.g = value,
            SweepParameter::Epsilon => params.epsilon = value,
            SweepParameter::OmegaC => params.omega_c = value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    /// Material counts to repeat the sweep for; defaults to the configured count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material_counts: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    #[default]
    AsPrinted,
    Antisymmetric,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyVariantSpec {
    #[default]
    Amplitude,
    Magnitude,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub continuum_scaling: bool,
    #[serde(default)]
    pub sign_convention: SignConvention,
    #[serde(default)]
    pub entropy_variant: EntropyVariantSpec,
}

impl Flags {
    pub fn entropy_variant(&self) -> EntropyVariant {
        match self.entropy_variant {
            EntropyVariantSpec::Amplitude => EntropyVariant::Amplitude,
            EntropyVariantSpec::Magnitude => EntropyVariant::Magnitude,
        }
    }
}

impl RunConfig {
    /// Parses and validates; relative input paths are resolved against `base_dir`.
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self> {
        let mut config: RunConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if let InputSpec::File { path } = &mut config.input {
            if path.is_relative() {
                *path = base_dir.join(&*path);
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_toml_str(&text, base)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        match (&self.input, &self.grid) {
            (InputSpec::Gaussian { .. }, None) => {
                return bad("a gaussian input needs a [grid] section".into())
            }
            (InputSpec::File { .. }, Some(_)) => {
                return bad("[grid] must be omitted for a file input: the grid comes from the file".into())
            }
            _ => {}
        }
        if let Some(grid) = &self.grid {
            if grid.n == 0 {
                return bad("grid.n must be at least 1".into());
            }
        }
        self.system_params()
            .validate()
            .map_err(|e| CliError::Config(format!("[system]: {e}")))?;
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return bad("sweep.values is empty".into());
            }
            if let Some(x) = sweep.values.iter().find(|x| !x.is_finite()) {
                return bad(format!("sweep value {x} is not finite"));
            }
            for (i, a) in sweep.values.iter().enumerate() {
                if sweep.values[..i].contains(a) {
                    return bad(format!("sweep value {a} appears twice"));
                }
            }
            if let Some(counts) = &sweep.material_counts {
                if counts.is_empty() {
                    return bad("sweep.material_counts is empty".into());
                }
                for (i, m) in counts.iter().enumerate() {
                    if counts[..i].contains(m) {
                        return bad(format!("material count {m} appears twice"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn system_params(&self) -> SystemParams {
        let s = &self.system;
        let mut params = SystemParams::new(s.omega_c, s.material_freqs.clone(), s.g, s.sqrt_kappa);
        params.epsilon = s.epsilon;
        params.continuum_scaling = self.flags.continuum_scaling;
        params.coupling_sign = match self.flags.sign_convention {
            SignConvention::AsPrinted => MaterialCouplingSign::AsPrinted,
            SignConvention::Antisymmetric => MaterialCouplingSign::Antisymmetric,
        };
        params
    }

    pub fn frequency_grid(&self) -> Result<Option<FrequencyGrid>> {
        let Some(spec) = &self.grid else {
            return Ok(None);
        };
        let to_mev = |r: [f64; 2]| -> Result<(f64, f64)> {
            match spec.units {
                Units::MilliElectronVolt => Ok((r[0], r[1])),
                Units::Nanometer => {
                    let conv = |x| nm_to_mev(x).map_err(|e| CliError::Config(e.to_string()));
                    let (a, b) = (conv(r[0])?, conv(r[1])?);
                    Ok((a.min(b), a.max(b)))
                }
            }
        };
        build_grid(spec.n, to_mev(spec.signal_range)?, to_mev(spec.idler_range)?)
            .map(Some)
            .map_err(|e| CliError::Config(format!("[grid]: {e}")))
    }

    pub fn input_jsa(&self) -> Result<JointSpectralAmplitude> {
        match &self.input {
            InputSpec::Gaussian {
                omega_s,
                omega_i,
                sum_width,
                diff_width,
            } => {
                let grid = self.frequency_grid()?.expect("validated: gaussian input has a grid");
                let params = GaussianJsaParams::peaked_at(*omega_s, *omega_i, *sum_width, *diff_width);
                gaussian_jsa(&grid, &params).map_err(|e| CliError::Config(format!("[input]: {e}")))
            }
            InputSpec::File { path } => {
                let jsi = load_jsi(path)
                    .map_err(|e| CliError::Config(format!("input file {}: {e}", path.display())))?;
                Ok(jsa_from_jsi(&jsi))
            }
        }
    }

    /// `--out` beats the environment variable, which beats `[output] dir`.
    pub fn output_dir(&self, cli: Option<&Path>, env: Option<&str>) -> PathBuf {
        cli.map(Path::to_path_buf)
            .or_else(|| env.filter(|s| !s.is_empty()).map(PathBuf::from))
            .or_else(|| self.output.dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"))
    }
}
