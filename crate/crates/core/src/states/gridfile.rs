//! CSV grid files for joint spectral intensities and amplitudes.
//!
//! ```text
//! # units: meV
//! wavelength_nm\omega,<idler_1>,<idler_2>,...
//! <signal_1>,<cell>,<cell>,...
//! <signal_2>,<cell>,<cell>,...
//! ```
//!
//! Axes may be given in meV or nm and must be strictly monotone. Intensity
//! cells are real; amplitude cells are written `re+imj`. On load, axes are
//! converted to meV, reordered ascending and checked for uniform spacing.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{JointSpectralAmplitude, JointSpectralIntensity, StateError};
use crate::model::{mev_to_nm, nm_to_mev, FrequencyGrid};

/// Literal in the top-left cell.
pub const CORNER_LABEL: &str = "wavelength_nm\\omega";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisUnits {
    MilliElectronVolt,
    Nanometer,
}

impl AxisUnits {
    pub fn label(self) -> &'static str {
        match self {
            AxisUnits::MilliElectronVolt => "meV",
            AxisUnits::Nanometer => "nm",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            s if s.eq_ignore_ascii_case("mev") => Some(AxisUnits::MilliElectronVolt),
            s if s.eq_ignore_ascii_case("nm") => Some(AxisUnits::Nanometer),
            _ => None,
        }
    }

    pub fn other(self) -> Self {
        match self {
            AxisUnits::MilliElectronVolt => AxisUnits::Nanometer,
            AxisUnits::Nanometer => AxisUnits::MilliElectronVolt,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridCells {
    Intensity(DMatrix<f64>),
    Amplitude(DMatrix<Complex64>),
}

/// A grid file as written on disk, before any unit conversion or reordering.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFile {
    pub units: AxisUnits,
    pub signal_axis: Vec<f64>,
    pub idler_axis: Vec<f64>,
    pub cells: GridCells,
}

fn parse_err(line: usize, message: impl Into<String>) -> StateError {
    StateError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_real(s: &str, line: usize) -> Result<f64, StateError> {
    let s = s.trim();
    let x: f64 = s
        .parse()
        .map_err(|_| parse_err(line, format!("invalid number {s:?}")))?;
    if !x.is_finite() {
        return Err(parse_err(line, format!("non-finite value {s:?}")));
    }
    Ok(x)
}

/// Parses `re+imj`, `re-imj`, `imj` or a plain real.
fn parse_complex(s: &str, line: usize) -> Result<Complex64, StateError> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('j') else {
        return Ok(Complex64::new(parse_real(s, line)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(
            parse_real(&body[..k], line)?,
            parse_real(&body[k..], line)?,
        )),
        None => Ok(Complex64::new(0.0, parse_real(body, line)?)),
    }
}

fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:e}{}{:e}j", z.re, sign, z.im.abs())
}

fn check_monotone(axis: &[f64], name: &str, line: usize) -> Result<(), StateError> {
    let increasing = axis.windows(2).all(|w| w[1] > w[0]);
    let decreasing = axis.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) {
        return Err(parse_err(line, format!("{name} axis is not strictly monotone")));
    }
    Ok(())
}

impl GridFile {
    pub fn parse(text: &str) -> Result<Self, StateError> {
        let mut units = None;
        let mut header: Option<(usize, Vec<f64>)> = None;
        let mut signal_axis = Vec::new();
        let mut rows: Vec<(usize, Vec<String>)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(rest) = comment.trim().strip_prefix("units:") {
                    let parsed = AxisUnits::parse(rest)
                        .ok_or_else(|| parse_err(line_no, format!("unknown units {:?}", rest.trim())))?;
                    units = Some(parsed);
                }
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            match &header {
                None => {
                    let corner = fields[0];
                    if corner != CORNER_LABEL && corner != "wavelength_nm\\\\omega" {
                        return Err(parse_err(
                            line_no,
                            format!("expected {CORNER_LABEL:?} in the corner cell, found {corner:?}"),
                        ));
                    }
                    let idler = fields[1..]
                        .iter()
                        .map(|f| parse_real(f, line_no))
                        .collect::<Result<Vec<_>, _>>()?;
                    if idler.is_empty() {
                        return Err(parse_err(line_no, "header has no idler axis values"));
                    }
                    check_monotone(&idler, "idler", line_no)?;
                    header = Some((line_no, idler));
                }
                Some((_, idler)) => {
                    if fields.len() != idler.len() + 1 {
                        return Err(parse_err(
                            line_no,
                            format!("expected {} fields, found {}", idler.len() + 1, fields.len()),
                        ));
                    }
                    signal_axis.push(parse_real(fields[0], line_no)?);
                    rows.push((line_no, fields[1..].iter().map(|s| s.to_string()).collect()));
                }
            }
        }

        let units = units.ok_or_else(|| parse_err(1, "missing '# units: meV' or '# units: nm' line"))?;
        let (header_line, idler_axis) = header.ok_or_else(|| parse_err(1, "missing header row"))?;
        if signal_axis.is_empty() {
            return Err(parse_err(header_line, "no data rows"));
        }
        check_monotone(&signal_axis, "signal", header_line)?;

        let complex = rows.iter().any(|(_, r)| r.iter().any(|c| c.ends_with('j')));
        let (n_rows, n_cols) = (rows.len(), idler_axis.len());
        let cells = if complex {
            let mut m = DMatrix::<Complex64>::zeros(n_rows, n_cols);
            for (i, (line_no, row)) in rows.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    m[(i, j)] = parse_complex(cell, *line_no)?;
                }
            }
            GridCells::Amplitude(m)
        } else {
            let mut m = DMatrix::<f64>::zeros(n_rows, n_cols);
            for (i, (line_no, row)) in rows.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    m[(i, j)] = parse_real(cell, *line_no)?;
                }
            }
            GridCells::Intensity(m)
        };

        Ok(Self {
            units,
            signal_axis,
            idler_axis,
            cells,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# units: {}", self.units.label());
        out.push_str(CORNER_LABEL);
        for x in &self.idler_axis {
            let _ = write!(out, ",{x}");
        }
        out.push('\n');
        for (i, s) in self.signal_axis.iter().enumerate() {
            let _ = write!(out, "{s}");
            for j in 0..self.idler_axis.len() {
                match &self.cells {
                    GridCells::Intensity(m) => {
                        let _ = write!(out, ",{:e}", m[(i, j)]);
                    }
                    GridCells::Amplitude(m) => {
                        let _ = write!(out, ",{}", format_complex(m[(i, j)]));
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn read(path: &Path) -> Result<Self, StateError> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), StateError> {
        fs::write(path, self.to_csv())?;
        Ok(())
    }

    /// Same grid with both axes expressed in `units`. Cell order is untouched.
    pub fn with_units(&self, units: AxisUnits) -> Result<Self, StateError> {
        if units == self.units {
            return Ok(self.clone());
        }
        let convert = |axis: &[f64]| -> Result<Vec<f64>, StateError> {
            axis.iter()
                .map(|&x| match units {
                    AxisUnits::Nanometer => mev_to_nm(x),
                    AxisUnits::MilliElectronVolt => nm_to_mev(x),
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(StateError::from)
        };
        Ok(Self {
            units,
            signal_axis: convert(&self.signal_axis)?,
            idler_axis: convert(&self.idler_axis)?,
            cells: self.cells.clone(),
        })
    }

    /// Axes in ascending meV and the permutation that puts cells in that order.
    fn mev_layout(&self) -> Result<(FrequencyGrid, Vec<usize>, Vec<usize>), StateError> {
        let mev = self.with_units(AxisUnits::MilliElectronVolt)?;
        let order = |axis: &[f64]| -> Vec<usize> {
            if axis.len() > 1 && axis[1] < axis[0] {
                (0..axis.len()).rev().collect()
            } else {
                (0..axis.len()).collect()
            }
        };
        let rows = order(&mev.signal_axis);
        let cols = order(&mev.idler_axis);
        let signal = rows.iter().map(|&i| mev.signal_axis[i]).collect();
        let idler = cols.iter().map(|&j| mev.idler_axis[j]).collect();
        Ok((FrequencyGrid::from_axes(signal, idler)?, rows, cols))
    }

    /// Unnormalized intensity on the ascending-meV grid.
    pub fn to_jsi(&self) -> Result<JointSpectralIntensity, StateError> {
        let GridCells::Intensity(m) = &self.cells else {
            return Err(parse_err(1, "expected real intensity cells, found complex amplitudes"));
        };
        let (grid, rows, cols) = self.mev_layout()?;
        let values = DMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])]);
        JointSpectralIntensity::new(grid, values)
    }

    /// Unnormalized amplitude on the ascending-meV grid; real cells are
    /// read as real amplitudes.
    pub fn to_jsa(&self) -> Result<JointSpectralAmplitude, StateError> {
        let (grid, rows, cols) = self.mev_layout()?;
        let values = match &self.cells {
            GridCells::Amplitude(m) => DMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])]),
            GridCells::Intensity(m) => DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
                Complex64::new(m[(rows[i], cols[j])], 0.0)
            }),
        };
        JointSpectralAmplitude::new(grid, values)
    }

    pub fn from_jsi(jsi: &JointSpectralIntensity, units: AxisUnits) -> Result<Self, StateError> {
        Self {
            units: AxisUnits::MilliElectronVolt,
            signal_axis: jsi.grid().signal_axis().to_vec(),
            idler_axis: jsi.grid().idler_axis().to_vec(),
            cells: GridCells::Intensity(jsi.values().clone()),
        }
        .with_units(units)
    }

    pub fn from_jsa(jsa: &JointSpectralAmplitude, units: AxisUnits) -> Result<Self, StateError> {
        Self {
            units: AxisUnits::MilliElectronVolt,
            signal_axis: jsa.grid().signal_axis().to_vec(),
            idler_axis: jsa.grid().idler_axis().to_vec(),
            cells: GridCells::Amplitude(jsa.values().clone()),
        }
        .with_units(units)
    }
}

/// Reads an intensity grid and normalizes it.
pub fn load_jsi(path: &Path) -> Result<JointSpectralIntensity, StateError> {
    GridFile::read(path)?.to_jsi()?.normalized()
}

pub fn save_jsi(jsi: &JointSpectralIntensity, path: &Path, units: AxisUnits) -> Result<(), StateError> {
    GridFile::from_jsi(jsi, units)?.write(path)
}

/// Reads an amplitude grid and normalizes it.
pub fn load_jsa(path: &Path) -> Result<JointSpectralAmplitude, StateError> {
    GridFile::read(path)?.to_jsa()?.normalized()
}

pub fn save_jsa(jsa: &JointSpectralAmplitude, path: &Path, units: AxisUnits) -> Result<(), StateError> {
    GridFile::from_jsa(jsa, units)?.write(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_grid;
    use crate::states::{gaussian_jsa, GaussianJsaParams};
    use proptest::prelude::*;

    #[test]
    fn two_by_two_identity_file() {
        let text = "# units: meV\nwavelength_nm\\omega,1,2\n1,1,0\n2,0,1\n";
        let jsi = GridFile::parse(text).unwrap().to_jsi().unwrap().normalized().unwrap();
        assert_eq!(jsi.grid().signal_axis(), &[1.0, 2.0]);
        assert_eq!(jsi.values()[(0, 0)], 0.5);
        assert_eq!(jsi.values()[(0, 1)], 0.0);
        assert_eq!(jsi.values()[(1, 1)], 0.5);
    }

    #[test]
    fn negative_cell_is_rejected() {
        let text = "# units: meV\nwavelength_nm\\omega,1,2\n1,1,-0.5\n2,0,1\n";
        assert!(matches!(
            GridFile::parse(text).unwrap().to_jsi(),
            Err(StateError::NegativeIntensity { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn malformed_files() {
        let cases = [
            ("wavelength_nm\\omega,1,2\n1,1,0\n2,0,1\n", "missing units"),
            ("# units: eV\nwavelength_nm\\omega,1,2\n1,1,0\n", "unknown units"),
            ("# units: meV\nfoo,1,2\n1,1,0\n", "bad corner"),
            ("# units: meV\nwavelength_nm\\omega,1,2\n1,1\n", "short row"),
            ("# units: meV\nwavelength_nm\\omega,1,2\n1,1,x\n", "bad number"),
            ("# units: meV\nwavelength_nm\\omega,1,1\n1,1,0\n", "flat axis"),
            ("# units: meV\nwavelength_nm\\omega,1,2\n", "no rows"),
        ];
        for (text, what) in cases {
            assert!(
                matches!(GridFile::parse(text), Err(StateError::Parse { .. })),
                "{what} should fail"
            );
        }
    }

    #[test]
    fn non_uniform_axis() {
        let text = "# units: meV\nwavelength_nm\\omega,1,2,4\n1,1,0,0\n2,0,1,0\n3,0,0,1\n";
        assert!(matches!(
            GridFile::parse(text).unwrap().to_jsi(),
            Err(StateError::Grid(crate::model::ModelError::NonUniformAxis { axis: "idler", .. }))
        ));
    }

    #[test]
    fn descending_axes_are_reordered() {
        let text = "# units: meV\nwavelength_nm\\omega,2,1\n3,1,2\n1,3,4\n";
        let jsi = GridFile::parse(text).unwrap().to_jsi().unwrap();
        assert_eq!(jsi.grid().signal_axis(), &[1.0, 3.0]);
        assert_eq!(jsi.grid().idler_axis(), &[1.0, 2.0]);
        // Original (signal 1, idler 1) = 4.
        assert_eq!(jsi.values()[(0, 0)], 4.0);
        assert_eq!(jsi.values()[(1, 1)], 1.0);
    }

    #[test]
    fn complex_cells() {
        for (s, z) in [
            ("1.5+2j", Complex64::new(1.5, 2.0)),
            ("-1e-3-2.5e-4j", Complex64::new(-1e-3, -2.5e-4)),
            ("3j", Complex64::new(0.0, 3.0)),
            ("0.25", Complex64::new(0.25, 0.0)),
            ("1E+2+1E-2j", Complex64::new(100.0, 0.01)),
        ] {
            assert_eq!(parse_complex(s, 1).unwrap(), z, "{s}");
        }
        assert_eq!(parse_complex(&format_complex(Complex64::new(-0.1, -0.0)), 1).unwrap(), Complex64::new(-0.1, 0.0));
    }

    #[test]
    fn nm_file_round_trip() {
        let grid = build_grid(16, (1740.0, 1860.0), (1740.0, 1860.0)).unwrap();
        let jsa = gaussian_jsa(&grid, &GaussianJsaParams::peaked_at(1790.0, 1819.0, 10.0, 3.0)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("jsa.csv");
        save_jsa(&jsa, &path, AxisUnits::Nanometer).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# units: nm\nwavelength_nm\\omega,"));
        let back = load_jsa(&path).unwrap();
        assert!((back.values() - jsa.values()).norm() < 1e-12);
        for (a, b) in back.grid().signal_axis().iter().zip(grid.signal_axis()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn jsi_save_load_round_trip(
            n in 1usize..8, lo in 100.0f64..2000.0, width in 1.0f64..200.0,
            cells in proptest::collection::vec(0.0f64..10.0, 64),
            nm in proptest::bool::ANY,
        ) {
            let grid = build_grid(n, (lo, lo + width), (lo + 1.0, lo + 1.0 + width)).unwrap();
            let mut values = DMatrix::from_fn(n, n, |i, j| cells[i * 8 + j]);
            values[(0, 0)] += 1.0;
            let jsi = JointSpectralIntensity::new(grid, values).unwrap().normalized().unwrap();
            let units = if nm { AxisUnits::Nanometer } else { AxisUnits::MilliElectronVolt };
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("jsi.csv");
            save_jsi(&jsi, &path, units).unwrap();
            let back = load_jsi(&path).unwrap();
            let scale = jsi.values().max();
            prop_assert!((back.values() - jsi.values()).abs().max() <= 1e-12 * scale);
        }
    }
}
