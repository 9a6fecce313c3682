//! Grayscale PGM heatmaps with a JSON sidecar describing the axes.

use std::path::{Path, PathBuf};

use biphoton::states::JointSpectralIntensity;
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    image: String,
    width: usize,
    height: usize,
    rows: &'static str,
    columns: &'static str,
    units: &'static str,
    /// Intensity mapped to 255; zero maps to 0.
    max_value: f64,
    signal_axis: &'a [f64],
    idler_axis: &'a [f64],
}

/// 8-bit pixels, row = signal index, column = idler index, linear in [0, max].
pub fn heatmap_pixels(jsi: &JointSpectralIntensity) -> Vec<u8> {
    let values = jsi.values();
    let max = values.max();
    let (rows, cols) = values.shape();
    let mut pixels = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let level = if max > 0.0 {
                (values[(i, j)].max(0.0) / max * 255.0).round()
            } else {
                0.0
            };
            pixels.push(level as u8);
        }
    }
    pixels
}

pub fn sidecar_path(image: &Path) -> PathBuf {
    image.with_extension("json")
}

/// Writes `path` as binary PGM (P5) and `path` with a `.json` extension.
pub fn render_heatmap(jsi: &JointSpectralIntensity, path: &Path) -> Result<()> {
    let (rows, cols) = jsi.values().shape();
    let mut bytes = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    bytes.extend(heatmap_pixels(jsi));
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))?;

    let sidecar = Sidecar {
        image: path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        width: cols,
        height: rows,
        rows: "signal, ascending",
        columns: "idler, ascending",
        units: "meV",
        max_value: jsi.values().max(),
        signal_axis: jsi.grid().signal_axis(),
        idler_axis: jsi.grid().idler_axis(),
    };
    let json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    let side = sidecar_path(path);
    std::fs::write(&side, json + "\n").map_err(|e| CliError::io(&side, e))
}
