use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use biphoton::states::load_jsi;
use biphoton_cli::{commands, Overrides, RunConfig};

const BASE: &str = r#"
schema_version = 1

[grid]
n = 32
signal_range = [1740.0, 1860.0]
idler_range = [1740.0, 1860.0]

[system]
omega_c = 1809.0
material_freqs = [1809.0]
g = 0.1
sqrt_kappa = 488.0
epsilon = 1e-3

[input]
kind = "gaussian"
omega_s = 1790.0
omega_i = 1819.0
sum_width = 10.0
diff_width = 3.0
"#;

const SWEEP: &str = r#"
[sweep]
parameter = "sqrt_kappa"
values = [50.0, 150.0, 300.0, 488.0]
material_counts = [1, 2]
"#;

fn biphoton(args: &[&str], env_out: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_biphoton"));
    cmd.args(args).env_remove("BIPHOTON_OUT_DIR");
    if let Some(dir) = env_out {
        cmd.env("BIPHOTON_OUT_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn files_in(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(files_in(&path));
        } else {
            out.push(path);
        }
    }
    out.sort();
    out
}

fn assert_same_tree(a: &Path, b: &Path) {
    let fa = files_in(a);
    let fb = files_in(b);
    assert_eq!(fa.len(), fb.len());
    for (x, y) in fa.iter().zip(&fb) {
        assert_eq!(x.strip_prefix(a).unwrap(), y.strip_prefix(b).unwrap());
        assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap(), "{}", x.display());
    }
}

#[test]
fn run_writes_artifacts_and_keeps_peak() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "base.toml", BASE);
    let out = tmp.path().join("run");
    let result = biphoton(&["run", config.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    for name in [
        "input_jsi.csv",
        "output_jsi.csv",
        "input_jsi.pgm",
        "input_jsi.json",
        "output_jsi.pgm",
        "output_jsi.json",
        "schmidt.csv",
        "summary.json",
        "config.toml",
    ] {
        assert!(out.join(name).is_file(), "{name}");
    }
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    let spacing = 120.0 / 31.0;
    for k in 0..2 {
        let a = summary["input_argmax"][k].as_f64().unwrap();
        let b = summary["output_argmax"][k].as_f64().unwrap();
        assert!((a - b).abs() <= 2.0 * spacing + 1e-9);
    }
    assert!(summary["diagnostics"]["lyapunov_residual"].as_f64().unwrap() < 1e-8);
    assert!(summary["purity"]["mu"].as_f64().is_some());
    assert_eq!(summary["diagnostics"]["regularized"], false);
}

#[test]
fn free_run_reproduces_input_file() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "free.toml", &BASE.replace("g = 0.1", "g = 0.0"));
    let out = tmp.path().join("free");
    let result = biphoton(&["run", config.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert!(result.status.success());
    let input = load_jsi(&out.join("input_jsi.csv")).unwrap();
    let output = load_jsi(&out.join("output_jsi.csv")).unwrap();
    let diff = (input.values() - output.values()).abs().max();
    assert!(diff < 1e-8 * input.values().max(), "{diff}");
}

#[test]
fn file_input_runs_from_saved_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let first = tmp.path().join("first");
    let config = write_config(tmp.path(), "base.toml", BASE);
    assert!(biphoton(&["run", config.to_str().unwrap(), "--out", first.to_str().unwrap()], None).status.success());

    let file_config = format!(
        "schema_version = 1\n\n[system]\nomega_c = 1809.0\nmaterial_freqs = [1809.0]\ng = 0.0\n\n[input]\nkind = \"file\"\npath = \"first/input_jsi.csv\"\n"
    );
    let config = write_config(tmp.path(), "file.toml", &file_config);
    let second = tmp.path().join("second");
    let result = biphoton(&["run", config.to_str().unwrap(), "--out", second.to_str().unwrap()], None);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let a = load_jsi(&first.join("input_jsi.csv")).unwrap();
    let b = load_jsi(&second.join("output_jsi.csv")).unwrap();
    assert!((a.values() - b.values()).abs().max() < 1e-8 * a.values().max());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "base.toml", BASE);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for dir in [&a, &b] {
        assert!(biphoton(&["run", config.to_str().unwrap(), "--out", dir.to_str().unwrap()], None).status.success());
    }
    assert_same_tree(&a, &b);
}

#[test]
fn sweep_writes_one_row_per_point() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "sweep.toml", &format!("{BASE}{SWEEP}"));
    let out = tmp.path().join("sweep");
    let result = biphoton(&["sweep", config.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let csv = std::fs::read_to_string(out.join("entropy.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], commands::SWEEP_INDEX_HEADER);
    assert_eq!(lines.len(), 1 + 8);
    let mut seen = Vec::new();
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], "sqrt_kappa");
        seen.push((fields[1].to_string(), fields[2].to_string()));
        assert!(out.join(fields.last().unwrap()).join("summary.json").is_file());
    }
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 8);
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let tmp = tempfile::tempdir().unwrap();
    let text = format!("{BASE}{SWEEP}").replace("n = 32", "n = 12");
    let config = write_config(tmp.path(), "sweep.toml", &text);
    let one = tmp.path().join("one");
    let four = tmp.path().join("four");
    for (dir, threads) in [(&one, "1"), (&four, "4")] {
        let result = biphoton(
            &["sweep", config.to_str().unwrap(), "--out", dir.to_str().unwrap(), "--threads", threads],
            None,
        );
        assert!(result.status.success());
    }
    assert_same_tree(&one, &four);
}

#[test]
fn environment_overrides_config_output_dir() {
    let tmp = tempfile::tempdir().unwrap();
    let text = format!("{BASE}\n[output]\ndir = \"from_config\"\n").replace("n = 32", "n = 8");
    let config = write_config(tmp.path(), "c.toml", &text);
    let env_dir = tmp.path().join("from_env");
    let result = biphoton(&["run", config.to_str().unwrap()], Some(&env_dir));
    assert!(result.status.success());
    assert!(env_dir.join("summary.json").is_file());
}

#[test]
fn epsilon_flag_is_recorded() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "c.toml", &BASE.replace("n = 32", "n = 8"));
    let out = tmp.path().join("eps");
    let result = biphoton(
        &["run", config.to_str().unwrap(), "--out", out.to_str().unwrap(), "--epsilon", "0.01"],
        None,
    );
    assert!(result.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["diagnostics"]["epsilon_used"], 0.01);
}

#[test]
fn zero_epsilon_is_regularized_and_flagged() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "c.toml", &BASE.replace("n = 32", "n = 8"));
    let out = tmp.path().join("eps0");
    let result = biphoton(
        &["run", config.to_str().unwrap(), "--out", out.to_str().unwrap(), "--epsilon", "0"],
        None,
    );
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["diagnostics"]["regularized"], true);
    assert_eq!(summary["diagnostics"]["epsilon_used"], 1e-3);
}

#[test]
fn validate_passes() {
    let result = biphoton(&["validate"], None);
    let text = String::from_utf8_lossy(&result.stdout);
    assert!(result.status.success(), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
    assert!(!text.contains("FAIL"));
}

#[test]
fn config_errors_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write_config(tmp.path(), "bad.toml", &BASE.replace("schema_version = 1", "schema_version = 9"));
    assert_eq!(biphoton(&["run", bad.to_str().unwrap()], None).status.code(), Some(1));
    let missing = tmp.path().join("missing.toml");
    assert_eq!(biphoton(&["run", missing.to_str().unwrap()], None).status.code(), Some(1));
    let no_sweep = write_config(tmp.path(), "plain.toml", BASE);
    assert_eq!(biphoton(&["sweep", no_sweep.to_str().unwrap()], None).status.code(), Some(1));
}

#[test]
fn convert_round_trips_units() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "c.toml", &BASE.replace("n = 32", "n = 6"));
    let out = tmp.path().join("r");
    assert!(biphoton(&["run", config.to_str().unwrap(), "--out", out.to_str().unwrap()], None).status.success());
    let mev = out.join("input_jsi.csv");
    let nm = tmp.path().join("nm.csv");
    let back = tmp.path().join("back.csv");
    assert!(biphoton(&["convert", mev.to_str().unwrap(), nm.to_str().unwrap()], None).status.success());
    assert!(std::fs::read_to_string(&nm).unwrap().contains("# units: nm"));
    assert!(biphoton(&["convert", nm.to_str().unwrap(), back.to_str().unwrap(), "--to", "meV"], None)
        .status
        .success());
    let a = load_jsi(&mev).unwrap();
    let b = load_jsi(&back).unwrap();
    for (x, y) in a.grid().signal_axis().iter().zip(b.grid().signal_axis()) {
        assert!((x - y).abs() < 1e-9);
    }
    assert!((a.values() - b.values()).abs().max() < 1e-12 * a.values().max());
}

#[test]
fn library_run_matches_binary_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let text = BASE.replace("n = 32", "n = 8");
    let config = RunConfig::from_toml_str(&text, tmp.path()).unwrap();
    let out = tmp.path().join("lib");
    let outcome = commands::run(&config, &Overrides { out: Some(&out), epsilon: None }, None).unwrap();
    let path = write_config(tmp.path(), "c.toml", &text);
    let bin = tmp.path().join("bin");
    assert!(biphoton(&["run", path.to_str().unwrap(), "--out", bin.to_str().unwrap()], None).status.success());
    assert_eq!(outcome.dir, out);
    assert_same_tree(&out, &bin);
}

#[test]
fn solver_failure_exits_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let text = BASE.replace("n = 32", "n = 4").replace("g = 0.1", "g = 1e300");
    let config = write_config(tmp.path(), "huge.toml", &text);
    let out = tmp.path().join("huge");
    let result = biphoton(&["run", config.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("time-integrated covariance"));
}
