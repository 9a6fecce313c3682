//! Self-check suite on small instances (d <= 12).
//!
//! The Sylvester solver is injected so that a corrupted solver can be shown
//! to fail the suite.

use std::fmt::Write as _;
use std::time::Instant;

use biphoton::model::{build_dynamical_matrix, build_grid, MaterialCouplingSign, SystemParams};
use biphoton::numkit::{
    hermiticity_error, matrix_exponential, solve_sylvester, solve_sylvester_with, ComplexMatrix,
    DMatrix, NumError, SylvesterMethod, SylvesterOptions,
};
use biphoton::observables::{purity_of_matrix, schmidt, von_neumann_entropy};
use biphoton::oracle::{horizon_for, integrate_sylvester, quadrature_time_integral, stability_margin, IntegrationConfig};
use biphoton::pipeline::{simulate, SimulationOptions};
use biphoton::scattering::{propagate, scattering_matrix, PropagationOptions};
use biphoton::states::{assemble_input_covariance, gaussian_jsa, CovarianceMatrix, GaussianJsaParams, JointSpectralAmplitude};
use biphoton::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solves `A X + X B + C = 0`.
pub type SylvesterSolver<'a> =
    &'a (dyn Fn(&ComplexMatrix, &ComplexMatrix, &ComplexMatrix) -> Result<ComplexMatrix, NumError> + Sync);

pub const DEFAULT_SEED: u64 = 7;
const INSTANCES: usize = 20;

pub fn library_solver(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<ComplexMatrix, NumError> {
    solve_sylvester(a, b, c).map(|(x, _)| x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: String,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{verdict}  {:<36} measured {:.3e}  tolerance {:.1e}  {}",
                c.name, c.measured, c.tolerance, c.note
            )
            .unwrap();
        }
        let failed = self.failures().count();
        writeln!(
            out,
            "{} checks, {} failed, {:.1} s",
            self.checks.len(),
            failed,
            self.seconds
        )
        .unwrap();
        out
    }

    /// A NaN measurement fails.
    fn push(&mut self, name: &'static str, measured: f64, tolerance: f64, note: impl Into<String>) {
        self.checks.push(Check {
            name,
            measured,
            tolerance,
            passed: measured < tolerance,
            note: note.into(),
        });
    }
}

struct Instance {
    params: SystemParams,
    jsa: JointSpectralAmplitude,
}

fn random_instance(rng: &mut ChaCha8Rng, k: usize) -> Instance {
    let n = rng.gen_range(1..=4);
    let materials = rng.gen_range(0..=2);
    let axis = |rng: &mut ChaCha8Rng| {
        let lo = rng.gen_range(0.5..1.5);
        (lo, lo + if n == 1 { 0.0 } else { rng.gen_range(0.2..1.5) })
    };
    let signal = axis(rng);
    let idler = axis(rng);
    let grid = build_grid(n, signal, idler).expect("valid random grid");
    let freqs = (0..materials).map(|_| rng.gen_range(0.5..3.0)).collect();
    let mut params = SystemParams::new(rng.gen_range(0.5..3.0), freqs, rng.gen_range(0.05..0.5), 0.0);
    if materials > 0 && k % 3 != 0 {
        params.sqrt_kappa = rng.gen_range(0.1..1.0);
        params.coupling_sign = MaterialCouplingSign::Antisymmetric;
    }
    params.epsilon = if k % 2 == 0 { 1e-2 } else { 1e-3 };
    let values = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let jsa = JointSpectralAmplitude::new(grid, values)
        .and_then(JointSpectralAmplitude::normalized)
        .expect("nonzero random amplitude");
    Instance { params, jsa }
}

fn relative(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Worst value over instances, with failures to produce a value counted as +inf.
fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .fold(0.0, |acc: f64, v| if v.is_nan() { f64::INFINITY } else { acc.max(v) })
}

pub fn validate(seed: u64) -> ValidationReport {
    validate_with(&library_solver, seed)
}

pub fn validate_with(solver: SylvesterSolver, seed: u64) -> ValidationReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<Instance> = (0..INSTANCES).map(|k| random_instance(&mut rng, k)).collect();
    let mut report = ValidationReport::default();

    let mut oracle_err = Vec::new();
    let mut lyap_res = Vec::new();
    let mut kron_err = Vec::new();
    let mut max_dim = 0;
    for inst in &instances {
        let w = build_dynamical_matrix(inst.jsa.grid(), &inst.params).expect("valid random params");
        max_dim = max_dim.max(w.dim());
        let theta = assemble_input_covariance(&inst.jsa, inst.params.material_count()).matrix;
        let a = w.shifted(inst.params.epsilon);
        let b = a.adjoint();
        let x = match solver(&a, &b, &theta) {
            Ok(x) => x,
            Err(_) => {
                oracle_err.push(f64::INFINITY);
                continue;
            }
        };
        lyap_res.push((&a * &x + &x * &b + &theta).norm() / theta.norm());
        let kron = SylvesterOptions { method: SylvesterMethod::Kronecker, ..Default::default() };
        kron_err.push(match solve_sylvester_with(&a, &b, &theta, &kron) {
            Ok((xk, _)) => relative(&x, &xk),
            Err(_) => f64::INFINITY,
        });
        let margin = match stability_margin(&a) {
            Ok(m) => m,
            Err(_) => {
                oracle_err.push(f64::INFINITY);
                continue;
            }
        };
        oracle_err.push(match quadrature_time_integral(&a, &theta, horizon_for(2.0 * margin, 1e-8), 1e-3) {
            Ok(q) => relative(&x, &q.integral),
            Err(_) => f64::INFINITY,
        });
    }
    let note = format!("{INSTANCES} instances, d <= {max_dim}, eps in {{1e-2, 1e-3}}");
    report.push("oracle: solver vs time quadrature", worst(oracle_err), 1e-5, note.clone());
    report.push("solver: Lyapunov residual", worst(lyap_res), 1e-8, note.clone());
    report.push("solver: agreement with Kronecker", worst(kron_err), 1e-8, note);

    let opts = PropagationOptions::default();
    let mut gaps = Vec::new();
    let mut herm = Vec::new();
    let mut defining = Vec::new();
    for inst in &instances {
        let w = build_dynamical_matrix(inst.jsa.grid(), &inst.params).expect("valid random params");
        let d = w.dim();
        let m = DMatrix::from_fn(d, d, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let theta = CovarianceMatrix::new((&m + m.adjoint()) * Complex64::new(0.5, 0.0), w.layout);
        match propagate(&theta, &w, inst.params.epsilon, &opts) {
            Ok(r) => {
                gaps.push(r.reduced_form_gap);
                herm.push(r.theta_out.hermiticity_error());
            }
            Err(_) => {
                gaps.push(f64::INFINITY);
                herm.push(f64::INFINITY);
            }
        }
        defining.push(match scattering_matrix(&w, Complex64::new(inst.params.epsilon, 0.0)) {
            Ok(s) => s.defining_residual,
            Err(_) => f64::INFINITY,
        });
    }
    report.push("pipeline: verbatim vs reduced output", worst(gaps), 1e-8, "random Hermitian inputs");
    report.push("pipeline: output Hermiticity", worst(herm), 1e-8, "random Hermitian inputs");
    report.push("scattering: defining identity", worst(defining), 1e-10, "S(W - z) = W^dagger - z");

    let grid = build_grid(8, (1780.0, 1830.0), (1790.0, 1840.0)).expect("valid grid");
    let gauss = gaussian_jsa(&grid, &GaussianJsaParams::peaked_at(1800.0, 1819.0, 10.0, 3.0)).expect("valid widths");
    let free = SystemParams::new(1809.0, vec![1809.0], 0.0, 50.0);
    let identity_err = match simulate(&gauss, &free, &SimulationOptions::default()) {
        Ok(sim) => (sim.input_jsi.values() - sim.output_jsi.values()).abs().max() / sim.input_jsi.values().max(),
        Err(_) => f64::INFINITY,
    };
    report.push("pipeline: g = 0 leaves JSI unchanged", identity_err, 1e-8, "n = 8, sqrt(kappa) = 50");

    let separable = gaussian_jsa(&grid, &GaussianJsaParams::peaked_at(1800.0, 1819.0, 6.0, 6.0)).expect("valid widths");
    let s_sep = schmidt(&separable).map(|s| von_neumann_entropy(&s)).unwrap_or(f64::NAN);
    report.push("entropy: separable input", worst([s_sep.abs()]), 1e-10, "sigma+ = sigma-");
    let n = 8;
    let diag = JointSpectralAmplitude::new(grid.clone(), DMatrix::identity(n, n).map(|x: f64| Complex64::new(x, 0.0)))
        .expect("shape matches");
    let s_max = schmidt(&diag).map(|s| von_neumann_entropy(&s)).unwrap_or(f64::NAN);
    report.push("entropy: n equal Schmidt modes", worst([(s_max - (n as f64).ln()).abs()]), 1e-10, "S = ln 8");
    let unit = (1..=12)
        .map(|d| purity_of_matrix(&ComplexMatrix::identity(d, d)).map_or(f64::INFINITY, |p| (p.mu - 1.0).abs()));
    report.push("purity: identity covariance", worst(unit), 1e-15, "mu(I_d) = 1, d <= 12");

    let inst = &instances[0];
    let w = build_dynamical_matrix(inst.jsa.grid(), &inst.params).expect("valid random params");
    let theta = assemble_input_covariance(&inst.jsa, inst.params.material_count()).matrix;
    let a = w.shifted(inst.params.epsilon);
    let t = 0.5;
    let rk = IntegrationConfig::new(t, 1e-3).and_then(|cfg| integrate_sylvester(&a, &theta, &cfg));
    let rk_err = match (rk, matrix_exponential(&a, t)) {
        (Ok(rk), Ok(e)) => {
            let exact = &e * &theta * e.adjoint();
            relative(&rk, &exact).max(hermiticity_error(&rk))
        }
        _ => f64::INFINITY,
    };
    report.push("oracle: RK4 vs matrix exponential", rk_err, 1e-8, "t = 0.5, dt = 1e-3");

    report.seconds = start.elapsed().as_secs_f64();
    report
}
