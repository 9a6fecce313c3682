//! Brute-force time-domain references for the algebraic pipeline.
//!
//! Nothing here calls the Sylvester solver: the integrator works on the
//! differential equation `dΘ/dt = WΘ + ΘW†` directly and the quadrature sums
//! `e^{At} C e^{Bt}` on a uniform time grid.

use thiserror::Error;

use crate::numkit::{check_finite, matrix_exponential, spectrum, ComplexMatrix, NumError};

/// Largest admitted number of steps, `t_max / dt`.
pub const MAX_STEPS: f64 = 1e7;
/// State norm above which integration is abandoned.
pub const OVERFLOW_NORM: f64 = 1e12;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid integration config: {0}")]
    InvalidConfig(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("state norm {norm:e} exceeded the overflow limit at t = {time}")]
    StepOverflow { time: f64, norm: f64 },
    #[error("integral does not converge: max Re λ = {max_real_part:e}")]
    NonConvergentIntegral { max_real_part: f64 },
    #[error(transparent)]
    Numeric(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub t_max: f64,
    pub dt: f64,
}

impl IntegrationConfig {
    pub fn new(t_max: f64, dt: f64) -> Result<Self, OracleError> {
        let cfg = Self { t_max, dt };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(OracleError::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(OracleError::InvalidConfig(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        if self.t_max / self.dt > MAX_STEPS {
            return Err(OracleError::InvalidConfig(format!(
                "t_max/dt = {:e} exceeds {:e}",
                self.t_max / self.dt,
                MAX_STEPS
            )));
        }
        Ok(())
    }

    /// Number of steps; the step is shrunk so they tile `[0, t_max]` exactly.
    pub fn steps(&self) -> usize {
        ((self.t_max / self.dt) - 1e-9).ceil().max(1.0) as usize
    }

    pub fn step(&self) -> f64 {
        self.t_max / self.steps() as f64
    }
}

fn check_pair(w: &ComplexMatrix, theta: &ComplexMatrix) -> Result<(), OracleError> {
    if !w.is_square() || w.shape() != theta.shape() {
        return Err(OracleError::DimensionMismatch(format!(
            "W is {:?}, Θ is {:?}",
            w.shape(),
            theta.shape()
        )));
    }
    check_finite(w)?;
    check_finite(theta)?;
    Ok(())
}

/// Classic RK4 for `dΘ/dt = WΘ + ΘW†`, returning Θ(t_max).
pub fn integrate_sylvester(
    w: &ComplexMatrix,
    theta0: &ComplexMatrix,
    cfg: &IntegrationConfig,
) -> Result<ComplexMatrix, OracleError> {
    check_pair(w, theta0)?;
    cfg.validate()?;
    let wh = w.adjoint();
    let rhs = |x: &ComplexMatrix| w * x + x * &wh;
    let h = cfg.step();
    let mut theta = theta0.clone();
    for step in 0..cfg.steps() {
        let k1 = rhs(&theta);
        let k2 = rhs(&(&theta + &k1 * h_c(h / 2.0)));
        let k3 = rhs(&(&theta + &k2 * h_c(h / 2.0)));
        let k4 = rhs(&(&theta + &k3 * h_c(h)));
        theta += (k1 + (k2 + k3) * h_c(2.0) + k4) * h_c(h / 6.0);
        let norm = theta.norm();
        if !(norm <= OVERFLOW_NORM) {
            return Err(OracleError::StepOverflow {
                time: (step + 1) as f64 * h,
                norm,
            });
        }
    }
    Ok(theta)
}

fn h_c(x: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(x, 0.0)
}

#[derive(Debug, Clone)]
pub struct Quadrature {
    pub integral: ComplexMatrix,
    /// Estimate of the truncated tail, `‖integrand(t_max)‖_F / γ`.
    pub tail_bound: f64,
    /// Combined decay rate γ = −(max Re λ(A) + max Re λ(B)).
    pub decay_rate: f64,
    pub steps: usize,
    pub step: f64,
}

/// Trapezoidal approximation of `∫₀^{t_max} e^{W_ε t} Θ₀ e^{W_ε† t} dt`.
pub fn quadrature_time_integral(
    w_eps: &ComplexMatrix,
    theta0: &ComplexMatrix,
    t_max: f64,
    dt: f64,
) -> Result<Quadrature, OracleError> {
    check_pair(w_eps, theta0)?;
    quadrature_sylvester(w_eps, &w_eps.adjoint(), theta0, t_max, dt)
}

/// Trapezoidal approximation of `∫₀^{t_max} e^{At} C e^{Bt} dt` for stable A, B.
///
/// The sum `Σ_k E^k C F^k` with one-step propagators E, F is built by binary
/// doubling, so the cost is logarithmic in the number of steps.
pub fn quadrature_sylvester(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    t_max: f64,
    dt: f64,
) -> Result<Quadrature, OracleError> {
    if !a.is_square() || !b.is_square() || c.nrows() != a.nrows() || c.ncols() != b.nrows() {
        return Err(OracleError::DimensionMismatch(format!(
            "A is {:?}, B is {:?}, C is {:?}",
            a.shape(),
            b.shape(),
            c.shape()
        )));
    }
    check_finite(a)?;
    check_finite(b)?;
    check_finite(c)?;
    let cfg = IntegrationConfig::new(t_max, dt)?;
    let decay_rate = stability_margin(a)? + stability_margin(b)?;

    let n = cfg.steps();
    let h = cfg.step();
    let e = matrix_exponential(a, h)?;
    let f = matrix_exponential(b, h)?;

    let mut sum = ComplexMatrix::zeros(c.nrows(), c.ncols());
    let mut left = ComplexMatrix::identity(a.nrows(), a.nrows());
    let mut right = ComplexMatrix::identity(b.nrows(), b.nrows());
    for bit in (0..usize::BITS - n.leading_zeros()).rev() {
        sum += &left * &sum * &right;
        left = &left * &left;
        right = &right * &right;
        if (n >> bit) & 1 == 1 {
            sum = c + &e * &sum * &f;
            left = &e * &left;
            right = &right * &f;
        }
    }
    let last = &left * c * &right;
    let integral = (sum - c * h_c(0.5) + &last * h_c(0.5)) * h_c(h);
    Ok(Quadrature {
        integral,
        tail_bound: last.norm() / decay_rate,
        decay_rate,
        steps: n,
        step: h,
    })
}

/// `−max Re λ(m)`, or `NonConvergentIntegral` when that is not positive.
pub fn stability_margin(m: &ComplexMatrix) -> Result<f64, OracleError> {
    let max_real_part = spectrum(m, 100_000)?
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_real_part >= 0.0 {
        return Err(OracleError::NonConvergentIntegral { max_real_part });
    }
    Ok(-max_real_part)
}

/// Horizon at which a decay rate γ leaves a relative tail of `rel_tail`.
pub fn horizon_for(decay_rate: f64, rel_tail: f64) -> f64 {
    (1.0 / rel_tail).ln() / decay_rate
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let m = random_matrix(rng, n, 1.0);
        (&m + m.adjoint()) * c(0.5, 0.0)
    }

    #[test]
    fn config_validation() {
        assert!(IntegrationConfig::new(1.0, 0.0).is_err());
        assert!(IntegrationConfig::new(-1.0, 0.1).is_err());
        assert!(IntegrationConfig::new(1e8, 1.0).is_err());
        let cfg = IntegrationConfig::new(1.0, 0.3).unwrap();
        assert_eq!(cfg.steps(), 4);
        assert!((cfg.step() - 0.25).abs() < 1e-15);
        assert_eq!(IntegrationConfig::new(1.0, 0.25).unwrap().steps(), 4);
    }

    #[test]
    fn scalar_phase_keeps_modulus() {
        let w = ComplexMatrix::from_element(1, 1, c(0.0, -1809.0));
        let theta0 = ComplexMatrix::from_element(1, 1, c(0.7, 0.0));
        let out = integrate_sylvester(&w, &theta0, &IntegrationConfig::new(2.0, 1e-4).unwrap()).unwrap();
        assert!((out[(0, 0)] - theta0[(0, 0)]).norm() < 1e-12);
    }

    #[test]
    fn rk4_matches_exponential_at_small_t() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let w = random_matrix(&mut rng, 4, 1.0);
            let theta0 = random_hermitian(&mut rng, 4);
            let t = 0.3;
            let rk = integrate_sylvester(&w, &theta0, &IntegrationConfig::new(t, 1e-3).unwrap()).unwrap();
            let e = matrix_exponential(&w, t).unwrap();
            let exact = &e * &theta0 * e.adjoint();
            assert!((&rk - &exact).norm() < 1e-8, "{}", (&rk - &exact).norm());
            assert!(crate::numkit::hermiticity_error(&rk) < 1e-9 * t.max(1.0));
        }
    }

    #[test]
    fn rk4_is_fourth_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = random_matrix(&mut rng, 3, 1.0);
        let theta0 = random_hermitian(&mut rng, 3);
        let t = 1.0;
        let e = matrix_exponential(&w, t).unwrap();
        let exact = &e * &theta0 * e.adjoint();
        let err = |dt: f64| {
            let rk = integrate_sylvester(&w, &theta0, &IntegrationConfig::new(t, dt).unwrap()).unwrap();
            (&rk - &exact).norm()
        };
        let ratio = err(0.05) / err(0.025);
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn damped_state_decays() {
        let w = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(-0.5, -1.0), c(-1.0, 2.0)]));
        let theta0 = ComplexMatrix::identity(2, 2);
        let out = integrate_sylvester(&w, &theta0, &IntegrationConfig::new(40.0, 1e-2).unwrap()).unwrap();
        assert!(out.norm() < 1e-15);
    }

    #[test]
    fn growth_overflows() {
        let w = ComplexMatrix::from_element(1, 1, c(5.0, 0.0));
        let theta0 = ComplexMatrix::identity(1, 1);
        let err = integrate_sylvester(&w, &theta0, &IntegrationConfig::new(10.0, 1e-3).unwrap()).unwrap_err();
        assert!(matches!(err, OracleError::StepOverflow { .. }));
    }

    #[test]
    fn scalar_integral() {
        let eps = 1e-2;
        let w = ComplexMatrix::identity(3, 3) * c(-eps, 0.0);
        let theta0 = ComplexMatrix::identity(3, 3);
        let t_max = horizon_for(2.0 * eps, 1e-9);
        let q = quadrature_time_integral(&w, &theta0, t_max, 1e-2).unwrap();
        let expected = 1.0 / (2.0 * eps);
        for i in 0..3 {
            assert!((q.integral[(i, i)].re - expected).abs() < 1e-6 * expected);
        }
        assert!((q.decay_rate - 2.0 * eps).abs() < 1e-12);
        assert!(q.tail_bound < 1e-6 * expected);
    }

    #[test]
    fn odd_step_count_accumulates_correctly() {
        // Exact trapezoid sum for a scalar integrand e^{-t} over 7 steps.
        let w = ComplexMatrix::from_element(1, 1, c(-0.5, 0.0));
        let theta0 = ComplexMatrix::identity(1, 1);
        let q = quadrature_time_integral(&w, &theta0, 0.7, 0.1).unwrap();
        assert_eq!(q.steps, 7);
        let samples: Vec<f64> = (0..=7).map(|k| (-(k as f64) * 0.1).exp()).collect();
        let trap = 0.1 * (samples.iter().sum::<f64>() - 0.5 * (samples[0] + samples[7]));
        assert!((q.integral[(0, 0)].re - trap).abs() < 1e-14);
    }

    #[test]
    fn unstable_generator_is_rejected() {
        let w = ComplexMatrix::from_element(1, 1, c(0.0, -1.0));
        let theta0 = ComplexMatrix::identity(1, 1);
        assert!(matches!(
            quadrature_time_integral(&w, &theta0, 1.0, 0.1),
            Err(OracleError::NonConvergentIntegral { .. })
        ));
    }

    #[test]
    fn quadrature_matches_sylvester_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let a = random_matrix(&mut rng, 4, 1.0) - ComplexMatrix::identity(4, 4) * c(3.0, 0.0);
            let b = a.adjoint();
            let cm = random_hermitian(&mut rng, 4);
            let margin = stability_margin(&a).unwrap();
            let q = quadrature_sylvester(&a, &b, &cm, horizon_for(2.0 * margin, 1e-14), 2e-4).unwrap();
            let (x, _) = crate::numkit::solve_sylvester(&a, &b, &cm).unwrap();
            let rel = (&q.integral - &x).norm() / x.norm();
            assert!(rel < 1e-6, "rel {rel}");
        }
    }
}
