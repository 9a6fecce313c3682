use num_complex::Complex64;

use super::{check_finite, check_square, ComplexMatrix, NumError};

/// `det = exp(log_magnitude) · e^{i·phase}`; `log_magnitude = −∞` for a singular matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDeterminant {
    pub log_magnitude: f64,
    pub phase: f64,
}

impl LogDeterminant {
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.log_magnitude.exp(), self.phase)
    }

    pub fn is_zero(&self) -> bool {
        self.log_magnitude == f64::NEG_INFINITY
    }
}

/// Product of LU pivots with permutation sign. Overflows for large, badly
/// scaled matrices; use [`log_determinant`] there.
pub fn determinant(m: &ComplexMatrix) -> Result<Complex64, NumError> {
    check_square(m)?;
    check_finite(m)?;
    Ok(m.clone().lu().determinant())
}

pub fn log_determinant(m: &ComplexMatrix) -> Result<LogDeterminant, NumError> {
    let n = check_square(m)?;
    check_finite(m)?;
    let lu = m.clone().lu();
    let sign: f64 = lu.p().determinant();
    let u = lu.u();
    let mut log_magnitude = 0.0;
    let mut phase = if sign < 0.0 { std::f64::consts::PI } else { 0.0 };
    for i in 0..n {
        let pivot = u[(i, i)];
        let r = pivot.norm();
        if r == 0.0 {
            return Ok(LogDeterminant {
                log_magnitude: f64::NEG_INFINITY,
                phase: 0.0,
            });
        }
        log_magnitude += r.ln();
        phase += pivot.arg();
    }
    // Wrap into (−π, π].
    let phase = Complex64::from_polar(1.0, phase).arg();
    Ok(LogDeterminant {
        log_magnitude,
        phase,
    })
}
