use num_complex::Complex64;

use super::{check_finite, check_square, ComplexMatrix, NumError};

/// `e^{M t}` by Padé scaling and squaring (nalgebra's implementation).
pub fn matrix_exponential(m: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, NumError> {
    check_square(m)?;
    check_finite(m)?;
    if !t.is_finite() {
        return Err(NumError::NonFinite { row: 0, col: 0 });
    }
    Ok((m * Complex64::new(t, 0.0)).exp())
}
