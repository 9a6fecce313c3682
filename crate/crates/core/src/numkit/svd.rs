use nalgebra::SVD;

use super::{check_finite, ComplexMatrix, NumError};

/// `M = U · diag(σ) · V†` with σ nonincreasing.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.singular_values.len();
        let mut us = self.u.columns(0, k).into_owned();
        for (j, s) in self.singular_values.iter().enumerate() {
            us.column_mut(j).scale_mut(*s);
        }
        us * self.v.columns(0, k).adjoint()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvdOptions {
    pub max_iterations: usize,
    pub eps: f64,
}

impl Default for SvdOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            eps: f64::EPSILON,
        }
    }
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd, NumError> {
    svd_with(m, &SvdOptions::default())
}

pub fn svd_with(m: &ComplexMatrix, opts: &SvdOptions) -> Result<Svd, NumError> {
    check_finite(m)?;
    let decomposition = SVD::try_new(m.clone(), true, true, opts.eps, opts.max_iterations).ok_or(
        NumError::ConvergenceFailure {
            what: "SVD",
            max_iterations: opts.max_iterations,
        },
    )?;
    let u = decomposition.u.expect("left singular vectors requested");
    let v_t = decomposition.v_t.expect("right singular vectors requested");
    let mut singular_values: Vec<f64> = decomposition.singular_values.iter().copied().collect();
    // nalgebra sorts already; small cases take a closed-form path, so re-check.
    if singular_values.windows(2).any(|w| w[0] < w[1]) {
        let mut order: Vec<usize> = (0..singular_values.len()).collect();
        order.sort_by(|&i, &j| singular_values[j].total_cmp(&singular_values[i]));
        let u_sorted = ComplexMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
        let v = v_t.adjoint();
        let v_sorted = ComplexMatrix::from_fn(v.nrows(), order.len(), |r, c| v[(r, order[c])]);
        singular_values = order.iter().map(|&i| singular_values[i]).collect();
        return Ok(Svd {
            u: u_sorted,
            singular_values,
            v: v_sorted,
        });
    }
    Ok(Svd {
        u,
        singular_values,
        v: v_t.adjoint(),
    })
}
