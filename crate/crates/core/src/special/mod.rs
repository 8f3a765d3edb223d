//! Density and CDF kernels for the central t, noncentral t and standard
//! normal distributions, plus Mills-ratio functions. Everything else in
//! the crate is built on top of these.

mod beta_inc;
mod erf;
mod gamma;
mod mills;
mod noncentral_t;
mod normal;
mod student_t;

pub use beta_inc::betainc_reg;
pub use erf::{erf, erfc};
pub use mills::{mills_asymptotic, mills_exact, mills_modified};
pub use noncentral_t::{ln_nct_pdf, nct_cdf, nct_pdf};
pub use normal::{ln_norm_pdf, norm_cdf, norm_pdf};
pub use student_t::{ln_t_pdf, t_cdf, t_pdf};

use crate::error::{Error, Result};

/// Degrees of freedom of a t distribution.
///
/// Values below one are rejected: the toolkit models experiments where
/// `nu = N - 1 >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreesOfFreedom(f64);

impl DegreesOfFreedom {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 1.0 {
            return Err(Error::domain(format!(
                "degrees of freedom must be finite and >= 1, got {nu}"
            )));
        }
        Ok(DegreesOfFreedom(nu))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Noncentrality parameter of a noncentral t distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncentralityParam(f64);

impl NoncentralityParam {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::domain(format!(
                "noncentrality parameter must be finite, got {theta}"
            )));
        }
        Ok(NoncentralityParam(theta))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// A kernel evaluation together with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_bound: f64,
}

impl EvalResult {
    pub(crate) fn new(value: f64, abs_error_bound: f64) -> Self {
        EvalResult {
            value,
            abs_error_bound,
        }
    }
}
