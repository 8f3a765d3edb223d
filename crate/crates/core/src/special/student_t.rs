//! Central Student-t density and CDF.

use super::beta_inc::betainc_reg;
use super::gamma::ln_beta_half;
use super::{DegreesOfFreedom, EvalResult};
use crate::error::Result;

pub(crate) fn ln_t_pdf_raw(x: f64, nu: f64) -> f64 {
    // f_nu(x) = 1 / (sqrt(nu) B(nu/2, 1/2)) * (1 + x^2/nu)^(-(nu+1)/2)
    -0.5 * nu.ln() - ln_beta_half(0.5 * nu) - 0.5 * (nu + 1.0) * (x * x / nu).ln_1p()
}

pub(crate) fn t_cdf_raw(x: f64, nu: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let ib = betainc_reg(0.5 * nu, 0.5, nu / (nu + x * x));
    if x < 0.0 {
        0.5 * ib
    } else {
        1.0 - 0.5 * ib
    }
}

/// `ln f_nu(x)` for the central t density.
pub fn ln_t_pdf(x: f64, nu: DegreesOfFreedom) -> f64 {
    ln_t_pdf_raw(x, nu.get())
}

/// Central t density.
pub fn t_pdf(x: f64, nu: DegreesOfFreedom) -> Result<EvalResult> {
    let value = ln_t_pdf_raw(x, nu.get()).exp();
    Ok(EvalResult::new(value, value * 1e-13 + 1e-15))
}

/// Central t CDF `P(T_nu <= x)` via the regularized incomplete beta.
pub fn t_cdf(x: f64, nu: DegreesOfFreedom) -> Result<EvalResult> {
    let value = t_cdf_raw(x, nu.get()).clamp(0.0, 1.0);
    Ok(EvalResult::new(value, 1e-13))
}
