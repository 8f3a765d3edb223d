//! Noncentral Student-t density and CDF.
//!
//! Primary path: the Poisson-weighted incomplete-beta series (even and odd
//! half-integer components). The density uses the analytically
//! differentiated form of the same series, evaluated term-by-term in log
//! space so it survives arguments where the raw density underflows.
//!
//! Fallback path: adaptive Gauss-Kronrod quadrature of the integral
//! representation over the scale mixture `T = (Z + theta) / sqrt(V/nu)`,
//! used when the series is ill-conditioned (`theta^2 > nu`), when the
//! Poisson weights underflow, or when opposite signs of `x` and `theta`
//! would force catastrophic cancellation between the even and odd sums.

use std::f64::consts::PI;

use super::beta_inc::betainc_reg;
use super::gamma::{ln_beta, ln_gamma};
use super::normal::{ln_norm_pdf, norm_cdf};
use super::student_t::{ln_t_pdf_raw, t_cdf_raw};
use super::{DegreesOfFreedom, EvalResult, NoncentralityParam};
use crate::error::{Error, Result};
use crate::quad;

const MAX_TERMS: usize = 10_000;
const TAIL_TOL: f64 = 1e-13;

/// Streaming log-sum-exp accumulator for sums of positive terms.
struct LogSum {
    max: f64,
    scaled: f64,
}

impl LogSum {
    fn new() -> Self {
        LogSum {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    fn add(&mut self, ln_term: f64) {
        if ln_term == f64::NEG_INFINITY {
            return;
        }
        if ln_term > self.max {
            self.scaled = self.scaled * (self.max - ln_term).exp() + 1.0;
            self.max = ln_term;
        } else {
            self.scaled += (ln_term - self.max).exp();
        }
    }

    fn ln_value(&self) -> f64 {
        if self.scaled == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}

/// ln of the density of `sqrt(V/nu)` for `V ~ chi^2_nu`, at `u > 0`.
fn ln_scale_density(u: f64, nu: f64) -> f64 {
    let half_nu = 0.5 * nu;
    std::f64::consts::LN_2 + half_nu * half_nu.ln() + (nu - 1.0) * u.ln()
        - half_nu * u * u
        - ln_gamma(half_nu)
}

/// CDF series for `x >= 0` (Poisson-weighted incomplete beta components).
/// Returns `(value, achieved bound)` or `None` when the term cap is hit.
fn cdf_series(x: f64, nu: f64, theta: f64) -> Option<(f64, f64)> {
    debug_assert!(x >= 0.0);
    let lambda = 0.5 * theta * theta;
    let y = x * x / (x * x + nu);
    let one_my = nu / (x * x + nu);
    let half_nu = 0.5 * nu;

    // j = 0 components
    let mut p = (-lambda).exp(); // Poisson(lambda) weight
    let mut q = theta * (2.0 / PI).sqrt() * (-lambda).exp();
    let mut cum_p = p;
    let mut ib_half = betainc_reg(0.5, half_nu, y); // I_y(j+1/2, nu/2)
    let mut ib_one = 1.0 - one_my.powf(half_nu); // I_y(j+1,   nu/2)
    // subtraction terms of the forward recurrence I_y(a+1,b) = I_y(a,b) - T(a,b)
    let mut ln_t_half = -0.5 * y.ln() + half_nu * one_my.ln() + y.ln() - ln_beta(0.5, half_nu);
    let mut ln_t_one = y.ln() + half_nu * one_my.ln() - ln_beta(1.0, half_nu);

    let mut sum = 0.0;
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        sum += p * ib_half + q * ib_one;

        // remaining odd/even weight mass bounds the truncation error;
        // q_j / p_j decreases in j, so the current ratio bounds the tail
        let rem_p = (1.0 - cum_p).max(0.0);
        let ratio = if p > 0.0 { (q / p).abs() } else { 0.0 };
        let bound = 0.5 * rem_p * (1.0 + ratio) * ib_half.max(ib_one);
        if bound < TAIL_TOL && jf > lambda {
            let value = norm_cdf(-theta) + 0.5 * sum;
            return Some((value.clamp(0.0, 1.0), bound + 1e-14));
        }

        // advance weights and incomplete betas to j+1 via
        // I_y(a+1, b) = I_y(a, b) - y^a (1-y)^b / (a B(a, b))
        ib_half = (ib_half - (ln_t_half - (jf + 0.5).ln()).exp()).max(0.0);
        ib_one = (ib_one - (ln_t_one - (jf + 1.0).ln()).exp()).max(0.0);
        ln_t_half += y.ln() + (jf + 0.5 + half_nu).ln() - (jf + 0.5).ln();
        ln_t_one += y.ln() + (jf + 1.0 + half_nu).ln() - (jf + 1.0).ln();
        p *= lambda / (jf + 1.0);
        q *= lambda / (jf + 1.5);
        cum_p += p;
    }
    None
}

/// CDF by quadrature of `int Phi(u x - theta) h(u) du` over the scale
/// mixture density `h`.
fn cdf_quadrature(x: f64, nu: f64, theta: f64) -> Result<(f64, f64)> {
    let u_hi = 1.5 * (1.0 + 1600.0 / nu).sqrt() + 1.0;
    let f = |u: f64| {
        if u <= 0.0 {
            0.0
        } else {
            norm_cdf(u * x - theta) * ln_scale_density(u, nu).exp()
        }
    };
    let r = quad::integrate_with_breaks(f, &[0.0, 1.0, u_hi], 1e-11, 1e-9, 800)?;
    Ok((r.value.clamp(0.0, 1.0), r.abs_error))
}

/// Log-space density series for `x > 0` (any sign of `theta`).
/// Returns `ln f` or `None` when the term cap is hit.
fn ln_pdf_series(x: f64, nu: f64, theta: f64) -> Option<f64> {
    debug_assert!(x > 0.0);
    let lambda = 0.5 * theta * theta;
    let ln_lambda = if lambda > 0.0 {
        lambda.ln()
    } else {
        f64::NEG_INFINITY
    };
    let half_nu = 0.5 * nu;
    let x2nu = x * x + nu;
    let ln_y = (x * x).ln() - x2nu.ln();
    let ln_one_my = nu.ln() - x2nu.ln();
    // d/dx of y = x^2/(x^2+nu), plus the overall 1/2 of the series
    let ln_jacobian = (2.0 * x * nu).ln() - 2.0 * x2nu.ln() - std::f64::consts::LN_2;

    // j = 0 terms of the differentiated even (p) and odd (q) components;
    // ln B(1, nu/2) = ln(2/nu)
    let mut ln_p_term = -lambda - 0.5 * ln_y + (half_nu - 1.0) * ln_one_my
        - ln_beta(0.5, half_nu)
        + ln_jacobian;
    let mut ln_q_term = -lambda + theta.abs().ln() - 0.5 * std::f64::consts::LN_2
        - ln_gamma(1.5)
        + (half_nu - 1.0) * ln_one_my
        - (2.0 / nu).ln()
        + ln_jacobian;

    let mut even = LogSum::new();
    let mut odd = LogSum::new();
    let mut peak = f64::NEG_INFINITY;

    for j in 0..MAX_TERMS {
        let jf = j as f64;
        even.add(ln_p_term);
        if theta != 0.0 {
            odd.add(ln_q_term);
        }
        let cur = ln_p_term.max(ln_q_term);
        peak = peak.max(cur);
        if cur < peak - 40.0 && jf > lambda * ln_y.exp() + 4.0 {
            let ln_even = even.ln_value();
            let ln_odd = odd.ln_value();
            let ln_f = if theta >= 0.0 {
                if ln_odd == f64::NEG_INFINITY {
                    ln_even
                } else {
                    let m = ln_even.max(ln_odd);
                    m + ((ln_even - m).exp() + (ln_odd - m).exp()).ln()
                }
            } else {
                // even sum dominates; the cancellation cutoff in the caller
                // keeps the difference at usable precision
                ln_even + (-(ln_odd - ln_even).exp()).ln_1p()
            };
            return Some(ln_f);
        }
        ln_p_term += ln_lambda + ln_y - (jf + 1.0).ln() - (jf + 0.5).ln() + (jf + 0.5 + half_nu).ln();
        ln_q_term += ln_lambda + ln_y - (jf + 1.5).ln() - (jf + 1.0).ln() + (jf + 1.0 + half_nu).ln();
    }
    None
}

/// Log-space quadrature of the integral representation:
/// `f(x) = int_0^inf u phi(u x - theta) h(u) du`, evaluated as
/// `exp(g(u))` with a max shift. `g` is concave in `u`, so the mode is
/// found by coarse scan plus ternary refinement.
fn ln_pdf_quadrature(x: f64, nu: f64, theta: f64) -> Result<f64> {
    let g = |u: f64| u.ln() + ln_norm_pdf(u * x - theta) + ln_scale_density(u, nu);

    // coarse multiplicative scan for the mode; the lower end must reach
    // below ~1/x^2, where the mode sits when x is enormous
    let mut best_u = 1.0;
    let mut best_g = g(1.0);
    let mut u = 1e-300;
    while u < 1e9 {
        let gu = g(u);
        if gu > best_g {
            best_g = gu;
            best_u = u;
        }
        u *= 1.5;
    }
    // ternary refinement on the bracketing interval (g is concave)
    let (mut lo, mut hi) = (best_u / 1.5, best_u * 1.5);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) < g(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
        if (hi - lo) < 1e-13 * hi {
            break;
        }
    }
    let u_star = 0.5 * (lo + hi);
    let g_star = g(u_star);

    // window where the integrand is above exp(-60) of the peak
    let cutoff = g_star - 60.0;
    let mut ua = u_star;
    let mut step = u_star * 0.1 + 1e-12;
    while ua > 0.0 && g(ua) > cutoff {
        ua = (ua - step).max(0.0);
        step *= 2.0;
    }
    let mut ub = u_star;
    step = u_star * 0.1 + 1e-12;
    while g(ub) > cutoff {
        ub += step;
        step *= 2.0;
    }

    let r = quad::integrate_with_breaks(
        |u| {
            if u <= 0.0 {
                0.0
            } else {
                (g(u) - g_star).exp()
            }
        },
        &[ua, u_star, ub],
        1e-13,
        1e-11,
        800,
    )?;
    if r.value <= 0.0 {
        return Err(Error::Numerical {
            message: "noncentral-t density quadrature collapsed to zero".into(),
            partial: 0.0,
            bound: r.abs_error,
        });
    }
    Ok(g_star + r.value.ln())
}

/// ln of the noncentral-t density `f_nu(x; theta)`.
pub fn ln_nct_pdf(x: f64, nu: DegreesOfFreedom, theta: NoncentralityParam) -> Result<f64> {
    let nu = nu.get();
    let mut x = x;
    let mut th = theta.get();
    if th == 0.0 {
        return Ok(ln_t_pdf_raw(x, nu));
    }
    if x < 0.0 {
        // f(x; theta) = f(-x; -theta)
        x = -x;
        th = -th;
    }
    if x == 0.0 {
        return Ok(ln_t_pdf_raw(0.0, nu) - 0.5 * th * th);
    }
    let lambda = 0.5 * th * th;
    let series_ok = lambda <= 700.0 && th * th <= nu && !(th < 0.0 && x * (-th) > 8.0);
    if series_ok {
        if let Some(ln_f) = ln_pdf_series(x, nu, th) {
            if ln_f.is_finite() || ln_f == f64::NEG_INFINITY {
                return Ok(ln_f);
            }
        }
    }
    ln_pdf_quadrature(x, nu, th)
}

/// Noncentral-t density, with an absolute error bound.
pub fn nct_pdf(x: f64, nu: DegreesOfFreedom, theta: NoncentralityParam) -> Result<EvalResult> {
    let ln_f = ln_nct_pdf(x, nu, theta)?;
    let value = ln_f.exp();
    Ok(EvalResult::new(value, value * 1e-11 + 1e-13))
}

/// Noncentral-t CDF `P(T_nu(theta) <= x)`.
pub fn nct_cdf(x: f64, nu: DegreesOfFreedom, theta: NoncentralityParam) -> Result<EvalResult> {
    let nu = nu.get();
    let th = theta.get();
    if th == 0.0 {
        return Ok(EvalResult::new(t_cdf_raw(x, nu).clamp(0.0, 1.0), 1e-13));
    }
    // reduce to x >= 0: P(T <= x; th) = 1 - P(T <= -x; -th)
    let (xx, tt, flip) = if x < 0.0 { (-x, -th, true) } else { (x, th, false) };
    let lambda = 0.5 * tt * tt;
    let (value, bound) = if lambda <= 700.0 {
        match cdf_series(xx, nu, tt) {
            Some(vb) => vb,
            None => cdf_quadrature(xx, nu, tt)?,
        }
    } else {
        cdf_quadrature(xx, nu, tt)?
    };
    let value = if flip { 1.0 - value } else { value };
    Ok(EvalResult::new(value.clamp(0.0, 1.0), bound))
}
