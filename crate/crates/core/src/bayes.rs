//! Bayes factors for the general Bayesian t-test and its default,
//! informed and JZS instantiations. All arithmetic stays in log space;
//! `BF_10` itself is only materialized at presentation time.

use crate::classical::TStatistic;
use crate::error::{Error, Result};
use crate::quad;
use crate::special::{ln_nct_pdf, ln_t_pdf, DegreesOfFreedom, NoncentralityParam};

/// Alternative-hypothesis parameters: prior mean effect size `delta` and
/// prior effect-size standard deviation `sigma_delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectPrior {
    delta: f64,
    sigma_delta: f64,
}

impl EffectPrior {
    pub fn new(delta: f64, sigma_delta: f64) -> Result<Self> {
        if !delta.is_finite() || !sigma_delta.is_finite() {
            return Err(Error::domain("effect prior parameters must be finite"));
        }
        if sigma_delta < 0.0 {
            return Err(Error::domain(format!(
                "sigma_delta must be nonnegative, got {sigma_delta}"
            )));
        }
        if sigma_delta == 0.0 && delta == 0.0 {
            return Err(Error::domain(
                "delta = 0 with sigma_delta = 0 collapses the alternative onto the null",
            ));
        }
        Ok(EffectPrior { delta, sigma_delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn sigma_delta(&self) -> f64 {
        self.sigma_delta
    }
}

/// A Bayes factor, stored as `ln BF_10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BayesFactor {
    pub log_bf10: f64,
}

impl BayesFactor {
    pub fn bf10(&self) -> f64 {
        self.log_bf10.exp()
    }
}

/// General Bayesian t-test:
///
/// `ln BF_10 = ln f_nu(t / sqrt(1 + s^2 N); delta / sqrt(1/N + s^2))
///             - ln sqrt(1 + s^2 N) - ln f_nu(t)`
///
/// with `s = sigma_delta` and `N = ts.n_for_bf`.
pub fn bf_general(ts: &TStatistic, prior: &EffectPrior) -> Result<BayesFactor> {
    let n = ts.n_for_bf;
    let s2 = prior.sigma_delta * prior.sigma_delta;
    let scale = (1.0 + s2 * n).sqrt();
    let theta = prior.delta / (1.0 / n + s2).sqrt();
    let ln_h1 = ln_nct_pdf(ts.t / scale, ts.nu, NoncentralityParam::new(theta)?)?;
    let ln_h0 = ln_t_pdf(ts.t, ts.nu);
    Ok(BayesFactor {
        log_bf10: ln_h1 - scale.ln() - ln_h0,
    })
}

/// Default (local) Bayesian t-test: `bf_general` with `delta = 0`.
pub fn bf_default(ts: &TStatistic, sigma_delta: f64) -> Result<BayesFactor> {
    if !(sigma_delta > 0.0) {
        return Err(Error::domain(format!(
            "default test requires sigma_delta > 0, got {sigma_delta}"
        )));
    }
    bf_general(ts, &EffectPrior::new(0.0, sigma_delta)?)
}

// Log of the default-test Bayes factor as a function of u = ln sigma_delta^2.
// With delta = 0 the noncentral kernel reduces to the central one.
fn ln_bf_default_at(t: f64, nu: DegreesOfFreedom, n: f64, u: f64) -> f64 {
    let scale_sq = 1.0 + u.exp() * n;
    ln_t_pdf(t / scale_sq.sqrt(), nu) - 0.5 * scale_sq.ln() - ln_t_pdf(t, nu)
}

/// JZS Bayesian t-test: the default test marginalized over
/// `sigma_delta^2 ~ inverse-chi^2(1)`.
///
/// The mixing integral is taken over `u = ln sigma_delta^2` on
/// `[-30, 30]`; the inverse-chi-square weight in `u` is
/// `exp(-u/2 - exp(-u)/2) / sqrt(2 pi)`, which kills both tails well
/// before the truncation points.
pub fn bf_jzs(ts: &TStatistic) -> Result<BayesFactor> {
    let (t, nu, n) = (ts.t, ts.nu, ts.n_for_bf);
    let ln_weight = |u: f64| -0.5 * u - 0.5 * (-u).exp() - 0.5 * (2.0 * std::f64::consts::PI).ln();
    let ln_integrand = |u: f64| ln_weight(u) + ln_bf_default_at(t, nu, n, u);

    // coarse scan for the max shift
    let mut m = f64::NEG_INFINITY;
    let mut u_star = 0.0;
    let mut u = -30.0;
    while u <= 30.0 {
        let v = ln_integrand(u);
        if v > m {
            m = v;
            u_star = u;
        }
        u += 0.25;
    }
    let r = quad::integrate_with_breaks(
        |u| (ln_integrand(u) - m).exp(),
        &[-30.0, u_star, 30.0],
        1e-300,
        1e-8,
        2000,
    )?;
    Ok(BayesFactor {
        log_bf10: m + r.value.ln(),
    })
}

/// Evaluate the point-form Bayes factor at `t = d sqrt(N)`, `nu = N - 1`
/// along an increasing grid of sample sizes.
pub fn bf_limit_scan(
    d: f64,
    prior: &EffectPrior,
    n_grid: &[u64],
) -> Result<Vec<BayesFactor>> {
    if d == 0.0 {
        return Err(Error::domain(
            "the divergence limit requires a nonzero sample effect d",
        ));
    }
    if n_grid.is_empty() || n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("n_grid must be nonempty and strictly increasing"));
    }
    n_grid
        .iter()
        .map(|&n| {
            if n < 2 {
                return Err(Error::domain(format!("grid sample size must be >= 2, got {n}")));
            }
            let nf = n as f64;
            let ts = TStatistic::new(d * nf.sqrt(), DegreesOfFreedom::new(nf - 1.0)?, nf)?;
            bf_general(&ts, prior)
        })
        .collect()
}
