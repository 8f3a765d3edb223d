//! The distributional t-test: significance probabilities and Bayes
//! factors for hypotheses about the *distribution* of effects across
//! replications, where each replication draws its own true effect with
//! between-replication variance `b` (in squared effect-size units).

use crate::bayes::BayesFactor;
use crate::classical::{PValue, TStatistic};
use crate::error::{Error, Result};
use crate::special::{ln_nct_pdf, ln_t_pdf, nct_cdf, t_cdf, NoncentralityParam};

/// Between-replication effect-size variance `b > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionalConfig {
    b: f64,
}

impl DistributionalConfig {
    pub fn new(b: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::domain(format!(
                "between-replication variance b must be positive and finite, got {b}"
            )));
        }
        Ok(DistributionalConfig { b })
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// All distributional-test outputs for one observed statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionalResult {
    pub psig_h0: PValue,
    pub psig_h1: PValue,
    pub bf: BayesFactor,
    pub bf_approx: BayesFactor,
}

// Shared rescaling: the observed t, marginalized over the replication
// effect distribution, is t-distributed with scale sqrt(1 + b N).
fn scaled_args(ts: &TStatistic, cfg: &DistributionalConfig, delta: f64) -> (f64, f64) {
    let n = ts.n_for_bf;
    let x = -ts.t.abs() / (1.0 + cfg.b * n).sqrt();
    let theta = delta / (1.0 / n + cfg.b).sqrt();
    (x, theta)
}

/// Probability of a significant replication under a zero-mean effect
/// distribution: `2 T_nu(-|t| / sqrt(1 + b N))`.
pub fn psig_h0(ts: &TStatistic, cfg: &DistributionalConfig) -> PValue {
    let (x, _) = scaled_args(ts, cfg, 0.0);
    let tail = t_cdf(x, ts.nu).expect("central t CDF cannot fail").value;
    PValue::from_probability(2.0 * tail)
}

/// Probability of a significant replication under a mean-`delta` effect
/// distribution: `2 T_nu(-|t| / sqrt(1 + b N); delta / sqrt(1/N + b))`.
pub fn psig_h1(ts: &TStatistic, cfg: &DistributionalConfig, delta: f64) -> Result<PValue> {
    let (x, theta) = scaled_args(ts, cfg, delta);
    let tail = nct_cdf(x, ts.nu, NoncentralityParam::new(theta)?)?.value;
    Ok(PValue::from_probability(2.0 * tail))
}

/// Distributional Bayes factor: the ratio of marginal densities of the
/// observed `-|t|` under the mean-`delta` and zero-mean effect
/// distributions. The common `sqrt(1 + b N)` scale factor cancels.
pub fn bf_distributional(
    ts: &TStatistic,
    cfg: &DistributionalConfig,
    delta: f64,
) -> Result<BayesFactor> {
    let (x, theta) = scaled_args(ts, cfg, delta);
    let ln_h1 = ln_nct_pdf(x, ts.nu, NoncentralityParam::new(theta)?)?;
    let ln_h0 = ln_t_pdf(x, ts.nu);
    Ok(BayesFactor {
        log_bf10: ln_h1 - ln_h0,
    })
}

/// Mills-ratio approximation to `bf_distributional` in terms of the two
/// significance probabilities and the sample effect `d = t / sqrt(N)`:
///
/// `BF ~= (psig_h1 / psig_h0)
///        * (sqrt(2b/pi) + |d - delta|) / (sqrt(2b/pi) + |d|)`
pub fn bf_distributional_approx(
    ts: &TStatistic,
    cfg: &DistributionalConfig,
    delta: f64,
) -> Result<BayesFactor> {
    let d = ts.t / ts.n_for_bf.sqrt();
    let m0 = (2.0 * cfg.b / std::f64::consts::PI).sqrt();
    let p0 = psig_h0(ts, cfg);
    let p1 = psig_h1(ts, cfg, delta)?;
    let ratio = (p1.get().ln() - p0.get().ln()).exp();
    Ok(BayesFactor {
        log_bf10: (ratio * (m0 + (d - delta).abs()) / (m0 + d.abs())).ln(),
    })
}

/// Evaluate every distributional-test output at once.
pub fn distributional_result(
    ts: &TStatistic,
    cfg: &DistributionalConfig,
    delta: f64,
) -> Result<DistributionalResult> {
    Ok(DistributionalResult {
        psig_h0: psig_h0(ts, cfg),
        psig_h1: psig_h1(ts, cfg, delta)?,
        bf: bf_distributional(ts, cfg, delta)?,
        bf_approx: bf_distributional_approx(ts, cfg, delta)?,
    })
}
