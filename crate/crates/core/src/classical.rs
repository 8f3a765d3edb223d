//! t statistics, degrees of freedom, effective sample size and two-sided
//! point-form p-values.

use crate::error::{Error, Result};
use crate::special::{t_cdf, DegreesOfFreedom};

/// Sufficient statistics of a single sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    n: u64,
    mean: f64,
    variance: f64,
}

impl SampleSummary {
    pub fn new(n: u64, mean: f64, variance: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::data(format!("need at least 2 observations, got {n}")));
        }
        if !mean.is_finite() {
            return Err(Error::data(format!("sample mean must be finite, got {mean}")));
        }
        if !(variance.is_finite() && variance > 0.0) {
            return Err(Error::data(format!(
                "sample variance must be positive and finite, got {variance}"
            )));
        }
        Ok(SampleSummary { n, mean, variance })
    }

    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn mean(&self) -> f64 {
        self.mean
    }
    pub fn variance(&self) -> f64 {
        self.variance
    }
}

/// Two independent samples with their effective sample size
/// `N_eff = 1 / (1/N1 + 1/N2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSampleSummary {
    pub group1: SampleSummary,
    pub group2: SampleSummary,
}

impl TwoSampleSummary {
    pub fn new(group1: SampleSummary, group2: SampleSummary) -> Self {
        TwoSampleSummary { group1, group2 }
    }

    pub fn n_eff(&self) -> f64 {
        n_eff(self.group1.n, self.group2.n)
    }
}

/// Harmonic effective sample size of a two-group design.
pub fn n_eff(n1: u64, n2: u64) -> f64 {
    1.0 / (1.0 / n1 as f64 + 1.0 / n2 as f64)
}

/// A t statistic together with its degrees of freedom and the sample size
/// that enters the Bayes-factor formulas (`N` for one-sample designs,
/// `N_eff` for two-sample designs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TStatistic {
    pub t: f64,
    pub nu: DegreesOfFreedom,
    pub n_for_bf: f64,
}

impl TStatistic {
    pub fn new(t: f64, nu: DegreesOfFreedom, n_for_bf: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::data(format!("t statistic must be finite, got {t}")));
        }
        if !(n_for_bf.is_finite() && n_for_bf > 0.0) {
            return Err(Error::data(format!(
                "effective sample size must be positive, got {n_for_bf}"
            )));
        }
        Ok(TStatistic { t, nu, n_for_bf })
    }
}

/// Two-sided point-form p-value, `p = 2 T_nu(-|t|)`, in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PValue(f64);

impl PValue {
    pub(crate) fn from_probability(p: f64) -> Self {
        // two-sided tails can underflow for enormous |t|; keep p in (0, 1]
        PValue(p.clamp(f64::MIN_POSITIVE, 1.0))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn log_inv(self) -> f64 {
        -self.0.ln()
    }
}

/// Which two-sample variance model to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoSampleVariant {
    Pooled,
    Welch,
}

/// Reduce raw observations to sufficient statistics
/// (`S^2` with the `1/(n-1)` divisor).
pub fn summarize(raw_observations: &[f64]) -> Result<SampleSummary> {
    let n = raw_observations.len();
    if n < 2 {
        return Err(Error::data(format!(
            "need at least 2 observations to summarize, got {n}"
        )));
    }
    let mean = raw_observations.iter().sum::<f64>() / n as f64;
    let ss: f64 = raw_observations.iter().map(|x| (x - mean) * (x - mean)).sum();
    let variance = ss / (n as f64 - 1.0);
    if variance == 0.0 {
        return Err(Error::data(
            "degenerate sample: all observations identical (zero variance)",
        ));
    }
    SampleSummary::new(n as u64, mean, variance)
}

/// One-sample t statistic: `t = mean / sqrt(variance) * sqrt(N)`, `nu = N - 1`.
pub fn one_sample_t(s: &SampleSummary) -> TStatistic {
    let n = s.n as f64;
    let t = s.mean / s.variance.sqrt() * n.sqrt();
    TStatistic {
        t,
        nu: DegreesOfFreedom::new(n - 1.0).expect("n >= 2 guarantees nu >= 1"),
        n_for_bf: n,
    }
}

/// Independent two-sample t statistic. `n_for_bf` is always `N_eff`.
pub fn two_sample_t(
    g1: &SampleSummary,
    g2: &SampleSummary,
    variant: TwoSampleVariant,
) -> TStatistic {
    let (n1, n2) = (g1.n as f64, g2.n as f64);
    let diff = g1.mean - g2.mean;
    let (t, nu) = match variant {
        TwoSampleVariant::Pooled => {
            let sp2 = ((n1 - 1.0) * g1.variance + (n2 - 1.0) * g2.variance) / (n1 + n2 - 2.0);
            let t = diff / (sp2 * (1.0 / n1 + 1.0 / n2)).sqrt();
            (t, n1 + n2 - 2.0)
        }
        TwoSampleVariant::Welch => {
            let v1 = g1.variance / n1;
            let v2 = g2.variance / n2;
            let t = diff / (v1 + v2).sqrt();
            let nu = (v1 + v2) * (v1 + v2)
                / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
            (t, nu)
        }
    };
    TStatistic {
        t,
        nu: DegreesOfFreedom::new(nu).expect("n >= 2 per group guarantees nu >= 1"),
        n_for_bf: n_eff(g1.n, g2.n),
    }
}

/// Two-sided p-value `p = 2 T_nu(-|t|)`.
pub fn p_value(ts: &TStatistic) -> PValue {
    if ts.t == 0.0 {
        return PValue(1.0);
    }
    let tail = t_cdf(-ts.t.abs(), ts.nu).expect("central t CDF cannot fail").value;
    PValue::from_probability(2.0 * tail)
}
