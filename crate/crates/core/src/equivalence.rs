//! The near-linear relationship between `ln BF_10` and `ln(1/p)` across
//! a corpus of experiments: per-record evaluation, the predicted
//! intercept `C`, the least-squares fit, and the closed-form
//! approximation that maps a p-value straight to a log Bayes factor.

use crate::bayes::bf_jzs;
use crate::classical::{n_eff, p_value, PValue, TStatistic};
use crate::error::{Error, Result};
use crate::special::DegreesOfFreedom;
use std::f64::consts::PI;

/// One experiment as reported: identifiers, the t statistic and the
/// group sizes. `n2 = 0` marks a one-sample design.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub study: String,
    pub site: String,
    pub t: f64,
    pub n1: u64,
    pub n2: u64,
}

impl ExperimentRecord {
    pub fn new(study: String, site: String, t: f64, n1: u64, n2: u64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::data(format!("t must be finite, got {t}")));
        }
        if n1 < 2 || (n2 != 0 && n2 < 2) {
            return Err(Error::data(format!(
                "group sizes must be >= 2 (n2 = 0 marks one-sample), got n1={n1}, n2={n2}"
            )));
        }
        Ok(ExperimentRecord { study, site, t, n1, n2 })
    }

    pub fn is_two_sample(&self) -> bool {
        self.n2 != 0
    }

    /// Degrees of freedom: `n1 - 1` one-sample, `n1 + n2 - 2` two-sample
    /// (pooled).
    pub fn nu(&self) -> f64 {
        if self.is_two_sample() {
            (self.n1 + self.n2 - 2) as f64
        } else {
            (self.n1 - 1) as f64
        }
    }

    /// The sample size entering the Bayes-factor formulas: `N` or `N_eff`.
    pub fn n_for_bf(&self) -> f64 {
        if self.is_two_sample() {
            n_eff(self.n1, self.n2)
        } else {
            self.n1 as f64
        }
    }

    pub fn t_statistic(&self) -> Result<TStatistic> {
        TStatistic::new(self.t, DegreesOfFreedom::new(self.nu())?, self.n_for_bf())
    }
}

/// A record with its point-form p-value and JZS log Bayes factor.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedRecord {
    pub record: ExperimentRecord,
    pub p: PValue,
    pub log_bf10: f64,
}

/// Evaluate one record: point-form p and JZS Bayes factor.
pub fn evaluate_record(record: &ExperimentRecord) -> Result<EvaluatedRecord> {
    let ts = record.t_statistic()?;
    Ok(EvaluatedRecord {
        record: record.clone(),
        p: p_value(&ts),
        log_bf10: bf_jzs(&ts)?.log_bf10,
    })
}

/// The corpus-level intercept prediction
/// `C = -< ln( |t| sqrt( pi (1 + s^2 N) / 2 ) ) >`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CPrediction {
    pub value: f64,
    pub n_used: usize,
    /// records with `t = 0`, which have no defined contribution
    pub n_skipped: usize,
}

/// Predict the intercept of the `ln BF_10` vs `ln(1/p)` line for a
/// corpus, with `s^2 = sigma_delta_sq` the effective prior effect
/// variance (1 for the JZS corpus). Records with `t = 0` are skipped.
pub fn predicted_c(records: &[ExperimentRecord], sigma_delta_sq: f64) -> Result<CPrediction> {
    if !(sigma_delta_sq.is_finite() && sigma_delta_sq > 0.0) {
        return Err(Error::domain(format!(
            "sigma_delta_sq must be positive, got {sigma_delta_sq}"
        )));
    }
    let mut sum = 0.0;
    let mut used = 0usize;
    let mut skipped = 0usize;
    for r in records {
        if r.t == 0.0 {
            skipped += 1;
            continue;
        }
        let n = r.n_for_bf();
        sum -= (r.t.abs() * (PI * (1.0 + sigma_delta_sq * n) / 2.0).sqrt()).ln();
        used += 1;
    }
    if used == 0 {
        return Err(Error::domain(
            "no record with t != 0: the predicted intercept is undefined",
        ));
    }
    Ok(CPrediction {
        value: sum / used as f64,
        n_used: used,
        n_skipped: skipped,
    })
}

/// Map an evaluated record to its scatter point `(ln(1/p), ln BF_10)`.
pub fn make_point(er: &EvaluatedRecord) -> (f64, f64) {
    (er.p.log_inv(), er.log_bf10)
}

/// Ordinary least squares `y = intercept + slope * x` with the usual
/// intercept standard error and coefficient of determination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub intercept_stderr: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Fit the scatter by least squares. Needs at least three points and
/// nonconstant `x`.
pub fn fit_line(points: &[(f64, f64)]) -> Result<LineFit> {
    let n = points.len();
    if n < 3 {
        return Err(Error::data(format!(
            "need at least 3 points for a line fit with error estimates, got {n}"
        )));
    }
    let nf = n as f64;
    let x_bar = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let y_bar = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.0 - x_bar) * (p.0 - x_bar)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - x_bar) * (p.1 - y_bar)).sum();
    if sxx == 0.0 {
        return Err(Error::data("all x values identical: slope is undefined"));
    }
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;
    let sse: f64 = points
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + slope * p.0);
            r * r
        })
        .sum();
    let sst: f64 = points.iter().map(|p| (p.1 - y_bar) * (p.1 - y_bar)).sum();
    let s2 = sse / (nf - 2.0);
    let intercept_stderr = (s2 * (1.0 / nf + x_bar * x_bar / sxx)).sqrt();
    let r_squared = if sst == 0.0 { 1.0 } else { 1.0 - sse / sst };
    Ok(LineFit {
        slope,
        intercept,
        intercept_stderr,
        r_squared,
        n_points: n,
    })
}

/// A fitted corpus: the predicted intercept alongside the empirical fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceFit {
    pub c_predicted: CPrediction,
    pub line: LineFit,
}

/// Full corpus analysis: evaluate every record, fit the scatter and
/// predict the intercept with `sigma_delta_sq` (1 for the JZS corpus).
pub fn analyze_corpus(
    records: &[ExperimentRecord],
    sigma_delta_sq: f64,
) -> Result<(Vec<EvaluatedRecord>, EquivalenceFit)> {
    let evaluated: Vec<EvaluatedRecord> =
        records.iter().map(evaluate_record).collect::<Result<_>>()?;
    let points: Vec<(f64, f64)> = evaluated.iter().map(make_point).collect();
    let fit = EquivalenceFit {
        c_predicted: predicted_c(records, sigma_delta_sq)?,
        line: fit_line(&points)?,
    };
    Ok((evaluated, fit))
}

/// Closed-form log Bayes factor from a p-value alone:
///
/// `ln BF_10 ~= ln(1/p) - ln( |t| sqrt( pi (1 + s^2 N) / 2 ) )`
///
/// `low_t` flags `|t| < 3`, where the underlying Mills-ratio
/// approximation degrades.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxLogBf {
    pub log_bf10: f64,
    pub low_t: bool,
}

pub fn approx_log_bf_from_p(
    p: PValue,
    t: f64,
    n_for_bf: f64,
    sigma_delta: f64,
) -> Result<ApproxLogBf> {
    if t == 0.0 {
        return Err(Error::domain("the approximation is undefined at t = 0"));
    }
    if !(sigma_delta.is_finite() && sigma_delta > 0.0) {
        return Err(Error::domain(format!(
            "sigma_delta must be positive, got {sigma_delta}"
        )));
    }
    let s2 = sigma_delta * sigma_delta;
    let c = -(t.abs() * (PI * (1.0 + s2 * n_for_bf) / 2.0).sqrt()).ln();
    Ok(ApproxLogBf {
        log_bf10: p.log_inv() + c,
        low_t: t.abs() < 3.0,
    })
}
