//! Mills ratio `M(x) = Phi(-|x|) / phi(x)` and its two approximations.

use std::f64::consts::PI;

use super::normal::{norm_cdf, norm_pdf};
use crate::error::{Error, Result};

/// Exact Mills ratio.
///
/// Beyond `|x| > 8` the direct ratio degrades towards 0/0, so the tail is
/// evaluated with the classical continued fraction
/// `M(a) = 1/(a + 1/(a + 2/(a + 3/(a + ...))))`.
pub fn mills_exact(x: f64) -> f64 {
    let a = x.abs();
    if a <= 8.0 {
        norm_cdf(-a) / norm_pdf(a)
    } else {
        let mut r = 0.0;
        for k in (1..=100u32).rev() {
            r = k as f64 / (a + r);
        }
        1.0 / (a + r)
    }
}

/// Asymptotic approximation `M(x) ~ 1/|x|`; diverges at `x = 0`.
pub fn mills_asymptotic(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::domain(
            "Mills asymptotic approximation 1/|x| diverges at x = 0",
        ));
    }
    Ok(1.0 / x.abs())
}

/// Modified approximation `M(x) ~ 1/(sqrt(2/pi) + |x|)`, exact at zero.
pub fn mills_modified(x: f64) -> f64 {
    1.0 / ((2.0 / PI).sqrt() + x.abs())
}
