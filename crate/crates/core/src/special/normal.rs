//! Standard normal density and distribution function.

use std::f64::consts::PI;

use super::erf::erfc;

/// Standard normal density `phi(x)`.
pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `ln phi(x)`.
pub fn ln_norm_pdf(x: f64) -> f64 {
    -0.5 * x * x - 0.5 * (2.0 * PI).ln()
}

/// Standard normal CDF `Phi(x)`, via the complementary error function.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((norm_pdf(0.0) - 0.398942280401432678).abs() < 1e-16);
        assert!((norm_cdf(0.0) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn tail_reference_value() {
        // Phi(-3) from erfc reference evaluation
        assert!((norm_cdf(-3.0) - 1.349_898_031_630_094_5e-3).abs() < 1e-17);
        assert!((norm_cdf(3.0) + norm_cdf(-3.0) - 1.0).abs() < 1e-15);
    }
}
