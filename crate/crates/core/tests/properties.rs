//! Randomized invariants: distributional identities of the kernels,
//! Mills-ratio bounds, Bayes-factor symmetries and fit recovery.

use proptest::prelude::*;

use teval_core::bayes::{bf_default, bf_jzs};
use teval_core::classical::{p_value, TStatistic};
use teval_core::equivalence::fit_line;
use teval_core::special::{
    betainc_reg, mills_asymptotic, mills_exact, nct_cdf, nct_pdf, norm_cdf, norm_pdf, t_cdf,
    t_pdf,
};
use teval_core::{DegreesOfFreedom, NoncentralityParam};

fn nu_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(1.0),
        Just(5.0),
        Just(49.0),
        Just(500.0),
        1.0..1000.0f64,
    ]
}

proptest! {
    #[test]
    fn central_t_symmetry_and_complement(x in -50.0..50.0f64, nu in nu_strategy()) {
        let nu = DegreesOfFreedom::new(nu).unwrap();
        let f = t_pdf(x, nu).unwrap().value;
        let f_neg = t_pdf(-x, nu).unwrap().value;
        prop_assert!((f - f_neg).abs() <= 1e-14 * f.max(1e-300));
        let c = t_cdf(x, nu).unwrap().value;
        let c_neg = t_cdf(-x, nu).unwrap().value;
        prop_assert!((c + c_neg - 1.0).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn central_t_cdf_monotone(a in -30.0..30.0f64, gap in 0.001..10.0f64, nu in nu_strategy()) {
        let nu = DegreesOfFreedom::new(nu).unwrap();
        let lo = t_cdf(a, nu).unwrap().value;
        let hi = t_cdf(a + gap, nu).unwrap().value;
        prop_assert!(hi >= lo);
    }

    #[test]
    fn nct_sign_symmetry(x in -30.0..30.0f64, nu in nu_strategy(), theta in -15.0..15.0f64) {
        let nu = DegreesOfFreedom::new(nu).unwrap();
        let f = nct_pdf(x, nu, NoncentralityParam::new(theta).unwrap()).unwrap().value;
        let g = nct_pdf(-x, nu, NoncentralityParam::new(-theta).unwrap()).unwrap().value;
        prop_assert!((f - g).abs() <= 1e-10 * f.max(1e-300), "f={f:e}, g={g:e}");
    }

    #[test]
    fn nct_cdf_bounds_and_monotonicity(
        x in -30.0..30.0f64,
        gap in 0.001..5.0f64,
        nu in nu_strategy(),
        theta in -10.0..10.0f64,
    ) {
        let nu = DegreesOfFreedom::new(nu).unwrap();
        let th = NoncentralityParam::new(theta).unwrap();
        let lo = nct_cdf(x, nu, th).unwrap().value;
        let hi = nct_cdf(x + gap, nu, th).unwrap().value;
        prop_assert!((0.0..=1.0).contains(&lo));
        prop_assert!(hi >= lo - 1e-12);
        // increasing theta shifts mass right: CDF decreases
        let th_hi = NoncentralityParam::new(theta + gap).unwrap();
        let shifted = nct_cdf(x, nu, th_hi).unwrap().value;
        prop_assert!(shifted <= lo + 1e-11);
    }

    #[test]
    fn incomplete_beta_complement(a in 0.1..300.0f64, b in 0.1..300.0f64, x in 0.0..1.0f64) {
        let lhs = betainc_reg(a, b, x);
        let rhs = 1.0 - betainc_reg(b, a, 1.0 - x);
        prop_assert!((lhs - rhs).abs() < 1e-11, "a={a}, b={b}, x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn mills_ratio_bounds(x in 0.01..40.0f64) {
        // for x > 0: x/(x^2+1) < M(x) < 1/x
        let m = mills_exact(x);
        prop_assert!(m < 1.0 / x);
        prop_assert!(m > x / (x * x + 1.0));
        // asymptotic overestimates and its relative error shrinks with x
        let rel = (mills_asymptotic(x).unwrap() - m) / m;
        prop_assert!(rel > 0.0);
        // the ratio ties out against the defining quotient where both
        // factors are still normal floats
        if x < 25.0 {
            let direct = norm_cdf(-x) / norm_pdf(x);
            prop_assert!((m - direct).abs() <= 1e-12 * m);
        }
    }

    #[test]
    fn p_value_matches_cdf_tail(t in -40.0..40.0f64, nu in nu_strategy()) {
        let nu = DegreesOfFreedom::new(nu).unwrap();
        let ts = TStatistic::new(t, nu, nu.get() + 1.0).unwrap();
        let p = p_value(&ts).get();
        prop_assert!(p > 0.0 && p <= 1.0);
        let tail = t_cdf(-t.abs(), nu).unwrap().value;
        prop_assert!((p - (2.0 * tail).min(1.0)).abs() < 1e-12);
    }

    #[test]
    fn bf_default_even_in_t(t in 0.0..30.0f64, nu in nu_strategy(), sd in 0.05..4.0f64) {
        let nu = DegreesOfFreedom::new(nu).unwrap();
        let n = nu.get() + 1.0;
        let plus = bf_default(&TStatistic::new(t, nu, n).unwrap(), sd).unwrap().log_bf10;
        let minus = bf_default(&TStatistic::new(-t, nu, n).unwrap(), sd).unwrap().log_bf10;
        prop_assert!((plus - minus).abs() < 1e-10);
    }

    #[test]
    fn bf_jzs_increasing_in_t_magnitude(t in 0.0..20.0f64, gap in 0.01..5.0f64, nu in nu_strategy()) {
        let nu = DegreesOfFreedom::new(nu).unwrap();
        let n = nu.get() + 1.0;
        let lo = bf_jzs(&TStatistic::new(t, nu, n).unwrap()).unwrap().log_bf10;
        let hi = bf_jzs(&TStatistic::new(t + gap, nu, n).unwrap()).unwrap().log_bf10;
        prop_assert!(hi > lo - 1e-9);
    }

    #[test]
    fn fit_line_recovers_exact_lines(
        slope in -10.0..10.0f64,
        intercept in -10.0..10.0f64,
        n in 3..40usize,
    ) {
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = i as f64 * 0.7 - 3.0;
                (x, intercept + slope * x)
            })
            .collect();
        let fit = fit_line(&pts).unwrap();
        prop_assert!((fit.slope - slope).abs() < 1e-9);
        prop_assert!((fit.intercept - intercept).abs() < 1e-9);
        prop_assert!(fit.r_squared > 1.0 - 1e-9 || slope == 0.0);
    }
}
