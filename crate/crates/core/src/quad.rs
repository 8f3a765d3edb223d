//! Adaptive Gauss-Kronrod quadrature (G7-K15 with bisection refinement).

use crate::error::{Error, Result};

// K15 abscissae (positive half) and weights; G7 nodes are the even entries.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Single G7-K15 panel: returns (kronrod estimate, error estimate).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut res_gauss = WG[3] * f_center;
    let mut res_kronrod = WGK[7] * f_center;
    let mut res_abs = WGK[7] * f_center.abs();

    let mut fv = [0.0f64; 15];
    fv[7] = f_center;
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = res_kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();

    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
}

/// Integrate `f` over `[a, b]`, bisecting the worst panel until the summed
/// error estimate drops below `max(abs_tol, rel_tol * |integral|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    integrate_with_breaks(f, &[a, b], abs_tol, rel_tol, max_panels)
}

/// Like [`integrate`] but with interior break points (useful when the
/// integrand has a known peak or kink).
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    assert!(points.len() >= 2, "need at least the two endpoints");
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(max_panels.min(64));
    for w in points.windows(2) {
        let (v, e) = qk15(&f, w[0], w[1]);
        panels.push((w[0], w[1], v, e));
    }

    loop {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        let tol = abs_tol.max(rel_tol * total.abs());
        if total_err <= tol {
            return Ok(QuadResult {
                value: total,
                abs_error: total_err,
            });
        }
        if panels.len() >= max_panels {
            return Err(Error::Numerical {
                message: format!(
                    "quadrature failed to converge within {max_panels} panels"
                ),
                partial: total,
                bound: total_err,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (a, b, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        let (v1, e1) = qk15(&f, a, mid);
        let (v2, e2) = qk15(&f, mid, b);
        panels.push((a, mid, v1, e1));
        panels.push((mid, b, v2, e2));
    }
}
