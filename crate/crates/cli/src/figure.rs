//! Deterministic SVG scatter of `ln BF_10` vs `ln(1/p)` with the fitted
//! line, plus a machine-readable companion points CSV.

use std::io::Write;

use teval_core::equivalence::EquivalenceFit;
use teval_core::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

struct Axis {
    min: f64,
    span: f64,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>) -> Axis {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            min = min.min(v);
            max = max.max(v);
        }
        // degenerate ranges still need a visible extent
        let pad = 0.05 * (max - min).max(1.0);
        Axis {
            min: min - pad,
            span: (max - min) + 2.0 * pad,
        }
    }
}

/// Write the companion points CSV: `log_inv_p,log_bf10`.
pub fn emit_points_csv<W: Write>(points: &[(f64, f64)], mut out: W) -> std::io::Result<()> {
    writeln!(out, "log_inv_p,log_bf10")?;
    for (x, y) in points {
        writeln!(out, "{x:.9e},{y:.9e}")?;
    }
    Ok(())
}

/// Render the scatter, the fitted line over the observed x-range and a
/// slope/intercept/R-squared annotation. Output bytes are a pure
/// function of the input.
pub fn emit_figure<W: Write>(
    points: &[(f64, f64)],
    fit: &EquivalenceFit,
    mut out: W,
) -> Result<()> {
    if points.is_empty() {
        return Err(Error::data("cannot render a figure from zero points"));
    }
    let line = &fit.line;
    let ax = Axis::new(points.iter().map(|p| p.0));
    let ay = Axis::new(points.iter().flat_map(|p| {
        [p.1, line.intercept + line.slope * p.0]
    }));
    let sx = |x: f64| MARGIN + (x - ax.min) / ax.span * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - ay.min) / ay.span * (HEIGHT - 2.0 * MARGIN);

    let io_err = |e: std::io::Error| Error::data(format!("figure write failed: {e}"));
    let mut w = |s: String| out.write_all(s.as_bytes()).map_err(io_err);

    w(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ))?;
    w(format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ))?;
    // axes
    w(format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN
    ))?;
    // axis range labels
    w(format!(
        "<text x=\"{m}\" y=\"{y}\" font-size=\"12\" text-anchor=\"middle\">{v0:.2}</text>\n\
         <text x=\"{r}\" y=\"{y}\" font-size=\"12\" text-anchor=\"middle\">{v1:.2}</text>\n",
        m = MARGIN,
        r = WIDTH - MARGIN,
        y = HEIGHT - MARGIN + 20.0,
        v0 = ax.min,
        v1 = ax.min + ax.span
    ))?;
    w(format!(
        "<text x=\"{x}\" y=\"{b}\" font-size=\"12\" text-anchor=\"end\">{v0:.2}</text>\n\
         <text x=\"{x}\" y=\"{t}\" font-size=\"12\" text-anchor=\"end\">{v1:.2}</text>\n",
        x = MARGIN - 8.0,
        b = HEIGHT - MARGIN,
        t = MARGIN + 6.0,
        v0 = ay.min,
        v1 = ay.min + ay.span
    ))?;
    // axis titles
    w(format!(
        "<text x=\"{x}\" y=\"{y}\" font-size=\"14\" text-anchor=\"middle\">log(1/p)</text>\n",
        x = WIDTH / 2.0,
        y = HEIGHT - MARGIN + 40.0
    ))?;
    w(format!(
        "<text x=\"18\" y=\"{y}\" font-size=\"14\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {y})\">log(BF10)</text>\n",
        y = HEIGHT / 2.0
    ))?;
    // fitted line across the observed x-range
    let (x0, x1) = (ax.min, ax.min + ax.span);
    w(format!(
        "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"crimson\" \
         stroke-width=\"1.5\"/>\n",
        sx(x0),
        sy(line.intercept + line.slope * x0),
        sx(x1),
        sy(line.intercept + line.slope * x1)
    ))?;
    for (x, y) in points {
        w(format!(
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.6\"/>\n",
            sx(*x),
            sy(*y)
        ))?;
    }
    w(format!(
        "<text x=\"{x}\" y=\"{y}\" font-size=\"13\">slope = {s:.4}, intercept = {i:.4} \
         (predicted C = {c:.4}), R&#178; = {r:.4}</text>\n",
        x = MARGIN + 10.0,
        y = MARGIN - 14.0,
        s = line.slope,
        i = line.intercept,
        c = fit.c_predicted.value,
        r = line.r_squared
    ))?;
    w("</svg>\n".to_string())
}
