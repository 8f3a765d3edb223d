//! Acceptance gate: one test per release criterion, each printing a
//! single PASS/FAIL line (visible with `--nocapture`; the test harness
//! reports the same verdict per criterion either way).
//!
//! Criterion 6 depends on an externally exported dataset and is skipped
//! (not failed) when the file is absent; see the README for how to
//! provide it.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{ChiSquared, StandardNormal};

use teval_core::bayes::{bf_general, bf_limit_scan, EffectPrior};
use teval_core::classical::{summarize, two_sample_t, TStatistic, TwoSampleVariant};
use teval_core::distributional::{bf_distributional, DistributionalConfig};
use teval_core::equivalence::{analyze_corpus, predicted_c, ExperimentRecord};
use teval_core::sim::{type1_scan, GenerativeModel};
use teval_core::special::{mills_asymptotic, mills_exact, mills_modified, nct_cdf, nct_pdf};
use teval_core::{DegreesOfFreedom, NoncentralityParam};

fn pass(criterion: u32, what: &str) {
    println!("criterion {criterion}: PASS — {what}");
}

fn worked_example_stat() -> TStatistic {
    // one-sample n=50, mean=-0.5, variance=1
    TStatistic::new(-0.5 * 50.0f64.sqrt(), DegreesOfFreedom::new(49.0).unwrap(), 50.0).unwrap()
}

#[test]
fn criterion_01_informed_bf_worked_example() {
    let prior = EffectPrior::new(0.5, 1.0).unwrap();
    let bf = bf_general(&worked_example_stat(), &prior).unwrap().bf10();
    assert!((21.3..=28.8).contains(&bf), "BF10 = {bf}");
    pass(1, "informed BF10 ~= 25");
}

#[test]
fn criterion_02_distributional_bf_worked_example() {
    let cfg = DistributionalConfig::new(1.0).unwrap();
    let bf = bf_distributional(&worked_example_stat(), &cfg, 0.5)
        .unwrap()
        .bf10();
    assert!((bf - 0.69).abs() <= 0.02, "BF10 = {bf}");
    pass(2, "distributional BF10 = 0.69 +- 0.02");
}

#[test]
fn criterion_03_default_bf_closed_form_at_t_zero() {
    for &sd in &[0.25, 0.5, 1.0, 2.0] {
        for &n in &[2.0, 10.0, 50.0, 400.0, 1e5] {
            let ts = TStatistic::new(0.0, DegreesOfFreedom::new(n - 1.0).unwrap(), n).unwrap();
            let prior = EffectPrior::new(0.0, sd).unwrap();
            let bf = bf_general(&ts, &prior).unwrap().bf10();
            let exact = 1.0 / (1.0 + sd * sd * n).sqrt();
            assert!(
                (bf - exact).abs() < 1e-9,
                "sd={sd}, N={n}: {bf} vs {exact}"
            );
        }
    }
    pass(3, "BF10(t=0) = 1/sqrt(1 + sd^2 N) over a 20-point grid");
}

#[test]
fn criterion_04_divergence_pathology() {
    let prior = EffectPrior::new(0.0, 1.0).unwrap();
    let grid = [10u64, 100, 1_000, 10_000, 100_000, 1_000_000];
    let scan = bf_limit_scan(0.1, &prior, &grid).unwrap();
    let logs: Vec<f64> = scan.iter().map(|b| b.log_bf10).collect();
    // eventually increasing: monotone from the first index where it turns
    let turn = logs.windows(2).position(|w| w[1] > w[0]).unwrap();
    assert!(
        logs[turn..].windows(2).all(|w| w[1] > w[0]),
        "not eventually increasing: {logs:?}"
    );
    assert!(*logs.last().unwrap() > 100.0f64.ln(), "{logs:?}");
    pass(4, "fixed d=0.1: log BF10 diverges past log 100");
}

// two-sample experiment with a given true standardized effect
fn draw_two_sample(delta: f64, n: u64, rng: &mut ChaCha12Rng) -> TStatistic {
    let g1: Vec<f64> = (0..n)
        .map(|_| delta + rng.sample::<f64, _>(StandardNormal))
        .collect();
    let g2: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    two_sample_t(
        &summarize(&g1).unwrap(),
        &summarize(&g2).unwrap(),
        TwoSampleVariant::Pooled,
    )
}

#[test]
fn criterion_05_equivalence_fit_synthetic() {
    // 400 two-sample experiments (46 + 46, N_eff = 23) with effects drawn
    // from the JZS prior: delta ~ Cauchy(0,1), realized as normal ratio
    let mut rng = ChaCha12Rng::seed_from_u64(20_260_823);
    let records: Vec<ExperimentRecord> = (0..400)
        .map(|i| {
            let z1: f64 = rng.sample(StandardNormal);
            let z2: f64 = rng.sample(StandardNormal);
            let delta = z1 / z2.abs().max(1e-12);
            let ts = draw_two_sample(delta, 46, &mut rng);
            ExperimentRecord::new("synthetic".into(), format!("s{i:03}"), ts.t, 46, 46).unwrap()
        })
        .collect();
    let (_, fit) = analyze_corpus(&records, 1.0).unwrap();
    let line = fit.line;
    assert!(
        (0.95..=1.05).contains(&line.slope),
        "slope = {}",
        line.slope
    );
    assert!(
        (line.intercept - fit.c_predicted.value).abs() <= 3.0 * line.intercept_stderr,
        "intercept {} vs C {} (stderr {})",
        line.intercept,
        fit.c_predicted.value,
        line.intercept_stderr
    );
    assert!(line.r_squared > 0.95, "R^2 = {}", line.r_squared);
    pass(5, "synthetic JZS corpus: slope ~ 1, intercept ~ C, R^2 > 0.95");
}

#[test]
fn criterion_06_equivalence_fit_many_labs() {
    let path = std::env::var("TEVAL_MANYLABS_CSV")
        .unwrap_or_else(|_| format!("{}/../../data/manylabs_summary.csv", env!("CARGO_MANIFEST_DIR")));
    let Ok(bytes) = std::fs::read(&path) else {
        println!("criterion 6: SKIP — dataset not present at {path}");
        return;
    };
    let records = parse_schema_a(&bytes);
    let (_, fit) = analyze_corpus(&records, 1.0).unwrap();
    let line = fit.line;
    assert!((line.slope - 1.02).abs() <= 0.03, "slope = {}", line.slope);
    assert!(
        (line.intercept - (-2.81)).abs() <= 0.05,
        "intercept = {}",
        line.intercept
    );
    let c = predicted_c(&records, 1.0).unwrap().value;
    assert!((c - (-2.81)).abs() <= 0.02, "C = {c}");
    assert!(line.r_squared > 0.99, "R^2 = {}", line.r_squared);
    pass(6, "Many Labs corpus reproduces the published fit");
}

// minimal schema-A reader for the acceptance data file
fn parse_schema_a(bytes: &[u8]) -> Vec<ExperimentRecord> {
    let text = String::from_utf8_lossy(bytes);
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            ExperimentRecord::new(
                f[0].into(),
                f[1].into(),
                f[2].parse().unwrap(),
                f[3].parse().unwrap(),
                if f[4].trim().is_empty() { 0 } else { f[4].parse().unwrap() },
            )
            .unwrap()
        })
        .collect()
}

mod simpson_oracle {
    // independent reference integration of the defining noncentral-t
    // integral; shares nothing with the library's quadrature
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }

    fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let whole = simpson(f, a, b);
        let mid = 0.5 * (a + b);
        let split = simpson(f, a, mid) + simpson(f, mid, b);
        if depth == 0 || (split - whole).abs() < 15.0 * tol {
            return split + (split - whole) / 15.0;
        }
        adaptive(f, a, mid, 0.5 * tol, depth - 1) + adaptive(f, mid, b, 0.5 * tol, depth - 1)
    }

    fn ln_gamma(mut x: f64) -> f64 {
        let mut shift = 0.0;
        while x < 20.0 {
            shift -= x.ln();
            x += 1.0;
        }
        let inv2 = 1.0 / (x * x);
        shift
            + 0.5 * (2.0 * std::f64::consts::PI / x).ln()
            + x * (x.ln() - 1.0)
            + (1.0 - inv2 / 30.0 * (1.0 - inv2 * 2.0 / 7.0)) / (12.0 * x)
    }

    pub fn nct_pdf(x: f64, nu: f64, theta: f64) -> f64 {
        let integrand = |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let z = u * x - theta;
            (u.ln() - 0.5 * z * z - 0.5 * (2.0 * std::f64::consts::PI).ln()
                + std::f64::consts::LN_2
                + 0.5 * nu * (nu / 2.0).ln()
                - ln_gamma(nu / 2.0)
                + (nu - 1.0) * u.ln()
                - 0.5 * nu * u * u)
                .exp()
        };
        let hi = 1.0 + 12.0 / nu.sqrt() + 40.0 / nu;
        let panels = 64;
        let w = hi / panels as f64;
        (0..panels)
            .map(|i| adaptive(&integrand, i as f64 * w, (i + 1) as f64 * w, 1e-13, 34))
            .sum()
    }
}

fn oracle_grid() -> Vec<(f64, f64, f64)> {
    let mut g = Vec::new();
    for &x in &[-2.0, -0.4951, 0.0, 0.4951, 1.0, 3.0] {
        g.push((x, 49.0, 0.4951));
    }
    for &(nu, theta) in &[
        (1.0, 0.5),
        (5.0, -1.5),
        (10.0, 2.5),
        (30.0, 0.0),
        (100.0, 4.0),
        (250.0, -2.0),
        (500.0, 1.0),
        (1000.0, 0.25),
    ] {
        for &x in &[-1.2, 0.6, 2.4] {
            g.push((x, nu, theta));
        }
    }
    g
}

#[test]
fn criterion_07_kernel_oracle_equivalence() {
    let grid = oracle_grid();
    assert_eq!(grid.len(), 30);

    // pdf vs the independent Simpson oracle
    for &(x, nu, theta) in &grid {
        let ours = nct_pdf(
            x,
            DegreesOfFreedom::new(nu).unwrap(),
            NoncentralityParam::new(theta).unwrap(),
        )
        .unwrap()
        .value;
        let reference = simpson_oracle::nct_pdf(x, nu, theta);
        assert!(
            (ours - reference).abs() < 1e-8,
            "pdf({x}, {nu}, {theta}): {ours:e} vs {reference:e}"
        );
    }

    // cdf vs a 1e7-draw Monte-Carlo oracle, one sample per (nu, theta)
    let mut by_param: Vec<((f64, f64), Vec<f64>)> = Vec::new();
    for &(x, nu, theta) in &grid {
        match by_param.iter_mut().find(|(p, _)| *p == (nu, theta)) {
            Some((_, xs)) => xs.push(x),
            None => by_param.push(((nu, theta), vec![x])),
        }
    }
    let draws = 10_000_000usize;
    for (pi, ((nu, theta), xs)) in by_param.into_iter().enumerate() {
        let mut rng = ChaCha12Rng::seed_from_u64(0xace0_0000 + pi as u64);
        let chi = ChiSquared::new(nu).unwrap();
        let mut counts = vec![0u64; xs.len()];
        for _ in 0..draws {
            let z: f64 = rng.sample(StandardNormal);
            let c: f64 = rng.sample(chi);
            let t = (z + theta) / (c / nu).sqrt();
            for (k, &x) in xs.iter().enumerate() {
                if t <= x {
                    counts[k] += 1;
                }
            }
        }
        for (k, &x) in xs.iter().enumerate() {
            let mc = counts[k] as f64 / draws as f64;
            let ours = nct_cdf(
                x,
                DegreesOfFreedom::new(nu).unwrap(),
                NoncentralityParam::new(theta).unwrap(),
            )
            .unwrap()
            .value;
            // binomial SE under the hypothesis that the library value is
            // the true probability (the observed-count SE degenerates in
            // the far tails)
            let se = (ours * (1.0 - ours) / draws as f64).sqrt().max(1e-9);
            assert!(
                (ours - mc).abs() <= 3.0 * se,
                "cdf({x}, {nu}, {theta}): {ours} vs MC {mc} (se {se:e})"
            );
        }
    }
    pass(7, "nct pdf/cdf match independent quadrature and Monte-Carlo oracles");
}

#[test]
fn criterion_08_mills_ratio_claims() {
    let mut prev_rel = f64::INFINITY;
    let mut x = 3.0;
    while x <= 50.0 {
        let exact = mills_exact(x);
        let rel = (mills_asymptotic(x).unwrap() - exact).abs() / exact;
        assert!(rel <= 0.11, "x={x}: rel err {rel}");
        assert!(rel < prev_rel, "x={x}: rel err not decreasing");
        prev_rel = rel;
        x += 0.5;
    }
    assert_eq!(mills_modified(0.0), mills_exact(0.0));
    let m100 = mills_modified(100.0);
    assert!((m100 - 0.01).abs() / 0.01 < 0.01, "modified(100) = {m100}");
    pass(8, "Mills asymptotic <= 11% rel err for |x| >= 3; modified exact at 0");
}

#[test]
fn criterion_09_distributional_type1_stability() {
    let model = GenerativeModel::new(0.0, 0.3, 1.0, 2).unwrap();
    let cfg = DistributionalConfig::new(0.09).unwrap();
    let reps = 2000;
    let rows = type1_scan(&model, &cfg, 0.05, &[20, 200, 2000], reps, 424_242).unwrap();
    let se3 = 3.0 * (0.05f64 * 0.95 / reps as f64).sqrt();
    for row in &rows {
        assert!(
            (row.distributional_rate - 0.05).abs() <= se3,
            "N={}: rate {}",
            row.n,
            row.distributional_rate
        );
    }
    let last = rows.last().unwrap();
    assert!(last.point_rate > 0.5, "point rate at N=2000: {}", last.point_rate);
    pass(9, "matched-b Type-I stays at alpha while the point-form rate blows up");
}

fn run_teval(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_teval"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn teval");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn criterion_10_end_to_end_determinism() {
    let sim_args = [
        "simulate", "--m", "0.3", "--sigma-m", "0.2", "--sigma", "1", "--n", "30", "--count",
        "50", "--seed", "90210",
    ];
    let a = run_teval(&sim_args, "");
    let b = run_teval(&sim_args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "simulate is not byte-deterministic");

    let corpus = String::from_utf8(a.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let run_equiv = |tag: &str| {
        let fig = dir.path().join(format!("fig-{tag}.svg"));
        let pts = dir.path().join(format!("pts-{tag}.csv"));
        let out = run_teval(
            &[
                "equiv",
                "--figure",
                fig.to_str().unwrap(),
                "--points",
                pts.to_str().unwrap(),
            ],
            &corpus,
        );
        assert!(out.status.success());
        (out.stdout, std::fs::read(fig).unwrap(), std::fs::read(pts).unwrap())
    };
    let first = run_equiv("a");
    let second = run_equiv("b");
    assert_eq!(first, second, "equiv outputs are not byte-deterministic");
    pass(10, "simulate and equiv are byte-identical across reruns");
}
