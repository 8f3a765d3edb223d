//! `teval`: classical, Bayesian and distributional t-tests over CSV
//! corpora, the log-BF vs log(1/p) equivalence analysis, and seeded
//! corpus simulation.
//!
//! Exit codes: 0 success, 2 data/usage error, 3 numerical error.

mod csv_io;
mod figure;

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use teval_core::bayes::{bf_general, bf_jzs, EffectPrior};
use teval_core::classical::p_value;
use teval_core::distributional::{distributional_result, DistributionalConfig};
use teval_core::equivalence::{analyze_corpus, make_point, ExperimentRecord};
use teval_core::sim::{simulate_corpus, GenerativeModel};
use teval_core::{Error, Result};

#[derive(Parser)]
#[command(name = "teval", version, about = "t-test evaluation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-record classical t-test report (t, nu, N_eff, p)
    Ttest(IoArgs),
    /// Per-record Bayes factors (JZS prior unless told otherwise)
    Bf(BfArgs),
    /// Per-record distributional test outputs
    Dist(DistArgs),
    /// Corpus-level log-BF vs log(1/p) fit, with optional figure output
    Equiv(EquivArgs),
    /// Generate a seeded synthetic corpus
    Simulate(SimArgs),
}

#[derive(Args)]
struct IoArgs {
    /// Input CSV; omit to read stdin
    #[arg(long)]
    input: Option<PathBuf>,
    /// Also write the report to this path
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BfArgs {
    #[command(flatten)]
    io: IoArgs,
    /// JZS prior on the effect size (the default behavior)
    #[arg(long, conflicts_with_all = ["default_prior", "informed"])]
    jzs: bool,
    /// Default prior: zero-mean with --sigma-delta
    #[arg(long = "default", conflicts_with = "informed")]
    default_prior: bool,
    /// Informed prior: --delta mean with --sigma-delta spread
    #[arg(long)]
    informed: bool,
    /// Prior mean effect size (informed prior)
    #[arg(long)]
    delta: Option<f64>,
    /// Prior effect-size standard deviation (default/informed priors)
    #[arg(long)]
    sigma_delta: Option<f64>,
}

#[derive(Args)]
struct DistArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Between-replication effect variance b > 0
    #[arg(long)]
    b: f64,
    /// Mean of the alternative effect distribution
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
}

#[derive(Args)]
struct EquivArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Effective prior effect variance entering the predicted intercept
    #[arg(long, default_value_t = 1.0)]
    sigma_delta_sq: f64,
    /// Write the scatter figure (SVG) here
    #[arg(long)]
    figure: Option<PathBuf>,
    /// Write the companion points CSV here
    #[arg(long)]
    points: Option<PathBuf>,
}

#[derive(Args)]
struct SimArgs {
    /// Mean of the between-experiment effect distribution
    #[arg(long, default_value_t = 0.0)]
    m: f64,
    /// Between-experiment standard deviation of the true mean
    #[arg(long, default_value_t = 0.0)]
    sigma_m: f64,
    /// Within-experiment standard deviation
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Per-experiment sample size
    #[arg(long)]
    n: u64,
    /// Number of experiments to generate
    #[arg(long)]
    count: usize,
    /// RNG seed; identical seeds reproduce corpora byte-for-byte
    #[arg(long)]
    seed: u64,
    /// Write the corpus here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Numerical { .. } => ExitCode::from(3),
                Error::Domain(_) | Error::Data(_) => ExitCode::from(2),
            }
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match path {
        Some(p) => File::open(p)
            .and_then(|mut f| f.read_to_end(&mut buf))
            .map_err(|e| Error::data(format!("cannot read {}: {e}", p.display())))?,
        None => std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Error::data(format!("cannot read stdin: {e}")))?,
    };
    Ok(buf)
}

fn write_report(report: &str, output: &Option<PathBuf>) -> Result<()> {
    print!("{report}");
    if let Some(p) = output {
        write_file(p, report.as_bytes())?;
    }
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes)
        .map_err(|e| Error::data(format!("cannot write {}: {e}", path.display())))
}

fn load_records(io: &IoArgs) -> Result<Vec<ExperimentRecord>> {
    csv_io::parse_records(read_input(&io.input)?.as_slice())
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Ttest(io) => {
            let records = load_records(&io)?;
            let mut report = String::from("study,site,t,nu,n_eff,p\n");
            for r in &records {
                let ts = r.t_statistic()?;
                report.push_str(&format!(
                    "{},{},{:.9e},{:.9e},{:.9e},{:.9e}\n",
                    r.study,
                    r.site,
                    ts.t,
                    ts.nu.get(),
                    ts.n_for_bf,
                    p_value(&ts).get()
                ));
            }
            write_report(&report, &io.output)
        }
        Command::Bf(args) => {
            let records = load_records(&args.io)?;
            let prior = resolve_prior(&args)?;
            let mut report = String::from("study,site,t,nu,n_eff,log_bf10,bf10\n");
            for r in &records {
                let ts = r.t_statistic()?;
                let bf = match &prior {
                    None => bf_jzs(&ts)?,
                    Some(p) => bf_general(&ts, p)?,
                };
                report.push_str(&format!(
                    "{},{},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e}\n",
                    r.study,
                    r.site,
                    ts.t,
                    ts.nu.get(),
                    ts.n_for_bf,
                    bf.log_bf10,
                    bf.bf10()
                ));
            }
            write_report(&report, &args.io.output)
        }
        Command::Dist(args) => {
            let records = load_records(&args.io)?;
            let cfg = DistributionalConfig::new(args.b)?;
            let mut report =
                String::from("study,site,t,nu,n_eff,psig_h0,psig_h1,log_bf10,bf10,bf10_approx\n");
            for r in &records {
                let ts = r.t_statistic()?;
                let res = distributional_result(&ts, &cfg, args.delta)?;
                report.push_str(&format!(
                    "{},{},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e}\n",
                    r.study,
                    r.site,
                    ts.t,
                    ts.nu.get(),
                    ts.n_for_bf,
                    res.psig_h0.get(),
                    res.psig_h1.get(),
                    res.bf.log_bf10,
                    res.bf.bf10(),
                    res.bf_approx.bf10()
                ));
            }
            write_report(&report, &args.io.output)
        }
        Command::Equiv(args) => {
            let records = load_records(&args.io)?;
            let (evaluated, fit) = analyze_corpus(&records, args.sigma_delta_sq)?;
            let points: Vec<(f64, f64)> = evaluated.iter().map(make_point).collect();

            let mut report = String::from("study,site,log_inv_p,log_bf10\n");
            for er in &evaluated {
                let (x, y) = make_point(er);
                report.push_str(&format!(
                    "{},{},{:.9e},{:.9e}\n",
                    er.record.study, er.record.site, x, y
                ));
            }
            let line = &fit.line;
            report.push_str(&format!(
                "# fit: slope={:.9e} intercept={:.9e} intercept_stderr={:.9e} r_squared={:.9e} n_points={}\n",
                line.slope, line.intercept, line.intercept_stderr, line.r_squared, line.n_points
            ));
            report.push_str(&format!(
                "# predicted_c: value={:.9e} n_used={} n_skipped={}\n",
                fit.c_predicted.value, fit.c_predicted.n_used, fit.c_predicted.n_skipped
            ));
            write_report(&report, &args.io.output)?;

            if let Some(p) = &args.points {
                let mut buf = Vec::new();
                figure::emit_points_csv(&points, &mut buf)
                    .map_err(|e| Error::data(format!("points CSV write failed: {e}")))?;
                write_file(p, &buf)?;
            }
            if let Some(p) = &args.figure {
                let mut buf = Vec::new();
                figure::emit_figure(&points, &fit, &mut buf)?;
                write_file(p, &buf)?;
            }
            Ok(())
        }
        Command::Simulate(args) => {
            let model = GenerativeModel::new(args.m, args.sigma_m, args.sigma, args.n)?;
            if args.count == 0 {
                return Err(Error::domain("count must be positive"));
            }
            let corpus = simulate_corpus(&model, args.seed, args.count);
            let mut buf = Vec::new();
            csv_io::emit_corpus(&corpus, &mut buf)
                .map_err(|e| Error::data(format!("corpus write failed: {e}")))?;
            match &args.output {
                Some(p) => write_file(p, &buf),
                None => {
                    std::io::stdout()
                        .write_all(&buf)
                        .map_err(|e| Error::data(format!("cannot write stdout: {e}")))
                }
            }
        }
    }
}

fn resolve_prior(args: &BfArgs) -> Result<Option<EffectPrior>> {
    if args.informed {
        let delta = args
            .delta
            .ok_or_else(|| Error::domain("--informed requires --delta"))?;
        let sd = args
            .sigma_delta
            .ok_or_else(|| Error::domain("--informed requires --sigma-delta"))?;
        return Ok(Some(EffectPrior::new(delta, sd)?));
    }
    if args.default_prior {
        let sd = args
            .sigma_delta
            .ok_or_else(|| Error::domain("--default requires --sigma-delta"))?;
        if !(sd > 0.0) {
            return Err(Error::domain("--sigma-delta must be positive for --default"));
        }
        return Ok(Some(EffectPrior::new(0.0, sd)?));
    }
    // JZS: no fixed prior scale; handled by bf_jzs
    Ok(None)
}
