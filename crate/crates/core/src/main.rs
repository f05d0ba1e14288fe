use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use fixtrace::analytic::{EnsembleKind, EnsembleParams};
use fixtrace::harness::{
    run_density_experiment, run_gap_experiment, run_kpoint, run_stability_experiment, run_verify,
    Experiment, ExperimentReport, RunConfig, Suite,
};
use fixtrace::Error;

/// Finite-N eigenvalue statistics of fixed-trace and product Ginibre
/// ensembles: analytic densities, correlators and gap probabilities with
/// Monte-Carlo verification.
#[derive(Parser)]
#[command(name = "fixtrace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Default)]
struct EnsembleArgs {
    /// Ensemble family.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<EnsembleKind>,
    /// Matrix dimension N.
    #[arg(long = "N", alias = "n")]
    n: Option<usize>,
    /// Number of product factors M (default 1).
    #[arg(long = "M", alias = "m-factors")]
    m_factors: Option<usize>,
    /// Number of fixed-trace factors m (default: 1 for fte kinds, else 0).
    #[arg(long = "m", alias = "m-fixed")]
    m_fixed: Option<usize>,
    /// Per-factor charges nu_j, comma separated (default zeros).
    #[arg(long, value_delimiter = ',')]
    nu: Option<Vec<f64>>,
    /// Trace constraints s_j, comma separated (default ones).
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<f64>>,
    /// Inverse variances t_j, comma separated (default ones).
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<f64>>,
    /// Monte-Carlo sample count.
    #[arg(long)]
    samples: Option<u64>,
    /// Histogram bin count.
    #[arg(long)]
    bins: Option<usize>,
    /// RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker shard count (RMT_THREADS overrides).
    #[arg(long)]
    workers: Option<usize>,
    /// CSV output path.
    #[arg(long)]
    out: Option<String>,
    /// JSON config file supplying defaults (flags override its values).
    #[arg(long)]
    config: Option<String>,
}

fn parse_kind(s: &str) -> Result<EnsembleKind, String> {
    match s {
        "ginibre-fte" => Ok(EnsembleKind::GinibreFte),
        "normal-fte" => Ok(EnsembleKind::NormalFte),
        "induced" => Ok(EnsembleKind::InducedGinibre),
        "product" => Ok(EnsembleKind::ProductGinibre),
        "mixed" => Ok(EnsembleKind::MixedProduct),
        other => Err(format!(
            "unknown kind '{other}' (expected ginibre-fte|normal-fte|induced|product|mixed)"
        )),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Radial spectral density: Monte Carlo vs the closed form.
    Density(EnsembleArgs),
    /// Gap probability at the origin: Monte Carlo vs the closed form.
    Gap {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        /// Largest grid radius.
        #[arg(long)]
        xmax: Option<f64>,
        /// Number of grid radii.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Analytic k-point correlator values at given points.
    Kpoint {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        /// Correlation order k.
        #[arg(long)]
        k: usize,
        /// Points as re,im pairs: "0.1,0.0,-0.2,0.3" gives z1, z2.
        #[arg(long, value_delimiter = ',')]
        points: Vec<f64>,
    },
    /// Stability exponents of factor products.
    Stability(EnsembleArgs),
    /// Run an invariant suite and emit a JSON report.
    Verify {
        /// One of: specfun, transforms, analytic, sampler, all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Write the JSON report here (stdout otherwise).
        #[arg(long)]
        json: Option<String>,
    },
}

fn merge_config(args: &EnsembleArgs, experiment: Experiment) -> Result<RunConfig, Error> {
    // config file supplies defaults, CLI flags override
    let file_cfg: Option<RunConfig> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Some(
                serde_json::from_str(&text)
                    .map_err(|e| Error::Config(format!("config parse: {e}")))?,
            )
        }
        None => None,
    };
    let kind = args
        .kind
        .or(file_cfg.as_ref().map(|c| c.kind))
        .ok_or_else(|| Error::Config("--kind is required".into()))?;
    let n = args
        .n
        .or(file_cfg.as_ref().map(|c| c.ensemble.n))
        .ok_or_else(|| Error::Config("--n is required".into()))?;
    let factors = args
        .m_factors
        .or(file_cfg.as_ref().map(|c| c.ensemble.factors))
        .unwrap_or(1);
    let fixed = args
        .m_fixed
        .or(file_cfg.as_ref().map(|c| c.ensemble.fixed))
        .unwrap_or(match kind {
            EnsembleKind::GinibreFte | EnsembleKind::NormalFte | EnsembleKind::MixedProduct => 1,
            _ => 0,
        });
    let nu = args
        .nu
        .clone()
        .or(file_cfg.as_ref().map(|c| c.ensemble.nu.clone()))
        .unwrap_or_else(|| vec![0.0; factors]);
    let s = args
        .s
        .clone()
        .or(file_cfg.as_ref().map(|c| c.ensemble.s.clone()))
        .unwrap_or_else(|| vec![1.0; fixed]);
    let t = args
        .t
        .clone()
        .or(file_cfg.as_ref().map(|c| c.ensemble.t.clone()))
        .unwrap_or_else(|| vec![1.0; factors.saturating_sub(fixed)]);
    let workers_flag = args.workers.or(file_cfg.as_ref().map(|c| c.workers));
    let workers = match std::env::var("RMT_THREADS") {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| Error::Config("RMT_THREADS must be an integer".into()))?,
        Err(_) => workers_flag.unwrap_or_else(|| {
            std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
        }),
    };
    Ok(RunConfig {
        experiment,
        kind,
        ensemble: EnsembleParams { n, factors, fixed, nu, s, t },
        samples: args
            .samples
            .or(file_cfg.as_ref().map(|c| c.samples))
            .unwrap_or(100_000),
        seed: args.seed.or(file_cfg.as_ref().map(|c| c.seed)).unwrap_or(1),
        bins: args.bins.or(file_cfg.as_ref().map(|c| c.bins)).unwrap_or(48),
        workers: workers.max(1),
        output_path: args.out.clone().or(file_cfg.as_ref().and_then(|c| c.output_path.clone())),
        xmax: file_cfg.as_ref().and_then(|c| c.xmax),
        grid: file_cfg.as_ref().and_then(|c| c.grid),
    })
}

fn emit(report: &ExperimentReport, out: Option<&str>) -> Result<(), Error> {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for line in &report.summary {
        println!("{line}");
    }
    match out {
        Some(path) => {
            report.write_csv(path)?;
            println!("csv written to {path} (metadata: {path}.meta.json)");
        }
        None => {
            println!("{}", report.csv_header);
            for row in &report.csv_rows {
                println!("{row}");
            }
        }
    }
    Ok(())
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Density(args) => {
            let cfg = merge_config(&args, Experiment::Density)?;
            let report = run_density_experiment(&cfg)?;
            emit(&report, cfg.output_path.as_deref())?;
            Ok(0)
        }
        Command::Gap { ensemble, xmax, grid } => {
            let mut cfg = merge_config(&ensemble, Experiment::Gap)?;
            cfg.xmax = xmax.or(cfg.xmax);
            cfg.grid = grid.or(cfg.grid);
            let report = run_gap_experiment(&cfg)?;
            emit(&report, cfg.output_path.as_deref())?;
            Ok(0)
        }
        Command::Kpoint { ensemble, k, points } => {
            let cfg = merge_config(&ensemble, Experiment::Kpoint)?;
            if points.len() != 2 * k {
                return Err(Error::Config(format!(
                    "expected {} re,im values for k = {k}, got {}",
                    2 * k,
                    points.len()
                )));
            }
            let zs: Vec<Complex64> =
                points.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
            let report = run_kpoint(cfg.kind, &cfg.ensemble, &zs)?;
            emit(&report, cfg.output_path.as_deref())?;
            Ok(0)
        }
        Command::Stability(args) => {
            let mut args = args;
            if args.kind.is_none() {
                args.kind = Some(if args.m_fixed.unwrap_or(0) > 0 {
                    EnsembleKind::MixedProduct
                } else {
                    EnsembleKind::ProductGinibre
                });
            }
            if args.m_fixed.is_none() {
                args.m_fixed = Some(0);
            }
            let cfg = merge_config(&args, Experiment::Stability)?;
            let report = run_stability_experiment(&cfg)?;
            emit(&report, cfg.output_path.as_deref())?;
            Ok(0)
        }
        Command::Verify { suite, json } => {
            let suite: Suite = suite.parse()?;
            let report = run_verify(suite);
            let text = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Config(format!("report serialization: {e}")))?;
            match json {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    println!("verify report written to {path}");
                }
                None => println!("{text}"),
            }
            for check in &report.checks {
                println!(
                    "{} {} (measured {:.3e}, threshold {:.3e})",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.name,
                    check.measured,
                    check.threshold
                );
            }
            Ok(if report.all_pass { 0 } else { 1 })
        }
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
