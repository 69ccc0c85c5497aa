use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use copolymer::experiments::{run_experiment, write_report, Experiment, ExperimentConfig};
use copolymer::Error;

#[derive(Parser)]
#[command(
    name = "copolymer",
    version,
    about = "Random copolymer experiments: free energies, critical-point bounds, path statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Free energy over a (lambda, h, N) grid
    FreeEnergy(Overrides),
    /// Critical point by certificate-crossing bisection
    Hc(Overrides),
    /// Rigorous bracket on the critical curve
    Bounds(Overrides),
    /// Fractional-moment threshold with its certificate
    Hbar(Overrides),
    /// Weak-coupling rescaled free energies
    Scaling(Overrides),
    /// Water occupation growth in the delocalized phase
    Deloc(Overrides),
    /// Free energy just below the critical point
    Smoothing(Overrides),
    /// Decay rate of the open-end probability
    Mu(Overrides),
    /// Exact trajectory sampling and observables
    Paths(Overrides),
}

#[derive(Clone, Copy, ValueEnum)]
enum DisorderArg {
    Gaussian,
    Rademacher,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Zeta,
    Srw,
}

#[derive(Args)]
struct Overrides {
    /// Config file of `key = value` lines
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<String>,
    /// Coupling, or a comma-separated grid
    #[arg(long)]
    lambda: Option<String>,
    /// Charge bias, or a comma-separated grid
    #[arg(long)]
    h: Option<String>,
    /// Chain length, or a comma-separated list
    #[arg(long)]
    n: Option<String>,
    /// Disorder samples per point
    #[arg(long)]
    samples: Option<String>,
    /// Master seed
    #[arg(long)]
    seed: Option<String>,
    /// Output CSV path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    disorder: Option<DisorderArg>,
    #[arg(long = "k-family", value_enum)]
    k_family: Option<FamilyArg>,
    /// Also write (x, y, yerr) triples next to the output
    #[arg(long)]
    emit_plot_data: bool,
}

impl Command {
    fn split(self) -> (Experiment, Overrides) {
        match self {
            Command::FreeEnergy(o) => (Experiment::FreeEnergy, o),
            Command::Hc(o) => (Experiment::Hc, o),
            Command::Bounds(o) => (Experiment::Bounds, o),
            Command::Hbar(o) => (Experiment::Hbar, o),
            Command::Scaling(o) => (Experiment::Scaling, o),
            Command::Deloc(o) => (Experiment::Deloc, o),
            Command::Smoothing(o) => (Experiment::Smoothing, o),
            Command::Mu(o) => (Experiment::Mu, o),
            Command::Paths(o) => (Experiment::Paths, o),
        }
    }
}

fn build_config(experiment: Experiment, o: Overrides) -> Result<ExperimentConfig, Error> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &o.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
        if cfg.experiment != experiment {
            log::warn!(
                "config names experiment `{}`; running `{experiment}`",
                cfg.experiment
            );
        }
    }
    cfg.experiment = experiment;
    let pairs = [
        ("alpha", o.alpha),
        ("lambda", o.lambda),
        ("h", o.h),
        ("n_list", o.n),
        ("n_samples", o.samples),
        ("master_seed", o.seed),
    ];
    for (key, value) in pairs {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    if let Some(out) = o.out {
        cfg.output = Some(out);
    }
    if let Some(d) = o.disorder {
        cfg.set(
            "disorder",
            match d {
                DisorderArg::Gaussian => "gaussian",
                DisorderArg::Rademacher => "rademacher",
                DisorderArg::Uniform => "uniform",
            },
        )?;
    }
    if let Some(k) = o.k_family {
        cfg.set(
            "k_family",
            match k {
                FamilyArg::Zeta => "zeta",
                FamilyArg::Srw => "srw",
            },
        )?;
    }
    if o.emit_plot_data {
        cfg.emit_plot_data = true;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Error> {
    let (experiment, overrides) = cli.command.split();
    let cfg = build_config(experiment, overrides)?;
    log::info!("running {experiment} with seed {}", cfg.master_seed);
    let report = run_experiment(&cfg)?;
    let rendered = write_report(&cfg, report.as_ref())?;
    if cfg.output.is_none() {
        print!("{rendered}");
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(4),
    }
}
