//! Driving an experiment from config text and writing its CSV.
//!
//! ```text
//! cargo run --release --example experiment_config
//! ```

use copolymer::experiments::{run_experiment, write_report, ExperimentConfig};

const CONFIG: &str = "
# free energy along h at two couplings
experiment = free-energy
alpha = 0.5
k_family = zeta
disorder = rademacher
lambda = 0.5, 1.0
h = 0.0, 0.3, 0.6
n_list = 400
n_samples = 32
master_seed = 99
";

fn main() -> copolymer::Result<()> {
    let cfg = ExperimentConfig::parse(CONFIG)?;
    println!("normalized config:\n{}", cfg.to_text());
    let report = run_experiment(&cfg)?;
    print!("{}", write_report(&cfg, report.as_ref())?);
    Ok(())
}
