//! Rescaled free energy `F(aλ, ah)/a²` as the coupling shrinks, for two
//! disorder laws.
//!
//! ```text
//! cargo run --release --example weak_coupling -- [samples] [n_base]
//! ```

use copolymer::experiments::{weak_coupling_scan, Experiment, ExperimentConfig};
use copolymer::DisorderLaw;

fn main() -> copolymer::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let mut cfg = ExperimentConfig::for_experiment(Experiment::Scaling);
    cfg.lambda = vec![1.0];
    cfg.h = vec![0.5];
    cfg.a_list = vec![1.0, 0.7, 0.5];
    cfg.n_samples = *args.first().unwrap_or(&50);
    cfg.n_base = *args.get(1).unwrap_or(&500);
    for disorder in [DisorderLaw::Gaussian, DisorderLaw::Rademacher] {
        cfg.disorder = disorder;
        let scan = weak_coupling_scan(&cfg)?;
        println!("{disorder}:");
        for r in &scan.rows {
            println!(
                "  a = {:<4} N = {:<5} F/a^2 = {:.5} +- {:.5}",
                r.a, r.n_len, r.rescaled, r.rescaled_stderr
            );
        }
        println!("  max pairwise z = {:.2}", scan.max_pairwise_z);
    }
    Ok(())
}
