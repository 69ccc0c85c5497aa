//! Numerical critical point by certificate-crossing bisection, shown
//! inside its rigorous bracket.
//!
//! ```text
//! cargo run --release --example hc_estimate -- [lambda] [N] [samples]
//! ```

use copolymer::experiments::{estimate_hc, Experiment, ExperimentConfig};

fn main() -> copolymer::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let mut cfg = ExperimentConfig::for_experiment(Experiment::Hc);
    cfg.lambda = vec![*args.first().unwrap_or(&1.0)];
    cfg.n_list = vec![args.get(1).map_or(1000, |&x| x as usize)];
    cfg.n_samples = args.get(2).map_or(64, |&x| x as usize);
    let e = estimate_hc(&cfg)?;
    let b = &e.bracket;
    println!("lambda = {}", e.lambda);
    println!(
        "  rigorous bracket  [{:.4}, {:.4}]  (annealed {:.4})",
        b.lower_rare_stretch, b.upper_hbar, b.upper_annealed
    );
    println!(
        "  hc_hat            {:.4}  ci [{:.4}, {:.4}]{}",
        e.hc_hat,
        e.ci.0,
        e.ci.1,
        if e.flagged { "  flagged" } else { "" }
    );
    println!(
        "  N = {}, {} disorder samples drawn",
        e.n_used, e.samples_used
    );
    Ok(())
}
