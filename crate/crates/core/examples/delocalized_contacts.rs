//! Growth of the expected water occupation with `N` above the
//! fractional-moment threshold, from exact contact profiles.
//!
//! ```text
//! cargo run --release --example delocalized_contacts -- [offset] [samples]
//! ```

use copolymer::experiments::{delocalized_scaling, Experiment, ExperimentConfig};

fn main() -> copolymer::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let mut cfg = ExperimentConfig::for_experiment(Experiment::Deloc);
    cfg.lambda = vec![1.0];
    cfg.h_offset = Some(*args.first().unwrap_or(&0.2));
    cfg.n_samples = args.get(1).map_or(20, |&x| x as usize);
    cfg.n_list = vec![256, 512, 1024, 2048];
    let d = delocalized_scaling(&cfg)?;
    println!("lambda = 1, h = {:.4}", d.h);
    for r in &d.rows {
        println!(
            "  N = {:>5}: E[N_water] = {:.3} +- {:.3}, E[contacts] = {:.3}",
            r.n_len, r.water.mean, r.water.stderr, r.contacts.mean
        );
    }
    if let Some(f) = d.fit {
        println!("log-log slope {:.3} +- {:.3}", f.slope, f.slope_stderr);
    }
    Ok(())
}
