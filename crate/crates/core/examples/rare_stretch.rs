//! Lower bound on `log Z` from trajectories that only visit water on
//! unusually hydrophilic blocks, compared with the exact value.
//!
//! ```text
//! cargo run --release --example rare_stretch -- [N] [block_len] [level]
//! ```

use copolymer::bounds::{rare_stretch_lower_bound, strategy_a_restricted_log_z};
use copolymer::model::sample_disorder;
use copolymer::partition::build_partition_table;
use copolymer::{CopolymerParams, DisorderLaw, InterArrivalLaw};

fn main() -> copolymer::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let n = args.first().map_or(4000, |&x| x as usize);
    let block = args.get(1).map_or(40, |&x| x as usize);
    let level = *args.get(2).unwrap_or(&0.2);
    let law = InterArrivalLaw::zeta(0.5)?;
    println!(
        "rare-stretch bound on h_c(1): {:.4}",
        rare_stretch_lower_bound(&DisorderLaw::Gaussian, law.alpha(), 1.0)
    );
    println!("{:>6} {:>14} {:>14}", "h", "restricted/N", "exact/N");
    for h in [0.0, 0.1, 0.2, 0.4] {
        let p = CopolymerParams::new(1.0, h)?;
        let mut restricted = 0.0;
        let mut exact = 0.0;
        let reps = 8;
        for i in 0..reps {
            let omega = sample_disorder(&DisorderLaw::Gaussian, n, 17, i)?.omega;
            restricted += strategy_a_restricted_log_z(&omega, &p, &law, block, level)? / n as f64;
            exact += build_partition_table(&omega, &p, &law)?.free_energy();
        }
        println!(
            "{h:>6} {:>14.5} {:>14.5}",
            restricted / reps as f64,
            exact / reps as f64
        );
    }
    Ok(())
}
