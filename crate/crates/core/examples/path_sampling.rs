//! Exact trajectory sampling: observables, longest excursions and
//! two-point contact correlations.
//!
//! ```text
//! cargo run --release --example path_sampling -- [N] [lambda] [h] [paths]
//! ```

use copolymer::model::sample_disorder;
use copolymer::partition::build_partition_table;
use copolymer::paths::{
    excursion_tail_statistics, path_observables, sample_paths, ContactCorrelations,
};
use copolymer::{CopolymerParams, DisorderLaw, InterArrivalLaw};

fn main() -> copolymer::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let n = args.first().map_or(1000, |&x| x as usize);
    let params = CopolymerParams::new(*args.get(1).unwrap_or(&1.0), *args.get(2).unwrap_or(&0.0))?;
    let count = args.get(3).map_or(500, |&x| x as usize);
    let law = InterArrivalLaw::zeta(0.5)?;
    let omega = sample_disorder(&DisorderLaw::Gaussian, n, 11, 0)?.omega;
    let table = build_partition_table(&omega, &params, &law)?;
    let paths = sample_paths(&omega, &params, &law, &table, count, 5)?;

    let obs: Vec<_> = paths.iter().map(path_observables).collect();
    let mean = |f: fn(&copolymer::paths::PathObservables) -> usize| {
        obs.iter().map(|o| f(o) as f64).sum::<f64>() / count as f64
    };
    println!("{count} paths of length {n}:");
    println!("  mean water monomers   {:.2}", mean(|o| o.nn));
    println!("  mean contacts         {:.2}", mean(|o| o.contacts));
    println!(
        "  mean longest gap      {:.2}",
        mean(|o| o.longest_excursion)
    );

    if count >= 100 {
        let stats = excursion_tail_statistics(&paths)?;
        let l = stats.longest[0];
        println!(
            "  M_N / ln N: mean {:.3}, quantiles 10/50/90% {:.3} {:.3} {:.3}",
            l.mean, l.q10, l.q50, l.q90
        );
        for m in [1, 2, 5, 10, 20] {
            println!("  P(gap >= {m:>2}) = {:.4}", stats.gap_survival(m));
        }
    }

    let corr = ContactCorrelations::new(&omega, &params, &law)?;
    let i = n / 4;
    println!("\ncontact covariance from site {i}:");
    for d in [1, 2, 4, 8, 16, 32] {
        if i + d <= n {
            let c = corr.probe(i, i + d)?;
            println!("  d = {d:>3}: {:+.3e}", c.covariance);
        }
    }
    Ok(())
}
