//! Exact partition functions for one disorder realization.
//!
//! Builds the O(N²) table, checks it against exhaustive enumeration on a
//! short prefix, and round-trips it through the binary dump format.
//!
//! ```text
//! cargo run --release --example exact_partition -- [N] [lambda] [h]
//! ```

use copolymer::model::sample_disorder;
use copolymer::partition::{brute_force_log_partition, build_partition_table, LogPartitionTable};
use copolymer::{CopolymerParams, DisorderLaw, InterArrivalLaw};

fn main() -> copolymer::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let n = args.first().map_or(2000, |&x| x as usize);
    let params = CopolymerParams::new(*args.get(1).unwrap_or(&1.0), *args.get(2).unwrap_or(&0.5))?;
    let law = InterArrivalLaw::zeta(0.5)?;
    let omega = sample_disorder(&DisorderLaw::Gaussian, n, 2024, 0)?.omega;

    let table = build_partition_table(&omega, &params, &law)?;
    println!("N = {n}, lambda = {}, h = {}", params.lambda(), params.h());
    println!("  log Z^c_N     = {:.10}", table.log_zc[n]);
    println!("  log Z_N       = {:.10}", table.log_z_free);
    println!("  (1/N) log Z_N = {:.6}", table.free_energy());

    let short = &omega[..14];
    let small = build_partition_table(short, &params, &law)?;
    let bf = brute_force_log_partition(short, &params, &law, false)?;
    println!(
        "\nN = 14 prefix: DP {:.14} vs enumeration {bf:.14}",
        small.log_z_free
    );

    let bytes = table.to_bytes();
    let back = LogPartitionTable::from_bytes(&bytes)?;
    println!(
        "binary dump: {} bytes, round trip exact: {}",
        bytes.len(),
        back == table
    );
    Ok(())
}
