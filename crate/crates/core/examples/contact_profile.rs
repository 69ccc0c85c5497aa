//! Exact site marginals `P(Δ_n = 1)` and `P(n ∈ τ)` for one chain, and
//! the identity `∂_h log Z_N = -2λ E[𝒩_N]`.
//!
//! ```text
//! cargo run --release --example contact_profile -- [N] [lambda] [h]
//! ```

use copolymer::estimators::contact_profile;
use copolymer::model::sample_disorder;
use copolymer::partition::build_partition_table;
use copolymer::{CopolymerParams, DisorderLaw, InterArrivalLaw};

fn main() -> copolymer::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let n = args.first().map_or(400, |&x| x as usize);
    let params = CopolymerParams::new(*args.get(1).unwrap_or(&1.0), *args.get(2).unwrap_or(&0.6))?;
    let law = InterArrivalLaw::zeta(0.5)?;
    let omega = sample_disorder(&DisorderLaw::Gaussian, n, 3, 0)?.omega;
    let table = build_partition_table(&omega, &params, &law)?;
    let prof = contact_profile(&omega, &params, &law, &table)?;

    println!(
        "E[N_water] = {:.4}, E[contacts] = {:.4}",
        prof.expected_nn,
        prof.prob_contact.iter().sum::<f64>()
    );
    println!(
        "{:>6} {:>10} {:>10} {:>8}",
        "n", "P(water)", "P(contact)", "omega"
    );
    for i in (0..n).step_by((n / 20).max(1)) {
        println!(
            "{:>6} {:>10.4} {:>10.4} {:>8.3}",
            i + 1,
            prof.prob_water[i],
            prof.prob_contact[i],
            omega[i]
        );
    }

    let step = 1e-5;
    let lz = |h: f64| -> copolymer::Result<f64> {
        Ok(build_partition_table(&omega, &params.with_h(h)?, &law)?.log_z_free)
    };
    let fd = (lz(params.h() + step)? - lz(params.h() - step)?) / (2.0 * step);
    println!(
        "\nd/dh log Z = {fd:.8}, -2 lambda E[N_water] = {:.8}",
        -2.0 * params.lambda() * prof.expected_nn
    );
    Ok(())
}
