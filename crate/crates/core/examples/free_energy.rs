//! Monte Carlo free energy along a row of `h` at fixed coupling, next to
//! the annealed value and the localization certificate.
//!
//! ```text
//! cargo run --release --example free_energy -- [lambda] [N] [samples]
//! ```

use copolymer::estimators::{estimate_free_energy, localization_certificate, MonteCarlo};
use copolymer::partition::build_annealed_table;
use copolymer::{CopolymerParams, DisorderLaw, InterArrivalLaw};

fn main() -> copolymer::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let lambda = *args.first().unwrap_or(&1.0);
    let n = args.get(1).map_or(1000, |&x| x as usize);
    let samples = args.get(2).map_or(64, |&x| x as usize);
    let law = InterArrivalLaw::zeta(0.5)?;
    let mc = MonteCarlo::new(&law, DisorderLaw::Gaussian, samples, 7);

    println!("lambda = {lambda}, N = {n}, {samples} disorder samples");
    println!(
        "{:>6} {:>12} {:>10} {:>12} {:>10} {:>10}",
        "h", "F_N", "stderr", "F_N^c", "annealed", "certified"
    );
    for h in [0.0, 0.25, 0.5, 0.75, 1.0, 1.25] {
        let p = CopolymerParams::new(lambda, h)?;
        let free = estimate_free_energy(&mc, &p, n, false)?;
        let cert = localization_certificate(&mc, &p, n, 3.0)?;
        let ann = build_annealed_table(&p, &DisorderLaw::Gaussian, &law, n)?.free_energy();
        println!(
            "{h:>6} {:>12.6} {:>10.2e} {:>12.6} {ann:>10.4} {:>10}",
            free.mean, free.stderr, cert.estimate.mean, cert.certified
        );
    }
    Ok(())
}
