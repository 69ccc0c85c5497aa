//! Bounds on the critical curve `h_c(λ)` for a few couplings.
//!
//! ```text
//! cargo run --release --example critical_bracket -- [alpha] [zeta|srw]
//! ```

use copolymer::bounds::{hc_bracket, sigma_series, slope_bracket};
use copolymer::model::RenewalKind;
use copolymer::{DisorderLaw, InterArrivalLaw};

fn main() -> copolymer::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args
        .next()
        .map_or(Ok(0.5), |a| a.parse())
        .expect("alpha must be a number");
    let kind = RenewalKind::parse(&args.next().unwrap_or_else(|| "zeta".into()))?;
    let law = InterArrivalLaw::from_kind(kind, alpha)?;
    let (m_lo, m_hi) = slope_bracket(law.alpha())?;
    println!("inter-arrival law {law}; weak-coupling slope in [{m_lo:.4}, {m_hi}]");

    for disorder in [DisorderLaw::Gaussian, DisorderLaw::Rademacher] {
        println!("\n{disorder} charges");
        println!(
            "{:>7} {:>12} {:>12} {:>12} {:>8}",
            "lambda", "rare-stretch", "hbar", "annealed", "gamma*"
        );
        for lambda in [0.05, 0.25, 0.5, 1.0, 2.0] {
            let b = hc_bracket(&law, &disorder, lambda)?;
            println!(
                "{:>7} {:>12.6} {:>12.6} {:>12.6} {:>8.4}",
                lambda, b.lower_rare_stretch, b.upper_hbar, b.upper_annealed, b.gamma_star
            );
        }
    }

    let s = sigma_series(&law, &DisorderLaw::Gaussian, 0.9, 1.0, 0.99, 1e-10)?;
    println!(
        "\nSigma(0.9, 1, 0.99) in [{:.12}, {:.12}] (cut {})",
        s.value_interval.0, s.value_interval.1, s.n_cut
    );
    Ok(())
}
