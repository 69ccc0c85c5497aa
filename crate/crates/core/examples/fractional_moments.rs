//! Decay of `E[Z_N^γ]` with `N` at a delocalized point, using the
//! exponent `γ*` that certifies `h̄`.
//!
//! ```text
//! cargo run --release --example fractional_moments -- [samples]
//! ```

use copolymer::bounds::hbar;
use copolymer::estimators::{estimate_fractional_moment, MonteCarlo};
use copolymer::experiments::fit_log_log;
use copolymer::{CopolymerParams, DisorderLaw, InterArrivalLaw};

fn main() -> copolymer::Result<()> {
    let samples = std::env::args()
        .nth(1)
        .map_or(1000, |a| a.parse().expect("integer argument"));
    let law = InterArrivalLaw::zeta(0.5)?;
    let r = hbar(&law, &DisorderLaw::Gaussian, 1.0, 1e-4, 1e-8)?;
    let h = r.hbar + 0.05;
    let mc = MonteCarlo::new(&law, DisorderLaw::Gaussian, samples, 3);
    let ns = [128, 256, 512, 1024];
    let fm = estimate_fractional_moment(
        &mc,
        &CopolymerParams::new(1.0, h)?,
        r.gamma_star,
        &ns,
        false,
    )?;
    println!("h = {h:.4}, gamma* = {:.4}", r.gamma_star);
    for m in &fm {
        println!(
            "  N = {:>5}: log E[Z^g] = {:.4} +- {:.4}   (log K(N)^g = {:.4})",
            m.estimate.n_len,
            m.log_mean,
            m.log_stderr,
            m.k_gamma.ln()
        );
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = fm.iter().map(|m| m.log_mean.exp()).collect();
    let fit = fit_log_log(&xs, &ys).expect("four points");
    println!(
        "decay exponent {:.3} (reference -gamma* alpha = {:.3})",
        fit.slope,
        -0.5 * r.gamma_star
    );
    Ok(())
}
