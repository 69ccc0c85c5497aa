//! Exact per-site marginals of the polymer measure for one disorder window.

use std::f64::consts::LN_2;

use crate::error::Result;
use crate::model::{CopolymerParams, InterArrivalLaw};
use crate::partition::recursion::BLOCK;
use crate::partition::{backward_log_partitions, LogPartitionTable};

/// Marginals of the free-endpoint polymer measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactProfile {
    /// `prob_water[n-1] = P(Δ_n = 1)` for `n = 1..=N`.
    pub prob_water: Vec<f64>,
    /// `E[𝒩_N] = Σ_n P(Δ_n = 1)`.
    pub expected_nn: f64,
    /// `prob_contact[n-1] = P(n ∈ τ)` for `n = 1..=N`.
    pub prob_contact: Vec<f64>,
}

/// Computes the marginals from the forward table and the backward
/// partitions in `O(N²)`.
///
/// The probability that `(s, t]` is a closed water excursion is
/// `Z^c_s K(t-s) e^{g_t - g_s} Z^{(t)} / (2 Z_N)`, with `g = -2λ P` and
/// `Z^{(t)}` the backward partition function. Each such probability is
/// added to the sites `s+1..=t` through a difference array.
pub fn contact_profile(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    table: &LogPartitionTable,
) -> Result<ContactProfile> {
    table.check_matches(omega, params, law)?;
    let n = table.n_max;
    let back = backward_log_partitions(omega, params, law);
    let g = table.tilt();
    let v = &table.log_zc;
    let log_z = table.log_z_free;

    // a_s: left factor, b_t: right factor of the water-excursion weight
    let a: Vec<f64> = (0..=n).map(|s| v[s] - g[s]).collect();
    let b: Vec<f64> = (0..=n).map(|t| g[t] + back[t] - LN_2 - log_z).collect();

    let blocks = n.div_ceil(BLOCK);
    let mut scales = Vec::with_capacity(blocks);
    let mut scaled = vec![0.0; n];
    for blk in 0..blocks {
        let lo = blk * BLOCK;
        let hi = ((blk + 1) * BLOCK).min(n);
        let m = a[lo..hi].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for s in lo..hi {
            scaled[s] = if m.is_finite() { (a[s] - m).exp() } else { 0.0 };
        }
        scales.push(m);
    }

    let kr = law.pmf_reversed(n);
    let mut diff = vec![0.0; n + 2];
    for t in 1..=n {
        if b[t] == f64::NEG_INFINITY {
            continue;
        }
        let mut total = 0.0;
        for (blk, &m) in scales.iter().enumerate() {
            let lo = blk * BLOCK;
            if lo >= t {
                break;
            }
            if m == f64::NEG_INFINITY {
                continue;
            }
            let hi = ((blk + 1) * BLOCK).min(t);
            let f = (m + b[t]).exp();
            if f.is_finite() {
                let k = &kr[n - t + lo..n - t + hi];
                let mut block_total = 0.0;
                for ((d, e), kk) in diff[lo + 1..hi + 1].iter_mut().zip(&scaled[lo..hi]).zip(k) {
                    let p = f * e * kk;
                    *d += p;
                    block_total += p;
                }
                total += block_total;
            } else {
                for s in lo..hi {
                    let p = (a[s] + b[t] + law.log_pmf(t - s)).exp();
                    diff[s + 1] += p;
                    total += p;
                }
            }
        }
        diff[t + 1] -= total;
    }

    // open last excursion (s, N], water with weight e^{g_N - g_s}/2
    for s in 0..n {
        let lw = v[s] + law.log_tail(n - s) + g[n] - g[s] - LN_2 - log_z;
        let p = lw.exp();
        diff[s + 1] += p;
        diff[n + 1] -= p;
    }

    let mut prob_water = Vec::with_capacity(n);
    let mut run = 0.0;
    for d in &diff[1..=n] {
        run += d;
        prob_water.push(run.clamp(0.0, 1.0));
    }
    let expected_nn = prob_water.iter().sum();
    let prob_contact = (1..=n)
        .map(|t| (v[t] + back[t] - log_z).exp().clamp(0.0, 1.0))
        .collect();
    Ok(ContactProfile {
        prob_water,
        expected_nn,
        prob_contact,
    })
}

/// Log-weight of the open last excursion starting at `s`, both signs.
#[cfg(test)]
fn open_log_weight(law: &InterArrivalLaw, v: &[f64], g: &[f64], s: usize) -> f64 {
    let n = v.len() - 1;
    v[s] + law.log_tail(n - s) + crate::logspace::log_half_one_plus_exp(g[n] - g[s])
}
