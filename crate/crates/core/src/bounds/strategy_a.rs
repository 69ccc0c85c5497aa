//! Explicit single-trajectory lower bound on `log Z_N`.
//!
//! Split `1..=N` into blocks of length `ℓ`. A block is good when its raw
//! charge `Σ ω_n` is at most `-m ℓ`. The trajectory that makes each good
//! block one water excursion and spends everything else in single oil
//! excursions has weight
//!
//! ```text
//! Π_good [K(ℓ)/2 · e^{-2λ C(block)}] · Π_oil gaps K(gap)/2 · [P(τ_1 > N - last)/2]
//! ```
//!
//! which is a lower bound on `Z_N` because it is one term of the sum.

use crate::error::{Error, Result};
use crate::model::{CopolymerParams, InterArrivalLaw};
use std::f64::consts::LN_2;

/// Log of the good-block trajectory weight. With no good block this is
/// the weight `P(τ_1 > N)/2` of the chain staying in oil.
pub fn strategy_a_restricted_log_z(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    block_len: usize,
    m_level: f64,
) -> Result<f64> {
    let n = omega.len();
    if block_len == 0 || n == 0 || !n.is_multiple_of(block_len) {
        return Err(Error::invalid(format!(
            "length {n} must be a positive multiple of block_len {block_len}"
        )));
    }
    let lambda = params.lambda();
    let h = params.h();
    let threshold = -m_level * block_len as f64;
    let log_k_block = law.log_pmf(block_len);
    let mut total = 0.0;
    let mut end = 0usize;
    for (b, chunk) in omega.chunks_exact(block_len).enumerate() {
        let raw: f64 = chunk.iter().sum();
        if raw > threshold || log_k_block == f64::NEG_INFINITY {
            continue;
        }
        let start = b * block_len;
        if start > end {
            let lk = law.log_pmf(start - end);
            if lk == f64::NEG_INFINITY {
                // a gap the law cannot realise: skip this block
                continue;
            }
            total += lk - LN_2;
        }
        total += log_k_block - LN_2 - 2.0 * lambda * (raw + h * block_len as f64);
        end = start + block_len;
    }
    if end < n {
        total += law.log_tail(n - end) - LN_2;
    }
    Ok(total)
}
