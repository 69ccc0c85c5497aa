//! Renewal recursion shared by the quenched, annealed and backward tables.
//!
//! With tilt `g` the excursion `(s, t]` has weight
//! `K(t-s) (1 + e^{g_t - g_s}) / 2`, so
//!
//! ```text
//! Z_t = source_t + ½ Σ_s Z_s K(t-s) + ½ e^{g_t} Σ_s Z_s e^{-g_s} K(t-s)
//! ```
//!
//! Both sums are convolutions with `K`. Completed blocks of `BLOCK` past
//! values are stored as `exp(v_s - scale_b)`, which turns the inner loop
//! into dot products against the reversed kernel; the still-open block is
//! summed in log space.

use crate::logspace::{dot2, log_add_exp, LogAccumulator};
use crate::model::InterArrivalLaw;
use std::f64::consts::LN_2;

pub(crate) const BLOCK: usize = 64;

/// Block-scaled copy of a log-valued sequence.
struct ScaledStream {
    scaled: Vec<f64>,
    scales: Vec<f64>,
    factors: Vec<f64>,
    reference: f64,
}

impl ScaledStream {
    fn new(len: usize) -> Self {
        ScaledStream {
            scaled: vec![0.0; len],
            scales: Vec::new(),
            factors: Vec::new(),
            reference: f64::NEG_INFINITY,
        }
    }

    /// Freezes block `b` from the log values `values[bB..(b+1)B]`.
    fn seal(&mut self, b: usize, values: impl Iterator<Item = f64> + Clone) {
        let lo = b * BLOCK;
        let scale = values.clone().fold(f64::NEG_INFINITY, f64::max);
        for (i, v) in values.enumerate() {
            self.scaled[lo + i] = if scale == f64::NEG_INFINITY {
                0.0
            } else {
                (v - scale).exp()
            };
        }
        self.scales.push(scale);
        if scale > self.reference {
            self.reference = scale;
            self.factors = self.scales.iter().map(|&s| (s - scale).exp()).collect();
        } else {
            let f = if self.reference == f64::NEG_INFINITY {
                0.0
            } else {
                (scale - self.reference).exp()
            };
            self.factors.push(f);
        }
    }
}

/// Runs the recursion for `t = 0..=len`, where `len = tilt.len() - 1`.
///
/// `source(t)` is the log of the additive source term; gaps longer than
/// `max_gap` are dropped when it is set.
pub(crate) fn renewal_recursion(
    law: &InterArrivalLaw,
    tilt: &[f64],
    source: impl Fn(usize) -> f64,
    max_gap: Option<usize>,
) -> Vec<f64> {
    assert!(!tilt.is_empty());
    let len = tilt.len() - 1;
    let kr = law.pmf_reversed(len);
    let kr: &[f64] = &kr;
    let mut v = vec![f64::NEG_INFINITY; len + 1];
    let mut xs = ScaledStream::new(len + 1);
    let mut ys = ScaledStream::new(len + 1);
    let gap_cap = max_gap.unwrap_or(usize::MAX);

    for t in 0..=len {
        if t > 0 && t % BLOCK == 0 {
            let b = t / BLOCK - 1;
            let lo = b * BLOCK;
            xs.seal(b, v[lo..t].iter().copied());
            ys.seal(b, v[lo..t].iter().zip(&tilt[lo..t]).map(|(a, g)| a - g));
        }
        let first = t.saturating_sub(gap_cap);
        let sealed = t / BLOCK;
        let mut acc_x = 0.0;
        let mut acc_y = 0.0;
        for b in (first / BLOCK)..sealed {
            let lo = (b * BLOCK).max(first);
            let hi = (b + 1) * BLOCK;
            let k = &kr[len - t + lo..len - t + hi];
            let (px, py) = dot2(&xs.scaled[lo..hi], &ys.scaled[lo..hi], k);
            acc_x += px * xs.factors[b];
            acc_y += py * ys.factors[b];
        }
        let mut part_x = LogAccumulator::new();
        let mut part_y = LogAccumulator::new();
        for s in (sealed * BLOCK).max(first)..t {
            let lk = law.log_pmf(t - s);
            part_x.push(v[s] + lk);
            part_y.push(v[s] - tilt[s] + lk);
        }
        let sum_x = log_add_exp(scaled_log(acc_x, xs.reference), part_x.value());
        let sum_y = log_add_exp(scaled_log(acc_y, ys.reference), part_y.value());
        let conv = log_add_exp(sum_x, tilt[t] + sum_y) - LN_2;
        v[t] = log_add_exp(source(t), conv);
    }
    v
}

#[inline]
fn scaled_log(acc: f64, reference: f64) -> f64 {
    if acc > 0.0 && reference > f64::NEG_INFINITY {
        reference + acc.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// Plain O(N²) log-domain version of [`renewal_recursion`], used to test
/// the blocked implementation.
#[cfg(test)]
pub(crate) fn renewal_recursion_naive(
    law: &InterArrivalLaw,
    tilt: &[f64],
    source: impl Fn(usize) -> f64,
) -> Vec<f64> {
    use crate::logspace::log_half_one_plus_exp;
    let len = tilt.len() - 1;
    let mut v = vec![f64::NEG_INFINITY; len + 1];
    for t in 0..=len {
        let mut acc = LogAccumulator::new();
        acc.push(source(t));
        for s in 0..t {
            acc.push(v[s] + law.log_pmf(t - s) + log_half_one_plus_exp(tilt[t] - tilt[s]));
        }
        v[t] = acc.value();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample_disorder, DisorderLaw};

    fn tilt_from(omega: &[f64], lambda: f64, h: f64) -> Vec<f64> {
        let mut g = vec![0.0];
        let mut p = 0.0;
        for w in omega {
            p += w + h;
            g.push(-2.0 * lambda * p);
        }
        g
    }

    #[test]
    fn blocked_matches_naive_across_block_boundaries() {
        for law in [InterArrivalLaw::zeta(0.5).unwrap(), InterArrivalLaw::srw()] {
            for (lambda, h) in [(0.0, 0.0), (1.0, 0.0), (1.0, 1.5), (3.0, 0.2)] {
                let omega = sample_disorder(&DisorderLaw::Gaussian, 300, 5, 0)
                    .unwrap()
                    .omega;
                let g = tilt_from(&omega, lambda, h);
                let src = |t: usize| if t == 0 { 0.0 } else { f64::NEG_INFINITY };
                let fast = renewal_recursion(&law, &g, src, None);
                let slow = renewal_recursion_naive(&law, &g, src);
                for t in 0..g.len() {
                    if slow[t] == f64::NEG_INFINITY {
                        assert_eq!(fast[t], f64::NEG_INFINITY);
                    } else {
                        assert!(
                            (fast[t] - slow[t]).abs() < 1e-10 * (1.0 + slow[t].abs()),
                            "{law} t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn truncation_only_lowers_values() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let omega = sample_disorder(&DisorderLaw::Gaussian, 400, 1, 2)
            .unwrap()
            .omega;
        let g = tilt_from(&omega, 1.0, 0.3);
        let src = |t: usize| if t == 0 { 0.0 } else { f64::NEG_INFINITY };
        let full = renewal_recursion(&law, &g, src, None);
        let cut = renewal_recursion(&law, &g, src, Some(100));
        let mut differs = false;
        for t in 0..g.len() {
            assert!(cut[t] <= full[t] + 1e-12);
            if t <= 100 {
                assert!((cut[t] - full[t]).abs() < 1e-12);
            } else {
                differs |= cut[t] < full[t] - 1e-9;
            }
        }
        assert!(differs);
    }
}
