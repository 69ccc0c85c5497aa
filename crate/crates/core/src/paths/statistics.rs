//! Excursion-length statistics across many sampled trajectories.

use std::collections::BTreeMap;

use super::{path_observables, PathTrajectory};
use crate::error::{Error, Result};

/// Fewest trajectories accepted by [`excursion_tail_statistics`].
pub const MIN_TRAJECTORIES: usize = 100;

/// Distribution of `M_N / ln N`, with `M_N` the longest closed excursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongestExcursionSummary {
    pub n_len: usize,
    pub count: usize,
    pub mean: f64,
    pub q10: f64,
    pub q50: f64,
    pub q90: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcursionStatistics {
    /// Number of closed excursions of each length, pooled over all paths.
    pub gap_histogram: BTreeMap<usize, u64>,
    /// One summary per distinct chain length, in increasing `N`.
    pub longest: Vec<LongestExcursionSummary>,
}

impl ExcursionStatistics {
    /// Empirical `P(gap ≥ m)` over the pooled closed excursions.
    pub fn gap_survival(&self, m: usize) -> f64 {
        let total: u64 = self.gap_histogram.values().sum();
        if total == 0 {
            return 0.0;
        }
        let above: u64 = self.gap_histogram.range(m..).map(|(_, c)| c).sum();
        above as f64 / total as f64
    }
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn excursion_tail_statistics(samples: &[PathTrajectory]) -> Result<ExcursionStatistics> {
    if samples.len() < MIN_TRAJECTORIES {
        return Err(Error::invalid(format!(
            "excursion statistics need at least {MIN_TRAJECTORIES} trajectories, got {}",
            samples.len()
        )));
    }
    let mut gap_histogram = BTreeMap::new();
    let mut by_len: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for traj in samples {
        for e in traj.excursions().filter(|e| e.closed) {
            *gap_histogram.entry(e.len()).or_insert(0) += 1;
        }
        if traj.n_len >= 2 {
            let m = path_observables(traj).longest_excursion as f64;
            by_len
                .entry(traj.n_len)
                .or_default()
                .push(m / (traj.n_len as f64).ln());
        }
    }
    let longest = by_len
        .into_iter()
        .map(|(n_len, mut v)| {
            v.sort_by(f64::total_cmp);
            LongestExcursionSummary {
                n_len,
                count: v.len(),
                mean: v.iter().sum::<f64>() / v.len() as f64,
                q10: quantile(&v, 0.1),
                q50: quantile(&v, 0.5),
                q90: quantile(&v, 0.9),
            }
        })
        .collect();
    Ok(ExcursionStatistics {
        gap_histogram,
        longest,
    })
}
