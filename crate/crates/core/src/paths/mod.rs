//! Exact sampling of polymer trajectories and path observables.
//!
//! The polymer measure only depends on the renewal set `τ` and the signs
//! of the excursions, so a trajectory is stored as that pair.

mod correlation;
mod sampler;
mod statistics;

pub use correlation::{correlation_probe, ContactCorrelations, CorrelationProbe};
pub use sampler::{sample_path, sample_paths, PathSampler};
pub use statistics::{
    excursion_tail_statistics, ExcursionStatistics, LongestExcursionSummary, MIN_TRAJECTORIES,
};

/// One excursion `(start, end]` of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Excursion {
    pub start: usize,
    pub end: usize,
    pub water: bool,
    /// False for the final excursion when `N ∉ τ`.
    pub closed: bool,
}

impl Excursion {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// A sampled configuration `(τ ∩ (0, N], signs)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrajectory {
    pub n_len: usize,
    /// Strictly increasing renewal points in `(0, N]`.
    pub renewal_points: Vec<usize>,
    /// Largest renewal point in `[0, N]`.
    pub last_closed: usize,
    /// One sign per excursion (`true` = water), the open final excursion
    /// included when `last_closed < N`.
    pub excursion_signs: Vec<bool>,
}

impl PathTrajectory {
    pub fn excursions(&self) -> impl Iterator<Item = Excursion> + '_ {
        let starts = std::iter::once(0).chain(self.renewal_points.iter().copied());
        let ends = self
            .renewal_points
            .iter()
            .copied()
            .chain((self.last_closed < self.n_len).then_some(self.n_len));
        starts
            .zip(ends)
            .zip(&self.excursion_signs)
            .map(|((start, end), &water)| Excursion {
                start,
                end,
                water,
                closed: end <= self.last_closed,
            })
    }

    /// `Δ_n` for `n = 1..=N` (index `n-1`).
    pub fn water_indicator(&self) -> Vec<bool> {
        let mut out = vec![false; self.n_len];
        for e in self.excursions().filter(|e| e.water) {
            out[e.start..e.end].iter_mut().for_each(|x| *x = true);
        }
        out
    }

    /// Bitmask of the renewal set, bit `n-1` for `n ∈ τ` (requires `N ≤ 64`).
    pub fn renewal_mask(&self) -> u64 {
        debug_assert!(self.n_len <= 64);
        self.renewal_points
            .iter()
            .fold(0u64, |m, &t| m | 1 << (t - 1))
    }
}

/// Summary statistics of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathObservables {
    /// `𝒩_N`: monomers in water.
    pub nn: usize,
    /// Longest closed excursion, 0 when there is none.
    pub longest_excursion: usize,
    /// `|τ ∩ (0, N]|`.
    pub contacts: usize,
}

pub fn path_observables(traj: &PathTrajectory) -> PathObservables {
    let mut nn = 0;
    let mut longest = 0;
    for e in traj.excursions() {
        if e.water {
            nn += e.len();
        }
        if e.closed {
            longest = longest.max(e.len());
        }
    }
    PathObservables {
        nn,
        longest_excursion: longest,
        contacts: traj.renewal_points.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_oil_excursion() {
        let t = PathTrajectory {
            n_len: 10,
            renewal_points: vec![],
            last_closed: 0,
            excursion_signs: vec![false],
        };
        assert_eq!(
            path_observables(&t),
            PathObservables {
                nn: 0,
                longest_excursion: 0,
                contacts: 0
            }
        );
    }

    #[test]
    fn renewal_everywhere_all_water() {
        let n = 7;
        let t = PathTrajectory {
            n_len: n,
            renewal_points: (1..=n).collect(),
            last_closed: n,
            excursion_signs: vec![true; n],
        };
        let o = path_observables(&t);
        assert_eq!((o.nn, o.longest_excursion, o.contacts), (n, 1, n));
        assert_eq!(t.renewal_mask(), 0b111_1111);
    }

    #[test]
    fn open_final_excursion_counts_towards_water_not_longest() {
        let t = PathTrajectory {
            n_len: 12,
            renewal_points: vec![2, 5],
            last_closed: 5,
            excursion_signs: vec![false, true, true],
        };
        let o = path_observables(&t);
        assert_eq!(o.nn, 3 + 7);
        assert_eq!(o.longest_excursion, 3);
        assert_eq!(o.contacts, 2);
        let w = t.water_indicator();
        assert_eq!(w.iter().filter(|&&x| x).count(), 10);
        assert!(!w[0] && !w[1] && w[2]);
    }
}
