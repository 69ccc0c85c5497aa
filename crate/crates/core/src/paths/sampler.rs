//! Backward sampling from the forward partition table.
//!
//! Given the last renewal point `t`, the previous one is `r < t` with
//! probability `Z^c_r K(t-r) w(r,t) / Z^c_t`, and the excursion `(r, t]`
//! is in water with odds `e^{-2λ C(r,t)} : 1`. The last renewal point is
//! drawn the same way against the free partition function. Scanning `r`
//! downwards from `t - 1` makes the expected cost of a step proportional
//! to the length of the excursion it produces.

use rand::Rng;
use rayon::prelude::*;

use super::PathTrajectory;
use crate::error::Result;
use crate::logspace::{log_half_one_plus_exp, logistic};
use crate::model::{stream_rng, CopolymerParams, InterArrivalLaw, StreamDomain};
use crate::partition::LogPartitionTable;

/// Exact sampler for one disorder window.
#[derive(Debug, Clone)]
pub struct PathSampler<'a> {
    law: &'a InterArrivalLaw,
    table: &'a LogPartitionTable,
    tilt: Vec<f64>,
}

impl<'a> PathSampler<'a> {
    pub fn new(
        omega: &[f64],
        params: &CopolymerParams,
        law: &'a InterArrivalLaw,
        table: &'a LogPartitionTable,
    ) -> Result<Self> {
        table.check_matches(omega, params, law)?;
        Ok(PathSampler {
            law,
            table,
            tilt: table.tilt(),
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PathTrajectory {
        let n = self.table.n_max;
        let v = &self.table.log_zc;
        let g = &self.tilt;

        // last renewal point: s = N with weight Z^c_N, otherwise the open
        // excursion (s, N] with weight Z^c_s P(τ_1 > N-s) w̄(s, N)
        let log_z = self.table.log_z_free;
        let last = self.draw_descending(n + 1, log_z, rng, |s| {
            if s == n {
                v[n]
            } else {
                v[s] + self.law.log_tail(n - s) + log_half_one_plus_exp(g[n] - g[s])
            }
        });

        let mut points = Vec::new();
        let mut signs = Vec::new();
        if last < n {
            signs.push(rng.random::<f64>() < logistic(g[n] - g[last]));
        }
        let mut cur = last;
        while cur > 0 {
            points.push(cur);
            let r = self.draw_descending(cur, v[cur], rng, |r| {
                v[r] + self.law.log_pmf(cur - r) + log_half_one_plus_exp(g[cur] - g[r])
            });
            signs.push(rng.random::<f64>() < logistic(g[cur] - g[r]));
            cur = r;
        }
        points.reverse();
        signs.reverse();
        PathTrajectory {
            n_len: n,
            renewal_points: points,
            last_closed: last,
            excursion_signs: signs,
        }
    }

    /// Draws `i ∈ [0, end)` with probability `exp(log_w(i) - log_total)`,
    /// scanning from `end - 1` down.
    fn draw_descending<R: Rng + ?Sized>(
        &self,
        end: usize,
        log_total: f64,
        rng: &mut R,
        log_w: impl Fn(usize) -> f64,
    ) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut fallback = end - 1;
        for i in (0..end).rev() {
            let p = (log_w(i) - log_total).exp();
            if p > 0.0 {
                acc += p;
                fallback = i;
                if u < acc {
                    return i;
                }
            }
        }
        // rounding left `acc` a hair below 1
        fallback
    }
}

/// Draws one trajectory with a generator seeded by `seed`.
pub fn sample_path(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    table: &LogPartitionTable,
    seed: u64,
) -> Result<PathTrajectory> {
    let sampler = PathSampler::new(omega, params, law, table)?;
    let mut rng = stream_rng(seed, StreamDomain::Paths, 0);
    Ok(sampler.sample(&mut rng))
}

/// Draws `count` trajectories in parallel; path `i` uses its own stream of
/// `master_seed`, so the output does not depend on scheduling.
pub fn sample_paths(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    table: &LogPartitionTable,
    count: usize,
    master_seed: u64,
) -> Result<Vec<PathTrajectory>> {
    let sampler = PathSampler::new(omega, params, law, table)?;
    Ok((0..count as u64)
        .into_par_iter()
        .map(|i| sampler.sample(&mut stream_rng(master_seed, StreamDomain::Paths, i)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample_disorder, DisorderLaw};
    use crate::partition::{brute_force_marginals, build_partition_table};
    use crate::paths::path_observables;

    fn empirical(paths: &[PathTrajectory]) -> (Vec<f64>, Vec<f64>) {
        let n = paths[0].n_len;
        let mut contact = vec![0.0; n];
        let mut water = vec![0.0; n];
        for p in paths {
            for &t in &p.renewal_points {
                contact[t - 1] += 1.0;
            }
            for (i, w) in p.water_indicator().into_iter().enumerate() {
                if w {
                    water[i] += 1.0;
                }
            }
        }
        let k = paths.len() as f64;
        (
            contact.iter().map(|c| c / k).collect(),
            water.iter().map(|c| c / k).collect(),
        )
    }

    #[test]
    fn marginals_match_enumeration() {
        for law in [InterArrivalLaw::zeta(0.5).unwrap(), InterArrivalLaw::srw()] {
            let omega = sample_disorder(&DisorderLaw::Gaussian, 12, 3, 0)
                .unwrap()
                .omega;
            let p = CopolymerParams::new(1.0, 0.1).unwrap();
            let t = build_partition_table(&omega, &p, &law).unwrap();
            let paths = sample_paths(&omega, &p, &law, &t, 100_000, 5).unwrap();
            let exact = brute_force_marginals(&omega, &p, &law).unwrap();
            let (c, w) = empirical(&paths);
            for i in 0..12 {
                assert!(
                    (c[i] - exact.prob_contact[i]).abs() < 0.01,
                    "{law} contact {i}"
                );
                assert!((w[i] - exact.prob_water[i]).abs() < 0.01, "{law} water {i}");
            }
            for path in &paths {
                let mut prev = 0;
                for &q in &path.renewal_points {
                    assert!(law.pmf(q - prev) > 0.0);
                    prev = q;
                }
                assert_eq!(path.excursion_signs.len(), path.excursions().count());
            }
        }
    }

    #[test]
    fn zero_coupling_follows_the_renewal() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let omega = vec![0.0; 30];
        let p = CopolymerParams::new(0.0, 0.0).unwrap();
        let t = build_partition_table(&omega, &p, &law).unwrap();
        let paths = sample_paths(&omega, &p, &law, &t, 100_000, 1).unwrap();
        let (c, _) = empirical(&paths);
        let mut u = vec![1.0; 31];
        for n in 1..=30 {
            u[n] = (1..=n).map(|m| law.pmf(m) * u[n - m]).sum();
        }
        for n in 1..=30 {
            assert!((c[n - 1] - u[n]).abs() < 0.01);
        }
    }

    #[test]
    fn strongly_attractive_water_is_always_chosen() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let omega = vec![-3.0; 40];
        let p = CopolymerParams::new(3.0, 0.0).unwrap();
        let t = build_partition_table(&omega, &p, &law).unwrap();
        let paths = sample_paths(&omega, &p, &law, &t, 2000, 9).unwrap();
        let total: usize = paths.iter().map(|q| q.excursion_signs.len()).sum();
        let wet: usize = paths
            .iter()
            .map(|q| q.excursion_signs.iter().filter(|&&s| s).count())
            .sum();
        assert!(wet as f64 / total as f64 > 0.99);
        assert!(paths.iter().all(|q| path_observables(q).nn == 40));
    }

    #[test]
    fn sampled_water_count_matches_profile() {
        use crate::estimators::contact_profile;
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let omega = sample_disorder(&DisorderLaw::Gaussian, 300, 4, 0)
            .unwrap()
            .omega;
        let p = CopolymerParams::new(1.0, 0.5).unwrap();
        let t = build_partition_table(&omega, &p, &law).unwrap();
        let prof = contact_profile(&omega, &p, &law, &t).unwrap();
        let paths = sample_paths(&omega, &p, &law, &t, 10_000, 2).unwrap();
        let nn: Vec<f64> = paths
            .iter()
            .map(|q| path_observables(q).nn as f64)
            .collect();
        let mean = nn.iter().sum::<f64>() / nn.len() as f64;
        let sd =
            (nn.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (nn.len() - 1) as f64).sqrt();
        assert!((mean - prof.expected_nn).abs() <= 3.0 * sd / (nn.len() as f64).sqrt() + 1e-9);
    }

    #[test]
    fn single_path_is_seed_deterministic() {
        let law = InterArrivalLaw::srw();
        let omega = sample_disorder(&DisorderLaw::Rademacher, 50, 4, 0)
            .unwrap()
            .omega;
        let p = CopolymerParams::new(0.8, 0.1).unwrap();
        let t = build_partition_table(&omega, &p, &law).unwrap();
        assert_eq!(
            sample_path(&omega, &p, &law, &t, 77).unwrap(),
            sample_path(&omega, &p, &law, &t, 77).unwrap()
        );
        assert!(sample_path(&omega[..48], &p, &law, &t, 77).is_err());
    }
}
