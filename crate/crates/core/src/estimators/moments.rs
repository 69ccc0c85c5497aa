//! Estimators built from means of `exp(·)` of per-sample log quantities.

use super::{pairwise_sum, EstimateWithCI, MonteCarlo};
use crate::error::{Error, Result};
use crate::logspace::softplus;
use crate::model::CopolymerParams;
use crate::partition::{raw_tables, PartitionOptions};

/// Relative disagreement between plain and median-of-means estimates above
/// which a [`MuEstimate`] is flagged.
pub const MU_DISAGREEMENT: f64 = 0.1;

/// Largest number of groups used by the median-of-means estimate.
const MAX_GROUPS: usize = 8;

/// Mean of `exp(x_i)` kept in log form.
#[derive(Debug, Clone, Copy)]
struct LogMean {
    /// `log mean exp(x_i)`.
    log_mean: f64,
    /// Standard error of the mean divided by the mean.
    rel_stderr: f64,
    /// Shift used for `scaled`.
    shift: f64,
}

fn log_mean_exp(xs: &[f64]) -> (LogMean, Vec<f64>) {
    let n = xs.len() as f64;
    let shift = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = if shift.is_finite() {
        xs.iter().map(|x| (x - shift).exp()).collect()
    } else {
        vec![0.0; xs.len()]
    };
    let mean = pairwise_sum(&scaled) / n;
    let dev: Vec<f64> = scaled.iter().map(|y| (y - mean) * (y - mean)).collect();
    let sd = (pairwise_sum(&dev) / (n - 1.0)).sqrt();
    let rel_stderr = if mean > 0.0 {
        sd / (mean * n.sqrt())
    } else {
        0.0
    };
    let log_mean = if mean > 0.0 {
        shift + mean.ln()
    } else {
        f64::NEG_INFINITY
    };
    (
        LogMean {
            log_mean,
            rel_stderr,
            shift,
        },
        scaled,
    )
}

/// Median over contiguous index groups of the group means.
fn median_of_means(scaled: &[f64]) -> f64 {
    let groups = (scaled.len() / 2).clamp(1, MAX_GROUPS);
    let mut means: Vec<f64> = (0..groups)
        .map(|g| {
            let lo = g * scaled.len() / groups;
            let hi = (g + 1) * scaled.len() / groups;
            pairwise_sum(&scaled[lo..hi]) / (hi - lo) as f64
        })
        .collect();
    means.sort_by(f64::total_cmp);
    let m = means.len();
    if m % 2 == 1 {
        means[m / 2]
    } else {
        0.5 * (means[m / 2 - 1] + means[m / 2])
    }
}

/// Decay rate estimate at one system size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuEstimate {
    /// `-(1/N) log` of the plain sample mean of the ratio, with a
    /// delta-method standard error.
    pub estimate: EstimateWithCI,
    /// Same quantity computed from the median of group means.
    pub median_of_means: f64,
    /// Plain and median-of-means ratio means differ by more than 10%.
    pub disagreement: bool,
}

/// `-(1/N) log E[(1 + e^{-2λ Σ_{n≤N}(ω_n+h)}) / Z_N]` for each `N` in
/// `n_list`.
pub fn estimate_mu(
    mc: &MonteCarlo<'_>,
    params: &CopolymerParams,
    n_list: &[usize],
) -> Result<Vec<MuEstimate>> {
    let lambda = params.lambda();
    n_list
        .iter()
        .map(|&n| {
            let log_ratio = mc.map_samples(n, |omega| {
                let (_, log_z, prefix) =
                    raw_tables(omega, params, mc.law, &PartitionOptions::default());
                Ok(softplus(-2.0 * lambda * prefix[n]) - log_z)
            })?;
            let (lm, scaled) = log_mean_exp(&log_ratio);
            let mom = median_of_means(&scaled);
            let mean_scaled = (lm.log_mean - lm.shift).exp();
            let nf = n as f64;
            Ok(MuEstimate {
                estimate: EstimateWithCI {
                    mean: -lm.log_mean / nf,
                    stderr: lm.rel_stderr / nf,
                    n_samples: mc.n_samples,
                    n_len: n,
                },
                median_of_means: -(lm.shift + mom.ln()) / nf,
                disagreement: (mom / mean_scaled - 1.0).abs() > MU_DISAGREEMENT,
            })
        })
        .collect()
}

/// Fractional moment `E[Z^γ]` at one system size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalMoment {
    /// Sample mean of `Z^γ` and its standard error (may overflow to `∞`
    /// when `Z` is huge; use `log_mean` then).
    pub estimate: EstimateWithCI,
    /// `log` of the sample mean.
    pub log_mean: f64,
    /// Standard error of `log_mean` (delta method).
    pub log_stderr: f64,
    /// Comparison curve `K(N)^γ`.
    pub k_gamma: f64,
}

/// `E[(Z^c_N)^γ]` (or `E[Z_N^γ]` when `constrained` is false) for each `N`.
pub fn estimate_fractional_moment(
    mc: &MonteCarlo<'_>,
    params: &CopolymerParams,
    gamma: f64,
    n_list: &[usize],
    constrained: bool,
) -> Result<Vec<FractionalMoment>> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::invalid(format!(
            "gamma must lie in (0, 1], got {gamma}"
        )));
    }
    n_list
        .iter()
        .map(|&n| {
            let logs = mc.map_samples(n, |omega| {
                let (log_zc, log_z, _) =
                    raw_tables(omega, params, mc.law, &PartitionOptions::default());
                Ok(gamma * if constrained { log_zc[n] } else { log_z })
            })?;
            let (lm, _) = log_mean_exp(&logs);
            let mean = lm.log_mean.exp();
            Ok(FractionalMoment {
                estimate: EstimateWithCI {
                    mean,
                    stderr: mean * lm.rel_stderr,
                    n_samples: mc.n_samples,
                    n_len: n,
                },
                log_mean: lm.log_mean,
                log_stderr: lm.rel_stderr,
                k_gamma: mc.law.pmf(n).powf(gamma),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DisorderLaw, InterArrivalLaw};
    use crate::partition::build_annealed_table;

    #[test]
    fn mu_at_zero_coupling_is_log_two_over_n() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let mc = MonteCarlo::new(&law, DisorderLaw::Gaussian, 10, 4);
        let p = CopolymerParams::new(0.0, 0.0).unwrap();
        let out = estimate_mu(&mc, &p, &[10, 100]).unwrap();
        for e in out {
            let want = -std::f64::consts::LN_2 / e.estimate.n_len as f64;
            assert!((e.estimate.mean - want).abs() < 1e-15);
            assert!(e.estimate.stderr < 1e-15 && !e.disagreement);
            assert!((e.median_of_means - want).abs() < 1e-15);
        }
    }

    #[test]
    fn fractional_moment_zero_coupling_is_renewal_mass() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let mc = MonteCarlo::new(&law, DisorderLaw::Rademacher, 4, 2);
        let p = CopolymerParams::new(0.0, 0.3).unwrap();
        let out = estimate_fractional_moment(&mc, &p, 0.5, &[40], true).unwrap();
        let mut u = vec![1.0; 41];
        for n in 1..=40 {
            u[n] = (1..=n).map(|m| law.pmf(m) * u[n - m]).sum();
        }
        assert!((out[0].estimate.mean - u[40].sqrt()).abs() < 1e-13);
        assert!(estimate_fractional_moment(&mc, &p, 1.5, &[40], true).is_err());
    }

    #[test]
    fn first_moment_matches_annealed_table() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let p = CopolymerParams::new(0.2, 0.1).unwrap();
        let mc = MonteCarlo::new(&law, DisorderLaw::Gaussian, 4000, 17);
        let n = 12;
        let out = estimate_fractional_moment(&mc, &p, 1.0, &[n], true).unwrap();
        let ann = build_annealed_table(&p, &DisorderLaw::Gaussian, &law, n).unwrap();
        let e = out[0].estimate;
        assert!(
            (e.mean - ann.log_azc[n].exp()).abs() <= 3.0 * e.stderr,
            "{e:?} vs {}",
            ann.log_azc[n].exp()
        );
    }

    #[test]
    fn median_of_means_of_constant() {
        assert_eq!(median_of_means(&[2.0; 9]), 2.0);
        assert_eq!(median_of_means(&[1.0, 3.0]), 2.0);
    }
}
