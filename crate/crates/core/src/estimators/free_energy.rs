use super::{EstimateWithCI, MonteCarlo};
use crate::error::Result;
use crate::model::CopolymerParams;
use crate::partition::{raw_tables, PartitionOptions};

/// Width of the one-sided band used by [`localization_certificate`].
pub const DEFAULT_CERTIFICATE_SIGMAS: f64 = 3.0;

/// `(1/N) E log Z_N` (or `Z^c_N` when `constrained`) over the disorder.
pub fn estimate_free_energy(
    mc: &MonteCarlo<'_>,
    params: &CopolymerParams,
    n_len: usize,
    constrained: bool,
) -> Result<EstimateWithCI> {
    let values = mc.map_samples(n_len, |omega| {
        let (log_zc, log_z, _) = raw_tables(omega, params, mc.law, &PartitionOptions::default());
        let v = if constrained { log_zc[n_len] } else { log_z };
        Ok(v / n_len as f64)
    })?;
    EstimateWithCI::from_samples(&values, n_len)
}

/// Outcome of the statistical localization test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationCertificate {
    pub certified: bool,
    /// `mean - kσ·stderr` of `(1/N) log Z^c_N`.
    pub margin: f64,
    pub estimate: EstimateWithCI,
}

/// Tests whether the constrained finite-`N` average is significantly
/// positive. Since `F ≥ (1/N) E log Z^c_N` for every `N`, a positive
/// lower confidence bound is evidence that `(λ, h)` is localized.
pub fn localization_certificate(
    mc: &MonteCarlo<'_>,
    params: &CopolymerParams,
    n_len: usize,
    sigmas: f64,
) -> Result<LocalizationCertificate> {
    let estimate = estimate_free_energy(mc, params, n_len, true)?;
    let margin = estimate.lower(sigmas);
    Ok(LocalizationCertificate {
        certified: margin > 0.0,
        margin,
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DisorderLaw, InterArrivalLaw};

    #[test]
    fn zero_coupling_is_exactly_zero() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let mc = MonteCarlo::new(&law, DisorderLaw::Gaussian, 8, 1);
        let e = estimate_free_energy(&mc, &CopolymerParams::new(0.0, 0.4).unwrap(), 100, false)
            .unwrap();
        assert_eq!((e.mean, e.stderr), (0.0, 0.0));
        let c = localization_certificate(&mc, &CopolymerParams::new(0.0, 0.0).unwrap(), 100, 3.0)
            .unwrap();
        assert!(!c.certified && c.margin <= 0.0);
        assert_eq!(c.estimate.stderr, 0.0);
    }

    #[test]
    fn constrained_below_free() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let mc = MonteCarlo::new(&law, DisorderLaw::Rademacher, 20, 9);
        let p = CopolymerParams::new(1.0, 0.3).unwrap();
        let c = estimate_free_energy(&mc, &p, 300, true).unwrap();
        let f = estimate_free_energy(&mc, &p, 300, false).unwrap();
        assert!(c.mean <= f.mean);
        // sandwich: free - constrained ≤ log(C N)/N with a generous C
        assert!(f.mean - c.mean <= (10.0 * 300.0f64).ln() / 300.0);
    }

    #[test]
    fn reproducible_for_fixed_seed() {
        let law = InterArrivalLaw::srw();
        let p = CopolymerParams::new(0.7, 0.1).unwrap();
        let a = estimate_free_energy(
            &MonteCarlo::new(&law, DisorderLaw::Gaussian, 6, 3),
            &p,
            64,
            false,
        )
        .unwrap();
        let b = estimate_free_energy(
            &MonteCarlo::new(&law, DisorderLaw::Gaussian, 6, 3),
            &p,
            64,
            false,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
