use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::DisorderLaw;
use crate::error::{Error, Result};

/// Independent random streams derived from one master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamDomain {
    Disorder = 0x6469_736f_7264_6572,
    Paths = 0x7061_7468_7300_0000,
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hash of `(master_seed, domain, index)`; order-independent across indices.
pub fn derive_seed(master_seed: u64, domain: StreamDomain, index: u64) -> u64 {
    splitmix64(
        splitmix64(master_seed ^ domain as u64)
            ^ splitmix64(index.wrapping_add(0xA076_1D64_78BD_642F)),
    )
}

/// ChaCha stream keyed by `(master_seed, domain)` and positioned on stream
/// `index`, so that work items can be generated in any order.
pub fn stream_rng(master_seed: u64, domain: StreamDomain, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(master_seed ^ domain as u64));
    rng.set_stream(splitmix64(index));
    rng
}

/// One quenched disorder realization `ω_1, …, ω_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuenchedSample {
    pub omega: Vec<f64>,
    pub master_seed: u64,
    pub sample_index: u64,
}

impl QuenchedSample {
    /// Wraps an explicit charge sequence (for hand-built environments).
    pub fn from_omega(omega: Vec<f64>) -> Self {
        QuenchedSample {
            omega,
            master_seed: 0,
            sample_index: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }
}

/// Draws `n` IID charges for sample `sample_index` of the run keyed by
/// `master_seed`. The first `m ≤ n` charges do not depend on `n`.
pub fn sample_disorder(
    law: &DisorderLaw,
    n: usize,
    master_seed: u64,
    sample_index: u64,
) -> Result<QuenchedSample> {
    if n == 0 {
        return Err(Error::invalid("disorder length must be at least 1"));
    }
    let mut rng = stream_rng(master_seed, StreamDomain::Disorder, sample_index);
    let omega = (0..n).map(|_| law.sample(&mut rng)).collect();
    Ok(QuenchedSample {
        omega,
        master_seed,
        sample_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_prefix_stable() {
        let a = sample_disorder(&DisorderLaw::Gaussian, 5, 42, 0).unwrap();
        let b = sample_disorder(&DisorderLaw::Gaussian, 5, 42, 0).unwrap();
        assert_eq!(a, b);
        let long = sample_disorder(&DisorderLaw::Gaussian, 50, 42, 0).unwrap();
        assert_eq!(&long.omega[..5], &a.omega[..]);
        let other = sample_disorder(&DisorderLaw::Gaussian, 5, 42, 1).unwrap();
        assert_ne!(a.omega, other.omega);
        assert!(sample_disorder(&DisorderLaw::Gaussian, 0, 42, 0).is_err());
    }

    #[test]
    fn rademacher_mean_clt() {
        let n = 1_000_000;
        let s = sample_disorder(&DisorderLaw::Rademacher, n, 7, 3).unwrap();
        assert!(s.omega.iter().all(|&x| x == 1.0 || x == -1.0));
        let mean = s.omega.iter().sum::<f64>() / n as f64;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt(), "mean = {mean}");
    }

    #[test]
    fn uniform_has_unit_variance() {
        let n = 1_000_000;
        let law = DisorderLaw::uniform(3f64.sqrt()).unwrap();
        let s = sample_disorder(&law, n, 11, 0).unwrap();
        let mean = s.omega.iter().sum::<f64>() / n as f64;
        let var = s.omega.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((var - 1.0).abs() < 0.01, "var = {var}");
        assert!(s.omega.iter().all(|x| x.abs() <= 3f64.sqrt()));
    }

    #[test]
    fn gaussian_moments() {
        let n = 200_000;
        let s = sample_disorder(&DisorderLaw::Gaussian, n, 1, 9).unwrap();
        let mean = s.omega.iter().sum::<f64>() / n as f64;
        let var = s.omega.iter().map(|x| x * x).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01 && (var - 1.0).abs() < 0.02);
    }

    #[test]
    fn derived_seeds_differ_across_domains() {
        let a = derive_seed(5, StreamDomain::Disorder, 1);
        let b = derive_seed(5, StreamDomain::Paths, 1);
        let c = derive_seed(5, StreamDomain::Disorder, 2);
        assert!(a != b && a != c);
    }
}
