//! Monte Carlo estimators over the disorder.
//!
//! Every estimator draws disorder sample `i` from its own counter-based
//! stream, evaluates it independently (in parallel), and reduces the
//! per-sample values with a fixed pairwise tree keyed by sample index. The
//! reported numbers therefore depend only on the master seed and the
//! parameters, never on scheduling.

mod contact;
mod free_energy;
mod moments;

pub use contact::{contact_profile, ContactProfile};
pub use free_energy::{
    estimate_free_energy, localization_certificate, LocalizationCertificate,
    DEFAULT_CERTIFICATE_SIGMAS,
};
pub use moments::{estimate_fractional_moment, estimate_mu, FractionalMoment, MuEstimate};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{sample_disorder, DisorderLaw, InterArrivalLaw};

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithCI {
    pub mean: f64,
    /// Sample standard deviation divided by `√n_samples`.
    pub stderr: f64,
    pub n_samples: usize,
    /// System size the samples were taken at.
    pub n_len: usize,
}

impl EstimateWithCI {
    /// Mean and standard error of `values`, reduced in index order.
    pub fn from_samples(values: &[f64], n_len: usize) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::invalid("an estimate needs at least two samples"));
        }
        let mean = pairwise_sum(values) / n as f64;
        let dev: Vec<f64> = values.iter().map(|x| (x - mean) * (x - mean)).collect();
        let var = pairwise_sum(&dev) / (n - 1) as f64;
        Ok(EstimateWithCI {
            mean,
            stderr: (var / n as f64).sqrt(),
            n_samples: n,
            n_len,
        })
    }

    /// `mean - k·stderr`.
    pub fn lower(&self, k: f64) -> f64 {
        self.mean - k * self.stderr
    }

    pub fn upper(&self, k: f64) -> f64 {
        self.mean + k * self.stderr
    }
}

/// Sum over a balanced binary tree whose shape depends only on the length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Where the disorder samples of an estimate come from.
#[derive(Debug, Clone)]
pub struct MonteCarlo<'a> {
    pub law: &'a InterArrivalLaw,
    pub disorder: DisorderLaw,
    pub n_samples: usize,
    pub master_seed: u64,
}

impl<'a> MonteCarlo<'a> {
    pub fn new(
        law: &'a InterArrivalLaw,
        disorder: DisorderLaw,
        n_samples: usize,
        master_seed: u64,
    ) -> Self {
        MonteCarlo {
            law,
            disorder,
            n_samples,
            master_seed,
        }
    }

    fn check(&self, n_len: usize) -> Result<()> {
        if self.n_samples < 2 {
            return Err(Error::invalid("n_samples must be at least 2"));
        }
        if n_len == 0 {
            return Err(Error::invalid("system size must be at least 1"));
        }
        self.law.check_length(n_len)
    }

    /// Evaluates `f` on the charges of every sample of length `n_len`.
    /// Results come back in sample-index order.
    pub fn map_samples<T, F>(&self, n_len: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&[f64]) -> Result<T> + Sync,
    {
        self.check(n_len)?;
        (0..self.n_samples as u64)
            .into_par_iter()
            .map(|i| {
                let sample = sample_disorder(&self.disorder, n_len, self.master_seed, i)?;
                f(&sample.omega)
            })
            .collect()
    }
}
