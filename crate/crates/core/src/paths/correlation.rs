//! Two-point contact correlations from forward, backward and window
//! partition functions.
//!
//! `P(i ∈ τ, j ∈ τ) = Z^c_i · Z^c_{(i,j]} · Z^back_j / Z_N`, and the
//! one-point probabilities drop the middle factor.

use crate::error::{Error, Result};
use crate::model::{CopolymerParams, InterArrivalLaw};
use crate::partition::{
    backward_log_partitions, build_partition_table, window_log_partition, LogPartitionTable,
};

/// Contact probabilities at a pair of sites `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationProbe {
    pub i: usize,
    pub j: usize,
    pub prob_i: f64,
    pub prob_j: f64,
    pub prob_both: f64,
    /// `P(i, j ∈ τ) - P(i ∈ τ) P(j ∈ τ)`.
    pub covariance: f64,
}

impl CorrelationProbe {
    /// `P(j ∈ τ | i ∈ τ) / P(j ∈ τ)`; 1 means no correlation.
    pub fn ratio(&self) -> f64 {
        self.prob_both / (self.prob_i * self.prob_j)
    }
}

/// Precomputed forward and backward tables for repeated probes on one
/// disorder window. Each probe then costs one window partition function.
#[derive(Debug, Clone)]
pub struct ContactCorrelations<'a> {
    omega: &'a [f64],
    params: CopolymerParams,
    law: &'a InterArrivalLaw,
    forward: LogPartitionTable,
    backward: Vec<f64>,
}

impl<'a> ContactCorrelations<'a> {
    pub fn new(
        omega: &'a [f64],
        params: &CopolymerParams,
        law: &'a InterArrivalLaw,
    ) -> Result<Self> {
        let forward = build_partition_table(omega, params, law)?;
        let backward = backward_log_partitions(omega, params, law);
        Ok(ContactCorrelations {
            omega,
            params: *params,
            law,
            forward,
            backward,
        })
    }

    /// `P(n ∈ τ)` for `1 ≤ n ≤ N`.
    pub fn contact_probability(&self, n: usize) -> f64 {
        (self.forward.log_zc[n] + self.backward[n] - self.forward.log_z_free).exp()
    }

    pub fn probe(&self, i: usize, j: usize) -> Result<CorrelationProbe> {
        let n = self.omega.len();
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::invalid(format!(
                "probe sites need 1 <= i < j <= {n}, got ({i}, {j})"
            )));
        }
        let middle = window_log_partition(self.omega, &self.params, self.law, i, j, false)?;
        let prob_both =
            (self.forward.log_zc[i] + middle + self.backward[j] - self.forward.log_z_free).exp();
        let prob_i = self.contact_probability(i);
        let prob_j = self.contact_probability(j);
        Ok(CorrelationProbe {
            i,
            j,
            prob_i,
            prob_j,
            prob_both,
            covariance: prob_both - prob_i * prob_j,
        })
    }
}

/// One-off probe of the contact correlation between sites `i < j`.
pub fn correlation_probe(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    i: usize,
    j: usize,
) -> Result<CorrelationProbe> {
    ContactCorrelations::new(omega, params, law)?.probe(i, j)
}
