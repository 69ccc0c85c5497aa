//! Exact partition functions in log space.
//!
//! For a charge window `ω_1..ω_N` the constrained partition function
//! `Z^c_t` (renewal point forced at `t`) and the free partition function
//! `Z_N` are computed by an O(N²) renewal recursion. The same recursion
//! run over the reversed window gives the backward partitions needed for
//! marginals, and with a deterministic tilt it gives the annealed model.

mod dump;
mod oracle;
pub(crate) mod recursion;

pub use oracle::{
    brute_force_log_partition, brute_force_marginals, ExactMarginals, BRUTE_FORCE_MAX_N,
    MARGINALS_MAX_N,
};

use log::debug;

use crate::error::{Error, Result};
use crate::logspace::{log_half_one_plus_exp, CompensatedSum, LogAccumulator};
use crate::model::{CopolymerParams, DisorderLaw, InterArrivalLaw, RenewalKind};
use recursion::renewal_recursion;

/// Tuning knobs for the recursion.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PartitionOptions {
    /// Drop excursions longer than this. Off by default; when set the
    /// result is a lower bound on the exact value.
    pub max_gap: Option<usize>,
}

/// `log Z^c_0..N` and `log Z_N` for one disorder window.
#[derive(Debug, Clone, PartialEq)]
pub struct LogPartitionTable {
    pub n_max: usize,
    pub lambda: f64,
    pub h: f64,
    pub law_kind: RenewalKind,
    pub alpha: f64,
    /// `log Z^c_n` for `n = 0..=n_max`; `log_zc[0] = 0`.
    pub log_zc: Vec<f64>,
    pub log_z_free: f64,
    /// `Σ_{m ≤ n} (ω_m + h)` for `n = 0..=n_max`.
    pub charge_prefix: Vec<f64>,
}

impl LogPartitionTable {
    /// Charge `Σ_{s < m ≤ t} (ω_m + h)` of the stretch `(s, t]`.
    #[inline]
    pub fn charge(&self, s: usize, t: usize) -> f64 {
        self.charge_prefix[t] - self.charge_prefix[s]
    }

    /// `log Z_N - log Z^c_N - log N`, the quantity bounded by `log C` in
    /// the boundary-condition sandwich `Z^c ≤ Z ≤ C N Z^c`.
    pub fn boundary_log_ratio(&self) -> f64 {
        self.log_z_free - self.log_zc[self.n_max] - (self.n_max as f64).ln()
    }

    /// `(1/N) log Z_N`.
    pub fn free_energy(&self) -> f64 {
        self.log_z_free / self.n_max as f64
    }

    pub fn tilt(&self) -> Vec<f64> {
        self.charge_prefix
            .iter()
            .map(|p| -2.0 * self.lambda * p)
            .collect()
    }

    pub(crate) fn check_matches(
        &self,
        omega: &[f64],
        params: &CopolymerParams,
        law: &InterArrivalLaw,
    ) -> Result<()> {
        if self.n_max != omega.len()
            || self.lambda != params.lambda()
            || self.h != params.h()
            || self.law_kind != law.kind()
            || self.alpha != law.alpha()
        {
            return Err(Error::invalid(
                "partition table does not match the given disorder/parameters/law",
            ));
        }
        Ok(())
    }
}

/// Compensated prefix sums of `ω_m + h`, starting with 0.
pub fn charge_prefix(omega: &[f64], h: f64) -> Vec<f64> {
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(omega.len() + 1);
    out.push(0.0);
    for w in omega {
        acc.add(w + h);
        out.push(acc.value());
    }
    out
}

fn tilt_of(prefix: &[f64], lambda: f64) -> Vec<f64> {
    prefix.iter().map(|p| -2.0 * lambda * p).collect()
}

fn origin_source(t: usize) -> f64 {
    if t == 0 {
        0.0
    } else {
        f64::NEG_INFINITY
    }
}

/// `log Σ_s Z^c_s P(τ_1 > N-s) w̄(s, N)` with `w̄(N, N) = 1`.
fn free_from_constrained(law: &InterArrivalLaw, log_zc: &[f64], tilt: &[f64]) -> f64 {
    let n = log_zc.len() - 1;
    if tilt.iter().all(|&g| g == 0.0) {
        // untilted: the weights are the renewal probabilities, summing to 1
        return 0.0;
    }
    let mut acc = LogAccumulator::new();
    for s in 0..n {
        acc.push(log_zc[s] + law.log_tail(n - s) + log_half_one_plus_exp(tilt[n] - tilt[s]));
    }
    acc.push(log_zc[n]);
    acc.value()
}

/// Constrained and free partition functions without the period check.
pub(crate) fn raw_tables(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    options: &PartitionOptions,
) -> (Vec<f64>, f64, Vec<f64>) {
    let prefix = charge_prefix(omega, params.h());
    let tilt = tilt_of(&prefix, params.lambda());
    let log_zc = renewal_recursion(law, &tilt, origin_source, options.max_gap);
    let log_z_free = free_from_constrained(law, &log_zc, &tilt);
    (log_zc, log_z_free, prefix)
}

/// Builds the table for the whole window `omega` (so `n_max = omega.len()`).
pub fn build_partition_table(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
) -> Result<LogPartitionTable> {
    build_partition_table_with(omega, params, law, &PartitionOptions::default())
}

pub fn build_partition_table_with(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    options: &PartitionOptions,
) -> Result<LogPartitionTable> {
    let n = omega.len();
    if n == 0 {
        return Err(Error::invalid("partition table needs at least one monomer"));
    }
    law.check_length(n)?;
    if let Some(g) = options.max_gap {
        if g == 0 {
            return Err(Error::invalid("max_gap must be positive"));
        }
        debug!(
            "truncating excursions longer than {g}: dropped kernel mass per excursion {:.3e}",
            law.tail(g)
        );
    }
    let (log_zc, log_z_free, charge_prefix) = raw_tables(omega, params, law, options);
    Ok(LogPartitionTable {
        n_max: n,
        lambda: params.lambda(),
        h: params.h(),
        law_kind: law.kind(),
        alpha: law.alpha(),
        log_zc,
        log_z_free,
        charge_prefix,
    })
}

/// Backward partitions: element `t` is the log partition function of the
/// monomers `t+1..=N` with a renewal point at `t` and a free right end.
/// Element `0` equals `log Z_N` and element `N` is 0.
pub fn backward_log_partitions(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
) -> Vec<f64> {
    let n = omega.len();
    let prefix = charge_prefix(omega, params.h());
    // reversed coordinates k = N - t
    let rev_tilt: Vec<f64> = (0..=n)
        .map(|k| -2.0 * params.lambda() * (prefix[n] - prefix[n - k]))
        .collect();
    let source = |k: usize| {
        if k == 0 {
            0.0
        } else {
            law.log_tail(k) + log_half_one_plus_exp(rev_tilt[k])
        }
    };
    let rev = renewal_recursion(law, &rev_tilt, source, None);
    let mut out = rev;
    out.reverse();
    out
}

/// Log partition function of monomers `a+1..=b` with a renewal at `a`,
/// constrained (`b ∈ τ`) or free at `b`. An empty window gives 0.
pub fn window_log_partition(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    a: usize,
    b: usize,
    right_free: bool,
) -> Result<f64> {
    if a > b || b > omega.len() {
        return Err(Error::invalid(format!(
            "window ({a}, {b}] outside 0..={}",
            omega.len()
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let (log_zc, log_z_free, _) =
        raw_tables(&omega[a..b], params, law, &PartitionOptions::default());
    Ok(if right_free {
        log_z_free
    } else {
        log_zc[b - a]
    })
}

/// Partition functions of the annealed model, `E Z` over the disorder.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealedTable {
    pub n_max: usize,
    /// Excursion tilt `q = log M(-2λ) - 2λh`.
    pub q: f64,
    pub log_azc: Vec<f64>,
    pub log_az_free: f64,
}

impl AnnealedTable {
    /// `(1/N) log E Z_N`.
    pub fn free_energy(&self) -> f64 {
        self.log_az_free / self.n_max as f64
    }
}

pub fn build_annealed_table(
    params: &CopolymerParams,
    disorder: &DisorderLaw,
    law: &InterArrivalLaw,
    n_max: usize,
) -> Result<AnnealedTable> {
    if n_max == 0 {
        return Err(Error::invalid("annealed table needs n_max >= 1"));
    }
    law.check_length(n_max)?;
    let lambda = params.lambda();
    let q = disorder.log_mgf(-2.0 * lambda) - 2.0 * lambda * params.h();
    let tilt: Vec<f64> = (0..=n_max).map(|t| q * t as f64).collect();
    let log_azc = renewal_recursion(law, &tilt, origin_source, None);
    let log_az_free = free_from_constrained(law, &log_azc, &tilt);
    Ok(AnnealedTable {
        n_max,
        q,
        log_azc,
        log_az_free,
    })
}
