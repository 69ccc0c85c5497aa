//! Weak-coupling rescaling and contact growth in the delocalized phase.

use super::config::{check_budget, ExperimentConfig};
use super::csv::{CsvTable, PlotData};
use super::fit::{fit_log_log, LineFit};
use super::Report;
use crate::bounds::hbar;
use crate::error::Result;
use crate::estimators::{contact_profile, EstimateWithCI, MonteCarlo};
use crate::model::CopolymerParams;
use crate::partition::{build_partition_table, raw_tables, PartitionOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct WeakCouplingRow {
    pub a: f64,
    pub n_len: usize,
    /// `(log Z_{2N} - log Z_N) / N` over chains of length `2N`.
    pub increment: EstimateWithCI,
    /// `increment / a²`, the estimate of `F(aλ, ah) / a²`.
    pub rescaled: f64,
    pub rescaled_stderr: f64,
}

/// `a ↦ F(aλ, ah) / a²` with `N(a) = ⌈n_base / a²⌉`.
///
/// The free energy is estimated by the increment
/// `(log Z_{2N} - log Z_N) / N` on the same charges. The `O(log N)`
/// boundary part of `log Z_N` cancels in the difference; with the plain
/// `(1/N) log Z_N` it would survive as a bias of order `log N / n_base`
/// after rescaling, drifting with `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakCouplingScan {
    pub config: ExperimentConfig,
    pub lambda: f64,
    pub h: f64,
    pub rows: Vec<WeakCouplingRow>,
    /// Largest `|x_i - x_j| / sqrt(se_i² + se_j²)` over all pairs of rows.
    pub max_pairwise_z: f64,
}

impl WeakCouplingScan {
    /// Every pair of rescaled values agrees within `k` combined standard
    /// errors.
    pub fn is_stable(&self, k: f64) -> bool {
        self.max_pairwise_z <= k
    }
}

/// `|x - y|` in units of the combined standard error; 0 when both are
/// exact and equal.
pub fn pair_z(x: f64, sx: f64, y: f64, sy: f64) -> f64 {
    let d = (x - y).abs();
    let s = sx.hypot(sy);
    if d == 0.0 {
        0.0
    } else {
        d / s
    }
}

pub fn weak_coupling_length(cfg: &ExperimentConfig, a: f64) -> Result<usize> {
    let law = cfg.law()?;
    let n = law.round_up_to_period((cfg.n_base as f64 / (a * a)).ceil() as usize);
    check_budget(2 * n)?;
    Ok(n)
}

pub fn weak_coupling_scan(cfg: &ExperimentConfig) -> Result<WeakCouplingScan> {
    cfg.validate()?;
    let (lambda, h) = (cfg.lambda[0], cfg.h[0]);
    let lengths = cfg
        .a_list
        .iter()
        .map(|&a| weak_coupling_length(cfg, a))
        .collect::<Result<Vec<_>>>()?;
    let law = cfg.law()?;
    let mc = MonteCarlo::new(&law, cfg.disorder, cfg.n_samples, cfg.master_seed);
    let mut rows = Vec::new();
    for (&a, &n) in cfg.a_list.iter().zip(&lengths) {
        let params = CopolymerParams::new(a * lambda, a * h)?;
        let increments = mc.map_samples(2 * n, |omega| {
            let opts = PartitionOptions::default();
            let (_, log_z_long, _) = raw_tables(omega, &params, &law, &opts);
            let (_, log_z_short, _) = raw_tables(&omega[..n], &params, &law, &opts);
            Ok((log_z_long - log_z_short) / n as f64)
        })?;
        let inc = EstimateWithCI::from_samples(&increments, n)?;
        rows.push(WeakCouplingRow {
            a,
            n_len: n,
            rescaled: inc.mean / (a * a),
            rescaled_stderr: inc.stderr / (a * a),
            increment: inc,
        });
        log::info!("weak coupling a={a} N={n} done");
    }
    let mut max_pairwise_z: f64 = 0.0;
    for (i, x) in rows.iter().enumerate() {
        for y in &rows[i + 1..] {
            max_pairwise_z = max_pairwise_z.max(pair_z(
                x.rescaled,
                x.rescaled_stderr,
                y.rescaled,
                y.rescaled_stderr,
            ));
        }
    }
    Ok(WeakCouplingScan {
        config: cfg.clone(),
        lambda,
        h,
        rows,
        max_pairwise_z,
    })
}

impl Report for WeakCouplingScan {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "scaling",
            &[
                "disorder",
                "lambda",
                "h",
                "a",
                "n",
                "samples",
                "increment",
                "increment_se",
                "rescaled",
                "rescaled_se",
                "z_vs_previous",
                "max_pairwise_z",
            ],
        );
        for (i, r) in self.rows.iter().enumerate() {
            let z = match i {
                0 => f64::NAN,
                _ => {
                    let p = &self.rows[i - 1];
                    pair_z(r.rescaled, r.rescaled_stderr, p.rescaled, p.rescaled_stderr)
                }
            };
            t.push(vec![
                self.config.disorder.name().into(),
                self.lambda.into(),
                self.h.into(),
                r.a.into(),
                r.n_len.into(),
                r.increment.n_samples.into(),
                r.increment.mean.into(),
                r.increment.stderr.into(),
                r.rescaled.into(),
                r.rescaled_stderr.into(),
                z.into(),
                self.max_pairwise_z.into(),
            ]);
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("scaling", "a", "F/a^2");
        for r in &self.rows {
            p.push(
                self.config.disorder.name(),
                r.a,
                r.rescaled,
                r.rescaled_stderr,
            );
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelocRow {
    pub n_len: usize,
    /// Disorder average of `E_{N,ω}[𝒩_N]`.
    pub water: EstimateWithCI,
    /// Disorder average of `E_{N,ω}|τ ∩ (0, N]|`.
    pub contacts: EstimateWithCI,
}

/// Growth of the expected number of monomers in water with `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DelocalizedScaling {
    pub config: ExperimentConfig,
    pub lambda: f64,
    pub h: f64,
    pub rows: Vec<DelocRow>,
    /// Log-log fit of mean water occupation against `N`.
    pub fit: Option<LineFit>,
}

/// Uses exact contact profiles for every disorder sample. With
/// `h_offset` set, the run is at `h = h̄(λ) + h_offset`.
pub fn delocalized_scaling(cfg: &ExperimentConfig) -> Result<DelocalizedScaling> {
    cfg.validate()?;
    let law = cfg.law()?;
    let lambda = cfg.lambda[0];
    let h = match cfg.h_offset {
        Some(off) if lambda > 0.0 => {
            hbar(&law, &cfg.disorder, lambda, cfg.tol_h, cfg.tol_sigma)?.hbar + off
        }
        Some(off) => off,
        None => cfg.h[0],
    };
    let params = CopolymerParams::new(lambda, h)?;
    let mc = MonteCarlo::new(&law, cfg.disorder, cfg.n_samples, cfg.master_seed);
    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        let pairs = mc.map_samples(n, |omega| {
            let table = build_partition_table(omega, &params, &law)?;
            let prof = contact_profile(omega, &params, &law, &table)?;
            Ok((prof.expected_nn, prof.prob_contact.iter().sum::<f64>()))
        })?;
        let (water, contacts): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        rows.push(DelocRow {
            n_len: n,
            water: EstimateWithCI::from_samples(&water, n)?,
            contacts: EstimateWithCI::from_samples(&contacts, n)?,
        });
        log::info!("deloc N={n} done");
    }
    let ns: Vec<f64> = rows.iter().map(|r| r.n_len as f64).collect();
    let ws: Vec<f64> = rows.iter().map(|r| r.water.mean).collect();
    Ok(DelocalizedScaling {
        config: cfg.clone(),
        lambda,
        h,
        fit: fit_log_log(&ns, &ws),
        rows,
    })
}

impl Report for DelocalizedScaling {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "deloc",
            &[
                "lambda",
                "h",
                "n",
                "samples",
                "mean_water",
                "mean_water_se",
                "mean_contacts",
                "mean_contacts_se",
                "slope",
                "slope_se",
            ],
        );
        let (s, se) = self
            .fit
            .map_or((f64::NAN, f64::NAN), |f| (f.slope, f.slope_stderr));
        for r in &self.rows {
            t.push(vec![
                self.lambda.into(),
                self.h.into(),
                r.n_len.into(),
                r.water.n_samples.into(),
                r.water.mean.into(),
                r.water.stderr.into(),
                r.contacts.mean.into(),
                r.contacts.stderr.into(),
                s.into(),
                se.into(),
            ]);
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("deloc", "N", "E[N_water]");
        for r in &self.rows {
            p.push("water", r.n_len as f64, r.water.mean, r.water.stderr);
            p.push(
                "contacts",
                r.n_len as f64,
                r.contacts.mean,
                r.contacts.stderr,
            );
        }
        p
    }
}
