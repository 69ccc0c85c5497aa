//! Critical-point estimation by certificate crossing, and the smoothing
//! probe on the localized side.

use super::config::ExperimentConfig;
use super::csv::{CsvTable, PlotData};
use super::fit::{fit_log_log, LineFit};
use super::Report;
use crate::bounds::{annealed_critical_curve, hc_bracket_with, HcBracket};
use crate::error::{Error, Result};
use crate::estimators::{
    estimate_free_energy, localization_certificate, EstimateWithCI, MonteCarlo,
};
use crate::model::CopolymerParams;
use crate::partition::build_annealed_table;

/// Numerical estimate of `h_c(λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointEstimate {
    pub lambda: f64,
    pub hc_hat: f64,
    /// `[largest certified h, smallest uncertified h + resolution]`,
    /// clipped to the rigorous bracket; the whole bracket when `flagged`.
    pub ci: (f64, f64),
    pub method: &'static str,
    /// Largest chain length used by the certificate.
    pub n_used: usize,
    /// Disorder samples drawn over the whole bisection.
    pub samples_used: usize,
    /// No point above the rigorous lower bound could be certified, so the
    /// interval falls back to the rigorous bracket.
    pub flagged: bool,
    pub bracket: HcBracket,
}

/// Bisection on `h` between the rare-stretch lower bound and `h̄(λ)`.
///
/// A point counts as localized when the localization certificate holds at
/// some configured chain length (largest first). Otherwise it is treated
/// as delocalized, with `h̄` as the rigorous cap. Every evaluation reuses
/// the same disorder samples.
pub fn estimate_hc_at(cfg: &ExperimentConfig, lambda: f64) -> Result<CriticalPointEstimate> {
    cfg.validate()?;
    if !(lambda > 0.0) {
        return Err(Error::Config(format!(
            "critical point estimation needs lambda > 0, got {lambda}"
        )));
    }
    let law = cfg.law()?;
    let bracket = hc_bracket_with(&law, &cfg.disorder, lambda, cfg.tol_h, cfg.tol_sigma)?;
    let mc = MonteCarlo::new(&law, cfg.disorder, cfg.n_samples, cfg.master_seed);
    let mut lengths = cfg.n_list.clone();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths.dedup();

    let rigorous = (bracket.lower_rare_stretch, bracket.upper_hbar);
    let (mut lo, mut hi) = rigorous;
    let mut found = false;
    let mut samples_used = 0;
    while hi - lo > cfg.hc_resolution {
        let mid = 0.5 * (lo + hi);
        let params = CopolymerParams::new(lambda, mid)?;
        let mut certified = false;
        for &n in &lengths {
            samples_used += cfg.n_samples;
            let c = localization_certificate(&mc, &params, n, cfg.certificate_sigmas)?;
            log::debug!(
                "hc lambda={lambda} h={mid:.5} N={n}: margin {:.3e}",
                c.margin
            );
            if c.certified {
                certified = true;
                break;
            }
        }
        if certified {
            lo = mid;
            found = true;
        } else {
            hi = mid;
        }
    }
    let (ci, hc_hat) = if found {
        let ci = (lo, (hi + cfg.hc_resolution).min(rigorous.1));
        (ci, 0.5 * (lo + hi))
    } else {
        log::warn!("no localized point certified above the rare-stretch bound at lambda={lambda}; widening to the rigorous bracket");
        (rigorous, 0.5 * (lo + hi))
    };
    if !(rigorous.0 <= ci.0 && ci.0 <= hc_hat && hc_hat <= ci.1 && ci.1 <= bracket.upper_annealed) {
        return Err(Error::Internal(format!(
            "critical point estimate {hc_hat} with interval {ci:?} escapes the bracket [{}, {}]",
            rigorous.0, bracket.upper_annealed
        )));
    }
    Ok(CriticalPointEstimate {
        lambda,
        hc_hat,
        ci,
        method: "certificate-crossing",
        n_used: lengths[0],
        samples_used,
        flagged: !found,
        bracket,
    })
}

/// [`estimate_hc_at`] for the first configured `λ`.
pub fn estimate_hc(cfg: &ExperimentConfig) -> Result<CriticalPointEstimate> {
    estimate_hc_at(cfg, cfg.lambda[0])
}

#[derive(Debug, Clone, PartialEq)]
pub struct HcTable {
    pub config: ExperimentConfig,
    pub rows: Vec<CriticalPointEstimate>,
}

pub fn run_hc_table(cfg: &ExperimentConfig) -> Result<HcTable> {
    let rows = cfg
        .lambda
        .iter()
        .map(|&l| estimate_hc_at(cfg, l))
        .collect::<Result<_>>()?;
    Ok(HcTable {
        config: cfg.clone(),
        rows,
    })
}

impl Report for HcTable {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "hc",
            &[
                "k_family",
                "alpha",
                "disorder",
                "lambda",
                "hc_hat",
                "ci_lo",
                "ci_hi",
                "method",
                "n_used",
                "samples_used",
                "flagged",
                "rare_stretch",
                "hbar",
                "annealed",
            ],
        );
        for r in &self.rows {
            t.push(vec![
                self.config.k_family.name().into(),
                self.config.alpha.into(),
                self.config.disorder.name().into(),
                r.lambda.into(),
                r.hc_hat.into(),
                r.ci.0.into(),
                r.ci.1.into(),
                r.method.into(),
                r.n_used.into(),
                r.samples_used.into(),
                r.flagged.into(),
                r.bracket.lower_rare_stretch.into(),
                r.bracket.upper_hbar.into(),
                r.bracket.upper_annealed.into(),
            ]);
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("hc", "lambda", "hc_hat");
        for r in &self.rows {
            p.push("hc_hat", r.lambda, r.hc_hat, 0.5 * (r.ci.1 - r.ci.0));
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingRow {
    pub delta: f64,
    pub h: f64,
    pub quenched: EstimateWithCI,
    /// Annealed free energy at `h_ann(λ) - δ`.
    pub annealed: f64,
}

/// `F(λ, h_c - δ)` along a grid of `δ`, with power-law fits.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingProbe {
    pub config: ExperimentConfig,
    pub lambda: f64,
    pub hc_reference: f64,
    pub rows: Vec<SmoothingRow>,
    /// Fit of `log F` against `log δ` over the positive estimates.
    pub quenched_fit: Option<LineFit>,
    pub annealed_fit: Option<LineFit>,
}

pub fn smoothing_probe(cfg: &ExperimentConfig) -> Result<SmoothingProbe> {
    cfg.validate()?;
    let lambda = cfg.lambda[0];
    let hc_reference = match cfg.hc {
        Some(h) => h,
        None => estimate_hc_at(cfg, lambda)?.hc_hat,
    };
    let law = cfg.law()?;
    let mc = MonteCarlo::new(&law, cfg.disorder, cfg.n_samples, cfg.master_seed);
    let n = cfg.max_n();
    let h_ann = annealed_critical_curve(&cfg.disorder, lambda);
    let mut rows = Vec::new();
    for &delta in &cfg.delta {
        let h = hc_reference - delta;
        if h < 0.0 {
            log::warn!("skipping delta={delta}: h would be negative");
            continue;
        }
        let quenched = estimate_free_energy(&mc, &CopolymerParams::new(lambda, h)?, n, false)?;
        let ann_params = CopolymerParams::new(lambda, (h_ann - delta).max(0.0))?;
        let annealed = build_annealed_table(&ann_params, &cfg.disorder, &law, n)?.free_energy();
        rows.push(SmoothingRow {
            delta,
            h,
            quenched,
            annealed,
        });
    }
    let deltas: Vec<f64> = rows.iter().map(|r| r.delta).collect();
    let q: Vec<f64> = rows.iter().map(|r| r.quenched.mean).collect();
    let a: Vec<f64> = rows.iter().map(|r| r.annealed).collect();
    Ok(SmoothingProbe {
        config: cfg.clone(),
        lambda,
        hc_reference,
        quenched_fit: fit_log_log(&deltas, &q),
        annealed_fit: fit_log_log(&deltas, &a),
        rows,
    })
}

impl Report for SmoothingProbe {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "smoothing",
            &[
                "lambda",
                "hc_reference",
                "delta",
                "h",
                "n",
                "f_quenched",
                "f_quenched_se",
                "f_annealed",
                "theta_quenched",
                "theta_quenched_se",
                "theta_annealed",
            ],
        );
        let (tq, tq_se) = self
            .quenched_fit
            .map_or((f64::NAN, f64::NAN), |f| (f.slope, f.slope_stderr));
        let ta = self.annealed_fit.map_or(f64::NAN, |f| f.slope);
        for r in &self.rows {
            t.push(vec![
                self.lambda.into(),
                self.hc_reference.into(),
                r.delta.into(),
                r.h.into(),
                r.quenched.n_len.into(),
                r.quenched.mean.into(),
                r.quenched.stderr.into(),
                r.annealed.into(),
                tq.into(),
                tq_se.into(),
                ta.into(),
            ]);
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("smoothing", "delta", "F");
        for r in &self.rows {
            p.push("quenched", r.delta, r.quenched.mean, r.quenched.stderr);
            p.push("annealed", r.delta, r.annealed, 0.0);
        }
        p
    }
}
