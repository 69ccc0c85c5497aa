//! Experiments that tabulate one quantity over a parameter grid.

use super::config::ExperimentConfig;
use super::csv::{Cell, CsvTable, PlotData};
use super::Report;
use crate::bounds::{
    annealed_critical_curve, hbar, hc_bracket_with, rare_stretch_lower_bound, HcBracket,
};
use crate::error::Result;
use crate::estimators::{estimate_mu, EstimateWithCI, MonteCarlo, MuEstimate};
use crate::model::CopolymerParams;
use crate::partition::{build_annealed_table, raw_tables, PartitionOptions};

fn header_cells(cfg: &ExperimentConfig) -> [Cell; 3] {
    [
        cfg.k_family.name().into(),
        cfg.alpha.into(),
        cfg.disorder.name().into(),
    ]
}

/// Free-energy estimates at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeEnergyPoint {
    pub lambda: f64,
    pub h: f64,
    /// `(1/N) log Z_N`.
    pub free: EstimateWithCI,
    /// `(1/N) log Z^c_N`.
    pub constrained: EstimateWithCI,
    /// `(1/N) log E Z_N`.
    pub annealed: f64,
    /// Lower confidence bound of the constrained estimate is positive.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreeEnergyGrid {
    pub config: ExperimentConfig,
    pub points: Vec<FreeEnergyPoint>,
}

/// Estimates the free and constrained free energies over
/// `lambda × h × n_list`, reusing the disorder samples at every point.
pub fn run_free_energy_grid(cfg: &ExperimentConfig) -> Result<FreeEnergyGrid> {
    cfg.validate()?;
    let law = cfg.law()?;
    let mc = MonteCarlo::new(&law, cfg.disorder, cfg.n_samples, cfg.master_seed);
    let mut points = Vec::new();
    for &lambda in &cfg.lambda {
        for &h in &cfg.h {
            let params = CopolymerParams::new(lambda, h)?;
            for &n in &cfg.n_list {
                let pairs = mc.map_samples(n, |omega| {
                    let (log_zc, log_z, _) =
                        raw_tables(omega, &params, &law, &PartitionOptions::default());
                    Ok((log_z / n as f64, log_zc[n] / n as f64))
                })?;
                let (free, constrained): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
                let constrained = EstimateWithCI::from_samples(&constrained, n)?;
                points.push(FreeEnergyPoint {
                    lambda,
                    h,
                    free: EstimateWithCI::from_samples(&free, n)?,
                    certified: constrained.lower(cfg.certificate_sigmas) > 0.0,
                    constrained,
                    annealed: build_annealed_table(&params, &cfg.disorder, &law, n)?.free_energy(),
                });
                log::info!("free energy lambda={lambda} h={h} N={n} done");
            }
        }
    }
    Ok(FreeEnergyGrid {
        config: cfg.clone(),
        points,
    })
}

impl Report for FreeEnergyGrid {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "free-energy",
            &[
                "k_family",
                "alpha",
                "disorder",
                "lambda",
                "h",
                "n",
                "samples",
                "f_free",
                "f_free_se",
                "f_constrained",
                "f_constrained_se",
                "f_annealed",
                "certified",
            ],
        );
        for p in &self.points {
            let mut row = header_cells(&self.config).to_vec();
            row.extend([
                p.lambda.into(),
                p.h.into(),
                p.free.n_len.into(),
                p.free.n_samples.into(),
                p.free.mean.into(),
                p.free.stderr.into(),
                p.constrained.mean.into(),
                p.constrained.stderr.into(),
                p.annealed.into(),
                p.certified.into(),
            ]);
            t.push(row);
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("free-energy", "h", "F_N");
        for q in &self.points {
            p.push(
                format!("lambda={} N={}", q.lambda, q.free.n_len),
                q.h,
                q.free.mean,
                q.free.stderr,
            );
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MuPoint {
    pub lambda: f64,
    pub h: f64,
    pub mu: MuEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MuTable {
    pub config: ExperimentConfig,
    pub points: Vec<MuPoint>,
}

/// Decay rate `μ` over `lambda × h × n_list`.
pub fn run_mu_table(cfg: &ExperimentConfig) -> Result<MuTable> {
    cfg.validate()?;
    let law = cfg.law()?;
    let mc = MonteCarlo::new(&law, cfg.disorder, cfg.n_samples, cfg.master_seed);
    let mut points = Vec::new();
    for &lambda in &cfg.lambda {
        for &h in &cfg.h {
            let params = CopolymerParams::new(lambda, h)?;
            for mu in estimate_mu(&mc, &params, &cfg.n_list)? {
                if mu.disagreement {
                    log::warn!(
                        "mean and median-of-means disagree for mu at lambda={lambda} h={h} N={}",
                        mu.estimate.n_len
                    );
                }
                points.push(MuPoint { lambda, h, mu });
            }
        }
    }
    Ok(MuTable {
        config: cfg.clone(),
        points,
    })
}

impl Report for MuTable {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "mu",
            &[
                "k_family",
                "alpha",
                "disorder",
                "lambda",
                "h",
                "n",
                "samples",
                "mu",
                "mu_se",
                "mu_median_of_means",
                "disagreement",
                "inverse_mu",
            ],
        );
        for p in &self.points {
            let mut row = header_cells(&self.config).to_vec();
            let e = &p.mu.estimate;
            row.extend([
                p.lambda.into(),
                p.h.into(),
                e.n_len.into(),
                e.n_samples.into(),
                e.mean.into(),
                e.stderr.into(),
                p.mu.median_of_means.into(),
                p.mu.disagreement.into(),
                (1.0 / e.mean).into(),
            ]);
            t.push(row);
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("mu", "N", "mu");
        for q in &self.points {
            let e = &q.mu.estimate;
            p.push(
                format!("lambda={} h={}", q.lambda, q.h),
                e.n_len as f64,
                e.mean,
                e.stderr,
            );
        }
        p
    }
}

/// Rigorous bracket on `h_c(λ)` for each `λ` of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsTable {
    pub config: ExperimentConfig,
    pub rows: Vec<HcBracket>,
}

fn zero_coupling_bracket() -> HcBracket {
    HcBracket {
        lambda: 0.0,
        lower_rare_stretch: 0.0,
        upper_hbar: 0.0,
        upper_annealed: 0.0,
        gamma_star: 1.0,
        sigma_at_solution: 1.0,
    }
}

pub fn run_bounds_table(cfg: &ExperimentConfig) -> Result<BoundsTable> {
    cfg.validate()?;
    let law = cfg.law()?;
    let rows = cfg
        .lambda
        .iter()
        .map(|&l| {
            if l == 0.0 {
                Ok(zero_coupling_bracket())
            } else {
                hc_bracket_with(&law, &cfg.disorder, l, cfg.tol_h, cfg.tol_sigma)
            }
        })
        .collect::<Result<_>>()?;
    Ok(BoundsTable {
        config: cfg.clone(),
        rows,
    })
}

impl Report for BoundsTable {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "bounds",
            &[
                "k_family",
                "alpha",
                "disorder",
                "lambda",
                "rare_stretch",
                "hbar",
                "annealed",
                "gamma_star",
                "sigma_upper",
            ],
        );
        for b in &self.rows {
            let mut row = header_cells(&self.config).to_vec();
            row.extend([
                b.lambda.into(),
                b.lower_rare_stretch.into(),
                b.upper_hbar.into(),
                b.upper_annealed.into(),
                b.gamma_star.into(),
                b.sigma_at_solution.into(),
            ]);
            t.push(row);
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("bounds", "lambda", "h");
        for b in &self.rows {
            p.push("rare_stretch", b.lambda, b.lower_rare_stretch, 0.0);
            p.push("hbar", b.lambda, b.upper_hbar, self.config.tol_h);
            p.push("annealed", b.lambda, b.upper_annealed, 0.0);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HbarRow {
    pub lambda: f64,
    pub hbar: f64,
    pub gamma_star: f64,
    pub sigma_interval: (f64, f64),
    pub n_cut: usize,
    pub certified: bool,
    pub rare_stretch: f64,
    pub annealed: f64,
}

/// The fractional-moment threshold `h̄(λ)` with its `Σ` certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct HbarTable {
    pub config: ExperimentConfig,
    pub rows: Vec<HbarRow>,
}

pub fn run_hbar_table(cfg: &ExperimentConfig) -> Result<HbarTable> {
    cfg.validate()?;
    let law = cfg.law()?;
    let mut rows = Vec::new();
    for &lambda in &cfg.lambda {
        let rare_stretch = rare_stretch_lower_bound(&cfg.disorder, law.alpha(), lambda);
        let annealed = annealed_critical_curve(&cfg.disorder, lambda);
        if lambda == 0.0 {
            rows.push(HbarRow {
                lambda,
                hbar: 0.0,
                gamma_star: 1.0,
                sigma_interval: (1.0, 1.0),
                n_cut: 0,
                certified: false,
                rare_stretch,
                annealed,
            });
            continue;
        }
        let r = hbar(&law, &cfg.disorder, lambda, cfg.tol_h, cfg.tol_sigma)?;
        rows.push(HbarRow {
            lambda,
            hbar: r.hbar,
            gamma_star: r.gamma_star,
            sigma_interval: r.sigma.value_interval,
            n_cut: r.sigma.n_cut,
            certified: r.certified,
            rare_stretch,
            annealed,
        });
    }
    Ok(HbarTable {
        config: cfg.clone(),
        rows,
    })
}

impl Report for HbarTable {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "hbar",
            &[
                "k_family",
                "alpha",
                "disorder",
                "lambda",
                "hbar",
                "gamma_star",
                "sigma_lo",
                "sigma_hi",
                "n_cut",
                "certified",
                "rare_stretch",
                "annealed",
            ],
        );
        for r in &self.rows {
            let mut row = header_cells(&self.config).to_vec();
            row.extend([
                r.lambda.into(),
                r.hbar.into(),
                r.gamma_star.into(),
                r.sigma_interval.0.into(),
                r.sigma_interval.1.into(),
                r.n_cut.into(),
                r.certified.into(),
                r.rare_stretch.into(),
                r.annealed.into(),
            ]);
            t.push(row);
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("hbar", "lambda", "hbar");
        for r in &self.rows {
            p.push("hbar", r.lambda, r.hbar, self.config.tol_h);
        }
        p
    }
}
