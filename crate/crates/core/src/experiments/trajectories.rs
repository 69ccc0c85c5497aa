//! Path sampling experiment: observables of exact trajectories.

use super::config::ExperimentConfig;
use super::csv::{CsvTable, PlotData};
use super::Report;
use crate::error::Result;
use crate::model::{sample_disorder, CopolymerParams};
use crate::partition::build_partition_table;
use crate::paths::{
    excursion_tail_statistics, path_observables, sample_paths, ExcursionStatistics,
    PathObservables, PathTrajectory, MIN_TRAJECTORIES,
};

/// Trajectories drawn on disorder sample 0 for each chain length.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRun {
    pub config: ExperimentConfig,
    pub lambda: f64,
    pub h: f64,
    /// `(N, per-path observables)`.
    pub observables: Vec<(usize, Vec<PathObservables>)>,
    /// Present when at least [`MIN_TRAJECTORIES`] paths were drawn.
    pub statistics: Option<ExcursionStatistics>,
}

pub fn run_paths(cfg: &ExperimentConfig) -> Result<PathRun> {
    cfg.validate()?;
    let law = cfg.law()?;
    let (lambda, h) = (cfg.lambda[0], cfg.h[0]);
    let params = CopolymerParams::new(lambda, h)?;
    let mut observables = Vec::new();
    let mut all: Vec<PathTrajectory> = Vec::new();
    for &n in &cfg.n_list {
        let omega = sample_disorder(&cfg.disorder, n, cfg.master_seed, 0)?.omega;
        let table = build_partition_table(&omega, &params, &law)?;
        let paths = sample_paths(&omega, &params, &law, &table, cfg.n_paths, cfg.master_seed)?;
        observables.push((n, paths.iter().map(path_observables).collect()));
        all.extend(paths);
    }
    let statistics = (all.len() >= MIN_TRAJECTORIES)
        .then(|| excursion_tail_statistics(&all))
        .transpose()?;
    Ok(PathRun {
        config: cfg.clone(),
        lambda,
        h,
        observables,
        statistics,
    })
}

/// One row per excursion: `(path, start, end, sign)`.
pub fn trajectory_table(paths: &[PathTrajectory]) -> CsvTable {
    let mut t = CsvTable::new("trajectory", &["path", "start", "end", "water", "closed"]);
    for (i, p) in paths.iter().enumerate() {
        for e in p.excursions() {
            t.push(vec![
                i.into(),
                e.start.into(),
                e.end.into(),
                e.water.into(),
                e.closed.into(),
            ]);
        }
    }
    t
}

impl Report for PathRun {
    fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(
            "paths",
            &[
                "lambda",
                "h",
                "n",
                "sample_index",
                "nn",
                "longest_excursion",
                "contacts",
            ],
        );
        for (n, obs) in &self.observables {
            for (i, o) in obs.iter().enumerate() {
                t.push(vec![
                    self.lambda.into(),
                    self.h.into(),
                    (*n).into(),
                    i.into(),
                    o.nn.into(),
                    o.longest_excursion.into(),
                    o.contacts.into(),
                ]);
            }
        }
        t
    }

    fn plot_data(&self) -> PlotData {
        let mut p = PlotData::new("paths", "N", "M_N/log N");
        if let Some(s) = &self.statistics {
            for l in &s.longest {
                p.push(
                    "longest_excursion",
                    l.n_len as f64,
                    l.mean,
                    0.5 * (l.q90 - l.q10),
                );
            }
        }
        p
    }
}
