//! Configuration-driven experiments that emit versioned CSV tables.
//!
//! Each experiment is a pure function of its [`ExperimentConfig`]: disorder
//! samples come from counter-based streams keyed by the master seed, and
//! every reduction runs in a fixed order, so a rerun writes the same bytes.

mod config;
mod critical;
mod csv;
mod fit;
mod grid;
mod scaling;
mod trajectories;

use std::path::{Path, PathBuf};

pub use config::{Experiment, ExperimentConfig, MAX_CHAIN_LENGTH};
pub use critical::{
    estimate_hc, estimate_hc_at, run_hc_table, smoothing_probe, CriticalPointEstimate, HcTable,
    SmoothingProbe, SmoothingRow,
};
pub use csv::{Cell, CsvTable, PlotData, SCHEMA_VERSION};
pub use fit::{fit_line, fit_log_log, LineFit};
pub use grid::{
    run_bounds_table, run_free_energy_grid, run_hbar_table, run_mu_table, BoundsTable,
    FreeEnergyGrid, FreeEnergyPoint, HbarRow, HbarTable, MuPoint, MuTable,
};
pub use scaling::{
    delocalized_scaling, pair_z, weak_coupling_length, weak_coupling_scan, DelocRow,
    DelocalizedScaling, WeakCouplingRow, WeakCouplingScan,
};
pub use trajectories::{run_paths, trajectory_table, PathRun};

use crate::error::Result;

/// Output of an experiment run.
pub trait Report {
    /// The main result table.
    fn table(&self) -> CsvTable;
    /// `(x, y, yerr)` triples summarising the run.
    fn plot_data(&self) -> PlotData;
}

/// Runs the experiment named in `cfg.experiment`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Box<dyn Report>> {
    Ok(match cfg.experiment {
        Experiment::FreeEnergy => Box::new(run_free_energy_grid(cfg)?),
        Experiment::Hc => Box::new(run_hc_table(cfg)?),
        Experiment::Bounds => Box::new(run_bounds_table(cfg)?),
        Experiment::Hbar => Box::new(run_hbar_table(cfg)?),
        Experiment::Scaling => Box::new(weak_coupling_scan(cfg)?),
        Experiment::Deloc => Box::new(delocalized_scaling(cfg)?),
        Experiment::Smoothing => Box::new(smoothing_probe(cfg)?),
        Experiment::Mu => Box::new(run_mu_table(cfg)?),
        Experiment::Paths => Box::new(run_paths(cfg)?),
    })
}

/// Where the plot data of a run goes: next to the main output with a
/// `.plot.csv` suffix, or `<experiment>.plot.csv` in the working directory.
pub fn plot_data_path(cfg: &ExperimentConfig) -> PathBuf {
    match &cfg.output {
        Some(p) => {
            let stem = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| cfg.experiment.to_string());
            p.with_file_name(format!("{stem}.plot.csv"))
        }
        None => PathBuf::from(format!("{}.plot.csv", cfg.experiment)),
    }
}

/// Writes the main table to `cfg.output` (or returns it when unset) and,
/// if requested, the plot data. Returns the rendered main table.
pub fn write_report(cfg: &ExperimentConfig, report: &dyn Report) -> Result<String> {
    let rendered = report.table().render();
    if let Some(path) = &cfg.output {
        write_file(path, &rendered)?;
    }
    if cfg.emit_plot_data {
        write_file(
            &plot_data_path(cfg),
            &report.plot_data().to_table().render(),
        )?;
    }
    Ok(rendered)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}
