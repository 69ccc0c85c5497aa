//! Plain-text experiment configuration.
//!
//! A config file holds `key = value` lines; `#` starts a comment. Lists
//! are comma separated. Every key is optional and unknown keys are
//! rejected. [`ExperimentConfig::to_text`] writes every field, and parsing
//! that text gives back an identical config.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{DisorderLaw, InterArrivalLaw, RenewalKind};

/// Hard cap on the chain length accepted by the O(N²) dynamic programs.
pub const MAX_CHAIN_LENGTH: usize = 32_768;

/// The experiments the runner knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    FreeEnergy,
    Hc,
    Bounds,
    Hbar,
    Scaling,
    Deloc,
    Smoothing,
    Mu,
    Paths,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::FreeEnergy,
        Experiment::Hc,
        Experiment::Bounds,
        Experiment::Hbar,
        Experiment::Scaling,
        Experiment::Deloc,
        Experiment::Smoothing,
        Experiment::Mu,
        Experiment::Paths,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::FreeEnergy => "free-energy",
            Experiment::Hc => "hc",
            Experiment::Bounds => "bounds",
            Experiment::Hbar => "hbar",
            Experiment::Scaling => "scaling",
            Experiment::Deloc => "deloc",
            Experiment::Smoothing => "smoothing",
            Experiment::Mu => "mu",
            Experiment::Paths => "paths",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s || e.name().replace('-', "_") == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment `{s}`")))
    }
}

/// Everything an experiment run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub alpha: f64,
    pub k_family: RenewalKind,
    pub disorder: DisorderLaw,
    pub lambda: Vec<f64>,
    pub h: Vec<f64>,
    pub n_list: Vec<usize>,
    pub n_samples: usize,
    pub master_seed: u64,
    /// Resolution of the `h̄` bisection.
    pub tol_h: f64,
    /// Target width of the `Σ` enclosures.
    pub tol_sigma: f64,
    /// Width, in standard errors, of the localization certificate.
    pub certificate_sigmas: f64,
    /// Resolution of the critical-point bisection.
    pub hc_resolution: f64,
    /// Rescaling factors of the weak-coupling scan.
    pub a_list: Vec<f64>,
    /// Chain length at `a = 1` in the weak-coupling scan.
    pub n_base: usize,
    /// Distances below the critical point probed by `smoothing`.
    pub delta: Vec<f64>,
    /// When set, `deloc` runs at `h = h̄(λ) + h_offset` instead of `h`.
    pub h_offset: Option<f64>,
    /// When set, `smoothing` uses this critical point instead of
    /// estimating one.
    pub hc: Option<f64>,
    /// Trajectories drawn per chain length by `paths`.
    pub n_paths: usize,
    pub output: Option<PathBuf>,
    pub emit_plot_data: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: Experiment::FreeEnergy,
            alpha: 0.5,
            k_family: RenewalKind::ZetaTail,
            disorder: DisorderLaw::Gaussian,
            lambda: vec![1.0],
            h: vec![0.0],
            n_list: vec![1000],
            n_samples: 100,
            master_seed: 1,
            tol_h: 1e-4,
            tol_sigma: 1e-8,
            certificate_sigmas: 3.0,
            hc_resolution: 0.01,
            a_list: vec![1.0, 0.7, 0.5, 0.35],
            n_base: 1000,
            delta: vec![0.05, 0.1, 0.2, 0.4],
            h_offset: None,
            hc: None,
            n_paths: 1000,
            output: None,
            emit_plot_data: false,
        }
    }
}

fn cfg_err(key: &str, value: &str, what: &str) -> Error {
    Error::Config(format!("`{key} = {value}`: {what}"))
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| cfg_err(key, value, "expected a number"))?;
    if !v.is_finite() {
        return Err(cfg_err(key, value, "must be finite"));
    }
    Ok(v)
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .trim()
        .parse()
        .map_err(|_| cfg_err(key, value, "expected a non-negative integer"))
}

fn parse_list<T>(key: &str, value: &str, item: impl Fn(&str, &str) -> Result<T>) -> Result<Vec<T>> {
    value.split(',').map(|s| item(key, s)).collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(cfg_err(key, value, "expected true or false")),
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl ExperimentConfig {
    pub fn for_experiment(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            ..Default::default()
        }
    }

    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "experiment" => self.experiment = value.parse()?,
            "alpha" => self.alpha = parse_f64(key, value)?,
            "k_family" | "k-family" => self.k_family = RenewalKind::parse(value)?,
            "disorder" => self.disorder = value.parse()?,
            "lambda" | "lambda_grid" => self.lambda = parse_list(key, value, parse_f64)?,
            "h" | "h_grid" => self.h = parse_list(key, value, parse_f64)?,
            "n_list" | "n" => self.n_list = parse_list(key, value, parse_usize)?,
            "n_samples" | "samples" => self.n_samples = parse_usize(key, value)?,
            "master_seed" | "seed" => {
                self.master_seed = value
                    .parse()
                    .map_err(|_| cfg_err(key, value, "expected a 64-bit unsigned integer"))?
            }
            "tol_h" => self.tol_h = parse_f64(key, value)?,
            "tol_sigma" => self.tol_sigma = parse_f64(key, value)?,
            "certificate_sigmas" => self.certificate_sigmas = parse_f64(key, value)?,
            "hc_resolution" => self.hc_resolution = parse_f64(key, value)?,
            "a_list" => self.a_list = parse_list(key, value, parse_f64)?,
            "n_base" => self.n_base = parse_usize(key, value)?,
            "delta" | "delta_grid" => self.delta = parse_list(key, value, parse_f64)?,
            "h_offset" => self.h_offset = Some(parse_f64(key, value)?),
            "hc" => self.hc = Some(parse_f64(key, value)?),
            "n_paths" => self.n_paths = parse_usize(key, value)?,
            "output" | "output_path" | "out" => self.output = Some(PathBuf::from(value)),
            "emit_plot_data" => self.emit_plot_data = parse_bool(key, value)?,
            other => return Err(Error::Config(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Parses config text on top of the defaults and validates the result.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies `key = value` lines to `self` without validating.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                ))
            })?;
            self.set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {}", lineno + 1, strip_prefix(&e))))?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Full text form, one `key = value` line per field.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        line("experiment", self.experiment.to_string());
        line("alpha", self.alpha.to_string());
        line("k_family", self.k_family.name().to_string());
        line("disorder", self.disorder.name().to_string());
        line("lambda", join(&self.lambda));
        line("h", join(&self.h));
        line("n_list", join(&self.n_list));
        line("n_samples", self.n_samples.to_string());
        line("master_seed", self.master_seed.to_string());
        line("tol_h", self.tol_h.to_string());
        line("tol_sigma", self.tol_sigma.to_string());
        line("certificate_sigmas", self.certificate_sigmas.to_string());
        line("hc_resolution", self.hc_resolution.to_string());
        line("a_list", join(&self.a_list));
        line("n_base", self.n_base.to_string());
        line("delta", join(&self.delta));
        if let Some(x) = self.h_offset {
            line("h_offset", x.to_string());
        }
        if let Some(x) = self.hc {
            line("hc", x.to_string());
        }
        line("n_paths", self.n_paths.to_string());
        if let Some(p) = &self.output {
            line("output", p.display().to_string());
        }
        line("emit_plot_data", self.emit_plot_data.to_string());
        s
    }

    /// The inter-arrival law named by `k_family` and `alpha`.
    pub fn law(&self) -> Result<InterArrivalLaw> {
        InterArrivalLaw::from_kind(self.k_family, self.alpha)
            .map_err(|e| Error::Config(strip_prefix(&e)))
    }

    /// Checks ranges and grids; chain lengths above [`MAX_CHAIN_LENGTH`]
    /// are a budget error rather than a config error.
    pub fn validate(&self) -> Result<()> {
        let law = self.law()?;
        let nonempty = |name: &str, len: usize| {
            if len == 0 {
                Err(Error::Config(format!("`{name}` must not be empty")))
            } else {
                Ok(())
            }
        };
        nonempty("lambda", self.lambda.len())?;
        nonempty("h", self.h.len())?;
        nonempty("n_list", self.n_list.len())?;
        nonempty("a_list", self.a_list.len())?;
        nonempty("delta", self.delta.len())?;
        if let Some(&l) = self.lambda.iter().find(|&&l| l < 0.0) {
            return Err(Error::Config(format!("lambda must be >= 0, got {l}")));
        }
        if let Some(&h) = self.h.iter().find(|&&h| h < 0.0) {
            return Err(Error::Config(format!("h must be >= 0, got {h}")));
        }
        for &n in &self.n_list {
            if n == 0 {
                return Err(Error::Config("chain lengths must be positive".into()));
            }
            law.check_length(n)
                .map_err(|e| Error::Config(strip_prefix(&e)))?;
            check_budget(n)?;
        }
        if self.n_samples < 2 {
            return Err(Error::Config(format!(
                "n_samples must be at least 2, got {}",
                self.n_samples
            )));
        }
        for (name, v) in [
            ("tol_h", self.tol_h),
            ("tol_sigma", self.tol_sigma),
            ("certificate_sigmas", self.certificate_sigmas),
            ("hc_resolution", self.hc_resolution),
        ] {
            if !(v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if let Some(&a) = self.a_list.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
            return Err(Error::Config(format!(
                "a_list entries must lie in (0, 1], got {a}"
            )));
        }
        if self.a_list.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Config("a_list must be strictly decreasing".into()));
        }
        if self.n_base == 0 {
            return Err(Error::Config("n_base must be positive".into()));
        }
        if let Some(&d) = self.delta.iter().find(|&&d| !(d > 0.0)) {
            return Err(Error::Config(format!(
                "delta entries must be positive, got {d}"
            )));
        }
        if let Some(x) = self.h_offset.filter(|x| *x < 0.0) {
            return Err(Error::Config(format!("h_offset must be >= 0, got {x}")));
        }
        if let Some(x) = self.hc.filter(|x| *x < 0.0) {
            return Err(Error::Config(format!("hc must be >= 0, got {x}")));
        }
        if self.n_paths == 0 {
            return Err(Error::Config("n_paths must be positive".into()));
        }
        Ok(())
    }

    pub fn max_n(&self) -> usize {
        self.n_list.iter().copied().max().unwrap_or(0)
    }
}

pub(crate) fn check_budget(n: usize) -> Result<()> {
    if n > MAX_CHAIN_LENGTH {
        return Err(Error::BudgetExceeded(format!(
            "chain length {n} exceeds the cap of {MAX_CHAIN_LENGTH}"
        )));
    }
    Ok(())
}

/// Error message without the variant's `Display` prefix.
fn strip_prefix(e: &Error) -> String {
    match e {
        Error::InvalidArgument(m)
        | Error::Config(m)
        | Error::BudgetExceeded(m)
        | Error::Internal(m)
        | Error::Format(m) => m.clone(),
        Error::Io(io) => io.to_string(),
    }
}
