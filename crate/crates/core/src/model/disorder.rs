use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Law of the IID charges `ω_n`. Every variant is centred with unit
/// variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DisorderLaw {
    Gaussian,
    /// `±1` with probability one half each.
    Rademacher,
    /// Uniform on `[-a, a]`, rescaled by `√3 / a` to unit variance. The
    /// rescaled law is uniform on `[-√3, √3]` whatever `a` is.
    UniformBounded {
        half_width: f64,
    },
}

impl DisorderLaw {
    pub fn uniform(half_width: f64) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::invalid(format!(
                "uniform half-width must be positive, got {half_width}"
            )));
        }
        Ok(DisorderLaw::UniformBounded { half_width })
    }

    /// Short identifier used in CSV output and config files.
    pub fn name(&self) -> &'static str {
        match self {
            DisorderLaw::Gaussian => "gaussian",
            DisorderLaw::Rademacher => "rademacher",
            DisorderLaw::UniformBounded { .. } => "uniform",
        }
    }

    /// `log E[exp(t ω)]`.
    pub fn log_mgf(&self, t: f64) -> f64 {
        match self {
            DisorderLaw::Gaussian => 0.5 * t * t,
            DisorderLaw::Rademacher => log_cosh(t),
            DisorderLaw::UniformBounded { .. } => log_sinhc(SQRT_3 * t),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            DisorderLaw::Gaussian => rng.sample(StandardNormal),
            DisorderLaw::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            DisorderLaw::UniformBounded { .. } => SQRT_3 * (2.0 * rng.random::<f64>() - 1.0),
        }
    }
}

impl fmt::Display for DisorderLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DisorderLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gaussian" => Ok(DisorderLaw::Gaussian),
            "rademacher" => Ok(DisorderLaw::Rademacher),
            "uniform" | "uniform_bounded" => Ok(DisorderLaw::UniformBounded { half_width: SQRT_3 }),
            other => Err(Error::Config(format!(
                "unknown disorder law `{other}` (expected gaussian, rademacher or uniform)"
            ))),
        }
    }
}

fn log_cosh(t: f64) -> f64 {
    let a = t.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `log(sinh(x) / x)` with the `x → 0` limit.
fn log_sinhc(x: f64) -> f64 {
    let a = x.abs();
    if a < 1e-3 {
        let x2 = a * a;
        x2 / 6.0 - x2 * x2 / 180.0 + x2 * x2 * x2 / 2835.0
    } else if a < 20.0 {
        (a.sinh() / a).ln()
    } else {
        a + (-(-2.0 * a).exp()).ln_1p() - std::f64::consts::LN_2 - a.ln()
    }
}
