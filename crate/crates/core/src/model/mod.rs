//! Disorder laws, renewal inter-arrival laws and reproducible disorder
//! sampling.

mod disorder;
mod renewal;
mod sample;
pub mod special;

pub use disorder::DisorderLaw;
pub use renewal::{InterArrivalLaw, RenewalKind};
pub use sample::{derive_seed, sample_disorder, stream_rng, QuenchedSample, StreamDomain};

use crate::error::{Error, Result};

/// Coupling `λ` and charge bias `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopolymerParams {
    lambda: f64,
    h: f64,
}

impl CopolymerParams {
    pub fn new(lambda: f64, h: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::invalid(format!(
                "lambda must be finite and >= 0, got {lambda}"
            )));
        }
        if !(h >= 0.0 && h.is_finite()) {
            return Err(Error::invalid(format!(
                "h must be finite and >= 0, got {h}"
            )));
        }
        Ok(CopolymerParams { lambda, h })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn with_h(&self, h: f64) -> Result<Self> {
        CopolymerParams::new(self.lambda, h)
    }
}
