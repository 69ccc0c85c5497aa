//! Rigorous bounds on the critical curve `h_c(λ)`.
//!
//! ```text
//! rare-stretch bound  ≤  h_c(λ)  ≤  h̄(λ)  <  h_c^ann(λ)
//! ```
//!
//! The lower bound comes from trajectories that visit rare negatively
//! charged stretches, the upper bounds from the annealed model and from
//! fractional moments of the partition function.

mod hbar;
mod sigma;
mod strategy_a;

pub use hbar::{hbar, minimize_over_gamma, HbarResult, DEFAULT_TOL_H, DEFAULT_TOL_SIGMA};
pub use sigma::{sigma_rate, sigma_series, SigmaEvaluation, MAX_CUT};
pub use strategy_a::strategy_a_restricted_log_z;

use crate::error::{Error, Result};
use crate::model::{DisorderLaw, InterArrivalLaw};

/// `h_c^ann(λ) = log M(-2λ) / (2λ)`, with the limit 0 at `λ = 0`.
pub fn annealed_critical_curve(disorder: &DisorderLaw, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    disorder.log_mgf(-2.0 * lambda) / (2.0 * lambda)
}

/// `((1+α)/(2λ)) log M(-2λ/(1+α))`, a lower bound on `h_c(λ)`.
pub fn rare_stretch_lower_bound(disorder: &DisorderLaw, alpha: f64, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let t = 2.0 * lambda / (1.0 + alpha);
    disorder.log_mgf(-t) / t
}

/// Bracket `[lower, upper]` on the weak-coupling slope
/// `m_α = lim_{λ→0} h_c(λ)/λ` for Gaussian-like charges.
pub fn slope_bracket(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0) {
        return Err(Error::invalid(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok(((1.0 / (1.0 + alpha)).max(0.5), 1.0))
}

/// The three critical-curve bounds at one coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcBracket {
    pub lambda: f64,
    pub lower_rare_stretch: f64,
    pub upper_hbar: f64,
    pub upper_annealed: f64,
    pub gamma_star: f64,
    /// Upper end of the certifying `Σ` enclosure at `h̄`.
    pub sigma_at_solution: f64,
}

pub fn hc_bracket(law: &InterArrivalLaw, disorder: &DisorderLaw, lambda: f64) -> Result<HcBracket> {
    hc_bracket_with(law, disorder, lambda, DEFAULT_TOL_H, DEFAULT_TOL_SIGMA)
}

pub fn hc_bracket_with(
    law: &InterArrivalLaw,
    disorder: &DisorderLaw,
    lambda: f64,
    tol_h: f64,
    tol_sigma: f64,
) -> Result<HcBracket> {
    let lower = rare_stretch_lower_bound(disorder, law.alpha(), lambda);
    let upper_annealed = annealed_critical_curve(disorder, lambda);
    let hb = hbar(law, disorder, lambda, tol_h, tol_sigma)?;
    if !(lower <= hb.hbar + tol_h && hb.hbar <= upper_annealed) {
        return Err(Error::Internal(format!(
            "bound ordering violated at lambda={lambda}: {lower} <= {} <= {upper_annealed}",
            hb.hbar
        )));
    }
    Ok(HcBracket {
        lambda,
        lower_rare_stretch: lower,
        upper_hbar: hb.hbar,
        upper_annealed,
        gamma_star: hb.gamma_star,
        sigma_at_solution: hb.sigma.value_interval.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let g = DisorderLaw::Gaussian;
        assert!((annealed_critical_curve(&g, 1.0) - 1.0).abs() < 1e-15);
        assert!((annealed_critical_curve(&g, 0.5) - 0.5).abs() < 1e-15);
        assert_eq!(annealed_critical_curve(&g, 0.0), 0.0);
        assert!((rare_stretch_lower_bound(&g, 0.5, 1.0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((rare_stretch_lower_bound(&g, 0.5, 0.3) - 0.2).abs() < 1e-15);
        assert!((rare_stretch_lower_bound(&g, 0.3, 1.0) - 1.0 / 1.3).abs() < 1e-15);
        // log cosh(2)/2 and 0.75·log cosh(4/3), 20-digit reference values
        let r = DisorderLaw::Rademacher;
        assert!((annealed_critical_curve(&r, 1.0) - 0.662_501_373_678_932_2).abs() < 1e-14);
        assert!(
            (rare_stretch_lower_bound(&r, 0.5, 1.0) - 0.75 * (4f64 / 3.0).cosh().ln()).abs()
                < 1e-14
        );
    }

    #[test]
    fn slope_brackets() {
        assert_eq!(slope_bracket(0.5).unwrap(), (2.0 / 3.0, 1.0));
        assert_eq!(slope_bracket(2.0).unwrap(), (0.5, 1.0));
        assert_eq!(slope_bracket(1.0).unwrap(), (0.5, 1.0));
        assert!(slope_bracket(0.0).is_err());
    }
}
