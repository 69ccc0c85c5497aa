//! The fractional-moment threshold `h̄(λ)`: the smallest `h` at which
//! some `γ` makes `Σ(γ, λ, h) < 1`.

use log::{debug, warn};

use super::sigma::{sigma_series, sigma_until, SigmaEvaluation, MAX_CUT};
use super::{annealed_critical_curve, rare_stretch_lower_bound};
use crate::error::{Error, Result};
use crate::model::{DisorderLaw, InterArrivalLaw};

pub const DEFAULT_TOL_H: f64 = 1e-4;
pub const DEFAULT_TOL_SIGMA: f64 = 1e-8;

const GRID_POINTS: usize = 32;
const GRID_EPS: f64 = 1e-3;
/// Width in `γ` at which golden-section refinement stops.
const GAMMA_RESOLUTION: f64 = 1e-7;
/// Tolerance and cut-off cap used while searching for the minimizing `γ`.
const SEARCH_TOL: f64 = 1e-6;
const SEARCH_MAX_CUT: usize = 1 << 17;

/// Result of [`hbar`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbarResult {
    pub hbar: f64,
    pub gamma_star: f64,
    /// Certifying evaluation `Σ(γ*, λ, h̄)`; its upper end is below 1
    /// whenever `certified` is set.
    pub sigma: SigmaEvaluation,
    /// False when no `γ` certified any `h` below the annealed curve, in
    /// which case `hbar` is the annealed value.
    pub certified: bool,
}

/// Minimizer of `Σ(·, λ, h)` over `γ ∈ (1/(1+α), 1]`, with a final
/// evaluation at `tol_sigma`.
pub fn minimize_over_gamma(
    law: &InterArrivalLaw,
    disorder: &DisorderLaw,
    lambda: f64,
    h: f64,
    tol_sigma: f64,
) -> Result<SigmaEvaluation> {
    let gamma = best_gamma(law, disorder, lambda, h)?;
    sigma_series(law, disorder, gamma, lambda, h, tol_sigma)
}

/// Grid scan followed by golden-section refinement around the best point.
fn best_gamma(law: &InterArrivalLaw, disorder: &DisorderLaw, lambda: f64, h: f64) -> Result<f64> {
    let g_min = 1.0 / (1.0 + law.alpha()) + GRID_EPS;
    if g_min >= 1.0 {
        return Ok(1.0);
    }
    let eval = |g: f64| -> Result<f64> {
        Ok(sigma_until(
            law,
            disorder,
            g,
            lambda,
            h,
            SEARCH_TOL,
            None,
            SEARCH_MAX_CUT,
        )?
        .value())
    };
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| g_min + (1.0 - g_min) * i as f64 / (GRID_POINTS - 1) as f64)
        .collect();
    let values = grid.iter().map(|&g| eval(g)).collect::<Result<Vec<_>>>()?;
    let best = (0..GRID_POINTS)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    let mut gamma = grid[best];
    if values[best].is_finite() {
        let mut a = grid[best.saturating_sub(1)];
        let mut b = grid[(best + 1).min(GRID_POINTS - 1)];
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = eval(c)?;
        let mut fd = eval(d)?;
        while b - a > GAMMA_RESOLUTION {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = eval(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = eval(d)?;
            }
        }
        let cand = if fc < fd { c } else { d };
        if eval(cand)? <= values[best] {
            gamma = cand;
        }
    }
    Ok(gamma)
}

/// Decides whether `h` is certified delocalized by some `γ`.
fn certify(
    law: &InterArrivalLaw,
    disorder: &DisorderLaw,
    lambda: f64,
    h: f64,
    tol_sigma: f64,
) -> Result<Option<SigmaEvaluation>> {
    let gamma = best_gamma(law, disorder, lambda, h)?;
    let s = sigma_until(
        law,
        disorder,
        gamma,
        lambda,
        h,
        tol_sigma,
        Some(1.0),
        MAX_CUT,
    )?;
    Ok(s.certifies_below(1.0).then_some(s))
}

/// Bisection for `h̄(λ)` between the rare-stretch lower bound and the
/// annealed curve. The returned `hbar` is itself certified: the upper end
/// of the `Σ(γ*, λ, h̄)` enclosure is below 1.
pub fn hbar(
    law: &InterArrivalLaw,
    disorder: &DisorderLaw,
    lambda: f64,
    tol_h: f64,
    tol_sigma: f64,
) -> Result<HbarResult> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    if !(tol_h > 0.0) {
        return Err(Error::invalid("tol_h must be positive"));
    }
    let h_ann = annealed_critical_curve(disorder, lambda);
    let mut lo = rare_stretch_lower_bound(disorder, law.alpha(), lambda).min(h_ann);
    let mut hi = h_ann;
    let mut best: Option<SigmaEvaluation> = None;

    // find a certified point below the annealed curve to start from
    let mut probe = h_ann - tol_h;
    while probe > lo {
        if let Some(s) = certify(law, disorder, lambda, probe, tol_sigma)? {
            hi = probe;
            best = Some(s);
            break;
        }
        // step further from the annealed curve until something certifies
        let step = (h_ann - probe) * 4.0;
        if h_ann - step <= lo {
            break;
        }
        probe = h_ann - step;
    }
    let Some(mut cert) = best else {
        warn!("no certifying gamma found below the annealed curve at lambda = {lambda}");
        let sigma = sigma_series(law, disorder, 1.0, lambda, h_ann, tol_sigma)?;
        return Ok(HbarResult {
            hbar: h_ann,
            gamma_star: 1.0,
            sigma,
            certified: false,
        });
    };

    while hi - lo > tol_h {
        let mid = 0.5 * (lo + hi);
        match certify(law, disorder, lambda, mid, tol_sigma)? {
            Some(s) => {
                hi = mid;
                cert = s;
            }
            None => lo = mid,
        }
        debug!("hbar bisection lambda={lambda}: [{lo:.6}, {hi:.6}]");
    }
    Ok(HbarResult {
        hbar: hi,
        gamma_star: cert.gamma,
        sigma: cert,
        certified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_half_is_strictly_inside_the_bracket() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let r = hbar(
            &law,
            &DisorderLaw::Gaussian,
            1.0,
            DEFAULT_TOL_H,
            DEFAULT_TOL_SIGMA,
        )
        .unwrap();
        assert!(r.certified);
        assert!(
            r.hbar >= 2.0 / 3.0 && r.hbar < 1.0 - 10.0 * DEFAULT_TOL_H,
            "{r:?}"
        );
        assert!(r.gamma_star > 2.0 / 3.0 && r.gamma_star < 1.0);
        // recertify with a tighter tolerance, and check the point below fails
        let s = sigma_series(
            &law,
            &DisorderLaw::Gaussian,
            r.gamma_star,
            1.0,
            r.hbar + DEFAULT_TOL_H,
            1e-9,
        )
        .unwrap();
        assert!(s.value_interval.1 < 1.0);
        let below = minimize_over_gamma(
            &law,
            &DisorderLaw::Gaussian,
            1.0,
            r.hbar - DEFAULT_TOL_H,
            1e-9,
        )
        .unwrap();
        assert!(!below.certifies_below(1.0));
    }
}
