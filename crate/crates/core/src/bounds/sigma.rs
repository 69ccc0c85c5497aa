//! The fractional-moment series `Σ(γ, λ, h) = Σ_n K̃(n)` with
//! `K̃(n) = (1 + e^{-rn})/2 · K(n)^γ` and `r = 2λγh - log M(-2λγ)`.

use crate::error::{Error, Result};
use crate::logspace::CompensatedSum;
use crate::model::{DisorderLaw, InterArrivalLaw};

/// First cut-off tried by [`sigma_series`].
const FIRST_CUT: usize = 1 << 10;
/// Largest cut-off; beyond it the enclosure is returned as is.
pub const MAX_CUT: usize = 1 << 24;
/// Partial sums above this are reported as divergent.
const BLOW_UP: f64 = 1e12;

/// Rigorous enclosure of `Σ(γ, λ, h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaEvaluation {
    pub gamma: f64,
    pub lambda: f64,
    pub h: f64,
    /// Exponential rate `r` of the water factor.
    pub rate: f64,
    /// `Σ_{n ≤ n_cut} K̃(n)`.
    pub partial_sum: f64,
    /// Lower and upper enclosure of `Σ_{n > n_cut} K̃(n)`.
    pub tail_lower: f64,
    pub tail_bound: f64,
    pub n_cut: usize,
    /// `[partial_sum + tail_lower, partial_sum + tail_bound]`.
    pub value_interval: (f64, f64),
    pub divergent: bool,
    /// The interval width reached the requested tolerance.
    pub converged: bool,
}

impl SigmaEvaluation {
    pub fn width(&self) -> f64 {
        self.value_interval.1 - self.value_interval.0
    }

    /// Midpoint of the enclosure, `∞` when divergent.
    pub fn value(&self) -> f64 {
        if self.divergent {
            f64::INFINITY
        } else {
            0.5 * (self.value_interval.0 + self.value_interval.1)
        }
    }

    /// The series is certainly below `level`.
    pub fn certifies_below(&self, level: f64) -> bool {
        !self.divergent && self.value_interval.1 < level
    }
}

/// `r = 2λγh - log M(-2λγ)`. Values within rounding of zero are snapped to
/// zero so that `Σ(1, λ, h^ann) = 1` is recognised as convergent.
pub fn sigma_rate(disorder: &DisorderLaw, gamma: f64, lambda: f64, h: f64) -> f64 {
    let a = 2.0 * lambda * gamma * h;
    let b = disorder.log_mgf(-2.0 * lambda * gamma);
    let r = a - b;
    if r.abs() <= 16.0 * f64::EPSILON * (a.abs() + b.abs()) {
        0.0
    } else {
        r
    }
}

/// Evaluates `Σ(γ, λ, h)` until the enclosure is narrower than `tol`.
pub fn sigma_series(
    law: &InterArrivalLaw,
    disorder: &DisorderLaw,
    gamma: f64,
    lambda: f64,
    h: f64,
    tol: f64,
) -> Result<SigmaEvaluation> {
    sigma_until(law, disorder, gamma, lambda, h, tol, None, MAX_CUT)
}

/// Like [`sigma_series`], but may stop as soon as the enclosure lies
/// entirely on one side of `level`, and never sums beyond `max_cut`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn sigma_until(
    law: &InterArrivalLaw,
    disorder: &DisorderLaw,
    gamma: f64,
    lambda: f64,
    h: f64,
    tol: f64,
    level: Option<f64>,
    max_cut: usize,
) -> Result<SigmaEvaluation> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::invalid(format!(
            "gamma must lie in (0, 1], got {gamma}"
        )));
    }
    let rate = sigma_rate(disorder, gamma, lambda, h);
    let mut out = SigmaEvaluation {
        gamma,
        lambda,
        h,
        rate,
        partial_sum: 0.0,
        tail_lower: 0.0,
        tail_bound: f64::INFINITY,
        n_cut: 0,
        value_interval: (0.0, f64::INFINITY),
        divergent: false,
        converged: false,
    };
    if gamma * (1.0 + law.alpha()) <= 1.0 || rate < 0.0 {
        out.divergent = true;
        return Ok(out);
    }

    let mut acc = CompensatedSum::new();
    let mut done = 0usize;
    let mut cut = FIRST_CUT;
    loop {
        for n in done + 1..=cut {
            let k = law.pmf(n);
            if k > 0.0 {
                let kg = if gamma == 1.0 {
                    k
                } else {
                    (gamma * k.ln()).exp()
                };
                acc.add(0.5 * (1.0 + (-rate * n as f64).exp()) * kg);
            }
        }
        done = cut;
        let partial = acc.value();
        if partial > BLOW_UP {
            out.divergent = true;
            out.partial_sum = partial;
            out.n_cut = cut;
            return Ok(out);
        }
        let (lo, hi) = tail_enclosure(law, gamma, rate, cut);
        out.partial_sum = partial;
        out.tail_lower = lo;
        out.tail_bound = hi;
        out.n_cut = cut;
        out.value_interval = (partial + lo, partial + hi);
        out.converged = hi - lo <= tol;
        let decided = level.is_some_and(|l| out.value_interval.0 >= l || out.value_interval.1 < l);
        if out.converged || decided || cut >= max_cut {
            return Ok(out);
        }
        cut *= 2;
    }
}

/// Enclosure of `Σ_{n > m} K̃(n) = ½ Σ K^γ + ½ Σ e^{-rn} K^γ`.
fn tail_enclosure(law: &InterArrivalLaw, gamma: f64, rate: f64, m: usize) -> (f64, f64) {
    let (a_lo, a_hi) = law.pmf_power_tail(m, gamma);
    let (b_lo, b_hi) = law.damped_power_tail(m, gamma, rate);
    (0.5 * (a_lo + b_lo), 0.5 * (a_hi + b_hi))
}
