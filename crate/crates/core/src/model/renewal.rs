use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use super::special::{central_binomial_asymptotic, exp_power_sum, hurwitz_zeta, riemann_zeta};
use crate::error::{Error, Result};
use crate::logspace::CompensatedSum;

/// Default number of cached pmf/tail entries; covers the O(N²) budget cap.
pub const DEFAULT_CACHE_LEN: usize = 32_770;
const MIN_CACHE_LEN: usize = 4_096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenewalKind {
    /// `K(n) = n^{-(1+α)} / ζ(1+α)`.
    ZetaTail,
    /// First return to zero of the simple symmetric random walk (α = 1/2,
    /// supported on even integers).
    SrwReturn,
}

impl RenewalKind {
    pub fn name(&self) -> &'static str {
        match self {
            RenewalKind::ZetaTail => "zeta",
            RenewalKind::SrwReturn => "srw",
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            RenewalKind::ZetaTail => 1,
            RenewalKind::SrwReturn => 2,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "zeta" | "zeta_tail" => Ok(RenewalKind::ZetaTail),
            "srw" | "srw_return" => Ok(RenewalKind::SrwReturn),
            other => Err(Error::Config(format!(
                "unknown k-family `{other}` (expected zeta or srw)"
            ))),
        }
    }
}

#[derive(Debug)]
struct Tables {
    pmf: Vec<f64>,
    log_pmf: Vec<f64>,
    /// `pmf_rev[j] = K(cache_len - j)`.
    pmf_rev: Vec<f64>,
    tail: Vec<f64>,
    log_tail: Vec<f64>,
}

/// Inter-arrival law `K(n) = P(τ_1 = n)` of a persistent renewal with
/// polynomial tail `K(n) ~ c_K n^{-(1+α)}`.
///
/// Probabilities and tails are tabulated once at construction; cloning is
/// cheap and the law is shareable across threads.
#[derive(Debug, Clone)]
pub struct InterArrivalLaw {
    kind: RenewalKind,
    alpha: f64,
    /// `ζ(1+α)` for the zeta family.
    zeta_norm: f64,
    cache_len: usize,
    tables: Arc<Tables>,
}

impl PartialEq for InterArrivalLaw {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.alpha == other.alpha
    }
}

impl fmt::Display for InterArrivalLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RenewalKind::ZetaTail => write!(f, "zeta(alpha={})", self.alpha),
            RenewalKind::SrwReturn => f.write_str("srw"),
        }
    }
}

impl InterArrivalLaw {
    pub fn zeta(alpha: f64) -> Result<Self> {
        Self::zeta_with_cache(alpha, DEFAULT_CACHE_LEN)
    }

    pub fn zeta_with_cache(alpha: f64, cache_len: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        let cache_len = cache_len.max(MIN_CACHE_LEN);
        let zeta_norm = riemann_zeta(1.0 + alpha);
        let log_norm = zeta_norm.ln();
        let mut pmf = vec![0.0; cache_len + 1];
        let mut log_pmf = vec![f64::NEG_INFINITY; cache_len + 1];
        for n in 1..=cache_len {
            let lp = -(1.0 + alpha) * (n as f64).ln() - log_norm;
            log_pmf[n] = lp;
            pmf[n] = lp.exp();
        }
        let last_tail = hurwitz_zeta(1.0 + alpha, cache_len as u64 + 1).0 / zeta_norm;
        let mut tail = vec![0.0; cache_len + 1];
        let mut acc = CompensatedSum::new();
        acc.add(last_tail);
        tail[cache_len] = last_tail;
        for n in (1..=cache_len).rev() {
            acc.add(pmf[n]);
            tail[n - 1] = acc.value();
        }
        tail[0] = 1.0;
        Ok(Self::assemble(
            RenewalKind::ZetaTail,
            alpha,
            zeta_norm,
            cache_len,
            pmf,
            log_pmf,
            tail,
        ))
    }

    pub fn srw() -> Self {
        Self::srw_with_cache(DEFAULT_CACHE_LEN)
    }

    pub fn srw_with_cache(cache_len: usize) -> Self {
        let cache_len = cache_len.max(MIN_CACHE_LEN);
        let mut pmf = vec![0.0; cache_len + 1];
        let mut log_pmf = vec![f64::NEG_INFINITY; cache_len + 1];
        let mut tail = vec![0.0; cache_len + 1];
        // u_k = C(2k,k) 4^{-k} = P(τ_1 > 2k)
        let mut u = 1.0f64;
        tail[0] = 1.0;
        if cache_len >= 1 {
            tail[1] = 1.0;
        }
        let mut k = 1usize;
        while 2 * k <= cache_len {
            let n = 2 * k;
            // K(2k) = u_k / (2k - 1) with u_k = u_{k-1} (2k-1)/(2k)
            u *= (n - 1) as f64 / n as f64;
            let kp = u / (n - 1) as f64;
            pmf[n] = kp;
            log_pmf[n] = kp.ln();
            tail[n] = u;
            if n < cache_len {
                tail[n + 1] = u;
            }
            k += 1;
        }
        Self::assemble(
            RenewalKind::SrwReturn,
            0.5,
            f64::NAN,
            cache_len,
            pmf,
            log_pmf,
            tail,
        )
    }

    fn assemble(
        kind: RenewalKind,
        alpha: f64,
        zeta_norm: f64,
        cache_len: usize,
        pmf: Vec<f64>,
        log_pmf: Vec<f64>,
        tail: Vec<f64>,
    ) -> Self {
        let pmf_rev: Vec<f64> = pmf.iter().rev().copied().collect();
        let log_tail = tail.iter().map(|t| t.ln()).collect();
        InterArrivalLaw {
            kind,
            alpha,
            zeta_norm,
            cache_len,
            tables: Arc::new(Tables {
                pmf,
                log_pmf,
                pmf_rev,
                tail,
                log_tail,
            }),
        }
    }

    /// Builds a law from its family name and tail exponent; `alpha` is
    /// ignored for the random-walk family.
    pub fn from_kind(kind: RenewalKind, alpha: f64) -> Result<Self> {
        match kind {
            RenewalKind::ZetaTail => Self::zeta(alpha),
            RenewalKind::SrwReturn => Ok(Self::srw()),
        }
    }

    pub fn kind(&self) -> RenewalKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Lattice period of the support: 1 for the zeta family, 2 for the
    /// random walk.
    pub fn period(&self) -> usize {
        match self.kind {
            RenewalKind::ZetaTail => 1,
            RenewalKind::SrwReturn => 2,
        }
    }

    /// `c_K` in `K(n) ~ c_K n^{-(1+α)}` (along the support).
    pub fn tail_constant(&self) -> f64 {
        match self.kind {
            RenewalKind::ZetaTail => 1.0 / self.zeta_norm,
            RenewalKind::SrwReturn => (2.0 / std::f64::consts::PI).sqrt(),
        }
    }

    pub fn cache_len(&self) -> usize {
        self.cache_len
    }

    /// Errors unless a polymer of length `n` can end on the interface.
    pub fn check_length(&self, n: usize) -> Result<()> {
        if !n.is_multiple_of(self.period()) {
            return Err(Error::invalid(format!(
                "length {n} is incompatible with the period-{} law {self}",
                self.period()
            )));
        }
        Ok(())
    }

    /// Smallest multiple of the period that is `>= n`.
    pub fn round_up_to_period(&self, n: usize) -> usize {
        let p = self.period();
        n.div_ceil(p) * p
    }

    pub fn pmf(&self, n: usize) -> f64 {
        if n <= self.cache_len {
            return self.tables.pmf[n];
        }
        match self.kind {
            RenewalKind::ZetaTail => (n as f64).powf(-(1.0 + self.alpha)) / self.zeta_norm,
            RenewalKind::SrwReturn => {
                if n % 2 == 1 {
                    0.0
                } else {
                    central_binomial_asymptotic((n / 2) as u64) / (n - 1) as f64
                }
            }
        }
    }

    pub fn log_pmf(&self, n: usize) -> f64 {
        if n <= self.cache_len {
            return self.tables.log_pmf[n];
        }
        match self.kind {
            RenewalKind::ZetaTail => -(1.0 + self.alpha) * (n as f64).ln() - self.zeta_norm.ln(),
            RenewalKind::SrwReturn => self.pmf(n).ln(),
        }
    }

    /// `P(τ_1 > n)`, from an analytic remainder rather than `1 - Σ K`.
    pub fn tail(&self, n: usize) -> f64 {
        if n <= self.cache_len {
            return self.tables.tail[n];
        }
        match self.kind {
            RenewalKind::ZetaTail => {
                hurwitz_zeta(1.0 + self.alpha, n as u64 + 1).0 / self.zeta_norm
            }
            RenewalKind::SrwReturn => central_binomial_asymptotic((n / 2) as u64),
        }
    }

    pub fn log_tail(&self, n: usize) -> f64 {
        if n <= self.cache_len {
            return self.tables.log_tail[n];
        }
        self.tail(n).ln()
    }

    /// Reversed pmf window of length `len + 1`: element `j` is `K(len - j)`.
    pub(crate) fn pmf_reversed(&self, len: usize) -> Cow<'_, [f64]> {
        if len <= self.cache_len {
            let start = self.cache_len - len;
            Cow::Borrowed(&self.tables.pmf_rev[start..])
        } else {
            Cow::Owned((0..=len).map(|j| self.pmf(len - j)).collect())
        }
    }

    /// `sup_{n > m} K(n)`.
    pub fn sup_pmf_beyond(&self, m: usize) -> f64 {
        self.pmf(m + 1).max(self.pmf(m + 2))
    }

    /// Rigorous enclosure `[lo, hi]` of `Σ_{n > m} K(n)^γ` for `γ ∈ (0, 1]`.
    ///
    /// Returns `hi = ∞` when the series diverges (`γ(1+α) ≤ 1`).
    pub fn pmf_power_tail(&self, m: usize, gamma: f64) -> (f64, f64) {
        if gamma == 1.0 {
            let t = self.tail(m);
            return (t, t);
        }
        let p = gamma * (1.0 + self.alpha);
        if p <= 1.0 {
            return (0.0, f64::INFINITY);
        }
        match self.kind {
            RenewalKind::ZetaTail => {
                let (h, err) = hurwitz_zeta(p, m as u64 + 1);
                let c = self.zeta_norm.powf(-gamma);
                (c * (h - err).max(0.0), c * (h + err))
            }
            RenewalKind::SrwReturn => {
                let k0 = (m / 2 + 1) as u64;
                let (c_lo, c_hi) = self.srw_envelope(k0);
                let (h, err) = hurwitz_zeta(1.5 * gamma, k0);
                (
                    c_lo.powf(gamma) * (h - err).max(0.0),
                    c_hi.powf(gamma) * (h + err),
                )
            }
        }
    }

    /// Enclosure of `Σ_{n > m} e^{-rate·n} K(n)^γ` for `rate ≥ 0` and
    /// `γ(1+α) > 1`.
    pub fn damped_power_tail(&self, m: usize, gamma: f64, rate: f64) -> (f64, f64) {
        if rate == 0.0 {
            return self.pmf_power_tail(m, gamma);
        }
        let p = gamma * (1.0 + self.alpha);
        if p <= 1.0 {
            return (0.0, f64::INFINITY);
        }
        match self.kind {
            RenewalKind::ZetaTail => {
                let (v, err) = exp_power_sum(p, rate, m as u64 + 1);
                let c = self.zeta_norm.powf(-gamma);
                (c * (v - err).max(0.0), c * (v + err))
            }
            RenewalKind::SrwReturn => {
                let k0 = (m / 2 + 1) as u64;
                let (c_lo, c_hi) = self.srw_envelope(k0);
                let (v, err) = exp_power_sum(1.5 * gamma, 2.0 * rate, k0);
                (
                    c_lo.powf(gamma) * (v - err).max(0.0),
                    c_hi.powf(gamma) * (v + err),
                )
            }
        }
    }

    /// Constants `c_lo ≤ K(2k) k^{3/2} ≤ c_hi` valid for all `k ≥ k0`.
    ///
    /// `K(2k) = [u_k √(πk)] [k/(2k-1)] k^{-3/2} / √π`; the first factor
    /// increases to 1 and the second decreases to 1/2.
    fn srw_envelope(&self, k0: u64) -> (f64, f64) {
        let u0 = if (k0 as usize) * 2 <= self.cache_len {
            self.tables.tail[2 * k0 as usize]
        } else {
            central_binomial_asymptotic(k0)
        };
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let k0f = k0 as f64;
        let c_lo = u0 * (std::f64::consts::PI * k0f).sqrt() * 0.5 / sqrt_pi;
        let c_hi = k0f / (2.0 * k0f - 1.0) / sqrt_pi;
        (c_lo, c_hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_pmf_values() {
        let z = InterArrivalLaw::zeta(0.5).unwrap();
        // 1/ζ(3/2) = 0.382793383999426562...
        assert!((z.pmf(1) - 0.382_793_383_999_426_6).abs() < 1e-12);
        assert!((z.tail(1) - 0.617_206_616_000_573_5).abs() < 1e-12);
        let s = InterArrivalLaw::srw();
        assert_eq!(s.pmf(2), 0.5);
        assert_eq!(s.pmf(3), 0.0);
        assert_eq!(s.pmf(4), 0.125);
        assert_eq!(s.tail(2), 0.5);
        assert_eq!(s.tail(0), 1.0);
        assert_eq!(z.tail(0), 1.0);
    }

    #[test]
    fn mass_plus_tail_is_one_to_a_million() {
        for law in [
            InterArrivalLaw::zeta(0.5).unwrap(),
            InterArrivalLaw::zeta(0.3).unwrap(),
            InterArrivalLaw::zeta(1.7).unwrap(),
            InterArrivalLaw::srw(),
        ] {
            let n = 1_000_000;
            let mut acc = CompensatedSum::new();
            for m in 1..=n {
                acc.add(law.pmf(m));
            }
            let total = acc.value() + law.tail(n);
            assert!((total - 1.0).abs() < 1e-12, "{law}: {total}");
        }
    }

    #[test]
    fn cached_and_analytic_tails_agree_at_the_seam() {
        for law in [
            InterArrivalLaw::zeta_with_cache(0.5, 5000).unwrap(),
            InterArrivalLaw::srw_with_cache(5000),
        ] {
            let c = law.cache_len();
            let direct = law.tail(c + 1) + law.pmf(c + 1);
            assert!((direct - law.tail(c)).abs() < 1e-15 * 10.0, "{law}");
        }
    }

    #[test]
    fn tail_constant_asymptotics() {
        for law in [InterArrivalLaw::zeta(0.5).unwrap(), InterArrivalLaw::srw()] {
            let a = law.alpha();
            for n in [10_000usize, 20_000, 100_000, 1_000_000] {
                let ratio = law.pmf(n) * (n as f64).powf(1.0 + a) / law.tail_constant();
                assert!((ratio - 1.0).abs() < 0.01, "{law} n={n}: {ratio}");
            }
        }
        let z = InterArrivalLaw::zeta(0.8).unwrap();
        let exact = z.pmf(7) * 7f64.powf(1.8);
        assert!((exact - z.tail_constant()).abs() < 1e-15);
    }

    #[test]
    fn power_tail_enclosure_brackets_direct_sum() {
        for law in [InterArrivalLaw::zeta(0.5).unwrap(), InterArrivalLaw::srw()] {
            for &gamma in &[0.8, 0.95, 1.0] {
                let m = 100;
                let upto = 2_000_000;
                let mut acc = CompensatedSum::new();
                for n in (m + 1..=upto).rev() {
                    acc.add(law.pmf(n).powf(gamma));
                }
                let (lo_far, hi_far) = law.pmf_power_tail(upto, gamma);
                let (lo, hi) = law.pmf_power_tail(m, gamma);
                assert!(lo <= acc.value() + hi_far + 1e-14, "{law} γ={gamma}");
                assert!(hi >= acc.value() + lo_far - 1e-14, "{law} γ={gamma}");
            }
        }
        let z = InterArrivalLaw::zeta(0.5).unwrap();
        assert_eq!(z.pmf_power_tail(10, 0.6).1, f64::INFINITY);
    }

    #[test]
    fn damped_tail_enclosure_brackets_direct_sum() {
        for law in [
            InterArrivalLaw::zeta(0.5).unwrap(),
            InterArrivalLaw::zeta(1.3).unwrap(),
            InterArrivalLaw::srw(),
        ] {
            for &(gamma, rate) in &[(0.8, 1e-3), (0.95, 0.05), (1.0, 2e-4)] {
                let m = 300;
                let upto = 3_000_000;
                let mut acc = CompensatedSum::new();
                for n in (m + 1..=upto).rev() {
                    acc.add((-rate * n as f64).exp() * law.pmf(n).powf(gamma));
                }
                let (_, hi_far) = law.damped_power_tail(upto, gamma, rate);
                let (lo, hi) = law.damped_power_tail(m, gamma, rate);
                assert!(
                    lo <= acc.value() + hi_far + 1e-15,
                    "{law} γ={gamma} r={rate}"
                );
                assert!(hi >= acc.value() - 1e-15, "{law} γ={gamma} r={rate}");
                if law.kind() == RenewalKind::ZetaTail {
                    assert!(hi - lo < 1e-13);
                }
            }
        }
    }

    #[test]
    fn reversed_window_indexing() {
        let z = InterArrivalLaw::zeta(0.5).unwrap();
        let w = z.pmf_reversed(10);
        assert_eq!(w.len(), 11);
        assert_eq!(w[10], 0.0);
        assert_eq!(w[9], z.pmf(1));
        assert_eq!(w[0], z.pmf(10));
        let big = z.pmf_reversed(z.cache_len() + 5);
        assert_eq!(big[0], z.pmf(z.cache_len() + 5));
    }

    #[test]
    fn rejects_bad_alpha_and_odd_lengths() {
        assert!(InterArrivalLaw::zeta(0.0).is_err());
        assert!(InterArrivalLaw::srw().check_length(11).is_err());
        assert!(InterArrivalLaw::srw().check_length(12).is_ok());
        assert_eq!(InterArrivalLaw::srw().round_up_to_period(2041), 2042);
    }
}
