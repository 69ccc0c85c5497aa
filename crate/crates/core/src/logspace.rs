//! Log-domain arithmetic and compensated summation.

use std::f64::consts::LN_2;

/// `log(exp(a) + exp(b))` without overflow.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a > b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// `log Σ exp(x_i)`; returns `-∞` for an empty input.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// `log(1 + exp(x))`.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `log((1 + exp(x)) / 2)`: the log-weight of an excursion whose water
/// sign carries the Boltzmann factor `exp(x)`.
#[inline]
pub fn log_half_one_plus_exp(x: f64) -> f64 {
    softplus(x) - LN_2
}

/// Logistic function `1 / (1 + exp(-x))`, stable for both signs of `x`.
#[inline]
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Streaming log-sum-exp accumulator that keeps a running maximum.
#[derive(Debug, Clone, Copy)]
pub struct LogAccumulator {
    max: f64,
    scaled: f64,
}

impl Default for LogAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl LogAccumulator {
    pub fn new() -> Self {
        LogAccumulator {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    #[inline]
    pub fn push(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x <= self.max {
            self.scaled += (x - self.max).exp();
        } else {
            self.scaled = self.scaled * (self.max - x).exp() + 1.0;
            self.max = x;
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}

/// Neumaier compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Two dot products sharing the right-hand side: `(Σ a_i k_i, Σ b_i k_i)`.
///
/// Written with independent accumulators so the loop vectorizes.
#[inline]
pub fn dot2(a: &[f64], b: &[f64], k: &[f64]) -> (f64, f64) {
    debug_assert!(a.len() == k.len() && b.len() == k.len());
    const LANES: usize = 4;
    let mut acc_a = [0.0f64; LANES];
    let mut acc_b = [0.0f64; LANES];
    let chunks = k.len() / LANES;
    for c in 0..chunks {
        let base = c * LANES;
        let ka = &k[base..base + LANES];
        let aa = &a[base..base + LANES];
        let bb = &b[base..base + LANES];
        for i in 0..LANES {
            acc_a[i] += aa[i] * ka[i];
            acc_b[i] += bb[i] * ka[i];
        }
    }
    let mut sa = (acc_a[0] + acc_a[1]) + (acc_a[2] + acc_a[3]);
    let mut sb = (acc_b[0] + acc_b[1]) + (acc_b[2] + acc_b[3]);
    for i in chunks * LANES..k.len() {
        sa += a[i] * k[i];
        sb += b[i] * k[i];
    }
    (sa, sb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_add_exp_large_arguments() {
        let v = log_add_exp(1234.0, 1232.0);
        let expected = 1232.0 + (2f64.exp() + 1.0).ln();
        assert!((v - expected).abs() < 1e-12);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 3.0), 3.0);
    }

    #[test]
    fn accumulator_matches_batch() {
        let xs = [-1000.0, 3.0, 2.5, -4.0, 700.0, 699.0];
        let mut acc = LogAccumulator::new();
        for &x in &xs {
            acc.push(x);
        }
        assert!((acc.value() - log_sum_exp(&xs)).abs() < 1e-12);
        assert_eq!(LogAccumulator::new().value(), f64::NEG_INFINITY);
    }

    #[test]
    fn softplus_branches() {
        for &x in &[-800.0f64, -30.0, -1.0, 0.0, 1.0, 30.0, 800.0] {
            let naive = if x.abs() < 30.0 {
                (1.0 + f64::exp(x)).ln()
            } else if x > 0.0 {
                x
            } else {
                0.0
            };
            assert!((softplus(x) - naive).abs() < 1e-12, "x = {x}");
        }
        assert!((log_half_one_plus_exp(0.0)).abs() < 1e-15);
    }

    #[test]
    fn logistic_is_symmetric() {
        for &x in &[-50.0, -2.0, 0.0, 0.3, 40.0] {
            assert!((logistic(x) + logistic(-x) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn dot2_matches_naive() {
        let a: Vec<f64> = (0..13).map(|i| i as f64 * 0.5).collect();
        let b: Vec<f64> = (0..13).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        let k: Vec<f64> = (0..13).map(|i| (i as f64).sin()).collect();
        let (sa, sb) = dot2(&a, &b, &k);
        let na: f64 = a.iter().zip(&k).map(|(x, y)| x * y).sum();
        let nb: f64 = b.iter().zip(&k).map(|(x, y)| x * y).sum();
        assert!((sa - na).abs() < 1e-12 && (sb - nb).abs() < 1e-12);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..1_000_000 {
            s.add(1e-16);
        }
        assert!((s.value() - (1.0 + 1e-10)).abs() < 1e-15);
    }
}
