//! Special functions needed by the renewal laws.

use std::sync::OnceLock;

use crate::logspace::CompensatedSum;

/// Cut-over point below which Hurwitz sums are accumulated term by term.
const EM_START: u64 = 64;

/// Encloses `Σ_{m ≥ a} m^{-s}` for `s > 1`, `a ≥ 1`.
///
/// Terms below 64 are summed directly; the remainder uses Euler–Maclaurin
/// through the `B_8` correction. For `x^{-s}` the remainder after a
/// truncated Euler–Maclaurin expansion is bounded by the first omitted
/// term, which is returned as the second component.
pub fn hurwitz_zeta(s: f64, a: u64) -> (f64, f64) {
    assert!(s > 1.0, "hurwitz_zeta requires s > 1");
    assert!(a >= 1, "hurwitz_zeta requires a >= 1");
    let b = a.max(EM_START);
    let mut acc = CompensatedSum::new();
    // small terms first
    for m in (a..b).rev() {
        acc.add((m as f64).powf(-s));
    }
    let bf = b as f64;
    let fb = bf.powf(-s);
    // rising factorials (s)_j
    let r1 = s;
    let r3 = r1 * (s + 1.0) * (s + 2.0);
    let r5 = r3 * (s + 3.0) * (s + 4.0);
    let r7 = r5 * (s + 5.0) * (s + 6.0);
    let r9 = r7 * (s + 7.0) * (s + 8.0);
    let b2 = bf * bf;
    let terms = [
        -fb * r7 / (1_209_600.0 * b2 * b2 * b2 * bf),
        fb * r5 / (30_240.0 * b2 * b2 * bf),
        -fb * r3 / (720.0 * b2 * bf),
        fb * r1 / (12.0 * bf),
        fb / 2.0,
        bf.powf(1.0 - s) / (s - 1.0),
    ];
    for t in terms {
        acc.add(t);
    }
    let err = fb * r9 / (47_900_160.0 * b2 * b2 * b2 * b2 * bf);
    let value = acc.value();
    (value, err + 4.0 * f64::EPSILON * value)
}

/// Riemann zeta `ζ(s)` for `s > 1`.
pub fn riemann_zeta(s: f64) -> f64 {
    hurwitz_zeta(s, 1).0
}

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn zeta_integers() -> &'static [f64; 64] {
    static TABLE: OnceLock<[f64; 64]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; 64];
        for (k, v) in t.iter_mut().enumerate().skip(2) {
            *v = riemann_zeta(k as f64);
        }
        t
    })
}

/// `log Γ(1 + x)` for `|x| ≤ 1/2` from its Taylor series at 1.
fn ln_gamma_1p(x: f64) -> f64 {
    debug_assert!(x.abs() <= 0.5);
    let mut acc = -EULER_GAMMA * x;
    let mut p = -x;
    for (k, zk) in zeta_integers().iter().enumerate().skip(2) {
        p *= -x;
        acc += zk * p / k as f64;
    }
    acc
}

/// Generalised exponential integral `E_s(z) = ∫_1^∞ e^{-zu} u^{-s} du`
/// for `s ≥ 1`, `z > 0`, to about 1e-15 relative accuracy.
pub fn expint_e(s: f64, z: f64) -> f64 {
    assert!(s >= 1.0 && z > 0.0, "expint_e requires s >= 1 and z > 0");
    if z >= 1.0 {
        // modified Lentz evaluation of the continued fraction
        let tiny = 1e-300;
        let mut b = z + s;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (s - 1.0 + i as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        return h * (-z).exp();
    }
    // E_{s0} with s0 ∈ (1/2, 3/2] from its power series, then the
    // upward recurrence E_{t+1}(z) = (e^{-z} - z E_t(z)) / t
    let steps = (s - 1.5).ceil().max(0.0);
    let s0 = s - steps;
    let eps = 1.0 - s0;
    let lead = if eps == 0.0 {
        -EULER_GAMMA - z.ln()
    } else {
        // Γ(ε) z^{-ε} - 1/ε = (Γ(1+ε) z^{-ε} - 1) / ε, free of cancellation
        (ln_gamma_1p(eps) - eps * z.ln()).exp_m1() / eps
    };
    let mut series = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -z / k as f64;
        let t = term / (eps + k as f64);
        series += t;
        if t.abs() < 1e-18 * series.abs().max(1e-300) {
            break;
        }
    }
    let mut e = lead - series;
    let ez = (-z).exp();
    let mut t = s0;
    for _ in 0..steps as usize {
        e = (ez - z * e) / t;
        t += 1.0;
    }
    e
}

/// Encloses `Σ_{k ≥ b} e^{-ρk} k^{-s}` for `s > 1`, `ρ ≥ 0`, `b ≥ 1`.
///
/// The summand is completely monotone, so the Euler–Maclaurin remainder
/// after the `B_8` term is bounded by the `B_10` term.
pub fn exp_power_sum(s: f64, rho: f64, b: u64) -> (f64, f64) {
    assert!(rho >= 0.0, "exp_power_sum requires rho >= 0");
    if rho == 0.0 {
        return hurwitz_zeta(s, b);
    }
    assert!(s > 1.0 && b >= 1);
    let start = b.max(EM_START);
    let mut acc = CompensatedSum::new();
    for k in (b..start).rev() {
        let kf = k as f64;
        acc.add((-rho * kf).exp() * kf.powf(-s));
    }
    let bf = start as f64;
    let fb = (-rho * bf).exp() * bf.powf(-s);
    if fb == 0.0 {
        let v = acc.value();
        return (v, 4.0 * f64::EPSILON * v);
    }
    // D_k = Σ_i C(k,i) ρ^{k-i} (s)_i b^{-i}, so that f^{(k)}(b) = (-1)^k f(b) D_k
    let d = |k: u32| -> f64 {
        let mut sum = 0.0;
        let mut binom = 1.0;
        let mut rising = 1.0;
        for i in 0..=k {
            sum += binom * rho.powi((k - i) as i32) * rising * bf.powi(-(i as i32));
            binom *= (k - i) as f64 / (i + 1) as f64;
            rising *= s + i as f64;
        }
        sum
    };
    let integral = bf.powf(1.0 - s) * expint_e(s, rho * bf);
    // B_{2j}/(2j)! for j = 1..=4, then |B_10|/10!
    let coeffs = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30_240.0, -1.0 / 1_209_600.0];
    let mut terms = [0.0; 6];
    for (j, c) in coeffs.iter().enumerate() {
        terms[3 - j] = c * fb * d(2 * j as u32 + 1);
    }
    terms[4] = fb / 2.0;
    terms[5] = integral;
    for t in terms {
        acc.add(t);
    }
    let err = fb * d(9) / 47_900_160.0;
    let value = acc.value();
    (value, err + 1e-14 * integral + 4.0 * f64::EPSILON * value)
}

/// `C(2k, k) 4^{-k}` from its large-`k` asymptotic series; relative error
/// below `1e-18` for `k ≥ 1000`.
pub fn central_binomial_asymptotic(k: u64) -> f64 {
    let x = 1.0 / k as f64;
    let series =
        1.0 - x / 8.0 + x * x / 128.0 + 5.0 * x * x * x / 1024.0 - 21.0 * x * x * x * x / 32768.0;
    series / (std::f64::consts::PI * k as f64).sqrt()
}
