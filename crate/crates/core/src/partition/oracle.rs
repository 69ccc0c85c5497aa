use crate::error::{Error, Result};
use crate::logspace::{log_half_one_plus_exp, LogAccumulator};
use crate::model::{CopolymerParams, InterArrivalLaw};

/// Largest length accepted by [`brute_force_log_partition`].
pub const BRUTE_FORCE_MAX_N: usize = 22;

/// Exhaustive sum over renewal configurations `0 = t_0 < … < t_k`.
///
/// Each closed gap contributes `K(gap) (1 + e^{-2λ Σ_gap (ω+h)}) / 2`; in
/// the free case the open final gap contributes
/// `P(τ_1 > N - t_k) (1 + e^{-2λ Σ}) / 2` (or 1 if `t_k = N`). Costs
/// `O(N 2^N)`; refuses `N > 22`.
pub fn brute_force_log_partition(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    constrained: bool,
) -> Result<f64> {
    let n = omega.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::invalid(format!(
            "brute force enumeration refused for N = {n} > {BRUTE_FORCE_MAX_N}"
        )));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let lambda = params.lambda();
    let h = params.h();
    let gap_charge = |s: usize, t: usize| omega[s..t].iter().map(|w| w + h).sum::<f64>();
    let mut acc = LogAccumulator::new();
    // bit i of `mask` marks a renewal point at i + 1, for i + 1 in 1..N;
    // in the free case bit N-1 marks N itself.
    let bits = if constrained { n - 1 } else { n };
    for mask in 0u64..(1u64 << bits) {
        let mut points: Vec<usize> = (0..bits)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        if constrained {
            points.push(n);
        }
        let mut logw = 0.0;
        let mut prev = 0;
        for &t in &points {
            logw +=
                law.log_pmf(t - prev) + log_half_one_plus_exp(-2.0 * lambda * gap_charge(prev, t));
            prev = t;
        }
        if prev < n {
            logw +=
                law.log_tail(n - prev) + log_half_one_plus_exp(-2.0 * lambda * gap_charge(prev, n));
        }
        acc.push(logw);
    }
    Ok(acc.value())
}

/// Largest length accepted by [`brute_force_marginals`].
pub const MARGINALS_MAX_N: usize = 14;

/// Exact marginals of the free-endpoint measure by enumeration of every
/// renewal set and sign assignment (`3^N` terms).
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMarginals {
    /// `prob_water[n-1] = P(Δ_n = 1)`.
    pub prob_water: Vec<f64>,
    /// `prob_contact[n-1] = P(n ∈ τ)`.
    pub prob_contact: Vec<f64>,
    /// `contact_pair[i-1][j-1] = P(i ∈ τ, j ∈ τ)`.
    pub contact_pair: Vec<Vec<f64>>,
    /// Probability of each renewal set, indexed by the bitmask whose bit
    /// `n-1` marks `n ∈ τ`.
    pub renewal_set: Vec<f64>,
    /// `E[𝒩_N]`.
    pub expected_nn: f64,
}

pub fn brute_force_marginals(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
) -> Result<ExactMarginals> {
    let n = omega.len();
    if n == 0 || n > MARGINALS_MAX_N {
        return Err(Error::invalid(format!(
            "exact marginals need 1 <= N <= {MARGINALS_MAX_N}, got {n}"
        )));
    }
    let lambda = params.lambda();
    let h = params.h();
    let mut water = vec![0.0; n];
    let mut contact = vec![0.0; n];
    let mut pair = vec![vec![0.0; n]; n];
    let mut sets = vec![0.0; 1 << n];
    let mut nn = 0.0;
    let mut total = 0.0;
    for (mask, set) in sets.iter_mut().enumerate() {
        let points: Vec<usize> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        let mut gaps = Vec::with_capacity(points.len() + 1);
        let mut prev = 0;
        let mut base = 1.0;
        for &t in &points {
            base *= law.pmf(t - prev) / 2.0;
            gaps.push((prev, t));
            prev = t;
        }
        if prev < n {
            base *= law.tail(n - prev) / 2.0;
            gaps.push((prev, n));
        }
        if base == 0.0 {
            continue;
        }
        let boltzmann: Vec<f64> = gaps
            .iter()
            .map(|&(s, t)| (-2.0 * lambda * omega[s..t].iter().map(|w| w + h).sum::<f64>()).exp())
            .collect();
        for signs in 0usize..(1 << gaps.len()) {
            let mut w = base;
            let mut in_water = 0usize;
            for (g, &(s, t)) in gaps.iter().enumerate() {
                if signs >> g & 1 == 1 {
                    w *= boltzmann[g];
                    in_water += t - s;
                }
            }
            for (g, &(s, t)) in gaps.iter().enumerate() {
                if signs >> g & 1 == 1 {
                    water[s..t].iter_mut().for_each(|x| *x += w);
                }
            }
            total += w;
            nn += w * in_water as f64;
            *set += w;
            for (a, &i) in points.iter().enumerate() {
                contact[i - 1] += w;
                for &j in &points[a + 1..] {
                    pair[i - 1][j - 1] += w;
                    pair[j - 1][i - 1] += w;
                }
            }
        }
    }
    for (i, row) in pair.iter_mut().enumerate() {
        row[i] = contact[i];
        for x in row.iter_mut() {
            *x /= total;
        }
    }
    let norm = |v: Vec<f64>| v.into_iter().map(|x| x / total).collect::<Vec<_>>();
    Ok(ExactMarginals {
        prob_water: norm(water),
        prob_contact: norm(contact),
        contact_pair: pair,
        renewal_set: norm(sets),
        expected_nn: nn / total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refuses_large_n() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let p = CopolymerParams::new(1.0, 0.0).unwrap();
        assert!(brute_force_log_partition(&[0.0; 23], &p, &law, true).is_err());
    }

    #[test]
    fn homogeneous_constrained_is_renewal_mass() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let p = CopolymerParams::new(0.0, 0.0).unwrap();
        let mut u = [0.0; 9];
        u[0] = 1.0;
        for k in 1..=8 {
            u[k] = (1..=k).map(|m| law.pmf(m) * u[k - m]).sum();
        }
        let v = brute_force_log_partition(&[0.3; 8], &p, &law, true).unwrap();
        assert!((v - u[8].ln()).abs() < 1e-13);
        assert!(
            brute_force_log_partition(&[0.3; 8], &p, &law, false)
                .unwrap()
                .abs()
                < 1e-13
        );
    }

    #[test]
    fn two_term_sum_at_one_monomer() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let p = CopolymerParams::new(2.0, 0.1).unwrap();
        let v = brute_force_log_partition(&[-0.4], &p, &law, false).unwrap();
        let expected = ((1.0 + (-4.0f64 * (-0.3)).exp()) / 2.0).ln();
        assert!((v - expected).abs() < 1e-14);
    }

    #[test]
    fn marginals_sum_rules() {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let p = CopolymerParams::new(0.8, 0.1).unwrap();
        let omega = [0.3, -1.2, 0.5, 0.9, -0.1, 0.0, 1.4];
        let m = brute_force_marginals(&omega, &p, &law).unwrap();
        assert!((m.renewal_set.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((m.prob_water.iter().sum::<f64>() - m.expected_nn).abs() < 1e-12);
        // the renewal-set law reproduces the contact marginals
        for n in 0..7 {
            let from_sets: f64 = (0..1usize << 7)
                .filter(|mask| mask >> n & 1 == 1)
                .map(|mask| m.renewal_set[mask])
                .sum();
            assert!((from_sets - m.prob_contact[n]).abs() < 1e-12);
        }
        // zero coupling: every site is in water with probability one half
        let z =
            brute_force_marginals(&omega, &CopolymerParams::new(0.0, 0.0).unwrap(), &law).unwrap();
        assert!(z.prob_water.iter().all(|w| (w - 0.5).abs() < 1e-12));
    }
}
