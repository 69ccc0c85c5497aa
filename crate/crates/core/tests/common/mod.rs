#![allow(dead_code)]

use copolymer::{CopolymerParams, InterArrivalLaw};

/// Independent enumeration of the free-endpoint polymer measure at small
/// `N`: returns `(Z_N, E[exp(c·𝒩_N)])`, summing over every renewal set
/// and every sign assignment in linear space.
pub fn enumerate_water_mgf(
    omega: &[f64],
    params: &CopolymerParams,
    law: &InterArrivalLaw,
    c: f64,
) -> (f64, f64) {
    let n = omega.len();
    let (lambda, h) = (params.lambda(), params.h());
    let mut z = 0.0;
    let mut zc = 0.0;
    for mask in 0usize..(1 << n) {
        let mut gaps = Vec::new();
        let mut base = 1.0;
        let mut prev = 0;
        for t in 1..=n {
            if mask >> (t - 1) & 1 == 1 {
                base *= law.pmf(t - prev) * 0.5;
                gaps.push((prev, t));
                prev = t;
            }
        }
        if prev < n {
            base *= law.tail(n - prev) * 0.5;
            gaps.push((prev, n));
        }
        if base == 0.0 {
            continue;
        }
        for signs in 0usize..(1 << gaps.len()) {
            let mut energy = 0.0;
            let mut water = 0usize;
            for (g, &(s, t)) in gaps.iter().enumerate() {
                if signs >> g & 1 == 1 {
                    energy += omega[s..t].iter().map(|w| w + h).sum::<f64>();
                    water += t - s;
                }
            }
            let w = base * (-2.0 * lambda * energy).exp();
            z += w;
            zc += w * (c * water as f64).exp();
        }
    }
    (z, zc / z)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
        return a == b;
    }
    (a - b).abs() <= tol
}
