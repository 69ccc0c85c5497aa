//! Exact finite-N identities checked against independent computations.

mod common;

use copolymer::bounds::{annealed_critical_curve, hbar, sigma_series, strategy_a_restricted_log_z};
use copolymer::estimators::{contact_profile, estimate_free_energy, estimate_mu, MonteCarlo};
use copolymer::model::{sample_disorder, DisorderLaw, InterArrivalLaw};
use copolymer::partition::{
    backward_log_partitions, brute_force_log_partition, build_annealed_table,
    build_partition_table, window_log_partition,
};
use copolymer::CopolymerParams;

use common::{close, enumerate_water_mgf};

#[test]
fn tilting_identity_against_enumeration() {
    let law = InterArrivalLaw::zeta(0.5).unwrap();
    for i in 0..6 {
        let omega = sample_disorder(&DisorderLaw::Gaussian, 10, 21, i)
            .unwrap()
            .omega;
        let (lambda, h0, h1) = (0.3 + 0.2 * i as f64, 0.1, 0.45);
        let p0 = CopolymerParams::new(lambda, h0).unwrap();
        let p1 = CopolymerParams::new(lambda, h1).unwrap();
        let lhs = build_partition_table(&omega, &p0, &law).unwrap().log_z_free;
        let (_, mgf) = enumerate_water_mgf(&omega, &p1, &law, 2.0 * lambda * (h1 - h0));
        let rhs = build_partition_table(&omega, &p1, &law).unwrap().log_z_free + mgf.ln();
        assert!(
            (lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0),
            "{lhs} vs {rhs}"
        );
    }
}

#[test]
fn derivative_identity_with_srw_law() {
    let law = InterArrivalLaw::srw();
    let step = 1e-5;
    for i in 0..5 {
        let omega = sample_disorder(&DisorderLaw::Rademacher, 200, 4, i)
            .unwrap()
            .omega;
        let p = CopolymerParams::new(0.8, 0.3).unwrap();
        let lz = |h: f64| {
            build_partition_table(&omega, &p.with_h(h).unwrap(), &law)
                .unwrap()
                .log_z_free
        };
        let fd = (lz(0.3 + step) - lz(0.3 - step)) / (2.0 * step);
        let t = build_partition_table(&omega, &p, &law).unwrap();
        let prof = contact_profile(&omega, &p, &law, &t).unwrap();
        assert!((fd + 2.0 * 0.8 * prof.expected_nn).abs() < 1e-4);
    }
}

#[test]
fn window_and_backward_partitions_factorize() {
    // back_0 is log Z, and windows starting at 0 are the forward table
    let law = InterArrivalLaw::zeta(0.7).unwrap();
    let omega = sample_disorder(&DisorderLaw::Gaussian, 60, 2, 0)
        .unwrap()
        .omega;
    let p = CopolymerParams::new(1.1, 0.2).unwrap();
    let t = build_partition_table(&omega, &p, &law).unwrap();
    let back = backward_log_partitions(&omega, &p, &law);
    assert!((back[0] - t.log_z_free).abs() < 1e-10);
    assert_eq!(back[60], 0.0);
    for b in [1, 17, 59, 60] {
        let w = window_log_partition(&omega, &p, &law, 0, b, false).unwrap();
        assert!((w - t.log_zc[b]).abs() < 1e-10);
    }
    // a shifted window equals a table built on the shifted charges
    let shifted = build_partition_table(&omega[10..40], &p, &law).unwrap();
    let w = window_log_partition(&omega, &p, &law, 10, 40, true).unwrap();
    assert!((w - shifted.log_z_free).abs() < 1e-12);
}

#[test]
fn brute_force_agrees_with_dp_for_uniform_disorder() {
    let law = InterArrivalLaw::zeta(0.3).unwrap();
    let uniform: DisorderLaw = "uniform".parse().unwrap();
    let omega = sample_disorder(&uniform, 14, 9, 0).unwrap().omega;
    let p = CopolymerParams::new(2.5, 1.7).unwrap();
    let t = build_partition_table(&omega, &p, &law).unwrap();
    assert!(close(
        t.log_zc[14],
        brute_force_log_partition(&omega, &p, &law, true).unwrap(),
        1e-10
    ));
    assert!(close(
        t.log_z_free,
        brute_force_log_partition(&omega, &p, &law, false).unwrap(),
        1e-10
    ));
}

#[test]
fn annealed_bound_holds_on_a_grid() {
    let law = InterArrivalLaw::zeta(0.5).unwrap();
    for disorder in [DisorderLaw::Gaussian, DisorderLaw::Rademacher] {
        let mc = MonteCarlo::new(&law, disorder, 64, 8);
        for (l, h) in [(0.5, 0.0), (1.0, 0.5), (1.0, 1.0), (2.0, 0.3)] {
            let p = CopolymerParams::new(l, h).unwrap();
            let q = estimate_free_energy(&mc, &p, 300, false).unwrap();
            let ann = build_annealed_table(&p, &disorder, &law, 300)
                .unwrap()
                .free_energy();
            assert!(
                q.mean <= ann + 3.0 * q.stderr,
                "{disorder} ({l},{h}): {} > {ann}",
                q.mean
            );
        }
    }
}

#[test]
fn rare_stretch_restriction_never_exceeds_log_z() {
    let law = InterArrivalLaw::zeta(0.5).unwrap();
    for i in 0..10 {
        let omega = sample_disorder(&DisorderLaw::Gaussian, 400, 13, i)
            .unwrap()
            .omega;
        let p = CopolymerParams::new(1.0, 0.2).unwrap();
        let full = build_partition_table(&omega, &p, &law).unwrap().log_z_free;
        for (len, m) in [(10, 0.3), (20, 0.5), (40, 0.2)] {
            let restricted = strategy_a_restricted_log_z(&omega, &p, &law, len, m).unwrap();
            assert!(restricted <= full + 1e-12);
        }
    }
}

#[test]
fn mu_is_below_free_energy_when_localized() {
    let law = InterArrivalLaw::zeta(0.5).unwrap();
    let mc = MonteCarlo::new(&law, DisorderLaw::Gaussian, 64, 5);
    let p = CopolymerParams::new(1.0, 0.0).unwrap();
    let n = 400;
    let f = estimate_free_energy(&mc, &p, n, false).unwrap();
    let mu = &estimate_mu(&mc, &p, &[n]).unwrap()[0];
    assert!(mu.estimate.mean > 0.0);
    assert!(mu.estimate.mean <= f.mean + 3.0 * f.stderr.hypot(mu.estimate.stderr));
}

#[test]
fn certificate_is_sound_above_hbar() {
    let law = InterArrivalLaw::zeta(0.5).unwrap();
    let d = DisorderLaw::Rademacher;
    let r = hbar(&law, &d, 0.5, 1e-4, 1e-8).unwrap();
    assert!(r.certified);
    let s = sigma_series(&law, &d, r.gamma_star, 0.5, r.hbar + 1e-4, 1e-9).unwrap();
    assert!(s.value_interval.1 < 1.0);
    assert!(r.hbar < annealed_critical_curve(&d, 0.5));
}
