//! Property-based checks of the structural invariants.

mod common;

use proptest::prelude::*;

use copolymer::bounds::{sigma_series, strategy_a_restricted_log_z};
use copolymer::estimators::{estimate_free_energy, pairwise_sum, MonteCarlo};
use copolymer::experiments::{Experiment, ExperimentConfig};
use copolymer::model::{stream_rng, DisorderLaw, InterArrivalLaw, RenewalKind, StreamDomain};
use copolymer::partition::{brute_force_log_partition, build_partition_table};
use copolymer::paths::PathSampler;
use copolymer::CopolymerParams;

use common::close;

fn law_strategy() -> impl Strategy<Value = InterArrivalLaw> {
    prop_oneof![
        (0.05f64..0.95).prop_map(|a| InterArrivalLaw::zeta(a).unwrap()),
        Just(InterArrivalLaw::srw()),
    ]
}

/// Drops the last charge when the law needs even lengths.
fn fit_period(mut omega: Vec<f64>, law: &InterArrivalLaw) -> Option<Vec<f64>> {
    omega.truncate(omega.len() / law.period() * law.period());
    (!omega.is_empty()).then_some(omega)
}

fn charges(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_enumeration(omega in charges(12), law in law_strategy(), lambda in 0.0f64..3.0, h in 0.0f64..2.0) {
        let Some(omega) = fit_period(omega, &law) else { return Ok(()) };
        let p = CopolymerParams::new(lambda, h).unwrap();
        let t = build_partition_table(&omega, &p, &law).unwrap();
        let n = omega.len();
        prop_assert!(close(t.log_zc[n], brute_force_log_partition(&omega, &p, &law, true).unwrap(), 1e-10));
        prop_assert!(close(t.log_z_free, brute_force_log_partition(&omega, &p, &law, false).unwrap(), 1e-10));
    }

    #[test]
    fn constrained_below_free(omega in charges(300), law in law_strategy(), lambda in 0.0f64..3.0, h in 0.0f64..2.0) {
        let Some(omega) = fit_period(omega, &law) else { return Ok(()) };
        let p = CopolymerParams::new(lambda, h).unwrap();
        let t = build_partition_table(&omega, &p, &law).unwrap();
        prop_assert!(t.log_zc[omega.len()] <= t.log_z_free + 1e-12);
    }

    #[test]
    fn log_z_is_convex_and_nonincreasing_in_h(omega in charges(120), lambda in 0.01f64..2.0, h in 0.05f64..1.5) {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let lz = |x: f64| build_partition_table(&omega, &CopolymerParams::new(lambda, x).unwrap(), &law).unwrap().log_z_free;
        let d = 0.05;
        let (a, b, c) = (lz(h - d), lz(h), lz(h + d));
        prop_assert!(a - 2.0 * b + c >= -1e-8);
        prop_assert!(c <= b + 1e-12 && b <= a + 1e-12);
    }

    #[test]
    fn rare_stretch_restriction_is_a_lower_bound(
        blocks in 1usize..20,
        len in 1usize..12,
        m in 0.0f64..1.0,
        lambda in 0.0f64..2.0,
        h in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let omega = copolymer::model::sample_disorder(&DisorderLaw::Gaussian, blocks * len, seed, 0).unwrap().omega;
        let p = CopolymerParams::new(lambda, h).unwrap();
        let full = build_partition_table(&omega, &p, &law).unwrap().log_z_free;
        prop_assert!(strategy_a_restricted_log_z(&omega, &p, &law, len, m).unwrap() <= full + 1e-12);
    }

    #[test]
    fn sigma_decreases_in_h(gamma in 0.7f64..1.0, lambda in 0.1f64..2.0, h in 0.0f64..1.0) {
        let law = InterArrivalLaw::zeta(0.5).unwrap();
        let d = DisorderLaw::Gaussian;
        let a = sigma_series(&law, &d, gamma, lambda, h, 1e-6).unwrap();
        let b = sigma_series(&law, &d, gamma, lambda, h + 0.05, 1e-6).unwrap();
        prop_assume!(!a.divergent && !b.divergent);
        prop_assert!(b.value_interval.1 < a.value_interval.0);
    }

    #[test]
    fn sampled_gaps_lie_in_the_support(omega in charges(80), lambda in 0.0f64..3.0, h in 0.0f64..1.0, seed in any::<u64>()) {
        let law = InterArrivalLaw::srw();
        let Some(omega) = fit_period(omega, &law) else { return Ok(()) };
        let p = CopolymerParams::new(lambda, h).unwrap();
        let t = build_partition_table(&omega, &p, &law).unwrap();
        let sampler = PathSampler::new(&omega, &p, &law, &t).unwrap();
        let mut rng = stream_rng(seed, StreamDomain::Paths, 0);
        for _ in 0..20 {
            let path = sampler.sample(&mut rng);
            let mut prev = 0;
            for &q in &path.renewal_points {
                prop_assert!(q > prev && (q - prev) % 2 == 0);
                prev = q;
            }
            prop_assert_eq!(prev, path.last_closed);
            prop_assert_eq!(path.excursion_signs.len(), path.excursions().count());
        }
    }

    #[test]
    fn config_round_trips(
        alpha in 0.05f64..0.95,
        lambdas in prop::collection::vec(0.0f64..5.0, 1..4),
        hs in prop::collection::vec(0.0f64..3.0, 1..4),
        ns in prop::collection::vec(1usize..2000, 1..4),
        samples in 2usize..10_000,
        seed in any::<u64>(),
        srw in any::<bool>(),
        exp in 0usize..9,
        plot in any::<bool>(),
    ) {
        let mut c = ExperimentConfig::for_experiment(Experiment::ALL[exp]);
        c.alpha = alpha;
        c.lambda = lambdas;
        c.h = hs;
        c.k_family = if srw { RenewalKind::SrwReturn } else { RenewalKind::ZetaTail };
        c.n_list = ns.iter().map(|n| if srw { 2 * n } else { *n }).collect();
        c.n_samples = samples;
        c.master_seed = seed;
        c.emit_plot_data = plot;
        c.disorder = DisorderLaw::Rademacher;
        prop_assert_eq!(ExperimentConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn pairwise_sum_is_close_to_compensated(xs in prop::collection::vec(-1e3f64..1e3, 0..500)) {
        let exact: f64 = xs.iter().sum();
        prop_assert!((pairwise_sum(&xs) - exact).abs() <= 1e-9 * (1.0 + xs.iter().map(|x| x.abs()).sum::<f64>()));
    }
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let law = InterArrivalLaw::zeta(0.5).unwrap();
    let mc = MonteCarlo::new(&law, DisorderLaw::Gaussian, 40, 17);
    let p = CopolymerParams::new(1.0, 0.3).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate_free_energy(&mc, &p, 150, true).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.mean.to_bits(), four.mean.to_bits());
    assert_eq!(one.stderr.to_bits(), four.stderr.to_bits());
}
