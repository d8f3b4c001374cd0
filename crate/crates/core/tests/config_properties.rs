use lgh::config::{FamilySpec, RunConfig};
use lgh::morphisms::MorphismSpec;
use lgh::{harness, GroupId, Polynomial, C64};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (any::<f64>().prop_filter("finite", |v| v.is_finite()), -1e3f64..1e3).prop_map(|(re, im)| C64::new(re, im))
}

fn family() -> impl Strategy<Value = FamilySpec> {
    let leaf = prop_oneof![
        (2usize..6, prop::collection::vec(complex(), 1..6))
            .prop_map(|(n, p)| FamilySpec::IsotropicSubspace { n, p, v: None }),
        (2usize..6, prop::collection::vec(complex(), 1..6)).prop_map(|(n, p)| FamilySpec::IsotropicVector { n, p }),
        (complex(), complex()).prop_map(|(z, w)| FamilySpec::So4Deformation { z, w }),
        (1usize..4, prop::collection::vec(complex(), 1..4)).prop_map(|(n, p)| FamilySpec::Unitary { n, p }),
        (1usize..4, prop::collection::vec(complex(), 1..4)).prop_map(|(n, p)| FamilySpec::SpecialUnitary { n, p }),
        (1usize..4, prop::collection::vec(complex(), 1..4)).prop_map(|(n, p)| FamilySpec::Quaternionic { n, p }),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| {
        (inner, 1u32..4).prop_map(|(base, k)| FamilySpec::Power { base: Box::new(base), k })
    })
}

fn group() -> impl Strategy<Value = GroupId> {
    prop_oneof![
        (1usize..7).prop_map(|n| GroupId::SlR { n }),
        (1usize..4).prop_map(|n| GroupId::SuStar { n: 2 * n }),
        (1usize..4).prop_map(|n| GroupId::SpR { n }),
        (1usize..4, 1usize..4).prop_map(|(p, q)| GroupId::SoPq { p, q }),
        (1usize..4, 1usize..4).prop_map(|(p, q)| GroupId::SpPq { p, q }),
    ]
}

fn morphism() -> impl Strategy<Value = MorphismSpec> {
    (prop::collection::vec(complex(), 2), prop::collection::vec(complex(), 2), 1e-6f64..1.0).prop_map(|(a, b, floor)| {
        let poly = |c: Vec<C64>| Polynomial::from_terms(2, [(vec![1, 0], c[0]), (vec![0, 1], c[1])]).unwrap();
        MorphismSpec { p: poly(a), q: poly(b), floor }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn configs_round_trip_through_json(
        samples in 1usize..10_000,
        seed in any::<u64>(),
        radius in 1e-6f64..=1.0,
        tol in 1e-15f64..1.0,
        floor in 1e-9f64..1.0,
        group in prop::option::of(group()),
        family in prop::option::of(family()),
        morphism in prop::option::of(morphism()),
        pair in prop::option::of(group()),
    ) {
        let cfg = RunConfig { samples, seed, radius, tol, floor, group, family, morphism, pair };
        let back = RunConfig::from_json(&cfg.to_json()).unwrap();
        prop_assert_eq!(back, cfg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_do_not_depend_on_thread_count(seed in any::<u64>()) {
        let cfg = RunConfig {
            samples: 24,
            seed,
            family: Some(FamilySpec::Quaternionic { n: 2, p: vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)] }),
            ..RunConfig::default()
        };
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let r = pool.install(|| harness::run_family(&cfg)).unwrap();
            serde_json::to_string(&r.without_timing()).unwrap()
        };
        let single = run(1);
        prop_assert_eq!(&single, &run(3));
        prop_assert_eq!(&single, &run(8));
    }
}
