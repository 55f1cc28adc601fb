use std::collections::BTreeSet;

use proptest::prelude::*;
use troplines_core::sweep::{analyze_config, Checks};
use troplines_core::*;

fn config_strategy(max_n: usize, range: i64) -> impl Strategy<Value = PointConfig> {
    prop::collection::btree_set((-range..=range, -range..=range), 1..=max_n)
        .prop_map(|pts| PointConfig::from_integers(&pts.into_iter().collect::<Vec<_>>()).unwrap())
}

/// Configurations with many coaxial pairs: points on a small grid.
fn dense_strategy() -> impl Strategy<Value = PointConfig> {
    config_strategy(7, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn counts_identities_hold(cfg in prop_oneof![config_strategy(7, 15), dense_strategy()]) {
        let arr = dualize_points(&cfg).unwrap();
        let c = counts(&arr);
        prop_assert_eq!(c.n, cfg.len());
        prop_assert_eq!(c.t, c.triangles + c.b);
        prop_assert_eq!(c.b, c.k + c.h);
        prop_assert_eq!(c.h, c.n - c.triangles);
        prop_assert!(c.n <= c.t && c.t <= c.n * (c.n - 1) / 2 + c.n);
    }

    #[test]
    fn subdivision_tiles_and_is_regular(cfg in prop_oneof![config_strategy(6, 15), dense_strategy()]) {
        let sub = dual_subdivision(&dualize_points(&cfg).unwrap()).unwrap();
        let n = cfg.len() as i64;
        prop_assert_eq!(sub.cells.iter().map(|c| c.twice_area()).sum::<i64>(), n * n);
        prop_assert!(sub.check_tiling().is_ok());
        prop_assert_eq!(check_regularity(&sub), Ok(()));
    }

    #[test]
    fn stable_lines_pass_through_their_points(cfg in prop_oneof![config_strategy(6, 10), dense_strategy()]) {
        prop_assume!(cfg.len() >= 2);
        let records = stable_lines_through(&cfg).unwrap();
        for r in &records {
            prop_assert!(r.incident.len() >= 2);
            for (idx, p) in cfg.points().iter().enumerate() {
                prop_assert_eq!(r.line.contains(p), r.incident.contains(&idx));
            }
        }
        // every pair lies on some stable line
        for i in 0..cfg.len() {
            for j in i + 1..cfg.len() {
                let line = stable_line_two_points(&cfg.points()[i], &cfg.points()[j]).unwrap();
                prop_assert!(records.iter().any(|r| r.line == line));
            }
        }
    }

    #[test]
    fn duality_preserves_incidence(a in (-20i64..20, -20i64..20), b in (-20i64..20, -20i64..20)) {
        let (p, q) = (Point2::new(a.0, a.1), Point2::new(b.0, b.1));
        let forward = dualize_points(&PointConfig::new(vec![q.clone()]).unwrap()).unwrap().lines()[0].contains(&p);
        prop_assert_eq!(incidence_preserved(&p, &q), forward);
    }

    #[test]
    fn counts_are_translation_invariant(cfg in config_strategy(6, 10), dx in -5i64..5, dy in -5i64..5) {
        let shifted = PointConfig::new(
            cfg.points().iter().map(|p| p.translate(&Rational::from(dx), &Rational::from(dy))).collect(),
        )
        .unwrap();
        let a = counts(&dualize_points(&cfg).unwrap());
        let b = counts(&dualize_points(&shifted).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn every_check_passes(cfg in prop_oneof![config_strategy(7, 12), dense_strategy()]) {
        let r = analyze_config(0, &cfg, &Checks::all());
        prop_assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn dbe_bound(cfg in prop_oneof![config_strategy(7, 12), dense_strategy()]) {
        prop_assume!(cfg.len() >= 4);
        let v = dbe_check(&cfg).unwrap();
        prop_assert!(v.bound_holds);
        prop_assert!(v.consistent);
    }
}

#[test]
fn seeded_random_sweep_is_reproducible() {
    let params = SweepParams::random(5, 300, 6, 11);
    let mut first = Vec::new();
    let a = run_sweep_with(&params, Execution::Parallel, |r| first.push(r.clone())).unwrap();
    let mut second = Vec::new();
    let b = run_sweep_with(&params, Execution::Sequential, |r| second.push(r.clone())).unwrap();
    assert_eq!(first, second);
    assert_eq!(a.histogram, b.histogram);
    assert!(a.passed(), "{:?}", a.violations);
    assert_eq!(a.histogram.values().sum::<u64>(), 300);
}

#[test]
fn exhaustive_sweep_covers_every_subset_once() {
    let params = SweepParams::exhaustive(3, 3);
    let mut seen = BTreeSet::new();
    let report = run_sweep_with(&params, Execution::Parallel, |r| {
        assert!(seen.insert(r.points.clone()));
    })
    .unwrap();
    assert_eq!(report.configs_tested, 84);
    assert_eq!(seen.len(), 84);
    // n < 4 has no excess bucket
    assert!(report.histogram.is_empty());
}

#[test]
fn invalid_parameters_are_rejected() {
    assert_eq!(
        run_sweep(&SweepParams::exhaustive(4, 1)).unwrap_err(),
        CoreError::GridTooSmall { n: 4, grid: 1 }
    );
    assert_eq!(
        run_sweep(&SweepParams::random(30, 5, 2, 0)).unwrap_err(),
        CoreError::RangeTooSmall { n: 30, range: 2 }
    );
}
