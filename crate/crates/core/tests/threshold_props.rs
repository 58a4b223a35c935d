mod common;

use conesing::QuadNum;
use conesing::exactnum::rat;
use conesing::surface::{ConeModel, DivClass};
use conesing::threshold::{ActiveConstraint, ThresholdProblem, bracket_oracle, feasible_at, solve};
use proptest::prelude::*;
use rand::SeedableRng;
use rand::rngs::StdRng;

fn eps() -> conesing::Rat {
    rat(1, 1_000_000)
}

fn brackets_at(p: &ThresholdProblem, n: u64) {
    let t = solve(p).unwrap().t;
    let b = bracket_oracle(p, n).unwrap();
    assert!(b.contains(&t), "t = {t} outside ({}, {}] at N = {n}", b.lo, b.hi);
}

#[test]
fn abelian_cover_plus_threshold() {
    let a = common::preset_a();
    let r = a.threshold_plus().unwrap();
    // 9(8r² + 7r + 1) ≥ 0 and 15r + 6 ≥ 0 give (−7+√17)/16
    assert_eq!(r.t, QuadNum::new(rat(-7, 16), rat(1, 16), 17));
    assert_eq!(r.active_constraint, ActiveConstraint::Quadratic);
    let q = r.constraints.quadratic.clone().unwrap();
    let scale = &q.a / conesing::Rat::from_integer(8.into());
    assert_eq!(q.b, &scale * conesing::Rat::from_integer(7.into()));
    assert_eq!(q.c, scale);
    assert_eq!(r.constraints.linear_bound().unwrap().1, rat(-2, 5));
    brackets_at(&common::pencil(a.surface(), 1), 1_000_000);
}

#[test]
fn superadditivity_anchors() {
    let a = common::preset_a();
    let sum = a.threshold_minus().unwrap().t.try_add(&a.threshold_plus().unwrap().t).unwrap();
    assert_eq!(sum, QuadNum::new(rat(0, 1), rat(2, 16), 17));
    let b = common::preset_b();
    let sum = b.threshold_minus().unwrap().t.try_add(&b.threshold_plus().unwrap().t).unwrap();
    assert_eq!(sum, QuadNum::from_int(1));
}

#[test]
fn presets_bracket_at_both_resolutions() {
    for c in [common::preset_a(), common::preset_b(), common::synthetic()] {
        for sign in [-1, 1] {
            for n in [1_000, 1_000_000] {
                brackets_at(&common::pencil(c.surface(), sign), n);
            }
        }
    }
}

#[test]
fn preset_b_minus_bracket_contains_zero() {
    let p = common::pencil(common::preset_b().surface(), -1);
    let b = bracket_oracle(&p, 1_000_000).unwrap();
    assert!(b.contains(&QuadNum::zero()));
}

#[test]
fn oracle_rejects_zero_resolution() {
    let p = common::pencil(common::preset_b().surface(), -1);
    assert!(bracket_oracle(&p, 0).is_err());
}

#[test]
fn thresholds_are_sharp_on_presets() {
    for c in [common::preset_a(), common::preset_b(), common::synthetic()] {
        for sign in [-1, 1] {
            let p = common::pencil(c.surface(), sign);
            let t = solve(&p).unwrap().t;
            assert!(feasible_at(&p, &t).unwrap());
            assert!(!feasible_at(&p, &t.add_rat(&-eps())).unwrap());
            assert!(feasible_at(&p, &t.add_rat(&eps())).unwrap());
        }
    }
}

#[test]
fn random_problems_against_oracle() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..50 {
        let p = common::random_problem(&mut rng);
        brackets_at(&p, 1_000);
        let r = solve(&p).unwrap();
        assert!(r.attained);
        assert!(!feasible_at(&p, &r.t.add_rat(&-eps())).unwrap());
        if matches!(p.surface().cone(), ConeModel::Polyhedral { .. }) {
            assert_eq!(r.discriminant, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn offset_shift_and_direction_scaling(seed in any::<u64>(), c in (-9i64..9, 1i64..6), lambda in 1i64..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = common::random_problem(&mut rng);
        let t = solve(&p).unwrap().t;
        let c = rat(c.0, c.1);
        let shifted = ThresholdProblem::new(
            p.surface().clone(),
            p.direction().clone(),
            p.offset().add(&p.direction().scale(&c)),
        ).unwrap();
        prop_assert_eq!(solve(&shifted).unwrap().t, t.add_rat(&-c));
        let scaled = ThresholdProblem::new(
            p.surface().clone(),
            p.direction().scale(&rat(lambda, 1)),
            p.offset().clone(),
        ).unwrap();
        prop_assert_eq!(solve(&scaled).unwrap().t, t.scale(&rat(1, lambda)));
    }

    #[test]
    fn feasible_set_is_upward_closed_above_threshold(seed in any::<u64>(), k in 0i64..50) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = common::random_problem(&mut rng);
        let t = solve(&p).unwrap().t;
        prop_assert!(feasible_at(&p, &t.add_rat(&rat(k, 7))).unwrap());
    }
}

#[test]
fn apex_offset_gives_zero() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..10 {
        let s = common::random_quadratic_surface(&mut rng);
        let p = ThresholdProblem::new(s.clone(), s.polarization().clone(), DivClass::zero(s.rank()))
            .unwrap();
        assert_eq!(solve(&p).unwrap().t, QuadNum::zero());
    }
}
