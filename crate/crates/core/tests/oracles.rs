mod common;

use approx::assert_relative_eq;
use horoperiod::period::integrand_g;
use horoperiod::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn params(p: f64, q: f64, gamma: f64) -> ProblemParams {
    ProblemParams::new(p, q, gamma).unwrap()
}

#[test]
fn critical_point_matches_bisection() {
    for &(p, q, g) in &[(-1.0, 1.0, 1.5), (-3.0, 1.0, 1.0), (-9.0, 1.0, 384.0), (-5.0, 3.0, 0.7), (-40.0, 2.5, 1e4)] {
        let crit = critical_point(&params(p, q, g)).unwrap();
        let ug = common::u_gamma(p, q, g);
        assert_relative_eq!(crit.u_gamma, ug, max_relative = 1e-12);
        assert_relative_eq!(crit.e_star, common::energy(p, q, g, ug), max_relative = 1e-12);
    }
}

#[test]
fn listed_values() {
    let c = critical_point(&params(-1.0, 1.0, 1.5)).unwrap();
    assert_relative_eq!(c.u_gamma, 2f64.sqrt(), max_relative = 1e-13);
    assert_relative_eq!(c.e_star, 4.0, max_relative = 1e-13);
    let c = critical_point(&params(-3.0, 1.0, 1.0)).unwrap();
    assert_relative_eq!(c.u_gamma, 2f64.powf(0.25), max_relative = 1e-13);
    let c = critical_point(&params(-9.0, 1.0, 384.0)).unwrap();
    assert_relative_eq!(c.u_gamma, 2f64.sqrt(), max_relative = 1e-13);

    let tp = turning_points(&params(-1.0, 1.0, 1.5), 6.0).unwrap();
    assert_relative_eq!(tp.u_minus, (3.0 - 5f64.sqrt()).sqrt(), max_relative = 1e-12);
    assert_relative_eq!(tp.u_plus, (3.0 + 5f64.sqrt()).sqrt(), max_relative = 1e-12);

    let (g, e) = gamma_energy_from_shape(-1.0, 1.0, &ShapeCoords::new(0.5, 2.0).unwrap()).unwrap();
    assert_relative_eq!(g, 1.5, max_relative = 1e-13);
    assert_relative_eq!(e, 5.0, max_relative = 1e-13);
}

#[test]
fn period_matches_tanh_sinh_on_fixed_points() {
    let cfg = QuadratureConfig::default();
    for &(p, q, g, frac) in &[
        (-1.0, 1.0, 1.5, 0.25),
        (-3.0, 1.0, 1.0, 0.5),
        (-3.0, 1.0, 1.0, 20.0),
        (-17.0, 1.0, 13.0, 0.05),
        (-5.0, 2.0, 0.5, 1.0),
        (-2.0, 4.0, 3.0, 0.1),
    ] {
        let e = common::energy_above_min(p, q, g, frac);
        let lib = period_energy(&params(p, q, g), e, &cfg).unwrap().value;
        let oracle = common::theta_direct(p, q, g, e);
        assert!((lib - oracle).abs() < 1e-8, "(p={p}, q={q}, g={g}, frac={frac}): {lib} vs {oracle}");
    }
}

#[test]
fn p_minus_one_is_a_quarter_turn_by_both_routes() {
    for &(g, e) in &[(1.5, 5.0), (0.3, 4.0), (7.0, 30.0)] {
        let lib = period_energy(&params(-1.0, 1.0, g), e, &QuadratureConfig::default()).unwrap().value;
        assert!((lib - PI / 2.0).abs() < 1e-10);
        assert!((common::theta_direct(-1.0, 1.0, g, e) - PI / 2.0).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn turning_points_match_bisection(p in -30.0..-1.0f64, q in 1.0..4.0f64, lg in -2.0..4.0f64, lf in -6.0..1.0f64) {
        let g = 10f64.powf(lg);
        let e = common::energy_above_min(p, q, g, 10f64.powf(lf));
        let tp = turning_points(&params(p, q, g), e).unwrap();
        let (um, up) = common::turning(p, q, g, e);
        prop_assert!((tp.u_minus - um).abs() < 1e-10 * um);
        prop_assert!((tp.u_plus - up).abs() < 1e-10 * up);
    }

    #[test]
    fn shape_inverse_matches_level_equations(p in -30.0..-1.0f64, q in 1.0..4.0f64, alpha in 0.05..0.95f64, lr in 0.01..3.0f64) {
        let r = 10f64.powf(lr);
        let (g, e) = gamma_energy_from_shape(p, q, &ShapeCoords::new(alpha, r).unwrap()).unwrap();
        let um = 1.0 / (alpha * r).sqrt();
        let (go, eo) = common::gamma_energy(p, q, um, um * r);
        prop_assert!((g - go).abs() < 1e-9 * go, "{} vs {}", g, go);
        prop_assert!((e - eo).abs() < 1e-9 * eo.abs().max(1.0), "{} vs {}", e, eo);
    }

    #[test]
    fn integrand_matches_speed_on_the_level(p in -20.0..-1.0f64, q in 1.0..3.0f64, alpha in 0.05..0.95f64, lr in 0.05..1.5f64, t in 0.01..0.99f64) {
        let r = 10f64.powf(lr);
        let um = 1.0 / (alpha * r).sqrt();
        let (g, e) = common::gamma_energy(p, q, um, um * r);
        let level = common::Level { p, q, gamma: g, energy: e };
        let s = 1.0 + t * (r - 1.0);
        let direct = level.speed2(s * um) / (um * um);
        let f = integrand_f(p, q, s, alpha, r).unwrap();
        let gval = integrand_g(p, q, s * um, um, um * r).unwrap();
        let scale = (s * s).max(alpha * alpha * r * r / (s * s));
        prop_assert!((f - direct).abs() < 1e-9 * scale, "{} vs {}", f, direct);
        prop_assert!((f - gval / (um * um)).abs() < 1e-12 * scale, "{} vs {}", f, gval / (um * um));
    }

    #[test]
    fn period_matches_tanh_sinh(p in -25.0..-1.0f64, q in 1.0..3.0f64, lg in -1.0..3.0f64, lf in -4.0..1.5f64) {
        let g = 10f64.powf(lg);
        let e = common::energy_above_min(p, q, g, 10f64.powf(lf));
        let lib = period_energy(&params(p, q, g), e, &QuadratureConfig::default()).unwrap().value;
        let oracle = common::theta_direct(p, q, g, e);
        prop_assert!((lib - oracle).abs() < 1e-7, "{} vs {}", lib, oracle);
    }
}
