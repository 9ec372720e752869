//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.

use horoperiod::orbit::family_profile;
use horoperiod::period::limits::{limit_extreme_exponent, limit_near_minimum, limit_small_oscillation};
use horoperiod::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

type Outcome = std::result::Result<String, String>;

const SLACK: f64 = 1e-9;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn params(p: f64, q: f64, gamma: f64) -> ProblemParams {
    ProblemParams::new(p, q, gamma).expect("valid parameters")
}

fn qc() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn theta(p: f64, q: f64, alpha: f64, r: f64) -> Result<f64> {
    Ok(period_shape(p, q, &ShapeCoords::new(alpha, r)?, &qc())?.value)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn p_minus_one_exactness() -> Outcome {
    let mut rng = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = rng.gen_range(0.1..10.0);
        let prm = params(-1.0, 1.0, g);
        let e_star = critical_point(&prm).map_err(|e| e.to_string())?.e_star;
        let e = e_star * rng.gen_range(1.0..10.0f64).max(1.0 + 1e-9);
        let t = period_energy(&prm, e, &qc()).map_err(|e| e.to_string())?.value;
        worst = worst.max((t - PI / 2.0).abs());
    }
    check(worst < 1e-8, format!("max |Theta - pi/2| = {worst:.2e} over 20 samples"))
}

fn limit_battery() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    let mut rel = |name: &str, got: Result<f64>, want: Result<f64>, tol: f64, relative: bool| {
        match (got, want) {
            (Ok(g), Ok(w)) => {
                let err = if relative { ((g - w) / w).abs() } else { (g - w).abs() };
                ok &= err < tol;
                lines.push(format!("{name} {err:.1e}"));
            }
            (g, w) => {
                ok = false;
                lines.push(format!("{name} error {g:?} {w:?}"));
            }
        }
    };
    for &(p, q, a) in &[(-5.0, 1.0, 0.5), (-3.0, 2.0, 0.3), (-20.0, 4.0, 0.8)] {
        rel(
            &format!("r->1 ({p},{q},{a})"),
            theta(p, q, a, 1.0 + 1e-4),
            limit_small_oscillation(p, q, a),
            1e-3,
            true,
        );
    }
    for &(p, q) in &[(-3.0, 1.0), (-3.0, 2.0)] {
        rel(&format!("r=1e6 ({p},{q})"), theta(p, q, 0.5, 1e6), Ok(PI / 2.0), 1e-2, false);
    }
    for &(p, q, g) in &[(-3.0, 1.0, 1.0), (-5.0, 2.0, 0.7)] {
        let prm = params(p, q, g);
        let got = critical_point(&prm).and_then(|c| period_energy(&prm, c.e_star + 1e-6, &qc())).map(|v| v.value);
        rel(&format!("E->E* ({p},{q},{g})"), got, limit_near_minimum(&prm), 1e-3, true);
    }
    rel("p=-200", theta(-200.0, 1.0, 0.1, 5.0), limit_extreme_exponent(0.1, 5.0), 1e-3, true);
    rel("q=200", theta(-20.0, 200.0, 0.1, 4.0), limit_extreme_exponent(0.1, 4.0), 1e-3, true);
    check(ok, lines.join("; "))
}

fn monotonicity() -> Outcome {
    let mut rng = rng(3);
    let mut bad = [0usize; 4];
    let n = 120;
    let draw = |rng: &mut ChaCha8Rng| {
        (
            rng.gen_range(-40.0..-1.0f64),
            rng.gen_range(1.0..4.0f64),
            rng.gen_range(0.01..0.99f64),
            10f64.powf(rng.gen_range(0.001..3.0f64)),
        )
    };
    for _ in 0..n {
        let (p, q, a, r) = draw(&mut rng);
        let p2 = p - rng.gen_range(0.01..10.0);
        if theta(p2, q, a, r).map_err(|e| e.to_string())? > theta(p, q, a, r).map_err(|e| e.to_string())? + SLACK {
            bad[0] += 1;
        }
        let (p, q, a, r) = draw(&mut rng);
        let a2 = (a + rng.gen_range(0.001..0.5)).min(0.995);
        if theta(p, q, a, r).map_err(|e| e.to_string())? > theta(p, q, a2, r).map_err(|e| e.to_string())? + SLACK {
            bad[1] += 1;
        }
        let (p, q, a, r) = draw(&mut rng);
        let q2 = q + rng.gen_range(0.01..5.0);
        if theta(p, q2, a, r).map_err(|e| e.to_string())? > theta(p, q, a, r).map_err(|e| e.to_string())? + SLACK {
            bad[2] += 1;
        }
        let (p, q, _, r) = draw(&mut rng);
        let r2 = r * rng.gen_range(1.01..10.0);
        let lo = boundary_period(p, q, r, &qc()).map_err(|e| e.to_string())?.value;
        let hi = boundary_period(p, q, r2, &qc()).map_err(|e| e.to_string())?.value;
        if lo > hi + SLACK {
            bad[3] += 1;
        }
    }
    check(
        bad == [0; 4],
        format!("{n} pairs each; violations p={} alpha={} q={} boundary-r={}", bad[0], bad[1], bad[2], bad[3]),
    )
}

fn bounds() -> Outcome {
    let mut rng = rng(4);
    let mut bad = 0;
    let mut margin = f64::INFINITY;
    for _ in 0..100 {
        let p = rng.gen_range(-60.0..-1.01f64);
        let q = rng.gen_range(1.0..6.0f64);
        let a = rng.gen_range(0.01..0.99f64);
        let r = 10f64.powf(rng.gen_range(0.001..4.0f64));
        let t = theta(p, q, a, r).map_err(|e| e.to_string())?;
        let lower = PI / (2.0 * q - 2.0 * p).sqrt();
        if !(lower < t && t < PI / 2.0) {
            bad += 1;
        }
        margin = margin.min(t - lower).min(PI / 2.0 - t);
    }
    check(bad == 0, format!("100 samples, {bad} outside, smallest margin {margin:.2e}"))
}

fn uniqueness_band() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for &p in &[-1.5, -3.0, -5.0, -6.9] {
        for &g in &[0.5, 2.0, 10.0] {
            let rep = count_solutions(&params(p, 1.0, g), 8, &ScanConfig::default()).map_err(|e| e.to_string())?;
            let inside = rep.theta_min > PI / 4.0 && rep.theta_max < PI / 2.0;
            let good = inside && rep.branches.is_empty() && rep.status == ScanStatus::Complete;
            ok &= good;
            if !good {
                lines.push(format!(
                    "(p={p}, g={g}) Theta in [{:.6}, {:.6}], {} branches, {:?}",
                    rep.theta_min,
                    rep.theta_max,
                    rep.branches.len(),
                    rep.status
                ));
            }
        }
    }
    if ok {
        lines.push("12 instances, Theta in (pi/4, pi/2), no branches".into());
    }
    check(ok, lines.join("; "))
}

fn certify(prm: &ProblemParams, m: u32, energy: f64) -> std::result::Result<SolutionProfile, String> {
    build_solution(prm, energy, m, &OrbitConfig::default()).map_err(|e| e.to_string())
}

fn describe(s: &SolutionProfile) -> String {
    format!(
        "m={} residual={:.2e} hconvex_min={:.2e} hk={:.2e} symmetry={:.1e} certified={}",
        s.m, s.residual_max, s.hconvex_min, s.hk_value, s.symmetry_defect, s.certified
    )
}

fn nonuniqueness() -> Outcome {
    let start = Instant::now();
    let prm = params(-17.0, 1.0, 13.0);
    let thr = threshold_gamma(-17.0, 1).map_err(|e| e.to_string())?;
    let rep = count_solutions(&prm, 2, &ScanConfig::default()).map_err(|e| e.to_string())?;
    let branch = rep.branches.iter().find(|b| b.m == 2).ok_or("no m = 2 branch")?;
    let sol = certify(&prm, 2, branch.energy)?;
    let secs = start.elapsed().as_secs_f64();
    let exact = 402653184.0 / 31250000.0;
    check(
        sol.certified && (thr - exact).abs() < 1e-12 * exact && secs < 60.0,
        format!("gamma_-17,1={thr:.8}, E={:.10}, {}, {secs:.2}s", branch.energy, describe(&sol)),
    )
}

fn higher_multiplicity() -> Outcome {
    let thr = threshold_gamma(-33.0, 2).map_err(|e| e.to_string())?;
    let g = thr * 1.01;
    let prm = params(-33.0, 1.0, g);
    let rep = count_solutions(&prm, 3, &ScanConfig::default()).map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut lines = vec![format!("gamma={g:.3} (threshold {thr})")];
    for m in [2, 3] {
        match rep.branches.iter().find(|b| b.m == m) {
            Some(b) => {
                let sol = certify(&prm, m, b.energy)?;
                ok &= sol.certified;
                lines.push(describe(&sol));
            }
            None => {
                ok = false;
                lines.push(format!("no m={m} branch"));
            }
        }
    }
    check(ok, lines.join("; "))
}

fn weighted_thresholds() -> Outcome {
    let mut rng = rng(8);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let l = rng.gen_range(1..6u32);
        let k = (l + 1) as f64;
        let p = 1.0 - 2.0 * k * k - rng.gen_range(0.01..100.0);
        let a = threshold_gamma(p, l).map_err(|e| e.to_string())?;
        let b = threshold_gamma_weighted(p, 1.0, l).map_err(|e| e.to_string())?;
        worst = worst.max(((a - b) / a).abs());
    }
    let g9 = threshold_gamma_weighted(-9.0, 1.0, 1).map_err(|e| e.to_string())?;
    let mut crossings = 0;
    let cases = [(-9.0, 1.0, 1), (-17.0, 1.0, 1), (-33.0, 1.0, 2), (-12.0, 3.0, 1), (-40.0, 2.0, 3)];
    for &(p, q, l) in &cases {
        let t = threshold_gamma_weighted(p, q, l).map_err(|e| e.to_string())?;
        let target = PI / (2.0 * (l + 1) as f64);
        let above = limit_near_minimum(&params(p, q, t * 1.001)).map_err(|e| e.to_string())?;
        let below = limit_near_minimum(&params(p, q, t * 0.999)).map_err(|e| e.to_string())?;
        if above < target && target < below {
            crossings += 1;
        }
    }
    check(
        worst < 1e-12 && (g9 - 384.0).abs() <= 1e-12 * 384.0 && crossings == cases.len(),
        format!(
            "q=1 reduction max rel {worst:.1e}; gamma_-9,1,1 = {g9}; limit crosses at {crossings}/{} thresholds",
            cases.len()
        ),
    )
}

fn dual_route() -> Outcome {
    let mut rng = rng(9);
    let mut worst = 0.0f64;
    let mut drift = 0.0f64;
    let cfg = OrbitConfig::default();
    for i in 0..20 {
        let p = rng.gen_range(-25.0..-1.0f64);
        let q = if i % 2 == 0 { 1.0 } else { rng.gen_range(1.0..4.0f64) };
        let g = 10f64.powf(rng.gen_range(-1.0..2.5f64));
        let prm = params(p, q, g);
        let e_star = critical_point(&prm).map_err(|e| e.to_string())?.e_star;
        let e = e_star + 10f64.powf(rng.gen_range(-3.0..1.0f64)) * e_star.abs().max(1.0);
        let quad = period_energy(&prm, e, &qc()).map_err(|e| e.to_string())?.value;
        // Ten full periods.
        let orbit = integrate_orbit(&prm, e, 20.0 * quad, &cfg).map_err(|e| e.to_string())?;
        let ode = measure_half_period(&orbit).map_err(|e| e.to_string())?;
        worst = worst.max((ode - quad).abs());
        drift = drift.max(orbit.max_drift);
    }
    check(
        worst < 1e-6 && drift < 1e-8,
        format!("20 instances, half of them q > 1: max |ODE - quadrature| = {worst:.1e}, max drift {drift:.1e}"),
    )
}

fn constant_census() -> Outcome {
    let count = |p: f64, g: f64| constant_solutions(&params(p, 1.0, g)).map(|s| s.roots.len());
    let counts: Vec<usize> = [0.1, 0.125, 0.2]
        .iter()
        .map(|&g| count(3.0, g))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    let mut rng = rng(10);
    let mut singles = 0;
    for _ in 0..20 {
        let p = rng.gen_range(-0.999..1.0f64);
        let g = 10f64.powf(rng.gen_range(-3.0..3.0f64));
        if count(p, g).map_err(|e| e.to_string())? == 1 {
            singles += 1;
        }
    }
    check(
        counts == [2, 1, 0] && singles == 20,
        format!("p=3: {counts:?} roots at gamma = 0.1, 0.125, 0.2; one root in {singles}/20 draws with p in (-1, 1]"),
    )
}

fn family_oracle() -> Outcome {
    let oracle = include_str!("../oracles/p_minus_one_family.out");
    let fixed = oracle.contains("b^2 - a^2 = 1 + 2 gamma") && oracle.contains("HK integral at a=3/2, b=5/2: 0");
    let prof = family_profile(&params(-1.0, 1.0, 1.5), 1.5, 1024).map_err(|e| e.to_string())?;
    let b = prof.phi[0] - 1.5;
    check(
        fixed && (b - 2.5).abs() < 1e-14 && prof.residual_max < 1e-10 && prof.hk_value.abs() < 1e-8,
        format!(
            "oracle constraint present: {fixed}; a=1.5, b={b}: residual {:.1e}, hk {:.1e}",
            prof.residual_max, prof.hk_value
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("p = -1 exactness", p_minus_one_exactness),
        ("limit battery", limit_battery),
        ("monotonicity", monotonicity),
        ("bounds", bounds),
        ("uniqueness band", uniqueness_band),
        ("nonuniqueness p = -17", nonuniqueness),
        ("higher multiplicity p = -33", higher_multiplicity),
        ("weighted thresholds", weighted_thresholds),
        ("dual-route periods", dual_route),
        ("constant census", constant_census),
        ("p = -1 family", family_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name} ({:.2}s): {detail}", i + 1, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
