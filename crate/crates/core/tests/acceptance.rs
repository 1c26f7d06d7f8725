//! Acceptance criteria. Prints one `PASS`/`FAIL` line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hbloch::bohr::{bohr_radius, majorant_sum, r1, r2, r3_crossing, r3_formula, solve, BohrEquation};
use hbloch::bounds::{coeff_bound, proven_context};
use hbloch::catalog::{self, representatives, HarmonicMap};
use hbloch::invariance::{affine_compose, automorphism_compose, AffineParams, AutomorphismParam, InnerMap};
use hbloch::seminorm::{
    estimate_beta, estimate_beta_star, estimate_pre_schwarzian_norm, jacobian, jacobian_from_derivatives,
    GridConfig, SupEstimate, Verdict,
};
use hbloch::{ComplexPoint, DiskSampler};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_TOL: f64 = 1e-5;
const TABLE_BUDGET: Duration = Duration::from_secs(1);
const CLOSED_FORM_TOL: f64 = 1e-9;
const CROSSING: f64 = 5.77224;
const CROSSING_TOL: f64 = 1e-3;
const BETA_STAR_TOL: f64 = 1e-3;
const BETA_STAR_BUDGET: Duration = Duration::from_secs(5);
const PRE_SCHWARZIAN_TOL: f64 = 1e-3;
const IDENTITY_TOL: f64 = 1e-12;
const IDENTITY_SAMPLES: usize = 1000;
const COEFF_ORDER: usize = 64;
const PARSEVAL_TOL: f64 = 1e-8;
const PARSEVAL_ORDER: usize = 512;
const BOHR_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: impl FnOnce() -> String, bad: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(ok())
    } else {
        Err(bad())
    }
}

fn table_reproduction() -> Outcome {
    let r1_expected = [
        (0.0, 0.779697),
        (0.5, 0.614883),
        (1.0, 0.546679),
        (1.5, 0.503190),
        (2.0, 0.471528),
        (2.5, 0.446818),
        (3.0, 0.426678),
    ];
    let r2_expected = [0.586028, 0.553567, 0.522089, 0.492552, 0.465403, 0.440723];
    let start = Instant::now();
    let mut got = Vec::new();
    for (nu, _) in r1_expected {
        got.push(r1(nu).map_err(|e| e.to_string())?);
    }
    for k in 0..6 {
        got.push(r2(k).map_err(|e| e.to_string())?);
    }
    let elapsed = start.elapsed();
    let expected: Vec<f64> = r1_expected.iter().map(|p| p.1).chain(r2_expected).collect();
    let worst = got
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    check(
        worst <= TABLE_TOL && elapsed < TABLE_BUDGET,
        || format!("13 values, max error {worst:.2e}, {elapsed:?}"),
        || {
            format!("max error {worst:.2e} (tol {TABLE_TOL:e}), {elapsed:?} (budget {TABLE_BUDGET:?}); got {got:?}")
        },
    )
}

fn closed_forms() -> Outcome {
    let tol = 1e-15;
    let half = solve(&BohrEquation::E5 { nu: 0.5 }, tol)
        .map_err(|e| e.to_string())?
        .root;
    let zero = solve(&BohrEquation::E5 { nu: 1e-12 }, tol)
        .map_err(|e| e.to_string())?
        .root;
    let e_half = (6.0 / (6.0 + PI * PI)).sqrt();
    let e_zero = 6f64.sqrt() / PI;
    let (d1, d2) = ((half - e_half).abs(), (zero - e_zero).abs());
    check(
        d1 <= CLOSED_FORM_TOL && d2 <= CLOSED_FORM_TOL,
        || format!("errors {d1:.2e}, {d2:.2e}"),
        || format!("E5(1/2) = {half} vs {e_half}; E5(1e-12) = {zero} vs {e_zero}"),
    )
}

fn r3_crossing_point() -> Outcome {
    let nu = r3_crossing();
    let value = r3_formula(nu).map_err(|e| e.to_string())?;
    check(
        (nu - CROSSING).abs() <= CROSSING_TOL,
        || format!("nu = {nu:.6}, formula = {value:.6}"),
        || format!("nu = {nu} (expected {CROSSING} +- {CROSSING_TOL})"),
    )
}

fn example53_beta_star() -> Outcome {
    let cfg = GridConfig::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for t in [0.5, 0.7, 0.9] {
        let f = catalog::example53(t).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let est = estimate_beta_star(&f, 1.0, &cfg).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let expected = 2.0 * (t - t * t).sqrt();
        let err = (est.value - expected).abs();
        ok &= err <= BETA_STAR_TOL && elapsed < BETA_STAR_BUDGET && est.verdict == Verdict::Finite;
        notes.push(format!(
            "t={t}: {:.6} vs {expected:.6} ({:?}, {elapsed:.2?})",
            est.value, est.verdict
        ));
    }
    check(ok, || notes.join("; "), || notes.join("; "))
}

fn pre_schwarzian_norm() -> Outcome {
    let cfg = GridConfig::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for nu in [0.5, 1.0, 2.0] {
        let f = catalog::thm33_family(nu, Complex64::new(0.3, -0.4)).map_err(|e| e.to_string())?;
        let est = estimate_pre_schwarzian_norm(&f, &cfg).map_err(|e| e.to_string())?;
        ok &= (est.value - nu).abs() <= PRE_SCHWARZIAN_TOL;
        notes.push(format!("nu={nu}: {:.6}", est.value));
    }
    check(ok, || notes.join("; "), || notes.join("; "))
}

fn random_complex(rng: &mut ChaCha8Rng, max: f64) -> Complex64 {
    Complex64::from_polar(max * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

fn exact_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst: f64 = 0.0;
    let mut failure = None;
    let maps = representatives();
    for f in &maps {
        let mut s = DiskSampler::new(1, 0.99);
        for z in s.points(IDENTITY_SAMPLES) {
            let (a, b) = loop {
                let (a, b) = (random_complex(&mut rng, 2.0), random_complex(&mut rng, 2.0));
                if (a.norm() - b.norm()).abs() > 1e-3 {
                    break (a, b);
                }
            };
            let affine = AffineParams::new(a, b);
            let g = affine_compose(f, affine);
            let expected = affine.jacobian_factor() * jacobian(f, &z);
            let scale = expected
                .abs()
                .max(g.h_prime(&z).norm_sqr() + g.g_prime(&z).norm_sqr());
            let rel = (jacobian_from_derivatives(&g, &z) - expected).abs() / scale;

            let alpha = AutomorphismParam::new(random_complex(&mut rng, 0.9)).map_err(|e| e.to_string())?;
            let phi = InnerMap::automorphism(alpha);
            let w = phi.eval(&z).map_err(|e| e.to_string())?;
            let c = automorphism_compose(f, alpha);
            let expected = phi.first(&z).norm_sqr() * jacobian(f, &w);
            let scale = expected
                .abs()
                .max(c.h_prime(&z).norm_sqr() + c.g_prime(&z).norm_sqr());
            let rel_aut = (jacobian_from_derivatives(&c, &z) - expected).abs() / scale;

            let weight = phi.first(&z).norm() * z.one_minus_r_sq();
            let rel_weight = (w.one_minus_r_sq() - weight).abs() / weight;

            for (what, r) in [("affine", rel), ("automorphism", rel_aut), ("weight", rel_weight)] {
                let r = if r.is_nan() { f64::INFINITY } else { r };
                worst = worst.max(r);
                if r > IDENTITY_TOL && failure.is_none() {
                    failure = Some(format!(
                        "{what} identity for {} at {}: rel {r:.2e}",
                        f.name(),
                        z.value()
                    ));
                }
            }
        }
    }
    match failure {
        None => Ok(format!(
            "{} entries x {IDENTITY_SAMPLES} samples, max rel {worst:.2e}",
            maps.len()
        )),
        Some(msg) => Err(msg),
    }
}

fn verdict_matrix() -> Outcome {
    let cfg = GridConfig::default();
    let err = |e: hbloch::Error| e.to_string();
    let mut cases: Vec<(String, SupEstimate, Verdict)> = Vec::new();
    for nu in [0.5, 1.0, 2.0] {
        let h = catalog::h_nu(nu).map_err(err)?;
        cases.push((
            format!("h_{nu} beta_{nu}"),
            estimate_beta(&h, nu, &cfg).map_err(err)?,
            Verdict::Divergent,
        ));
    }
    let pair = catalog::example22(4.0, 1.0).map_err(err)?;
    cases.push((
        "example22 F beta*_1".into(),
        estimate_beta_star(&pair.perturbed, 1.0, &cfg).map_err(err)?,
        Verdict::Divergent,
    ));
    let exp_h = catalog::exp_cayley().analytic_h();
    for nu in [0.5, 2.0, 5.0] {
        cases.push((
            format!("exp-Cayley h beta_{nu}"),
            estimate_beta(&exp_h, nu, &cfg).map_err(err)?,
            Verdict::Divergent,
        ));
    }
    let gen = catalog::example32_generator();
    cases.push((
        "example32 ||P_H||".into(),
        estimate_pre_schwarzian_norm(&gen, &cfg).map_err(err)?,
        Verdict::Divergent,
    ));
    for nu in [0.5, 1.0, 2.0] {
        for t in [0.0, 0.5] {
            let f = catalog::f_nu_t(nu, t).map_err(err)?;
            cases.push((
                format!("f_{{{nu},{t}}} beta*_{nu}"),
                estimate_beta_star(&f, nu, &cfg).map_err(err)?,
                Verdict::Finite,
            ));
        }
        let f = catalog::f_nu_t(nu, 0.0).map_err(err)?;
        let w = nu + 0.5;
        cases.push((
            format!("f_{{{nu},0}} beta_{w}"),
            estimate_beta(&f, w, &cfg).map_err(err)?,
            Verdict::Finite,
        ));
    }
    for which in [1, 2] {
        let f = catalog::remark34(which).map_err(err)?;
        cases.push((
            format!("f{which} beta_1"),
            estimate_beta(&f, 1.0, &cfg).map_err(err)?,
            Verdict::Finite,
        ));
        cases.push((
            format!("f{which} beta*_1/2"),
            estimate_beta_star(&f, 0.5, &cfg).map_err(err)?,
            Verdict::Finite,
        ));
    }
    let wrong: Vec<String> = cases
        .iter()
        .filter(|(_, est, want)| est.verdict != *want)
        .map(|(name, est, want)| format!("{name}: {:?} (want {want:?})", est.verdict))
        .collect();
    check(
        wrong.is_empty(),
        || format!("{} cases, 0 misclassified", cases.len()),
        || wrong.join("; "),
    )
}

fn coefficient_bounds() -> Outcome {
    let mut maps: Vec<HarmonicMap> = Vec::new();
    for nu in [0.5, 1.0, 2.0] {
        for t in [0.0, 0.5] {
            maps.push(catalog::f_nu_t(nu, t).map_err(|e| e.to_string())?);
        }
        maps.push(catalog::thm33_family(nu, Complex64::new(0.3, -0.4)).map_err(|e| e.to_string())?);
    }
    let mut worst: f64 = 0.0;
    for f in &maps {
        let ctx = proven_context(f).ok_or_else(|| format!("{}: no proven bound", f.name()))?;
        let a = f
            .series_h(COEFF_ORDER)
            .ok_or_else(|| format!("{}: no series", f.name()))?;
        let b = f
            .series_g(COEFF_ORDER)
            .ok_or_else(|| format!("{}: no series", f.name()))?;
        for n in 1..=COEFF_ORDER {
            let ratio = a.coeff(n).norm().max(b.coeff(n).norm()) / coeff_bound(&ctx, n);
            worst = worst.max(ratio);
            if ratio > 1.0 {
                return Err(format!("{} n={n}: coefficient / bound = {ratio}", f.name()));
            }
        }
    }
    Ok(format!(
        "{} maps, n <= {COEFF_ORDER}, max coefficient/bound {worst:.4}",
        maps.len()
    ))
}

fn parseval() -> Outcome {
    let maps = [
        catalog::f_nu_t(1.0, 0.5).map_err(|e| e.to_string())?,
        catalog::thm6_extremal(2.0).map_err(|e| e.to_string())?,
        catalog::example53(0.7).map_err(|e| e.to_string())?,
        catalog::thm33_family(1.0, Complex64::new(0.3, -0.4)).map_err(|e| e.to_string())?,
        catalog::remark34(2).map_err(|e| e.to_string())?,
    ];
    let points = 4 * PARSEVAL_ORDER;
    let mut worst: f64 = 0.0;
    for f in &maps {
        let sa = f
            .series_h(PARSEVAL_ORDER)
            .ok_or_else(|| format!("{}: no series", f.name()))?;
        let sb = f
            .series_g(PARSEVAL_ORDER)
            .ok_or_else(|| format!("{}: no series", f.name()))?;
        for r in [0.3, 0.7, 0.9] {
            let (mut qa, mut qb) = (0.0, 0.0);
            for k in 0..points {
                let z = ComplexPoint::from_polar(1.0 - r, TAU * k as f64 / points as f64)
                    .map_err(|e| e.to_string())?;
                qa += f.h_prime(&z).norm_sqr();
                qb += f.g_prime(&z).norm_sqr();
            }
            for (series, quad) in [(&sa, qa / points as f64), (&sb, qb / points as f64)] {
                let energy = series.derivative_energy(r);
                let rel = (energy - quad).abs() / energy.max(1.0);
                worst = worst.max(rel);
                if rel > PARSEVAL_TOL {
                    return Err(format!(
                        "{} r={r}: series {energy} vs quadrature {quad}",
                        f.name()
                    ));
                }
            }
        }
    }
    Ok(format!("{} maps x 3 radii, max rel {worst:.2e}", maps.len()))
}

fn bohr_membership() -> Outcome {
    let f = catalog::thm6_extremal(2.0).map_err(|e| e.to_string())?;
    let series = f.series_h(PARSEVAL_ORDER).ok_or("no series")?;
    let r = bohr_radius(2.0).map_err(|e| e.to_string())?;
    let at_r = majorant_sum(&series, r, f.envelope());
    let tail = at_r.tail_bound.ok_or("no tail certificate")?;
    let rho = (2.0f64 / 3.0).sqrt();
    let at_rho = majorant_sum(&series, rho, f.envelope());
    let ok =
        (r - 0.492552).abs() <= TABLE_TOL && at_r.sum <= 1.0 + tail && (at_rho.sum - 1.0).abs() <= BOHR_TOL;
    check(
        ok,
        || {
            format!(
                "r(2) = {r:.6}: sum {:.6} (+ tail {tail:.1e}); at sqrt(2/3): {:.12}",
                at_r.sum, at_rho.sum
            )
        },
        || {
            format!(
                "r(2) = {r}, sum {} tail {tail}; at sqrt(2/3): {}",
                at_r.sum, at_rho.sum
            )
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 table reproduction", table_reproduction),
        ("2 closed-form radii", closed_forms),
        ("3 r3 crossing", r3_crossing_point),
        ("4 example53 beta*_1", example53_beta_star),
        ("5 pre-Schwarzian norm", pre_schwarzian_norm),
        ("6 exact identities", exact_identities),
        ("7 verdict matrix", verdict_matrix),
        ("8 coefficient bounds", coefficient_bounds),
        ("9 Parseval identity", parseval),
        ("10 Bohr membership", bohr_membership),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
