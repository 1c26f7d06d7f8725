//! The named checks behind `hbloch verify`.

use std::f64::consts::{E, PI};

use clap::ValueEnum;
use hbloch::bohr::{
    self, bohr_radius, emit_table, r3_crossing, solve, verify_bohr_membership, BohrEquation, MembershipKind,
};
use hbloch::bounds::{coeff_bound, growth_bound, h_nu_radial, phi_nu, proven_context, psi_nu};
use hbloch::catalog::{self, representatives, HarmonicMap};
use hbloch::invariance::{
    affine_compose, automorphism_compose, subordinate, AffineParams, AutomorphismParam, InnerMap,
};
use hbloch::seminorm::{
    beta_star_integrand, estimate_beta, estimate_beta_star, estimate_pre_schwarzian_norm, jacobian,
    jacobian_from_derivatives, GridConfig, SupEstimate, Verdict,
};
use hbloch::{ComplexPoint, DiskSampler};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Invariance,
    Inclusions,
    Bounds,
    Bohr,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

const IDENTITY_TOL: f64 = 1e-12;
const SAMPLES: usize = 200;

struct Ctx<'a> {
    seed: u64,
    cfg: &'a GridConfig,
    out: Vec<Check>,
}

impl Ctx<'_> {
    fn record(&mut self, name: String, passed: bool, detail: String) {
        self.out.push(Check { name, passed, detail });
    }

    fn error(&mut self, name: String, e: hbloch::Error) {
        self.record(name, false, format!("error: {e}"));
    }

    fn sampler(&self, salt: u64, max_radius: f64) -> DiskSampler {
        DiskSampler::new(
            self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt),
            max_radius,
        )
    }
}

pub fn run(suite: Suite, seed: u64, cfg: &GridConfig) -> Vec<Check> {
    let mut ctx = Ctx {
        seed,
        cfg,
        out: Vec::new(),
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Invariance {
        invariance(&mut ctx);
    }
    if all || suite == Suite::Inclusions {
        inclusions(&mut ctx);
    }
    if all || suite == Suite::Bounds {
        bounds(&mut ctx);
    }
    if all || suite == Suite::Bohr {
        bohr_suite(&mut ctx);
    }
    let mut out = ctx.out;
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Largest relative error of `(computed, expected, scale)` triples, with
/// the offending point.
fn worst_of(items: impl Iterator<Item = (Complex64, f64, f64, f64)>) -> (f64, Complex64) {
    let mut worst = (0.0, Complex64::new(0.0, 0.0));
    for (z, got, want, scale) in items {
        let rel = (got - want).abs() / scale;
        let rel = if rel.is_nan() { f64::INFINITY } else { rel };
        if rel > worst.0 {
            worst = (rel, z);
        }
    }
    worst
}

fn identity_check(ctx: &mut Ctx, name: String, (rel, z): (f64, Complex64), inputs: String) {
    ctx.record(
        name,
        rel <= IDENTITY_TOL,
        format!(
            "max rel {rel:.3e} at z = {z} ({inputs}, seed {}, {SAMPLES} samples)",
            ctx.seed
        ),
    );
}

fn invariance(ctx: &mut Ctx) {
    let a = Complex64::new(1.3, -0.4);
    let b = Complex64::new(0.2, 0.7);
    let alpha = AutomorphismParam::new(Complex64::new(0.35, -0.5)).expect("|alpha| < 1");
    let phi = InnerMap::automorphism(alpha);
    for (i, f) in representatives().iter().enumerate() {
        let tag = f.name().to_owned();
        let pts = ctx.sampler(i as u64, 0.99).points(SAMPLES);

        let affine = AffineParams::new(a, b);
        let g = affine_compose(f, affine);
        let w = worst_of(pts.iter().map(|z| {
            let want = affine.jacobian_factor() * jacobian(f, z);
            let scale = want.abs().max(g.h_prime(z).norm_sqr() + g.g_prime(z).norm_sqr());
            (z.value(), jacobian_from_derivatives(&g, z), want, scale)
        }));
        identity_check(
            ctx,
            format!("invariance/affine_jacobian/{i:02}_{tag}"),
            w,
            format!("a = {a}, b = {b}"),
        );

        let c = automorphism_compose(f, alpha);
        let mut bad = None;
        let w = worst_of(pts.iter().filter_map(|z| {
            let img = match phi.eval(z) {
                Ok(p) => p,
                Err(e) => {
                    bad = Some(e);
                    return None;
                }
            };
            let want = phi.first(z).norm_sqr() * jacobian(f, &img);
            let scale = want.abs().max(c.h_prime(z).norm_sqr() + c.g_prime(z).norm_sqr());
            Some((z.value(), jacobian_from_derivatives(&c, z), want, scale))
        }));
        let name = format!("invariance/automorphism_jacobian/{i:02}_{tag}");
        match bad {
            Some(e) => ctx.error(name, e),
            None => identity_check(ctx, name, w, format!("alpha = {}", alpha.alpha())),
        }
    }

    let pts = ctx.sampler(100, 0.999).points(SAMPLES);
    let w = worst_of(pts.iter().filter_map(|z| {
        let img = phi.eval(z).ok()?;
        let want = phi.first(z).norm() * z.one_minus_r_sq();
        Some((z.value(), img.one_minus_r_sq(), want, want))
    }));
    identity_check(
        ctx,
        "invariance/automorphism_weight".into(),
        w,
        format!("alpha = {}", alpha.alpha()),
    );

    let beta = AutomorphismParam::new(Complex64::new(-0.2, 0.6)).expect("|beta| < 1");
    let f = catalog::f_nu_t(1.0, 0.5).expect("valid parameters");
    let left = automorphism_compose(&automorphism_compose(&f, alpha), beta);
    match subordinate(
        &f,
        &InnerMap::automorphism(alpha).compose(&InnerMap::automorphism(beta)),
    ) {
        Ok(right) => {
            let pts = ctx.sampler(101, 0.95).points(SAMPLES);
            let w = worst_of(pts.iter().map(|z| {
                let (x, y) = (left.eval(z), right.map.eval(z));
                (z.value(), (x - y).norm(), 0.0, x.norm().max(1.0))
            }));
            identity_check(
                ctx,
                "invariance/associativity".into(),
                w,
                format!("alpha = {}, beta = {}", alpha.alpha(), beta.alpha()),
            );
        }
        Err(e) => ctx.error("invariance/associativity".into(), e),
    }

    let big_f = catalog::f_nu_t(1.0, 0.0).expect("valid parameters");
    let inner = [
        ("automorphism", Ok(InnerMap::automorphism(alpha))),
        ("power2", InnerMap::power(2)),
        ("scaled0.9", InnerMap::scaled(Complex64::new(0.9, 0.0))),
    ];
    for (label, phi) in inner {
        let name = format!("invariance/subordination/{label}");
        let sub = match phi.and_then(|p| subordinate(&big_f, &p).map(|s| (p, s))) {
            Ok(x) => x,
            Err(e) => {
                ctx.error(name, e);
                continue;
            }
        };
        let (phi, sub) = sub;
        let mut ok = true;
        let mut detail = String::new();
        for z in ctx.sampler(102, 0.999).points(SAMPLES) {
            let Ok(w) = phi.eval(&z) else { continue };
            let lhs = beta_star_integrand(&sub.map, 1.0, &z);
            let rhs = beta_star_integrand(&big_f, 1.0, &w);
            if lhs > rhs * (1.0 + 1e-12) + 1e-300 {
                ok = false;
                detail = format!("Schwarz-Pick step fails at z = {}: {lhs} > {rhs}", z.value());
                break;
            }
        }
        match estimate_beta_star(&sub.map, 1.0, ctx.cfg) {
            Ok(est) if ok => {
                ok = est.verdict == Verdict::Finite;
                detail = format!(
                    "beta*_1 {} ({:?}), pointwise step holds",
                    fmt(est.value),
                    est.verdict
                );
            }
            Ok(_) => {}
            Err(e) => {
                ctx.error(name, e);
                continue;
            }
        }
        ctx.record(name, ok, format!("f_{{1,0}} o {label}: {detail}"));
    }
}

fn fmt(x: f64) -> String {
    crate::output::fmt_num(x)
}

struct VerdictCase {
    name: String,
    map: HarmonicMap,
    which: &'static str,
    nu: f64,
    want: Verdict,
}

fn estimate(case: &VerdictCase, cfg: &GridConfig) -> hbloch::Result<SupEstimate> {
    match case.which {
        "beta" => estimate_beta(&case.map, case.nu, cfg),
        "beta_star" => estimate_beta_star(&case.map, case.nu, cfg),
        _ => estimate_pre_schwarzian_norm(&case.map, cfg),
    }
}

fn inclusions(ctx: &mut Ctx) {
    let mut cases = Vec::new();
    let case = |name: String, map: HarmonicMap, which, nu, want| VerdictCase {
        name,
        map,
        which,
        nu,
        want,
    };
    for nu in [0.5, 1.0, 2.0] {
        cases.push(case(
            format!("h_nu({nu})/beta_{nu}"),
            catalog::h_nu(nu).expect("nu > 0"),
            "beta",
            nu,
            Verdict::Divergent,
        ));
        for t in [0.0, 0.5] {
            let f = catalog::f_nu_t(nu, t).expect("valid parameters");
            cases.push(case(
                format!("f_nu_t({nu},{t})/beta*_{nu}"),
                f,
                "beta_star",
                nu,
                Verdict::Finite,
            ));
        }
        let f = catalog::f_nu_t(nu, 0.0).expect("valid parameters");
        cases.push(case(
            format!("f_nu_t({nu},0)/beta_{}", nu + 0.5),
            f,
            "beta",
            nu + 0.5,
            Verdict::Finite,
        ));
    }
    let pair = catalog::example22(4.0, 1.0).expect("valid parameters");
    cases.push(case(
        "example22_F(4,1)/beta*_1".into(),
        pair.perturbed,
        "beta_star",
        1.0,
        Verdict::Divergent,
    ));
    for nu in [0.5, 2.0, 5.0] {
        cases.push(case(
            format!("exp_cayley_h/beta_{nu}"),
            catalog::exp_cayley().analytic_h(),
            "beta",
            nu,
            Verdict::Divergent,
        ));
    }
    cases.push(case(
        "example32_H/preschwarzian".into(),
        catalog::example32_generator(),
        "preschwarzian",
        0.0,
        Verdict::Divergent,
    ));
    for which in [1, 2] {
        let f = catalog::remark34(which).expect("which in {1, 2}");
        cases.push(case(
            format!("remark34({which})/beta_1"),
            f.clone(),
            "beta",
            1.0,
            Verdict::Finite,
        ));
        cases.push(case(
            format!("remark34({which})/beta*_0.5"),
            f,
            "beta_star",
            0.5,
            Verdict::Finite,
        ));
    }
    for c in &cases {
        let name = format!("inclusions/verdict/{}", c.name);
        match estimate(c, ctx.cfg) {
            Ok(est) => ctx.record(
                name,
                est.verdict == c.want,
                format!("{:?} (want {:?}), value {}", est.verdict, c.want, fmt(est.value)),
            ),
            Err(e) => ctx.error(name, e),
        }
    }

    for f in representatives() {
        let name = format!("inclusions/beta_star_le_beta/{}", f.name());
        match (
            estimate_beta(&f, 1.0, ctx.cfg),
            estimate_beta_star(&f, 1.0, ctx.cfg),
        ) {
            (Ok(b), Ok(s)) => ctx.record(
                name,
                s.value <= b.value || s.value - b.value <= 1e-9 * b.value,
                format!("beta*_1 {} <= beta_1 {}", fmt(s.value), fmt(b.value)),
            ),
            (Err(e), _) | (_, Err(e)) => ctx.error(name, e),
        }
    }
}

fn bounded_maps() -> Vec<HarmonicMap> {
    let mut v = Vec::new();
    for nu in [0.5, 1.0, 2.0] {
        for t in [0.0, 0.5] {
            v.push(catalog::f_nu_t(nu, t).expect("valid parameters"));
        }
        v.push(catalog::thm33_family(nu, Complex64::new(0.3, -0.4)).expect("valid parameters"));
    }
    v.push(catalog::example53(0.7).expect("valid parameters"));
    v.push(catalog::thm6_extremal(2.0).expect("valid parameters"));
    v
}

fn map_label(f: &HarmonicMap) -> String {
    let p = f.params();
    let mut parts = Vec::new();
    if let Some(nu) = p.nu {
        parts.push(format!("nu={nu}"));
    }
    if let Some(t) = p.t {
        parts.push(format!("t={t}"));
    }
    if let Some(b1) = p.b1 {
        parts.push(format!("b1={b1}"));
    }
    format!("{}({})", f.name(), parts.join(","))
}

fn bounds(ctx: &mut Ctx) {
    for (i, f) in bounded_maps().iter().enumerate() {
        let label = map_label(f);
        let Some(bc) = proven_context(f) else {
            ctx.record(format!("bounds/context/{label}"), false, "no proven bound".into());
            continue;
        };
        let name = format!("bounds/coefficients/{label}");
        match (f.series_h(64), f.series_g(64)) {
            (Some(a), Some(b)) => {
                let worst = (1..=64)
                    .map(|n| (n, a.coeff(n).norm().max(b.coeff(n).norm()) / coeff_bound(&bc, n)))
                    .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
                ctx.record(
                    name,
                    worst.1 <= 1.0,
                    format!(
                        "max coefficient/bound {} at n = {} (beta* <= {}, omega0 = {})",
                        fmt(worst.1),
                        worst.0,
                        fmt(bc.beta_star),
                        fmt(bc.omega0)
                    ),
                );
            }
            _ => ctx.record(name, false, "no series generator".into()),
        }

        let h0 = f.h(&ComplexPoint::origin());
        let worst = ctx
            .sampler(200 + i as u64, 0.999)
            .points(SAMPLES)
            .into_iter()
            .map(|z| {
                let lhs = (f.h(&z) - h0).norm().max(f.g(&z).norm());
                (lhs / growth_bound(&bc, z.radius()), z.value())
            })
            .fold(
                (0.0, Complex64::new(0.0, 0.0)),
                |acc, x| if x.0 > acc.0 { x } else { acc },
            );
        ctx.record(
            format!("bounds/growth/{label}"),
            worst.0 <= 1.0 + 1e-10,
            format!(
                "max |f - a0| / bound {} at z = {} (seed {})",
                fmt(worst.0),
                worst.1,
                ctx.seed
            ),
        );
    }

    for nu in [0.5, 1.0, 3.0] {
        let limit = (nu + 0.5f64).exp();
        let rel = (phi_nu(nu, 1e6) - limit).abs() / limit;
        let increasing = (0..96).all(|i| {
            let x = 2.0 + 0.5 * i as f64;
            phi_nu(nu, x + 0.5) > phi_nu(nu, x)
        });
        ctx.record(
            format!("bounds/phi_nu/{nu}"),
            rel <= 1e-4 && increasing,
            format!("phi(1e6)/e^(nu+1/2) - 1 = {rel:.2e}, increasing on [2, 50]: {increasing}"),
        );
    }
    for nu in [0.1, 0.5, 1.0, 5.0] {
        let min = (0..=980)
            .map(|i| psi_nu(nu, 2.0 + 0.1 * i as f64))
            .fold(f64::INFINITY, f64::min);
        let at2 = psi_nu(nu, 2.0);
        let want = if nu == 0.5 {
            6.0
        } else {
            4.0 * (2.0 * nu * nu + 1.0)
        };
        ctx.record(
            format!("bounds/psi_nu/{nu}"),
            min > 0.0 && (at2 - want).abs() <= 1e-12 * want,
            format!(
                "psi(2) = {} (want {}), min on [2, 100] = {}",
                fmt(at2),
                fmt(want),
                fmt(min)
            ),
        );
    }
    let grid: Vec<f64> = (0..200).map(|i| i as f64 / 200.0).collect();
    let nus = [0.1, 0.3, 0.5, 1.0, 2.0, 3.0];
    let in_r = nus.iter().all(|&nu| {
        grid.windows(2)
            .all(|w| h_nu_radial(nu, w[1]) > h_nu_radial(nu, w[0]))
    });
    let in_nu = grid[1..].iter().all(|&r| {
        nus.windows(2)
            .all(|w| h_nu_radial(w[1], r) > h_nu_radial(w[0], r))
    });
    ctx.record(
        "bounds/h_nu_monotone".into(),
        in_r && in_nu,
        format!("increasing in r: {in_r}, increasing in nu: {in_nu}"),
    );
    let e_check = (h_nu_radial(0.5, 1.0 - 1.0 / E) - 1.0).abs();
    ctx.record(
        "bounds/h_nu_log_case".into(),
        e_check <= 1e-15,
        format!("|h_1/2(1 - 1/e) - 1| = {e_check:.2e}"),
    );
}

const PAPER_R1: [(f64, f64); 7] = [
    (0.0, 0.779697),
    (0.5, 0.614883),
    (1.0, 0.546679),
    (1.5, 0.503190),
    (2.0, 0.471528),
    (2.5, 0.446818),
    (3.0, 0.426678),
];
const PAPER_R2: [f64; 6] = [0.586028, 0.553567, 0.522089, 0.492552, 0.465403, 0.440723];
const TABLE_TOL: f64 = 1e-5;

fn bohr_suite(ctx: &mut Ctx) {
    match emit_table() {
        Ok(rows) => {
            for row in &rows {
                let (l, r) = (PAPER_R1[row.k as usize].1, PAPER_R1[row.k as usize + 1].1);
                let want = PAPER_R2[row.k as usize];
                let err = (row.r1_left - l)
                    .abs()
                    .max((row.r1_right - r).abs())
                    .max((row.r2 - want).abs());
                ctx.record(
                    format!("bohr/table/{}", row.k),
                    err <= TABLE_TOL,
                    format!(
                        "{}: r1 {:.6}..{:.6}, r2 {:.6}, max error {err:.1e}",
                        row.interval, row.r1_left, row.r1_right, row.r2
                    ),
                );
            }
        }
        Err(e) => ctx.error("bohr/table".into(), e),
    }

    let closed = [
        (
            "e5_half",
            BohrEquation::E5 { nu: 0.5 },
            (6.0 / (6.0 + PI * PI)).sqrt(),
        ),
        ("e5_one", BohrEquation::E5 { nu: 1.0 }, {
            let c = 12.0 + PI * PI;
            ((c - (c * c - 144.0).sqrt()) / 12.0).sqrt()
        }),
        ("e5_zero", BohrEquation::E5 { nu: 1e-12 }, 6f64.sqrt() / PI),
    ];
    for (label, eq, want) in closed {
        let name = format!("bohr/closed_form/{label}");
        match solve(&eq, 1e-15) {
            Ok(res) => ctx.record(
                name,
                (res.root - want).abs() <= 1e-10,
                format!("{eq:?}: {} vs {}", fmt(res.root), fmt(want)),
            ),
            Err(e) => ctx.error(name, e),
        }
    }

    let nu = r3_crossing();
    ctx.record(
        "bohr/r3_crossing".into(),
        (nu - 5.77224).abs() <= 1e-3,
        format!("crossing at nu = {}", fmt(nu)),
    );

    let name = "bohr/membership/thm6(nu=2)".to_owned();
    match catalog::thm6_extremal(2.0)
        .and_then(|f| verify_bohr_membership(&f, 2.0, 1.0, MembershipKind::Analytic, ctx.cfg))
    {
        Ok(rep) => {
            let radius_ok = (rep.radius - 0.492552).abs() <= TABLE_TOL;
            ctx.record(
                name,
                radius_ok && rep.holds == Some(true),
                format!(
                    "radius {}, sum {}, tail {}",
                    fmt(rep.radius),
                    fmt(rep.sum),
                    rep.tail_bound.map_or("-".into(), fmt)
                ),
            );
        }
        Err(e) => ctx.error(name, e),
    }
    match catalog::thm6_extremal(2.0) {
        Ok(f) => {
            let s = f.series_h(512).expect("thm6 carries a series");
            let sum = bohr::majorant_sum(&s, (2.0f64 / 3.0).sqrt(), f.envelope()).sum;
            ctx.record(
                "bohr/majorant/thm6(nu=2)_at_r3_formula".into(),
                (sum - 1.0).abs() <= 1e-8,
                format!("sum at sqrt(2/3) = {}", fmt(sum)),
            );
        }
        Err(e) => ctx.error("bohr/majorant/thm6(nu=2)_at_r3_formula".into(), e),
    }
    for t in [0.5, 0.7] {
        for p in [1.0, 2.0] {
            let name = format!("bohr/membership/example53(t={t},p={p})");
            match catalog::example53(t)
                .and_then(|f| verify_bohr_membership(&f, 1.0, p, MembershipKind::Jacobian, ctx.cfg))
            {
                Ok(rep) => ctx.record(
                    name,
                    rep.holds == Some(true),
                    format!(
                        "radius {}, sum {}, omega0 {}",
                        fmt(rep.radius),
                        fmt(rep.sum),
                        fmt(rep.omega0)
                    ),
                ),
                Err(e) => ctx.error(name, e),
            }
        }
    }
    let ok = match bohr_radius(1.0) {
        Ok(r) => (r - 0.553567).abs() <= TABLE_TOL,
        Err(_) => false,
    };
    ctx.record(
        "bohr/radius/nu=1".into(),
        ok,
        "r(1) = max(r1(1), r2(1)) = 0.553567".into(),
    );
}
