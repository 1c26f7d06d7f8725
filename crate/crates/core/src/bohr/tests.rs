use std::f64::consts::{E, LN_2, PI};

use num_complex::Complex64;

use super::*;
use crate::catalog::{self, AnalyticPart};

fn cfg() -> GridConfig {
    GridConfig::default()
}

/// `F_k` from its power series: the coefficient of `r^n` is
/// `(1/k)(1/n + sum_{m<k} C(n+m-1, m-1)/m)`.
fn f_k_series(k: u32, r: f64) -> f64 {
    let mut total = 0.0;
    let mut pow = r;
    for n in 1..20_000u32 {
        let c = if k == 0 {
            1.0 / (n as f64 * n as f64)
        } else {
            let mut s = 1.0 / n as f64;
            // C(n+m-1, m-1) built up multiplicatively in m
            let mut binom = 1.0;
            for m in 1..k {
                if m > 1 {
                    binom *= (n + m - 1) as f64 / (m - 1) as f64;
                }
                s += binom / m as f64;
            }
            s / k as f64
        };
        total += c * pow;
        pow *= r;
        if c * pow < 1e-18 * total {
            break;
        }
    }
    total
}

#[test]
fn f_k_examples() {
    assert!((f_k(1, 1.0 - 1.0 / E) - 1.0).abs() < 1e-15);
    let f0 = PI * PI / 12.0 - LN_2 * LN_2 / 2.0;
    assert!((f_k(0, 0.5) - f0).abs() < 1e-15);
    assert!((f_k(0, 0.5) - 0.5822405).abs() < 1e-7);
    assert!((f_k(2, 0.5) - 0.5 * (LN_2 + 1.0)).abs() < 1e-15);
    assert!((f_k(2, 0.5) - 0.8465736).abs() < 1e-7);
    assert_eq!(f_k(3, 0.0), 0.0);
}

#[test]
fn f_k_matches_power_series() {
    for k in 0..=7 {
        for &r in &[0.05, 0.3, 0.5, 0.62, 0.8] {
            let exact = f_k(k, r);
            let series = f_k_series(k, r);
            assert!(
                (exact - series).abs() < 1e-13 * series.max(1.0),
                "k {k} r {r}: {exact} vs {series}"
            );
        }
    }
}

#[test]
fn f_k_is_a_double_integral() {
    // F_k(r) = int_0^r (1/t) int_0^t (1 - s)^{-(k+1)} ds dt
    use crate::quad::integrate;
    for k in 0..6 {
        let inner = move |t: f64| integrate(|s| (1.0 - s).powi(-(k as i32 + 1)), 0.0, t, 1e-14);
        for i in 1..=11 {
            let r = (i as f64 * 0.09).min(0.99);
            let outer = integrate(|t| if t == 0.0 { 1.0 } else { inner(t) / t }, 0.0, r, 1e-12);
            let v = f_k(k, r);
            assert!((outer - v).abs() < 1e-8 * v, "k {k} r {r}: {outer} vs {v}");
        }
    }
}

#[test]
fn f_k_increasing() {
    for k in 0..6 {
        let mut prev = 0.0;
        for i in 1..1000 {
            let v = f_k(k, i as f64 / 1000.0);
            assert!(v > prev);
            prev = v;
        }
    }
}

#[test]
fn m_p_examples() {
    assert_eq!(big_m_p(1.0), 2.0);
    assert_eq!(big_m_p(2.0), 1.0);
    assert_eq!(big_m_p(4.0), 1.0);
    assert!((big_m_p(1.5) - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
}

#[test]
fn interval_indices() {
    assert_eq!(interval_index(0.25), 0);
    assert_eq!(interval_index(0.5), 0);
    assert_eq!(interval_index(0.500001), 1);
    assert_eq!(interval_index(1.0), 1);
    assert_eq!(interval_index(3.0), 5);
}

fn equations() -> Vec<BohrEquation> {
    let mut v = Vec::new();
    for &nu in &[0.0, 0.3, 1.0, 2.5, 7.0] {
        v.push(BohrEquation::E5 { nu });
        for &p in &[1.0, 1.5, 2.0, 4.0] {
            v.push(BohrEquation::E9 { nu, p });
            for &w0 in &[0.0, 0.5, 0.9] {
                v.push(BohrEquation::T8A { nu, p, w0 });
            }
        }
    }
    for k in 0..8 {
        v.push(BohrEquation::E6 { k });
        for &p in &[1.0, 2.0, 3.0] {
            v.push(BohrEquation::T7B { k, p });
            for &w0 in &[0.0, 0.5, 0.9] {
                v.push(BohrEquation::T8B { k, p, w0 });
            }
        }
    }
    v
}

#[test]
fn lhs_sign_convention_and_single_crossing() {
    for eq in equations() {
        assert!(eq.lhs(1e-15) > 0.0, "{eq:?}");
        assert!(eq.lhs(1.0 - 1e-15) < 0.0, "{eq:?}");
        let mut changes = 0;
        let mut prev = eq.lhs(1e-15);
        for i in 1..10_000 {
            let v = eq.lhs(i as f64 / 10_000.0);
            if (v > 0.0) != (prev > 0.0) {
                changes += 1;
            }
            prev = v;
        }
        assert_eq!(changes, 1, "{eq:?}");
    }
}

#[test]
fn lhs_examples() {
    assert!((BohrEquation::E5 { nu: 1.3 }.lhs(1e-12) - 6.0).abs() < 1e-9);
    assert!(BohrEquation::E6 { k: 1 }.lhs(0.553567).abs() < 3e-6);
    for nu in [0.2, 1.0, 3.0] {
        for i in 1..10_000 {
            let r = i as f64 / 10_000.0;
            assert_eq!(
                BohrEquation::E9 { nu, p: 2.0 }.lhs(r),
                BohrEquation::E5 { nu }.lhs(r)
            );
        }
    }
}

#[test]
fn solver_closed_forms() {
    let half = solve(&BohrEquation::E5 { nu: 0.5 }, DEFAULT_TOL).unwrap();
    assert!((half.root - (6.0 / (6.0 + PI * PI)).sqrt()).abs() < 1e-14);
    // quadratic in r^2: 6 r^4 - (12 + pi^2) r^2 + 6 = 0
    let b = 12.0 + PI * PI;
    let one = ((b - (b * b - 144.0).sqrt()) / 12.0).sqrt();
    assert!((r1(1.0).unwrap() - one).abs() < 1e-14);
    let zero = solve(&BohrEquation::E5 { nu: 1e-12 }, DEFAULT_TOL).unwrap();
    assert!((zero.root - 6f64.sqrt() / PI).abs() < 1e-9);
    assert!((r2(0).unwrap() - 0.586028).abs() < 1e-6);
}

#[test]
fn root_result_invariants() {
    for eq in equations() {
        let res = solve(&eq, 1e-13).unwrap();
        let (lo, hi) = res.bracket;
        assert!(lo <= res.root && res.root <= hi);
        assert!(hi - lo < 1e-13);
        assert!(eq.lhs(lo) > 0.0 && eq.lhs(hi) <= 0.0);
        assert!(res.residual.abs() < 1e-9, "{eq:?}: {}", res.residual);
    }
}

#[test]
fn solver_rejects_bad_input() {
    assert!(solve(&BohrEquation::E5 { nu: -1.0 }, 1e-12).is_err());
    assert!(solve(&BohrEquation::E9 { nu: 1.0, p: 0.5 }, 1e-12).is_err());
    assert!(solve(
        &BohrEquation::T8A {
            nu: 1.0,
            p: 1.0,
            w0: 1.0
        },
        1e-12
    )
    .is_err());
    assert!(solve(&BohrEquation::E5 { nu: 1.0 }, 0.0).is_err());
    assert!(bohr_radius(0.0).is_err());
}

const R1_TABLE: [(f64, f64); 7] = [
    (0.0, 0.779697),
    (0.5, 0.614883),
    (1.0, 0.546679),
    (1.5, 0.503190),
    (2.0, 0.471528),
    (2.5, 0.446818),
    (3.0, 0.426678),
];
const R2_TABLE: [f64; 6] = [0.586028, 0.553567, 0.522089, 0.492552, 0.465403, 0.440723];

#[test]
fn table_values() {
    for (nu, v) in R1_TABLE {
        assert!((r1(nu).unwrap() - v).abs() < 1e-6, "r1({nu})");
    }
    for (k, v) in R2_TABLE.iter().enumerate() {
        assert!((r2(k as u32).unwrap() - v).abs() < 1e-6, "r2({k})");
    }
    let rows = emit_table().unwrap();
    assert_eq!(rows.len(), 6);
    let labels: Vec<&str> = rows.iter().map(|r| r.interval.as_str()).collect();
    assert_eq!(
        labels,
        ["(0,1/2]", "(1/2,1]", "(1,3/2]", "(3/2,2]", "(2,5/2]", "(5/2,3]"]
    );
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row.k, k as u32);
        assert!((row.r1_left - R1_TABLE[k].1).abs() < 1e-6);
        assert!((row.r1_right - R1_TABLE[k + 1].1).abs() < 1e-6);
        assert!((row.r2 - R2_TABLE[k]).abs() < 1e-6);
        assert_eq!(row.r_right, row.r1_right.max(row.r2));
        if let Some(s) = row.nu_switch {
            assert!(row.nu_left < s && s < row.nu_right);
            assert!((r1(s).unwrap() - row.r2).abs() < 1e-12);
        }
    }
    // r1 dominates all of (0,1/2]; on (1/2,1] r2(1) takes over before nu = 1
    assert!(rows[0].nu_switch.is_none());
    assert!(rows[1].nu_switch.is_some());
}

#[test]
fn bohr_radius_examples() {
    assert!((bohr_radius(0.5).unwrap() - 0.614883).abs() < 1e-6);
    assert!((bohr_radius(1.0).unwrap() - 0.553567).abs() < 1e-6);
    assert!((bohr_radius(2.0).unwrap() - 0.492552).abs() < 1e-6);
    assert!((bohr_radius(1e-9).unwrap() - 0.779697).abs() < 1e-6);
}

#[test]
fn radii_decrease() {
    let mut prev = r1(0.0).unwrap();
    for i in 1..=60 {
        let v = r1(i as f64 * 0.05).unwrap();
        assert!(v < prev);
        prev = v;
    }
    let mut prev = r2(0).unwrap();
    for k in 1..12 {
        let v = r2(k).unwrap();
        assert!(v < prev);
        prev = v;
    }
}

#[test]
fn r3_examples() {
    assert_eq!(r3(1.0).unwrap(), R3_CAP);
    assert_eq!(r3(2.0).unwrap(), R3_CAP);
    assert!((r3_formula(2.0).unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    let c = r3_crossing();
    assert!((c - 5.772240).abs() < 1e-5, "{c}");
    assert!((r3_formula(c).unwrap() - R3_CAP).abs() < 1e-12);
    let mut prev = r3_formula(1.01).unwrap();
    for i in 1..500 {
        let v = r3_formula(1.01 + i as f64 * 0.2).unwrap();
        assert!(v < prev);
        prev = v;
    }
    assert!(r3(1e4).unwrap() < 0.05);
    assert!(r3(0.5).is_err());
}

#[test]
fn majorant_examples() {
    let s = majorant_sum(&TruncatedSeries::geometric(200), 1.0 / 3.0, None);
    assert!((s.sum - 1.5).abs() < 1e-15);
    assert_eq!(s.tail_bound, None);
    assert_eq!(majorant_sum(&TruncatedSeries::zero(50), 0.9, None).sum, 0.0);
    let f = catalog::thm6_extremal(2.0).unwrap();
    let r = r3_formula(2.0).unwrap();
    let s = majorant_sum(&f.series_h(DEFAULT_ORDER).unwrap(), r, f.envelope());
    assert!((s.sum - 1.0).abs() < 1e-8);
    assert!(s.tail_bound.unwrap() < 1e-8);
    // the closed form ((1 - r^2)^{1 - nu} - 1)/(2(nu - 1)) at other radii
    for nu in [1.5, 3.0] {
        let f = catalog::thm6_extremal(nu).unwrap();
        for r in [0.2f64, 0.5, 0.7] {
            let closed = ((1.0 - r * r).powf(1.0 - nu) - 1.0) / (2.0 * (nu - 1.0));
            let s = majorant_sum(&f.series_h(DEFAULT_ORDER).unwrap(), r, None);
            assert!((s.sum - closed).abs() < 1e-12);
        }
    }
}

#[test]
fn p_bohr_examples() {
    let a = catalog::example53(0.7).unwrap().series_h(128).unwrap();
    let b = catalog::example53(0.7).unwrap().series_g(128).unwrap();
    for p in [1.0, 2.0, 3.5] {
        let zero = TruncatedSeries::zero(128);
        let reduced = p_bohr_sum(&a, &zero, p, 0.4, None).sum;
        assert!((reduced - majorant_sum(&a, 0.4, None).sum).abs() < 1e-15);
        let doubled = p_bohr_sum(&b, &b, p, 0.4, None).sum;
        let expected = 2f64.powf(1.0 / p) * majorant_sum(&b, 0.4, None).sum;
        assert!((doubled - expected).abs() < 1e-14);
        assert!(p_bohr_sum(&a, &b, p, 0.4, None).sum >= reduced);
    }
    let hp = catalog::half_plane();
    let (a, b) = (
        hp.series_h(DEFAULT_ORDER).unwrap(),
        hp.series_g(DEFAULT_ORDER).unwrap(),
    );
    assert_eq!(a.coeff(0), Complex64::new(1.0, 0.0));
    for r in [1e-6, 0.01, 0.3, 0.9] {
        for p in [1.0, 2.0] {
            assert!(p_bohr_sum(&a, &b, p, r, None).sum > 1.0);
        }
    }
}

#[test]
fn membership_thm6_extremal() {
    let f = catalog::thm6_extremal(2.0).unwrap();
    let rep = verify_bohr_membership(&f, 2.0, 1.0, MembershipKind::Analytic, &cfg()).unwrap();
    assert!(rep.precondition_met, "{rep:?}");
    assert_eq!(rep.seminorm_verdict, Verdict::Finite);
    assert!(rep.norm_estimate <= 1.0 + NORM_TOLERANCE);
    assert!((rep.radius - 0.492552).abs() < 1e-6);
    assert_eq!(rep.holds, Some(true));
    assert_eq!(rep.certified, Some(true));
    assert!(rep.sum <= 1.0);
}

fn constant_one() -> HarmonicMap {
    let part = AnalyticPart::new(
        |_| Complex64::new(1.0, 0.0),
        |_| Complex64::new(0.0, 0.0),
        |_| Complex64::new(0.0, 0.0),
    )
    .with_series(TruncatedSeries::one);
    HarmonicMap::analytic("one", part).with_envelope(CoeffEnvelope::new(0.0, 0.0))
}

#[test]
fn membership_constant_map() {
    let f = constant_one();
    for r in [0.0, 0.3, 0.99] {
        assert_eq!(majorant_sum(&f.series_h(64).unwrap(), r, None).sum, 1.0);
    }
    let rep = verify_bohr_membership(&f, 1.0, 1.0, MembershipKind::Analytic, &cfg()).unwrap();
    assert!(rep.precondition_met);
    assert_eq!(rep.sum, 1.0);
    assert_eq!(rep.holds, Some(true));
}

#[test]
fn membership_example53() {
    for t in [0.5, 0.7] {
        let f = catalog::example53(t).unwrap();
        for p in [1.0, 2.0] {
            let rep = verify_bohr_membership(&f, 1.0, p, MembershipKind::Jacobian, &cfg()).unwrap();
            assert!(rep.precondition_met, "{rep:?}");
            assert!((rep.omega0 - t).abs() < 1e-15);
            let expected = membership_radius(MembershipKind::Jacobian, 1.0, p, t).unwrap();
            assert_eq!(rep.radius, expected);
            assert_eq!(rep.holds, Some(true), "{rep:?}");
            assert!(rep.sum <= 1.0);
        }
    }
}

#[test]
fn membership_precondition_failures() {
    let rep =
        verify_bohr_membership(&catalog::half_plane(), 1.0, 1.0, MembershipKind::Harmonic, &cfg()).unwrap();
    assert!(!rep.precondition_met);
    assert_eq!(rep.holds, None);
    assert!(rep.caveat.is_some());
    let harmonic = catalog::example53(0.7).unwrap();
    assert!(verify_bohr_membership(&harmonic, 1.0, 1.0, MembershipKind::Analytic, &cfg()).is_err());
    let bare = HarmonicMap::analytic(
        "bare",
        AnalyticPart::new(
            |z| z.value(),
            |_| Complex64::new(1.0, 0.0),
            |_| Complex64::new(0.0, 0.0),
        ),
    );
    assert!(matches!(
        verify_bohr_membership(&bare, 1.0, 1.0, MembershipKind::Analytic, &cfg()),
        Err(Error::MissingSeries(_))
    ));
}

#[test]
fn membership_radius_orders() {
    // p = 2 makes the harmonic radius the analytic one
    for nu in [0.4, 1.0, 2.2] {
        let a = membership_radius(MembershipKind::Analytic, nu, 2.0, 0.0).unwrap();
        let h = membership_radius(MembershipKind::Harmonic, nu, 2.0, 0.0).unwrap();
        assert_eq!(a, h);
        assert!(membership_radius(MembershipKind::Harmonic, nu, 1.0, 0.0).unwrap() < h);
        let j0 = membership_radius(MembershipKind::Jacobian, nu, 1.0, 0.0).unwrap();
        let j1 = membership_radius(MembershipKind::Jacobian, nu, 1.0, 0.6).unwrap();
        assert!(j1 < j0);
    }
}
