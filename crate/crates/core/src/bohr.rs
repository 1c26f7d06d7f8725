//! Bohr radii: the radius equations, their bisection solver, majorant and
//! p-Bohr sums, membership checks and the radius table.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::catalog::HarmonicMap;
use crate::disk::{ComplexPoint, DiskSampler};
use crate::error::{invalid, Error, Result};
use crate::seminorm::{self, GridConfig, Verdict};
use crate::series::{CoeffEnvelope, TruncatedSeries, DEFAULT_ORDER};
use crate::special::dilog;

/// The constant `r_3(1)` below which no radius for `nu >= 1` can be pushed.
pub const R3_CAP: f64 = 0.624162;

/// Default bisection tolerance on the bracket width.
pub const DEFAULT_TOL: f64 = 1e-15;

const BRACKET_LO: f64 = 1e-15;
const BRACKET_HI: f64 = 1.0 - 1e-15;

/// `F_k(r)`: the dilogarithm for `k = 0`, `-log(1 - r)` for `k = 1`, and
/// `(1/k)[-log(1 - r) + sum_{n<k} ((1 - r)^{-n} - 1)/n]` for `k >= 2`.
pub fn f_k(k: u32, r: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&r));
    let l = -(-r).ln_1p();
    match k {
        0 => dilog(r),
        1 => l,
        _ => {
            let mut s = l;
            for n in 1..k {
                s += (n as f64 * l).exp_m1() / n as f64;
            }
            s / k as f64
        }
    }
}

/// `M_p = max{2^{2/p - 1}, 1}`.
pub fn big_m_p(p: f64) -> f64 {
    2f64.powf(2.0 / p - 1.0).max(1.0)
}

/// `k = ceil(2 nu) - 1`, so that `nu` lies in `(k/2, (k + 1)/2]`.
pub fn interval_index(nu: f64) -> u32 {
    ((2.0 * nu).ceil() as i64 - 1).max(0) as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BohrEquation {
    /// `6 (1 - r^2)^{2 nu} - pi^2 r^2`.
    E5 { nu: f64 },
    /// `1 - r - r F_k(r)`.
    E6 { k: u32 },
    /// `6 (1 - r^2)^{2 nu} - M_p pi^2 r^2`.
    E9 { nu: f64, p: f64 },
    /// `1 - r - M_p r F_k(r)`.
    T7B { k: u32, p: f64 },
    /// `3 (1 - w0)(1 - r^2)^{2 nu + 1} - M_p pi^2 (1 + w0) r^2`.
    T8A { nu: f64, p: f64, w0: f64 },
    /// `(1 - w0)(1 - r) - 2 M_p (1 + w0) r F_{k+1}(r)`.
    T8B { k: u32, p: f64, w0: f64 },
}

impl BohrEquation {
    /// Checks parameter ranges. `nu = 0` is accepted for the power-type
    /// equations, where it gives the `nu -> 0+` limit.
    pub fn validate(&self) -> Result<()> {
        let nu_ok = |nu: f64| {
            if nu >= 0.0 && nu.is_finite() {
                Ok(())
            } else {
                Err(invalid("nu", format!("must be nonnegative, got {nu}")))
            }
        };
        let p_ok = |p: f64| {
            if p >= 1.0 && p.is_finite() {
                Ok(())
            } else {
                Err(invalid("p", format!("must be at least 1, got {p}")))
            }
        };
        let w_ok = |w: f64| {
            if (0.0..1.0).contains(&w) {
                Ok(())
            } else {
                Err(invalid("w0", format!("must lie in [0, 1), got {w}")))
            }
        };
        match *self {
            BohrEquation::E5 { nu } => nu_ok(nu),
            BohrEquation::E6 { .. } => Ok(()),
            BohrEquation::E9 { nu, p } => nu_ok(nu).and(p_ok(p)),
            BohrEquation::T7B { p, .. } => p_ok(p),
            BohrEquation::T8A { nu, p, w0 } => nu_ok(nu).and(p_ok(p)).and(w_ok(w0)),
            BohrEquation::T8B { p, w0, .. } => p_ok(p).and(w_ok(w0)),
        }
    }

    /// The signed left-hand side: positive near `0+`, negative near `1-`.
    pub fn lhs(&self, r: f64) -> f64 {
        let r2 = r * r;
        let omr2 = (1.0 - r) * (1.0 + r);
        match *self {
            BohrEquation::E5 { nu } => 6.0 * omr2.powf(2.0 * nu) - PI * PI * r2,
            BohrEquation::E6 { k } => 1.0 - r - r * f_k(k, r),
            BohrEquation::E9 { nu, p } => 6.0 * omr2.powf(2.0 * nu) - big_m_p(p) * PI * PI * r2,
            BohrEquation::T7B { k, p } => 1.0 - r - big_m_p(p) * r * f_k(k, r),
            BohrEquation::T8A { nu, p, w0 } => {
                3.0 * (1.0 - w0) * omr2.powf(2.0 * nu + 1.0) - big_m_p(p) * PI * PI * (1.0 + w0) * r2
            }
            BohrEquation::T8B { k, p, w0 } => {
                (1.0 - w0) * (1.0 - r) - 2.0 * big_m_p(p) * (1.0 + w0) * r * f_k(k + 1, r)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub root: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: u32,
}

/// Bisection on `(1e-15, 1 - 1e-15)` until the bracket is narrower than `tol`
/// or can no longer be split.
pub fn solve(eq: &BohrEquation, tol: f64) -> Result<RootResult> {
    eq.validate()?;
    if !(tol > 0.0) {
        return Err(invalid("tol", format!("must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = (BRACKET_LO, BRACKET_HI);
    if !(eq.lhs(lo) > 0.0 && eq.lhs(hi) < 0.0) {
        return Err(Error::NoSignChange { lo, hi });
    }
    let mut iterations = 0;
    while hi - lo >= tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eq.lhs(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let root = 0.5 * (lo + hi);
    Ok(RootResult {
        root,
        residual: eq.lhs(root),
        bracket: (lo, hi),
        iterations,
    })
}

/// `r_1(nu)`, the root of `6 (1 - r^2)^{2 nu} = pi^2 r^2`.
pub fn r1(nu: f64) -> Result<f64> {
    Ok(solve(&BohrEquation::E5 { nu }, DEFAULT_TOL)?.root)
}

/// `r_2(k)`, the root of `r F_k(r) = 1 - r`.
pub fn r2(k: u32) -> Result<f64> {
    Ok(solve(&BohrEquation::E6 { k }, DEFAULT_TOL)?.root)
}

/// `max{r_1(nu), r_2(k)}` with `nu` in `(k/2, (k + 1)/2]`.
pub fn bohr_radius(nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(invalid("nu", format!("must be positive, got {nu}")));
    }
    Ok(r1(nu)?.max(r2(interval_index(nu))?))
}

/// `sqrt(1 - (2 nu - 1)^{-1/(nu - 1)})` for `nu > 1`: the radius at which the
/// majorant series of the analytic extremal reaches `1`.
pub fn r3_formula(nu: f64) -> Result<f64> {
    if !(nu > 1.0 && nu.is_finite()) {
        return Err(invalid("nu", format!("must exceed 1, got {nu}")));
    }
    let x = -(2.0 * nu - 1.0).ln() / (nu - 1.0);
    Ok((-x.exp_m1()).sqrt())
}

/// `r_3(nu) = min{0.624162, r3_formula(nu)}`, and `0.624162` at `nu = 1`.
pub fn r3(nu: f64) -> Result<f64> {
    if nu == 1.0 {
        return Ok(R3_CAP);
    }
    Ok(r3_formula(nu)?.min(R3_CAP))
}

/// The `nu > 1` at which [`r3_formula`] crosses `0.624162`.
pub fn r3_crossing() -> f64 {
    let g = |nu: f64| r3_formula(nu).expect("nu > 1") - R3_CAP;
    let (mut lo, mut hi) = (1.0 + 1e-6, 1e3);
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A partial sum over stored coefficients together with a bound on the
/// omitted tail, when a coefficient envelope is available.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MajorantSum {
    pub sum: f64,
    pub tail_bound: Option<f64>,
}

/// `sum |c_n| r^n` over the stored coefficients.
pub fn majorant_sum(a: &TruncatedSeries, r: f64, envelope: Option<CoeffEnvelope>) -> MajorantSum {
    let mut sum = 0.0;
    let mut pow = 1.0;
    for c in a.coeffs() {
        sum += c.norm() * pow;
        pow *= r;
    }
    MajorantSum {
        sum,
        tail_bound: envelope.and_then(|e| e.tail_bound(a.order(), r)),
    }
}

/// `|a_0| + sum_{n>=1} (|a_n|^p + |b_n|^p)^{1/p} r^n`.
pub fn p_bohr_sum(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    p: f64,
    r: f64,
    envelope: Option<CoeffEnvelope>,
) -> MajorantSum {
    let order = a.order().min(b.order());
    let mut sum = a.coeff(0).norm();
    let mut pow = r;
    for n in 1..=order {
        let x = a.coeff(n).norm();
        let y = b.coeff(n).norm();
        sum += (x.powf(p) + y.powf(p)).powf(1.0 / p) * pow;
        pow *= r;
    }
    let tail = envelope
        .and_then(|e| e.tail_bound(order, r))
        .map(|t| t * 2f64.powf(1.0 / p));
    MajorantSum {
        sum,
        tail_bound: tail,
    }
}

/// Which theorem's hypotheses and radius a membership check uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipKind {
    /// Analytic `f` with `|f(0)| + beta_nu(f) <= 1`.
    Analytic,
    /// Harmonic `f` with `|a_0| + beta_nu(f) <= 1`.
    Harmonic,
    /// Sense-preserving `f` with `|a_0| + beta*_nu(f) <= 1`.
    Jacobian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub kind: MembershipKind,
    pub nu: f64,
    pub p: f64,
    /// `|a_0|` plus the seminorm estimate.
    pub norm_estimate: f64,
    pub seminorm_verdict: Verdict,
    pub precondition_met: bool,
    pub omega0: f64,
    pub radius: f64,
    pub sum: f64,
    pub tail_bound: Option<f64>,
    /// `sum <= 1 + tail_bound`; `None` when the precondition fails.
    pub holds: Option<bool>,
    /// `sum + tail_bound <= 1`, which bounds the full series.
    pub certified: Option<bool>,
    pub caveat: Option<String>,
}

/// Slack allowed in the norm precondition for estimator round-off.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// The theorem radius for the given kind.
pub fn membership_radius(kind: MembershipKind, nu: f64, p: f64, omega0: f64) -> Result<f64> {
    let k = interval_index(nu);
    let (a, b) = match kind {
        MembershipKind::Analytic => (BohrEquation::E5 { nu }, BohrEquation::E6 { k }),
        MembershipKind::Harmonic => (BohrEquation::E9 { nu, p }, BohrEquation::T7B { k, p }),
        MembershipKind::Jacobian => (
            BohrEquation::T8A { nu, p, w0: omega0 },
            BohrEquation::T8B { k, p, w0: omega0 },
        ),
    };
    Ok(solve(&a, DEFAULT_TOL)?.root.max(solve(&b, DEFAULT_TOL)?.root))
}

/// Evaluates the Bohr-type sum of `f` at the radius of the matching theorem,
/// after checking the theorem's norm precondition on the estimated seminorm.
pub fn verify_bohr_membership(
    f: &HarmonicMap,
    nu: f64,
    p: f64,
    kind: MembershipKind,
    cfg: &GridConfig,
) -> Result<MembershipReport> {
    if !(nu > 0.0) {
        return Err(invalid("nu", format!("must be positive, got {nu}")));
    }
    if !(p >= 1.0) {
        return Err(invalid("p", format!("must be at least 1, got {p}")));
    }
    if kind == MembershipKind::Analytic && !f.is_analytic() {
        return Err(invalid("f", "analytic membership needs an analytic map"));
    }
    let a = f
        .series_h(DEFAULT_ORDER)
        .ok_or_else(|| Error::MissingSeries(f.name().to_string()))?;
    let b = f
        .series_g(DEFAULT_ORDER)
        .ok_or_else(|| Error::MissingSeries(f.name().to_string()))?;
    let a0 = a.coeff(0).norm();
    let est = match kind {
        MembershipKind::Jacobian => seminorm::estimate_beta_star(f, nu, cfg)?,
        _ => seminorm::estimate_beta(f, nu, cfg)?,
    };
    let norm_estimate = a0 + est.value;
    let mut precondition_met = est.verdict == Verdict::Finite && norm_estimate <= 1.0 + NORM_TOLERANCE;
    let mut omega0 = 0.0;
    let mut caveat = None;
    if kind == MembershipKind::Jacobian {
        omega0 = seminorm::dilatation(f, &ComplexPoint::origin())?.norm();
        let mut sampler = DiskSampler::new(0, 0.99);
        let sense = std::iter::once(ComplexPoint::origin())
            .chain(sampler.points(1000))
            .all(|z| seminorm::jacobian(f, &z) > 0.0);
        if !sense {
            precondition_met = false;
            caveat = Some("not sense-preserving at a sample".to_string());
        }
        if omega0 >= 1.0 {
            precondition_met = false;
        }
    }
    if !precondition_met {
        return Ok(MembershipReport {
            kind,
            nu,
            p,
            norm_estimate,
            seminorm_verdict: est.verdict,
            precondition_met,
            omega0,
            radius: f64::NAN,
            sum: f64::NAN,
            tail_bound: None,
            holds: None,
            certified: None,
            caveat: caveat.or_else(|| Some("norm precondition fails".to_string())),
        });
    }
    let radius = membership_radius(kind, nu, p, omega0)?;
    let s = if f.is_analytic() {
        majorant_sum(&a, radius, f.envelope())
    } else {
        p_bohr_sum(&a, &b, p, radius, f.envelope())
    };
    if s.tail_bound.is_none() {
        caveat = Some("no coefficient envelope: sum of stored terms only".to_string());
    }
    let tail = s.tail_bound.unwrap_or(0.0);
    Ok(MembershipReport {
        kind,
        nu,
        p,
        norm_estimate,
        seminorm_verdict: est.verdict,
        precondition_met,
        omega0,
        radius,
        sum: s.sum,
        tail_bound: s.tail_bound,
        holds: Some(s.sum <= 1.0 + tail),
        certified: s.tail_bound.map(|t| s.sum + t <= 1.0),
        caveat,
    })
}

/// One `nu`-interval `(k/2, (k + 1)/2]` of the radius table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub interval: String,
    pub k: u32,
    pub nu_left: f64,
    pub nu_right: f64,
    /// `r_1` at the left end (its limit from the right).
    pub r1_left: f64,
    pub r1_right: f64,
    pub r2: f64,
    pub r_left: f64,
    pub r_right: f64,
    /// The `nu` inside the interval where `r_1(nu) = r_2(k)`, if any.
    pub nu_switch: Option<f64>,
}

fn half_label(twice: u32) -> String {
    if twice.is_multiple_of(2) {
        (twice / 2).to_string()
    } else {
        format!("{twice}/2")
    }
}

/// The six rows `(0, 1/2], ..., (5/2, 3]`.
pub fn emit_table() -> Result<Vec<TableRow>> {
    (0..6u32)
        .map(|k| {
            let nu_left = k as f64 / 2.0;
            let nu_right = (k + 1) as f64 / 2.0;
            let r1_left = r1(nu_left)?;
            let r1_right = r1(nu_right)?;
            let r2 = r2(k)?;
            let nu_switch = if r1_left > r2 && r2 > r1_right {
                let (mut lo, mut hi) = (nu_left, nu_right);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if r1(mid)? > r2 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                Some(0.5 * (lo + hi))
            } else {
                None
            };
            Ok(TableRow {
                interval: format!("({},{}]", half_label(k), half_label(k + 1)),
                k,
                nu_left,
                nu_right,
                r1_left,
                r1_right,
                r2,
                r_left: r1_left.max(r2),
                r_right: r1_right.max(r2),
                nu_switch,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests;
