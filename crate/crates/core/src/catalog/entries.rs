use std::f64::consts::{E, PI};

use num_complex::Complex64;

use super::map::{zero_c, AnalyticPart, HarmonicMap, MapParams};
use crate::disk::ComplexPoint;
use crate::error::{invalid, Result};
use crate::quad::integrate_segment;
use crate::series::{binomial_series, log_one_minus_z_series, CoeffEnvelope, TruncatedSeries};
use crate::special::power_difference_quotient;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn log_1mz(z: &ComplexPoint) -> Complex64 {
    z.one_minus_z().ln()
}

fn log_1pz(z: &ComplexPoint) -> Complex64 {
    z.one_plus_z().ln()
}

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(invalid("nu", format!("must be positive, got {nu}")));
    }
    Ok(())
}

/// `1 - |t + (1 - t) z|^2` written without cancellation:
/// `(1 - t) [(1 - t)(1 - |z|^2) + 2 t Re(1 - z)]`.
fn one_minus_affine_dilatation_sq(t: f64, z: &ComplexPoint) -> f64 {
    (1.0 - t) * ((1.0 - t) * z.one_minus_r_sq() + 2.0 * t * z.one_minus_z().re)
}

/// The identity map `z`.
pub fn identity() -> HarmonicMap {
    let h = AnalyticPart::new(|z| z.value(), |_| c(1.0), |_| zero_c()).with_series(TruncatedSeries::identity);
    HarmonicMap::analytic("identity", h).with_envelope(CoeffEnvelope::new(1.0, 0.0))
}

fn h_nu_part(nu: f64) -> AnalyticPart {
    let s = 0.5 - nu;
    AnalyticPart::new(
        move |z| -power_difference_quotient(log_1mz(z), s),
        move |z| (log_1mz(z) * -(nu + 0.5)).exp(),
        move |z| (log_1mz(z) * -(nu + 1.5)).exp() * (nu + 0.5),
    )
    .with_series(move |n| binomial_series(-(nu + 0.5), n.saturating_sub(1)).antiderivative())
}

/// The analytic extremal function `h_nu`, with `h_nu' = (1 - z)^{-nu - 1/2}`
/// and `h_nu(0) = 0`; `-log(1 - z)` at `nu = 1/2`.
pub fn h_nu(nu: f64) -> Result<HarmonicMap> {
    check_nu(nu)?;
    Ok(
        HarmonicMap::analytic("h_nu", h_nu_part(nu)).with_params(MapParams {
            nu: Some(nu),
            ..Default::default()
        }),
    )
}

/// `f_{nu,t} = h_nu + conj(g_{nu,t})` with dilatation `t + (1 - t) z`.
pub fn f_nu_t(nu: f64, t: f64) -> Result<HarmonicMap> {
    check_nu(nu)?;
    if !(0.0..1.0).contains(&t) {
        return Err(invalid("t", format!("must lie in [0, 1), got {t}")));
    }
    let h = h_nu_part(nu);
    let (s1, s2) = (0.5 - nu, 1.5 - nu);
    let omega = move |z: &ComplexPoint| c(t) + z.value() * (1.0 - t);
    let hp = h.clone();
    let hs = h.clone();
    let g = AnalyticPart::new(
        move |z| {
            let l = log_1mz(z);
            -power_difference_quotient(l, s1) + power_difference_quotient(l, s2) * (1.0 - t)
        },
        move |z| omega(z) * hp.first(z),
        move |z| hs.first(z) * (1.0 - t) + omega(z) * hs.second(z),
    )
    .with_series(move |n| {
        let hprime = binomial_series(-(nu + 0.5), n.saturating_sub(1));
        let hc = hprime.coeffs();
        let gp: Vec<Complex64> = (0..hc.len())
            .map(|k| hc[k] * t + if k > 0 { hc[k - 1] * (1.0 - t) } else { zero_c() })
            .collect();
        TruncatedSeries::new(gp).antiderivative()
    });
    let jh = h.clone();
    Ok(HarmonicMap::new("f_nu_t", h, g)
        .with_params(MapParams {
            nu: Some(nu),
            t: Some(t),
            ..Default::default()
        })
        .with_jacobian(move |z| jh.first(z).norm_sqr() * one_minus_affine_dilatation_sq(t, z))
        .with_dilatation_derivative(move |_| c(1.0 - t)))
}

/// The pair of Example-type maps `f = h + conj(h)` with
/// `h = (1 - z)^{1 - mu} / (mu - 1)` and its perturbation `F = f + z`.
#[derive(Debug, Clone)]
pub struct SelfConjugatePair {
    pub f: HarmonicMap,
    pub perturbed: HarmonicMap,
}

pub fn example22(mu: f64, nu: f64) -> Result<SelfConjugatePair> {
    check_nu(nu)?;
    if !(mu > 2.0 * nu + 1.0) {
        return Err(invalid(
            "mu",
            format!("must exceed 2 nu + 1 = {}, got {mu}", 2.0 * nu + 1.0),
        ));
    }
    let a0 = 1.0 / (mu - 1.0);
    let base = AnalyticPart::new(
        move |z| (log_1mz(z) * (1.0 - mu)).exp() * a0,
        move |z| (log_1mz(z) * -mu).exp(),
        move |z| (log_1mz(z) * (-mu - 1.0)).exp() * mu,
    )
    .with_series(move |n| binomial_series(1.0 - mu, n).scale(c(a0)));
    let one = c(1.0);
    let none = AnalyticPart::zero();
    let h = base.linear_combination(one, &none, zero_c(), c(a0));
    let g = base.linear_combination(one, &none, zero_c(), c(-a0));
    let params = MapParams {
        nu: Some(nu),
        mu: Some(mu),
        ..Default::default()
    };
    let f = HarmonicMap::new("example22", h.clone(), g.clone())
        .with_params(params.clone())
        .with_jacobian(|_| 0.0);
    let id = identity();
    let hf = h.linear_combination(one, id.h_part(), one, zero_c());
    let perturbed = HarmonicMap::new("example22_F", hf, g)
        .with_params(params)
        .with_jacobian(move |z| 1.0 + 2.0 * (log_1mz(z) * -mu).exp().re);
    Ok(SelfConjugatePair { f, perturbed })
}

/// `f = h + conj(h)` with `h = exp((1 + z)/(1 - z))`.
pub fn exp_cayley() -> HarmonicMap {
    let cayley = |z: &ComplexPoint| z.one_plus_z() / z.one_minus_z();
    let base = AnalyticPart::new(
        move |z| cayley(z).exp(),
        move |z| {
            let w = z.one_minus_z();
            cayley(z).exp() * 2.0 / (w * w)
        },
        move |z| {
            let w = z.one_minus_z();
            let w2 = w * w;
            cayley(z).exp() * 4.0 * (w + 1.0) / (w2 * w2)
        },
    );
    let one = c(1.0);
    let none = AnalyticPart::zero();
    let h = base.linear_combination(one, &none, zero_c(), c(E));
    let g = base.linear_combination(one, &none, zero_c(), c(-E));
    HarmonicMap::new("exp_cayley", h, g).with_jacobian(|_| 0.0)
}

/// `q = sqrt((1 + z)/(1 - z))` with `q(0) = 1`.
fn cayley_root(z: &ComplexPoint) -> Complex64 {
    ((log_1pz(z) - log_1mz(z)) * 0.5).exp()
}

/// `(q + 1 + 2 z)/(1 - z^2)`: the logarithmic derivative of
/// `H' = exp(q) / ((1 - z)^{3/2} (1 + z)^{1/2})`.
fn example32_log_derivative(z: &ComplexPoint) -> Complex64 {
    (cayley_root(z) + 1.0 + z.value() * 2.0) / z.one_minus_z_sq()
}

/// The harmonic map with `h = log H'` for `H = exp(q)` and dilatation
/// `e^{i theta} z`.
///
/// `h` is the continuous logarithm `q - (3/2) Log(1 - z) - (1/2) Log(1 + z)`
/// and `g` its closed-form primitive
/// `e^{i theta} [q - 2 atan q - 2 z - (3/2) Log(1 - z) + (1/2) Log(1 + z) - 1 + pi/2]`.
pub fn example32(theta: f64) -> Result<HarmonicMap> {
    if !theta.is_finite() {
        return Err(invalid("theta", "must be finite"));
    }
    let rot = Complex64::from_polar(1.0, theta);
    let h = AnalyticPart::new(
        |z| cayley_root(z) - log_1mz(z) * 1.5 - log_1pz(z) * 0.5,
        example32_log_derivative,
        |z| {
            let q = cayley_root(z);
            let w = z.value();
            let d = z.one_minus_z_sq();
            (q * (w * 2.0 + 1.0) + w * w * 2.0 + w * 2.0 + 2.0) / (d * d)
        },
    );
    let hs = h.clone();
    let g = AnalyticPart::new(
        move |z| {
            let q = cayley_root(z);
            rot * (q - q.atan() * 2.0 - z.value() * 2.0 - log_1mz(z) * 1.5 + log_1pz(z) * 0.5
                - (1.0 - PI / 2.0))
        },
        move |z| rot * z.value() * example32_log_derivative(z),
        move |z| rot * (example32_log_derivative(z) + z.value() * hs.second(z)),
    );
    Ok(HarmonicMap::new("example32", h, g)
        .with_params(MapParams {
            theta: Some(theta),
            ..Default::default()
        })
        .with_jacobian(|z| example32_log_derivative(z).norm_sqr() * z.one_minus_r_sq()))
}

/// The analytic generator `H = exp(sqrt((1 + z)/(1 - z)))`.
pub fn example32_generator() -> HarmonicMap {
    let h = AnalyticPart::new(
        |z| cayley_root(z).exp(),
        |z| {
            let q = cayley_root(z);
            q.exp() * q / z.one_minus_z_sq()
        },
        |z| {
            let q = cayley_root(z);
            q.exp() * q / z.one_minus_z_sq() * example32_log_derivative(z)
        },
    );
    HarmonicMap::analytic("example32_H", h).with_h_log_derivative(example32_log_derivative)
}

/// `f_1 = log(1 - z) + conj(z + log(1 - z))` (`which = 1`) and
/// `f_2 = log(1 - z) - conj(z + log(1 - z))` (`which = 2`).
pub fn remark34(which: u8) -> Result<HarmonicMap> {
    let sign = match which {
        1 => 1.0,
        2 => -1.0,
        _ => return Err(invalid("which", format!("must be 1 or 2, got {which}"))),
    };
    let h = AnalyticPart::new(
        log_1mz,
        |z| -z.one_minus_z().inv(),
        |z| -(z.one_minus_z() * z.one_minus_z()).inv(),
    )
    .with_series(|n| -&log_one_minus_z_series(n));
    let g = AnalyticPart::new(
        move |z| (z.value() + log_1mz(z)) * sign,
        move |z| -z.value() / z.one_minus_z() * sign,
        move |z| -(z.one_minus_z() * z.one_minus_z()).inv() * sign,
    )
    .with_series(move |n| (&TruncatedSeries::identity(n) - &log_one_minus_z_series(n)).scale(c(sign)));
    Ok(HarmonicMap::new(format!("remark34_f{which}"), h, g)
        .with_params(MapParams {
            which: Some(which),
            ..Default::default()
        })
        .with_envelope(CoeffEnvelope::new(1.0, 0.0))
        .with_jacobian(|z| z.one_minus_r_sq() / z.one_minus_z().norm_sqr()))
}

/// `h = int_0^z ((1 + s)/(1 - s))^{nu/2} ds`, `g = b1 h`.
pub fn thm33_family(nu: f64, b1: Complex64) -> Result<HarmonicMap> {
    check_nu(nu)?;
    if !(b1.norm() < 1.0) {
        return Err(invalid("b1", format!("must satisfy |b1| < 1, got {b1}")));
    }
    let first = move |z: &ComplexPoint| ((log_1pz(z) - log_1mz(z)) * (0.5 * nu)).exp();
    let base = AnalyticPart::new(
        move |z| {
            integrate_segment(
                |w| ((c(1.0) + w).ln() - (c(1.0) - w).ln()).scale(0.5 * nu).exp(),
                z.value(),
                1e-15,
            )
        },
        first,
        move |z| first(z) * nu / z.one_minus_z_sq(),
    )
    .with_series(move |n| {
        let m = n.saturating_sub(1);
        let up = binomial_series(0.5 * nu, m).reflect();
        let down = binomial_series(-0.5 * nu, m);
        up.mul(&down).antiderivative()
    });
    let g = base.linear_combination(b1, &AnalyticPart::zero(), zero_c(), zero_c());
    let shrink = 1.0 - b1.norm_sqr();
    Ok(HarmonicMap::new("thm33", base, g)
        .with_params(MapParams {
            nu: Some(nu),
            b1: Some(b1),
            ..Default::default()
        })
        .with_jacobian(move |z| first(z).norm_sqr() * shrink)
        .with_dilatation_derivative(|_| zero_c()))
}

/// The analytic extremal `((1 - z^2)^{1 - nu} - 1) / (2 (nu - 1))` for `nu > 1`.
pub fn thm6_extremal(nu: f64) -> Result<HarmonicMap> {
    if !(nu > 1.0 && nu.is_finite()) {
        return Err(invalid("nu", format!("must exceed 1, got {nu}")));
    }
    let s = 1.0 - nu;
    let log_sq = |z: &ComplexPoint| z.one_minus_z_sq().ln();
    let h = AnalyticPart::new(
        move |z| -power_difference_quotient(log_sq(z), s) * 0.5,
        move |z| z.value() * (log_sq(z) * -nu).exp(),
        move |z| {
            let w = z.value();
            let base = (log_sq(z) * -nu).exp();
            base + w * w * 2.0 * nu * base / z.one_minus_z_sq()
        },
    )
    .with_series(move |n| {
        let mut s = binomial_series(1.0 - nu, n / 2 + 1).substitute_z_squared(n);
        let mut cs = s.coeffs().to_vec();
        cs[0] -= 1.0;
        s = TruncatedSeries::new(cs).scale(c(1.0 / (2.0 * (nu - 1.0))));
        s
    });
    let p = (nu - 2.0).max(0.0);
    let scale = p.exp() * 2f64.powf(-p) / (2.0 * (nu - 1.0));
    Ok(HarmonicMap::analytic("thm6", h)
        .with_params(MapParams {
            nu: Some(nu),
            ..Default::default()
        })
        .with_envelope(CoeffEnvelope::new(scale, p)))
}

/// `h_t = 1 - 2 sqrt(t - t^2) + (1/2) log((1 + z)/(1 - z))`,
/// `g_t = ((t - 1)/2) log(1 - z^2) + (t/2) log((1 + z)/(1 - z))`.
pub fn example53(t: f64) -> Result<HarmonicMap> {
    if !(0.5..1.0).contains(&t) {
        return Err(invalid("t", format!("must lie in [1/2, 1), got {t}")));
    }
    let a0 = 1.0 - 2.0 * (t - t * t).sqrt();
    let artanh = |z: &ComplexPoint| (log_1pz(z) - log_1mz(z)) * 0.5;
    let h = AnalyticPart::new(
        move |z| artanh(z) + a0,
        |z| z.one_minus_z_sq().inv(),
        |z| {
            let d = z.one_minus_z_sq();
            z.value() * 2.0 / (d * d)
        },
    )
    .with_series(move |n| {
        let l = log_one_minus_z_series(n);
        let mut s = (&l - &l.reflect()).scale(c(0.5));
        let mut cs = s.coeffs().to_vec();
        cs[0] += a0;
        s = TruncatedSeries::new(cs);
        s
    });
    let g = AnalyticPart::new(
        move |z| (log_1mz(z) + log_1pz(z)) * (0.5 * (t - 1.0)) + artanh(z) * t,
        move |z| (z.value() * (1.0 - t) + t) / z.one_minus_z_sq(),
        move |z| {
            let w = z.value();
            let d = z.one_minus_z_sq();
            ((w * w + 1.0) * (1.0 - t) + w * (2.0 * t)) / (d * d)
        },
    )
    .with_series(move |n| {
        let l = log_one_minus_z_series(n);
        let even = l.substitute_z_squared(n).scale(c(0.5 * (1.0 - t)));
        let odd = (&l - &l.reflect()).scale(c(0.5 * t));
        &even + &odd
    });
    Ok(HarmonicMap::new("example53", h, g)
        .with_params(MapParams {
            t: Some(t),
            ..Default::default()
        })
        .with_envelope(CoeffEnvelope::new(1.0, 0.0))
        .with_jacobian(move |z| one_minus_affine_dilatation_sq(t, z) / z.one_minus_z_sq().norm_sqr()))
}

/// `1/(1 - z) + conj(z/(1 - z))`, whose p-Bohr sum exceeds `|a_0| = 1` for
/// every `r > 0`.
pub fn half_plane() -> HarmonicMap {
    let h = AnalyticPart::new(
        |z| z.one_minus_z().inv(),
        |z| (z.one_minus_z() * z.one_minus_z()).inv(),
        |z| {
            let w = z.one_minus_z();
            (w * w * w).inv() * 2.0
        },
    )
    .with_series(TruncatedSeries::geometric);
    let g = h.linear_combination(c(1.0), &AnalyticPart::zero(), zero_c(), c(-1.0));
    HarmonicMap::new("half_plane", h, g)
        .with_envelope(CoeffEnvelope::new(1.0, 0.0))
        .with_jacobian(|_| 0.0)
}
