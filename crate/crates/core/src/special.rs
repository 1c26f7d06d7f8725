//! Small special-function helpers shared by the catalog and the Bohr module.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `e^w - 1` without cancellation for small `|w|`.
pub fn cexpm1(w: Complex64) -> Complex64 {
    let (a, b) = (w.re, w.im);
    let s = (0.5 * b).sin();
    let re = a.exp_m1() * b.cos() - 2.0 * s * s;
    let im = a.exp() * b.sin();
    Complex64::new(re, im)
}

/// `(e^{s L} - 1) / s`, continuous at `s = 0` where it equals `L`.
///
/// With `L = Log(1 - z)` this is `((1 - z)^s - 1) / s`, the building block of
/// every power-type catalog entry; the `s = 0` limit is the logarithm.
pub fn power_difference_quotient(log_base: Complex64, s: f64) -> Complex64 {
    if s == 0.0 {
        log_base
    } else {
        cexpm1(log_base * s) / s
    }
}

/// Real counterpart of [`power_difference_quotient`].
pub fn real_power_difference_quotient(log_base: f64, s: f64) -> f64 {
    if s == 0.0 {
        log_base
    } else {
        (s * log_base).exp_m1() / s
    }
}

/// Dilogarithm `Li_2(r) = sum r^n / n^2` for `0 <= r <= 1`.
///
/// Direct summation until the terms drop below `1e-17` for `r <= 0.9`;
/// beyond that the reflection `Li_2(r) = pi^2/6 - ln r ln(1 - r) - Li_2(1 - r)`.
pub fn dilog(r: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&r));
    if r == 1.0 {
        return PI * PI / 6.0;
    }
    if r > 0.9 {
        return PI * PI / 6.0 - r.ln() * (-r).ln_1p() - dilog_series(1.0 - r);
    }
    dilog_series(r)
}

pub(crate) fn dilog_series(r: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = r;
    let mut n = 1.0f64;
    loop {
        let term = pow / (n * n);
        if term < 1e-17 {
            break;
        }
        sum += term;
        pow *= r;
        n += 1.0;
    }
    sum
}
