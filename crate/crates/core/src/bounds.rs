//! Growth and coefficient estimates for maps with finite `beta*_nu`.

use serde::{Deserialize, Serialize};

use crate::catalog::HarmonicMap;
use crate::error::{invalid, Result};
use crate::special::real_power_difference_quotient;

/// The data a growth or coefficient estimate depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundContext {
    pub nu: f64,
    /// An upper bound for `beta*_nu(f)`.
    pub beta_star: f64,
    /// `|omega_f(0)|`.
    pub omega0: f64,
}

impl BoundContext {
    pub fn new(nu: f64, beta_star: f64, omega0: f64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(invalid("nu", format!("must be positive, got {nu}")));
        }
        if !(beta_star >= 0.0 && beta_star.is_finite()) {
            return Err(invalid(
                "beta_star",
                format!("must be finite and nonnegative, got {beta_star}"),
            ));
        }
        if !(0.0..1.0).contains(&omega0) {
            return Err(invalid("omega0", format!("must lie in [0, 1), got {omega0}")));
        }
        Ok(Self {
            nu,
            beta_star,
            omega0,
        })
    }

    /// `sqrt((1 + omega0)/(1 - omega0))`.
    pub fn dilatation_factor(&self) -> f64 {
        ((1.0 + self.omega0) / (1.0 - self.omega0)).sqrt()
    }
}

/// A proven upper bound for `beta*_nu` of a catalog entry, packaged with the
/// entry's `nu` and `|omega(0)|`.
///
/// * `f_nu_t`: `beta*_nu <= 2^{nu + 1/2} sqrt(1 + t)`, `omega(0) = t`;
/// * `thm33`: `beta*_{nu/2} <= 2^nu sqrt(1 - |b1|^2)`, `omega(0) = b1`;
/// * `example53`: `beta*_1 = 2 sqrt(t - t^2)`, `omega(0) = t`;
/// * `thm6`: `beta*_nu = beta_nu = 1`.
///
/// Other entries give `None`.
pub fn proven_context(f: &HarmonicMap) -> Option<BoundContext> {
    let p = f.params();
    let (nu, beta_star, omega0) = match f.name() {
        "f_nu_t" => {
            let (nu, t) = (p.nu?, p.t.unwrap_or(0.0));
            (nu, 2f64.powf(nu + 0.5) * (1.0 + t).sqrt(), t)
        }
        "thm33" => {
            let (nu, b1) = (p.nu?, p.b1.map_or(0.0, |b| b.norm()));
            (nu / 2.0, 2f64.powf(nu) * (1.0 - b1 * b1).sqrt(), b1)
        }
        "example53" => {
            let t = p.t?;
            (1.0, 2.0 * (t - t * t).sqrt(), t)
        }
        "thm6" => (p.nu?, 1.0, 0.0),
        _ => return None,
    };
    BoundContext::new(nu, beta_star, omega0).ok()
}

/// `h_nu(r) = ((1 - r)^{1/2 - nu} - 1)/(nu - 1/2)`, equal to `-log(1 - r)`
/// at `nu = 1/2`.
///
/// Evaluated as `-expm1(s L)/s` with `s = 1/2 - nu`, `L = log(1 - r)`, which
/// is smooth through `nu = 1/2`.
pub fn h_nu_radial(nu: f64, r: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&r));
    -real_power_difference_quotient((-r).ln_1p(), 0.5 - nu)
}

/// `beta* sqrt((1 + omega0)/(1 - omega0)) h_nu(r)`, a bound for
/// `max{|h(z) - a0|, |g(z)|}` on `|z| = r`.
pub fn growth_bound(ctx: &BoundContext, r: f64) -> f64 {
    ctx.beta_star * ctx.dilatation_factor() * h_nu_radial(ctx.nu, r)
}

/// For `nu < 1/2`, the `r`-independent bound `beta* sqrt(...) / (1/2 - nu)`.
pub fn uniform_growth_cap(ctx: &BoundContext) -> Option<f64> {
    (ctx.nu < 0.5).then(|| ctx.beta_star * ctx.dilatation_factor() / (0.5 - ctx.nu))
}

/// Bound for `max{|a_n|, |b_n|}`.
pub fn coeff_bound(ctx: &BoundContext, n: usize) -> f64 {
    assert!(n >= 1, "coefficient index starts at 1");
    let nu = ctx.nu;
    if n == 1 {
        return ctx.beta_star / (1.0 - ctx.omega0 * ctx.omega0).sqrt();
    }
    ctx.beta_star
        * (std::f64::consts::E / (2.0 * nu + 1.0)).powf(nu + 0.5)
        * ctx.dilatation_factor()
        * (n as f64 + 2.0 * nu).powf(nu - 0.5)
}

/// The Cauchy-estimate bound `(beta*/n) sqrt(...) r^{1-n} (1 - r^2)^{-(nu + 1/2)}`
/// before optimizing over `r`.
pub fn coeff_bound_at_radius(ctx: &BoundContext, n: usize, r: f64) -> f64 {
    let nf = n as f64;
    ctx.beta_star / nf * ctx.dilatation_factor() * r.powf(1.0 - nf) * (1.0 - r * r).powf(-(ctx.nu + 0.5))
}

/// `sqrt((n - 1)/(n + 2 nu))`, the minimizer of [`coeff_bound_at_radius`].
pub fn optimal_radius(nu: f64, n: usize) -> f64 {
    let nf = n as f64;
    ((nf - 1.0) / (nf + 2.0 * nu)).sqrt()
}

/// `[(1 + (2nu + 1)/(x - 1))^{(x - 1)/(2nu + 1)}]^{nu + 1/2} (1 + 2nu/x)`.
pub fn phi_nu(nu: f64, x: f64) -> f64 {
    let a = 2.0 * nu + 1.0;
    let inner = ((x - 1.0) / a * (a / (x - 1.0)).ln_1p()).exp();
    inner.powf(nu + 0.5) * (1.0 + 2.0 * nu / x)
}

/// `(2nu - 1)^2 x^2 + 8 (nu - nu^2) x + 8 nu^2`.
pub fn psi_nu(nu: f64, x: f64) -> f64 {
    let d = 2.0 * nu - 1.0;
    d * d * x * x + 8.0 * (nu - nu * nu) * x + 8.0 * nu * nu
}
