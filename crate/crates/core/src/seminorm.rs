//! Suprema over the disk: `beta_nu`, `beta*_nu` and the pre-Schwarzian norm.
//!
//! The estimators sample a dyadic radial ladder `r_j = 1 - 2^{-j}` (with the
//! boundary distance kept exact), take the maximum over a uniform angular grid
//! on each rung, refine it by golden-section search around the coarse
//! argmax and around the previous rung's argmax, and then classify the ladder as finite, divergent or inconclusive.
//! Evaluation is serial in a fixed order, so results are bit-reproducible.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::HarmonicMap;
use crate::disk::ComplexPoint;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Number of rungs `J`; rung `j` sits at `1 - |z| = 2^{-j}`.
    pub ladder_depth: usize,
    pub angular_samples: usize,
    pub refine_iters: usize,
    /// `eps_d`: a rung ratio above `1 + eps_d` counts as growth.
    pub divergence_growth: f64,
    /// `V_max`: divergence also requires the last rung to exceed this.
    pub divergence_cap: f64,
    /// `m`: how many trailing ratios the classifier inspects.
    pub rungs_required: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            ladder_depth: 40,
            angular_samples: 256,
            refine_iters: 30,
            divergence_growth: 0.01,
            divergence_cap: 1e6,
            rungs_required: 5,
        }
    }
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ladder_depth < 8 {
            return Err(Error::InvalidGrid(format!(
                "ladder_depth must be at least 8, got {}",
                self.ladder_depth
            )));
        }
        if self.ladder_depth > 1000 {
            return Err(Error::InvalidGrid(format!(
                "ladder_depth must be at most 1000, got {}",
                self.ladder_depth
            )));
        }
        if self.angular_samples < 64 {
            return Err(Error::InvalidGrid(format!(
                "angular_samples must be at least 64, got {}",
                self.angular_samples
            )));
        }
        if !(self.divergence_growth > 0.0) {
            return Err(Error::InvalidGrid("divergence_growth must be positive".into()));
        }
        if !(self.divergence_cap > 0.0) {
            return Err(Error::InvalidGrid("divergence_cap must be positive".into()));
        }
        if self.rungs_required < 3 {
            return Err(Error::InvalidGrid(format!(
                "rungs_required must be at least 3, got {}",
                self.rungs_required
            )));
        }
        Ok(())
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.ladder_depth = depth;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Divergent,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "finite",
            Verdict::Divergent => "divergent",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Maximum of the sampled quantity on one circle `|z| = radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rung {
    pub radius: f64,
    pub one_minus_r: f64,
    pub value: f64,
    pub argmax: ComplexPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    pub value: f64,
    pub argmax: ComplexPoint,
    /// The origin followed by rungs `j = 1..=J`.
    pub ladder: Vec<Rung>,
    pub verdict: Verdict,
    /// Some sample evaluated to a non-finite number.
    pub overflow: bool,
}

/// Classifies a ladder of `(r_j, value_j)`.
///
/// A ratio between two zero values counts as `1`; any non-finite value is
/// taken as overflow and reported divergent.
pub fn classify_divergence(ladder: &[(f64, f64)], cfg: &GridConfig) -> Verdict {
    if ladder.iter().any(|(_, v)| !v.is_finite()) {
        return Verdict::Divergent;
    }
    let m = cfg.rungs_required;
    if ladder.len() < m + 1 {
        return Verdict::Inconclusive;
    }
    let ratio = |a: f64, b: f64| {
        if a == 0.0 && b == 0.0 {
            1.0
        } else if a == 0.0 {
            f64::INFINITY
        } else {
            b / a
        }
    };
    let tail: Vec<f64> = ladder[ladder.len() - m - 1..]
        .windows(2)
        .map(|w| ratio(w[0].1, w[1].1))
        .collect();
    let last = ladder[ladder.len() - 1].1;
    if tail.iter().all(|&q| q > 1.0 + cfg.divergence_growth) && last > cfg.divergence_cap {
        Verdict::Divergent
    } else if tail.iter().all(|&q| q < 1.0 + cfg.divergence_growth / 10.0) {
        Verdict::Finite
    } else {
        Verdict::Inconclusive
    }
}

fn sample<F>(q: &F, omr: f64, theta: f64, overflow: &mut bool) -> Result<(f64, ComplexPoint)>
where
    F: Fn(&ComplexPoint) -> Result<f64>,
{
    let z = ComplexPoint::from_polar(omr, theta)?;
    let v = q(&z)?;
    if v.is_finite() {
        Ok((v, z))
    } else {
        *overflow = true;
        Ok((f64::INFINITY, z))
    }
}

fn golden<F>(
    q: &F,
    omr: f64,
    mut a: f64,
    mut b: f64,
    iters: usize,
    overflow: &mut bool,
) -> Result<(f64, ComplexPoint)>
where
    F: Fn(&ComplexPoint) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = sample(q, omr, c, overflow)?;
    let mut fd = sample(q, omr, d, overflow)?;
    for _ in 0..iters {
        if fc.0 >= fd.0 {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = sample(q, omr, c, overflow)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = sample(q, omr, d, overflow)?;
        }
    }
    Ok(if fd.0 > fc.0 { fd } else { fc })
}

/// Max over one circle: coarse grid, then golden-section refinement around
/// the coarse argmax and around the previous rung's argmax, whose peak
/// narrows in proportion to `1 - r`.
fn rung_max<F>(q: &F, omr: f64, previous: &Rung, cfg: &GridConfig, overflow: &mut bool) -> Result<Rung>
where
    F: Fn(&ComplexPoint) -> Result<f64>,
{
    let n = cfg.angular_samples;
    let step = 2.0 * PI / n as f64;
    let mut best = sample(q, omr, 0.0, overflow)?;
    let mut best_k = 0;
    for k in 1..n {
        let s = sample(q, omr, step * k as f64, overflow)?;
        if s.0 > best.0 {
            best = s;
            best_k = k;
        }
    }
    if best.0.is_finite() && cfg.refine_iters > 0 {
        let center = step * best_k as f64;
        let s = golden(q, omr, center - step, center + step, cfg.refine_iters, overflow)?;
        if s.0 > best.0 {
            best = s;
        }
        if previous.one_minus_r < 1.0 {
            let theta = previous.argmax.value().arg();
            let width = (8.0 * previous.one_minus_r).min(step);
            let s = golden(q, omr, theta - width, theta + width, cfg.refine_iters, overflow)?;
            if s.0 > best.0 {
                best = s;
            }
        }
    }
    Ok(Rung {
        radius: 1.0 - omr,
        one_minus_r: omr,
        value: best.0,
        argmax: best.1,
    })
}

/// Ladder estimate of `sup q(z)` over the disk for a nonnegative quantity.
pub fn estimate_sup<F>(q: F, cfg: &GridConfig) -> Result<SupEstimate>
where
    F: Fn(&ComplexPoint) -> Result<f64>,
{
    cfg.validate()?;
    let mut overflow = false;
    let origin = ComplexPoint::origin();
    let v0 = q(&origin)?;
    if !v0.is_finite() {
        overflow = true;
    }
    let mut ladder = vec![Rung {
        radius: 0.0,
        one_minus_r: 1.0,
        value: if v0.is_finite() { v0 } else { f64::INFINITY },
        argmax: origin,
    }];
    for j in 1..=cfg.ladder_depth {
        let omr = (-(j as f64)).exp2();
        let previous = ladder[ladder.len() - 1];
        ladder.push(rung_max(&q, omr, &previous, cfg, &mut overflow)?);
    }
    let pairs: Vec<(f64, f64)> = ladder.iter().map(|r| (r.radius, r.value)).collect();
    let verdict = classify_divergence(&pairs, cfg);
    let best = ladder
        .iter()
        .fold(ladder[0], |acc, r| if r.value > acc.value { *r } else { acc });
    Ok(SupEstimate {
        value: best.value,
        argmax: best.argmax,
        ladder,
        verdict,
        overflow,
    })
}

/// `J_f = |h'|^2 - |g'|^2`, from the map's closed form when it has one.
pub fn jacobian(f: &HarmonicMap, z: &ComplexPoint) -> f64 {
    if let Some(j) = f.jacobian_closed_form() {
        return j(z);
    }
    jacobian_from_derivatives(f, z)
}

/// `Re[(h' - g') conj(h' + g')]`, the Jacobian assembled from derivatives only.
pub fn jacobian_from_derivatives(f: &HarmonicMap, z: &ComplexPoint) -> f64 {
    let hp = f.h_prime(z);
    let gp = f.g_prime(z);
    ((hp - gp) * (hp + gp).conj()).re
}

pub fn dilatation(f: &HarmonicMap, z: &ComplexPoint) -> Result<Complex64> {
    let hp = f.h_prime(z);
    if hp.norm() == 0.0 || !hp.is_finite() {
        return Err(Error::UndefinedDilatation(z.value()));
    }
    Ok(f.g_prime(z) / hp)
}

/// `(1 - |z|^2)^nu` from the stored boundary distance.
pub fn beta_weight(z: &ComplexPoint, nu: f64) -> f64 {
    z.one_minus_r_sq().powf(nu)
}

fn check_weight(nu: f64) -> Result<()> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(crate::error::invalid("nu", format!("must be positive, got {nu}")));
    }
    Ok(())
}

/// Pointwise `(1 - |z|^2)^nu (|h'| + |g'|)`.
pub fn beta_integrand(f: &HarmonicMap, nu: f64, z: &ComplexPoint) -> f64 {
    beta_weight(z, nu) * (f.h_prime(z).norm() + f.g_prime(z).norm())
}

/// Pointwise `(1 - |z|^2)^nu sqrt|J_f|`.
pub fn beta_star_integrand(f: &HarmonicMap, nu: f64, z: &ComplexPoint) -> f64 {
    beta_weight(z, nu) * jacobian(f, z).abs().sqrt()
}

pub fn estimate_beta(f: &HarmonicMap, nu: f64, cfg: &GridConfig) -> Result<SupEstimate> {
    check_weight(nu)?;
    estimate_sup(|z| Ok(beta_integrand(f, nu, z)), cfg)
}

pub fn estimate_beta_star(f: &HarmonicMap, nu: f64, cfg: &GridConfig) -> Result<SupEstimate> {
    check_weight(nu)?;
    estimate_sup(|z| Ok(beta_star_integrand(f, nu, z)), cfg)
}

/// `P_f = h''/h' - conj(omega) omega' / (1 - |omega|^2)`, the `z`-derivative
/// of `log J_f`.
pub fn pre_schwarzian(f: &HarmonicMap, z: &ComplexPoint) -> Result<Complex64> {
    let log_h = match f.h_log_derivative_closed_form() {
        Some(p) => p(z),
        None => {
            let hp = f.h_prime(z);
            if hp.norm() == 0.0 {
                return Err(Error::UndefinedDilatation(z.value()));
            }
            f.h_second(z) / hp
        }
    };
    if f.is_analytic() {
        return Ok(log_h);
    }
    let j = jacobian(f, z);
    if !(j > 0.0) {
        return Err(Error::NotSensePreserving(z.value()));
    }
    let hp = f.h_prime(z);
    let omega = f.g_prime(z) / hp;
    let omega_prime = match f.dilatation_derivative_closed_form() {
        Some(d) => d(z),
        None => f.g_second(z) / hp - omega * log_h,
    };
    let one_minus_omega_sq = j / hp.norm_sqr();
    Ok(log_h - omega.conj() * omega_prime / one_minus_omega_sq)
}

/// Ladder estimate of `||P_f|| = sup (1 - |z|^2) |P_f(z)|`.
///
/// Fails at the first sample where `f` is not sense-preserving.
pub fn estimate_pre_schwarzian_norm(f: &HarmonicMap, cfg: &GridConfig) -> Result<SupEstimate> {
    estimate_sup(|z| Ok(z.one_minus_r_sq() * pre_schwarzian(f, z)?.norm()), cfg)
}

/// `|f(0)| + beta*_nu(f)`. The class is not a vector space, so this is only
/// reported as a number.
pub fn pseudo_norm(f: &HarmonicMap, nu: f64, cfg: &GridConfig) -> Result<(f64, SupEstimate)> {
    let est = estimate_beta_star(f, nu, cfg)?;
    Ok((f.eval(&ComplexPoint::origin()).norm() + est.value, est))
}
