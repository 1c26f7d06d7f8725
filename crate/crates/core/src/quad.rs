//! Adaptive Gauss–Legendre quadrature.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

const NODES: usize = 32;

struct Rule {
    nodes: [f64; NODES],
    weights: [f64; NODES],
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(NODES))
}

fn legendre_rule(n: usize) -> Rule {
    let mut nodes = [0.0; NODES];
    let mut weights = [0.0; NODES];
    for i in 0..n {
        // Chebyshev-like initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    Rule { nodes, weights }
}

/// The rule's estimate together with the integral of `|f|`.
fn gauss<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let r = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for (x, w) in r.nodes.iter().zip(&r.weights) {
        let v = f(mid + half * x);
        s += v * *w;
        mass += v.norm() * *w;
    }
    (s * half, mass * half.abs())
}

fn adapt<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let (left, lm) = gauss(f, a, m);
    let (right, rm) = gauss(f, m, b);
    let both = left + right;
    let diff = (both - whole).norm();
    // rounding floor: refinement below this cannot make progress
    let floor = 64.0 * f64::EPSILON * (lm + rm);
    if depth == 0 || diff <= tol || diff <= floor || !diff.is_finite() {
        return both;
    }
    adapt(f, a, m, left, 0.5 * tol, depth - 1) + adapt(f, m, b, right, 0.5 * tol, depth - 1)
}

/// `int_a^b f(t) dt` for a complex-valued `f`, refined until halving changes
/// the estimate by at most `tol`.
pub fn integrate_complex<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    let (whole, _) = gauss(&f, a, b);
    adapt(&f, a, b, whole, tol, 40)
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    integrate_complex(|t| Complex64::new(f(t), 0.0), a, b, tol).re
}

/// `int_0^z f(w) dw` along the segment `[0, z]`.
pub fn integrate_segment<F: Fn(Complex64) -> Complex64>(f: F, z: Complex64, tol: f64) -> Complex64 {
    if z.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    integrate_complex(|t| f(z * t), 0.0, 1.0, tol) * z
}
