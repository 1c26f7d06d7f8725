//! Truncated power series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0, ..., c_N` and stands for the
//! first `N + 1` Taylor coefficients of an analytic function. Binary
//! operations truncate to the smaller of the two orders; nothing is padded.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default truncation order used by the catalog series generators.
pub const DEFAULT_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient vector; a series has order `>= 0`.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least c_0");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    /// `1 + 0 z + ...`
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// Coefficients of `1 / (1 - z)`.
    pub fn geometric(order: usize) -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0); order + 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::new(self.coeffs[..=n].to_vec())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Coefficientwise sum up to the common order.
    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `c_n <- (n + 1) c_{n+1}`; the order drops by one (a constant stays a
    /// constant zero series).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * n as f64)
                .collect(),
        )
    }

    /// Antiderivative vanishing at the origin; the order grows by one.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        out.extend(self.coeffs.iter().enumerate().map(|(n, c)| c / (n + 1) as f64));
        Self::new(out)
    }

    /// `s(z) -> s(z^2)`, capped at order `cap`.
    pub fn substitute_z_squared(&self, cap: usize) -> Self {
        let order = (2 * self.order()).min(cap);
        let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if 2 * n > order {
                break;
            }
            out[2 * n] = *c;
        }
        Self::new(out)
    }

    /// `s(z) -> s(-z)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| if n % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// Horner evaluation of the stored polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `sum n^2 |c_n|^2 r^{2(n-1)}`, the mean of `|s'|^2` over `|z| = r`.
    pub fn derivative_energy(&self, r: f64) -> f64 {
        let r2 = r * r;
        let mut pow = 1.0;
        let mut sum = 0.0;
        for (n, c) in self.coeffs.iter().enumerate().skip(1) {
            let nf = n as f64;
            sum += nf * nf * c.norm_sqr() * pow;
            pow *= r2;
        }
        sum
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Coefficients of `(1 - z)^alpha`: `c_{n+1} = c_n (n - alpha) / (n + 1)`.
pub fn binomial_series(alpha: f64, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = 1.0f64;
    coeffs.push(Complex64::new(c, 0.0));
    for n in 0..order {
        c *= (n as f64 - alpha) / (n as f64 + 1.0);
        coeffs.push(Complex64::new(c, 0.0));
    }
    TruncatedSeries::new(coeffs)
}

/// Coefficients `(0, 1, 1/2, ..., 1/N)` of `-log(1 - z)`.
pub fn log_one_minus_z_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::new(
        (0..=order)
            .map(|n| {
                if n == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(1.0 / n as f64, 0.0)
                }
            })
            .collect(),
    )
}

/// A certified bound `|c_n| <= scale * n^power` for all `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffEnvelope {
    pub scale: f64,
    pub power: f64,
}

impl CoeffEnvelope {
    pub fn new(scale: f64, power: f64) -> Self {
        assert!(scale >= 0.0 && power >= 0.0);
        Self { scale, power }
    }

    pub fn bound(&self, n: usize) -> f64 {
        self.scale * (n as f64).powf(self.power)
    }

    /// Upper bound for `sum_{n > order} scale n^power r^n`.
    ///
    /// Consecutive terms past `order + 1` shrink by at most
    /// `q = r ((order + 2) / (order + 1))^power`, so the tail is dominated by a
    /// geometric series. Returns `None` when `q >= 1`.
    pub fn tail_bound(&self, order: usize, r: f64) -> Option<f64> {
        if r == 0.0 || self.scale == 0.0 {
            return Some(0.0);
        }
        let n1 = (order + 1) as f64;
        let q = r * ((n1 + 1.0) / n1).powf(self.power);
        if q >= 1.0 {
            return None;
        }
        let first = self.scale * n1.powf(self.power) * r.powf(n1);
        Some(first / (1.0 - q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
        a.order() == b.order()
            && a.coeffs()
                .iter()
                .zip(b.coeffs())
                .all(|(x, y)| (x - y).norm() <= tol * (1.0 + y.norm()))
    }

    #[test]
    fn add_examples() {
        let s = &TruncatedSeries::from_real(&[1.0, 2.0]) + &TruncatedSeries::from_real(&[3.0, 4.0]);
        assert_eq!(s, TruncatedSeries::from_real(&[4.0, 6.0]));
    }

    #[test]
    fn add_identity_and_inverse() {
        let s = log_one_minus_z_series(20);
        assert_eq!(s.add(&TruncatedSeries::zero(20)), s);
        let sum = s.add(&(-&s));
        assert!(sum.coeffs().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn add_truncates_to_min_order() {
        let s = TruncatedSeries::geometric(5).add(&TruncatedSeries::geometric(3));
        assert_eq!(s.order(), 3);
    }

    #[test]
    fn geometric_squared() {
        let g = TruncatedSeries::geometric(40);
        let sq = g.mul(&g);
        for (n, a) in sq.coeffs().iter().enumerate() {
            assert_eq!(*a, c(n as f64 + 1.0));
        }
    }

    #[test]
    fn unit_is_multiplicative_identity() {
        let s = binomial_series(2.7, 30);
        assert_eq!(s.mul(&TruncatedSeries::one(30)), s);
    }

    #[test]
    fn half_binomials_multiply_to_geometric() {
        // oracle: (1 - z)^{-1} has c_n = (-1)^n C(-1, n) = 1, computed independently
        let n = 32;
        let a = binomial_series(-0.5, n);
        let prod = a.mul(&a);
        let direct: Vec<f64> = (0..=n)
            .map(|k| {
                // (-1)^k * prod_{i<k} (-1 - i) / (i + 1)
                let mut v = 1.0;
                for i in 0..k {
                    v *= -(-1.0 - i as f64) / (i as f64 + 1.0);
                }
                v
            })
            .collect();
        assert!(close(&prod, &TruncatedSeries::from_real(&direct), 1e-13));
        assert!(close(&prod, &binomial_series(-1.0, n), 1e-13));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            TruncatedSeries::identity(4).derivative(),
            TruncatedSeries::from_real(&[1.0, 0.0, 0.0, 0.0])
        );
        let d = log_one_minus_z_series(50).derivative();
        assert!(close(&d, &TruncatedSeries::geometric(49), 1e-15));
    }

    #[test]
    fn antiderivative_inverts_derivative() {
        let s = log_one_minus_z_series(30);
        assert!(close(&s.derivative().antiderivative(), &s, 1e-15));
        let g = TruncatedSeries::geometric(10);
        assert!(close(&g.antiderivative().derivative(), &g, 1e-15));
    }

    #[test]
    fn binomial_examples() {
        let a = binomial_series(1.0, 5);
        assert_eq!(a, TruncatedSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(binomial_series(-1.0, 7), TruncatedSeries::geometric(7));
    }

    #[test]
    fn thm6_leading_coefficient_is_half() {
        // ((1 - z^2)^{1-nu} - 1) / (2 (nu - 1)): z^2 coefficient is 1/2 for all nu > 1
        for &nu in &[1.5, 2.0, 3.0, 7.25] {
            let b = binomial_series(1.0 - nu, 8).substitute_z_squared(8);
            let f = b.sub(&TruncatedSeries::one(8)).scale(c(1.0 / (2.0 * (nu - 1.0))));
            assert!((f.coeff(2) - c(0.5)).norm() < 1e-15);
            assert_eq!(f.coeff(1), c(0.0));
            assert_eq!(f.coeff(3), c(0.0));
        }
    }

    #[test]
    fn log_series_examples() {
        let s = log_one_minus_z_series(3);
        assert_eq!(s.coeff(0), c(0.0));
        assert_eq!(s.coeff(1), c(1.0));
        assert_eq!(s.coeff(2), c(0.5));
        assert!((s.coeff(3).re - 1.0 / 3.0).abs() < 1e-16);
        let r = 1.0 - (-1.0f64).exp();
        let v = log_one_minus_z_series(200).eval(c(r));
        assert!((v.re - 1.0).abs() < 1e-6);
    }

    #[test]
    fn substitution_examples() {
        let s = TruncatedSeries::identity(4).substitute_z_squared(8);
        assert_eq!(s.coeff(2), c(1.0));
        assert_eq!(s.order(), 8);
        assert_eq!(s.coeffs().iter().filter(|c| c.norm() != 0.0).count(), 1);
        let l = log_one_minus_z_series(4).substitute_z_squared(8);
        assert_eq!(l.coeff(2), c(1.0));
        assert_eq!(l.coeff(4), c(0.5));
        assert_eq!(l.coeff(3), c(0.0));
        let e = binomial_series(-1.0, 10).substitute_z_squared(10);
        for n in 0..=10 {
            assert_eq!(e.coeff(n), c(if n % 2 == 0 { 1.0 } else { 0.0 }));
        }
    }

    #[test]
    fn eval_examples() {
        let s = binomial_series(0.3, 12);
        assert_eq!(s.eval(c(0.0)), s.coeff(0));
        let g = TruncatedSeries::geometric(60).eval(c(0.5));
        assert!((g.re - 2.0).abs() < 1e-12);
        let r = 0.586_028;
        let v = log_one_minus_z_series(DEFAULT_ORDER).eval(c(r));
        assert!((v.re + (1.0 - r).ln()).abs() < 1e-14);
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), order + 1)
            .prop_map(|v| TruncatedSeries::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn cauchy_product_commutes_and_associates(
            a in series_strategy(24), b in series_strategy(24), c3 in series_strategy(24)
        ) {
            prop_assert!(close(&a.mul(&b), &b.mul(&a), 1e-12));
            prop_assert!(close(&a.mul(&b).mul(&c3), &a.mul(&b.mul(&c3)), 1e-12));
        }

        #[test]
        fn antiderivative_then_derivative_is_identity(a in series_strategy(40)) {
            let back = a.antiderivative().derivative();
            for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
                prop_assert!((x - y).norm() <= 1e-15 * y.norm().max(1e-300));
            }
        }

        #[test]
        fn parseval_matches_trapezoid(a in series_strategy(16), r in 0.05f64..0.95) {
            let d = a.derivative();
            let m = 4 * a.order().max(1);
            let mean: f64 = (0..m)
                .map(|k| {
                    let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
                    d.eval(z).norm_sqr()
                })
                .sum::<f64>() / m as f64;
            let energy = a.derivative_energy(r);
            prop_assert!((mean - energy).abs() <= 1e-8 * energy.max(1.0));
        }
    }

    #[test]
    fn binomial_exponents_add() {
        let set = [0.5, -0.5, 1.5, -1.5, 2.7];
        for &x in &set {
            for &y in &set {
                let lhs = binomial_series(x, 64).mul(&binomial_series(y, 64));
                let rhs = binomial_series(x + y, 64);
                assert!(close(&lhs, &rhs, 1e-10), "alpha = {x}, beta = {y}");
            }
        }
    }
}
