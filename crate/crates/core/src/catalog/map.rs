use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disk::ComplexPoint;
use crate::series::{CoeffEnvelope, TruncatedSeries};

pub type Evaluator = Arc<dyn Fn(&ComplexPoint) -> Complex64 + Send + Sync>;
pub type RealEvaluator = Arc<dyn Fn(&ComplexPoint) -> f64 + Send + Sync>;
pub type SeriesGenerator = Arc<dyn Fn(usize) -> TruncatedSeries + Send + Sync>;

pub(crate) fn zero_c() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// An analytic function on the disk given by its value and first two
/// derivatives, optionally with a Taylor series generator.
#[derive(Clone)]
pub struct AnalyticPart {
    value: Evaluator,
    first: Evaluator,
    second: Evaluator,
    series: Option<SeriesGenerator>,
}

impl AnalyticPart {
    pub fn new<V, D1, D2>(value: V, first: D1, second: D2) -> Self
    where
        V: Fn(&ComplexPoint) -> Complex64 + Send + Sync + 'static,
        D1: Fn(&ComplexPoint) -> Complex64 + Send + Sync + 'static,
        D2: Fn(&ComplexPoint) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            first: Arc::new(first),
            second: Arc::new(second),
            series: None,
        }
    }

    pub fn zero() -> Self {
        Self::new(|_| zero_c(), |_| zero_c(), |_| zero_c()).with_series(TruncatedSeries::zero)
    }

    pub fn with_series<S>(mut self, series: S) -> Self
    where
        S: Fn(usize) -> TruncatedSeries + Send + Sync + 'static,
    {
        self.series = Some(Arc::new(series));
        self
    }

    pub fn value(&self, z: &ComplexPoint) -> Complex64 {
        (self.value)(z)
    }

    pub fn first(&self, z: &ComplexPoint) -> Complex64 {
        (self.first)(z)
    }

    pub fn second(&self, z: &ComplexPoint) -> Complex64 {
        (self.second)(z)
    }

    pub fn series(&self, order: usize) -> Option<TruncatedSeries> {
        self.series.as_ref().map(|s| s(order))
    }

    pub fn has_series(&self) -> bool {
        self.series.is_some()
    }

    /// `c1 * self + c2 * other + c0` with derivatives and series combined.
    pub(crate) fn linear_combination(
        &self,
        c1: Complex64,
        other: &AnalyticPart,
        c2: Complex64,
        c0: Complex64,
    ) -> AnalyticPart {
        let (a, b) = (self.clone(), other.clone());
        let (a1, b1, a2, b2) = (a.clone(), b.clone(), a.clone(), b.clone());
        let mut out = AnalyticPart::new(
            move |z| a.value(z) * c1 + b.value(z) * c2 + c0,
            move |z| a1.first(z) * c1 + b1.first(z) * c2,
            move |z| a2.second(z) * c1 + b2.second(z) * c2,
        );
        if let (Some(sa), Some(sb)) = (self.series.clone(), other.series.clone()) {
            out = out.with_series(move |n| {
                let mut s = sa(n).scale(c1).add(&sb(n).scale(c2));
                let mut c = s.coeffs().to_vec();
                c[0] += c0;
                s = TruncatedSeries::new(c);
                s
            });
        }
        out
    }
}

/// Name and parameter record of a mapping.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MapParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapMeta {
    pub name: String,
    pub params: MapParams,
}

/// A harmonic mapping `f = h + conj(g)` with `g(0) = 0`.
///
/// Besides the six evaluators a map may carry closed forms that are more
/// accurate than what can be assembled from `h'` and `g'` near the boundary:
///
/// * `jacobian`: `|h'|^2 - |g'|^2` without cancellation (e.g. when `|g'| ~ |h'|`
///   or both overflow while their difference does not);
/// * `h_log_derivative`: `h''/h'` for analytic maps whose `h'` overflows;
/// * `dilatation_derivative`: `omega'` where `g''/h' - omega h''/h'` cancels;
/// * `envelope`: a bound `|a_n|, |b_n| <= C n^p` certifying series tails.
#[derive(Clone)]
pub struct HarmonicMap {
    meta: MapMeta,
    h: AnalyticPart,
    g: AnalyticPart,
    analytic: bool,
    jacobian: Option<RealEvaluator>,
    h_log_derivative: Option<Evaluator>,
    dilatation_derivative: Option<Evaluator>,
    envelope: Option<CoeffEnvelope>,
}

impl fmt::Debug for HarmonicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HarmonicMap")
            .field("meta", &self.meta)
            .field("analytic", &self.analytic)
            .field("series", &self.has_series())
            .finish()
    }
}

impl HarmonicMap {
    pub fn new(name: impl Into<String>, h: AnalyticPart, g: AnalyticPart) -> Self {
        Self {
            meta: MapMeta {
                name: name.into(),
                params: MapParams::default(),
            },
            h,
            g,
            analytic: false,
            jacobian: None,
            h_log_derivative: None,
            dilatation_derivative: None,
            envelope: None,
        }
    }

    /// An analytic map `h` (so `g = 0`).
    pub fn analytic(name: impl Into<String>, h: AnalyticPart) -> Self {
        let mut m = Self::new(name, h, AnalyticPart::zero());
        m.analytic = true;
        m
    }

    pub fn with_params(mut self, params: MapParams) -> Self {
        self.meta.params = params;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.meta.name = name.into();
        self
    }

    pub fn with_jacobian<J>(mut self, jacobian: J) -> Self
    where
        J: Fn(&ComplexPoint) -> f64 + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(jacobian));
        self
    }

    pub fn with_h_log_derivative<P>(mut self, p: P) -> Self
    where
        P: Fn(&ComplexPoint) -> Complex64 + Send + Sync + 'static,
    {
        self.h_log_derivative = Some(Arc::new(p));
        self
    }

    pub fn with_dilatation_derivative<P>(mut self, p: P) -> Self
    where
        P: Fn(&ComplexPoint) -> Complex64 + Send + Sync + 'static,
    {
        self.dilatation_derivative = Some(Arc::new(p));
        self
    }

    pub fn with_envelope(mut self, envelope: CoeffEnvelope) -> Self {
        self.envelope = Some(envelope);
        self
    }

    pub(crate) fn jacobian_closed_form(&self) -> Option<&RealEvaluator> {
        self.jacobian.as_ref()
    }

    pub(crate) fn h_log_derivative_closed_form(&self) -> Option<&Evaluator> {
        self.h_log_derivative.as_ref()
    }

    pub(crate) fn dilatation_derivative_closed_form(&self) -> Option<&Evaluator> {
        self.dilatation_derivative.as_ref()
    }

    pub(crate) fn set_dilatation_derivative(&mut self, p: Option<Evaluator>) {
        self.dilatation_derivative = p;
    }

    pub(crate) fn set_jacobian(&mut self, j: Option<RealEvaluator>) {
        self.jacobian = j;
    }

    pub fn meta(&self) -> &MapMeta {
        &self.meta
    }

    pub fn name(&self) -> &str {
        &self.meta.name
    }

    pub fn params(&self) -> &MapParams {
        &self.meta.params
    }

    pub fn is_analytic(&self) -> bool {
        self.analytic
    }

    pub fn envelope(&self) -> Option<CoeffEnvelope> {
        self.envelope
    }

    pub fn h_part(&self) -> &AnalyticPart {
        &self.h
    }

    pub fn g_part(&self) -> &AnalyticPart {
        &self.g
    }

    pub fn h(&self, z: &ComplexPoint) -> Complex64 {
        self.h.value(z)
    }
    pub fn h_prime(&self, z: &ComplexPoint) -> Complex64 {
        self.h.first(z)
    }
    pub fn h_second(&self, z: &ComplexPoint) -> Complex64 {
        self.h.second(z)
    }
    pub fn g(&self, z: &ComplexPoint) -> Complex64 {
        self.g.value(z)
    }
    pub fn g_prime(&self, z: &ComplexPoint) -> Complex64 {
        self.g.first(z)
    }
    pub fn g_second(&self, z: &ComplexPoint) -> Complex64 {
        self.g.second(z)
    }

    /// `f(z) = h(z) + conj(g(z))`.
    pub fn eval(&self, z: &ComplexPoint) -> Complex64 {
        self.h(z) + self.g(z).conj()
    }

    pub fn series_h(&self, order: usize) -> Option<TruncatedSeries> {
        self.h.series(order)
    }

    pub fn series_g(&self, order: usize) -> Option<TruncatedSeries> {
        self.g.series(order)
    }

    pub fn has_series(&self) -> bool {
        self.h.has_series() && self.g.has_series()
    }

    /// `h(0)`, the constant Taylor coefficient of `f`.
    pub fn a0(&self) -> Complex64 {
        self.h(&ComplexPoint::origin())
    }

    /// The analytic map `h` alone.
    pub fn analytic_h(&self) -> HarmonicMap {
        let mut m = HarmonicMap::analytic(format!("{}.h", self.name()), self.h.clone())
            .with_params(self.meta.params.clone());
        m.h_log_derivative = self.h_log_derivative.clone();
        m
    }

    /// The analytic map `g` alone.
    pub fn analytic_g(&self) -> HarmonicMap {
        HarmonicMap::analytic(format!("{}.g", self.name()), self.g.clone())
            .with_params(self.meta.params.clone())
    }

    /// `conj(f) = (g + conj(a0)) + conj(h - a0)`, i.e. the roles of `h` and `g`
    /// swapped with the constant moved to keep `g(0) = 0`.
    pub fn conjugate(&self) -> HarmonicMap {
        let a0 = self.a0();
        let one = Complex64::new(1.0, 0.0);
        let zero = AnalyticPart::zero();
        let h = self.g.linear_combination(one, &zero, zero_c(), a0.conj());
        let g = self.h.linear_combination(one, &zero, zero_c(), -a0);
        let mut m =
            HarmonicMap::new(format!("conj({})", self.name()), h, g).with_params(self.meta.params.clone());
        if let Some(j) = self.jacobian.clone() {
            m.jacobian = Some(Arc::new(move |z| -j(z)));
        }
        m.envelope = self.envelope;
        m
    }
}
