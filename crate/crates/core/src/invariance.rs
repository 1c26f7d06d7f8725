//! Affine post-composition, pre-composition with analytic self-maps of the
//! disk, and the logarithmic construction `log(H' + eps G')`.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{AnalyticPart, HarmonicMap};
use crate::disk::{ComplexPoint, DiskSampler};
use crate::error::{invalid, Error, Result};
use crate::quad::integrate_segment;
use crate::series::CoeffEnvelope;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineParams {
    pub a: Complex64,
    pub b: Complex64,
}

impl AffineParams {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    /// `|a|^2 - |b|^2`, the factor by which the Jacobian scales.
    pub fn jacobian_factor(&self) -> f64 {
        self.a.norm_sqr() - self.b.norm_sqr()
    }
}

/// `A o f` for `A(w) = a w + b conj(w)`.
///
/// The analytic part is `a h + b g + b conj(a0)` and the co-analytic part
/// `conj(a) g + conj(b) (h - a0)`, so that the latter vanishes at the origin.
pub fn affine_compose(f: &HarmonicMap, affine: AffineParams) -> HarmonicMap {
    let AffineParams { a, b } = affine;
    let a0 = f.a0();
    let h = f.h_part().linear_combination(a, f.g_part(), b, b * a0.conj());
    let g = f
        .g_part()
        .linear_combination(a.conj(), f.h_part(), b.conj(), -b.conj() * a0);
    let mut out = HarmonicMap::new(format!("affine({})", f.name()), h, g).with_params(f.params().clone());
    if let Some(j) = f.jacobian_closed_form().cloned() {
        let k = affine.jacobian_factor();
        out.set_jacobian(Some(Arc::new(move |z| k * j(z))));
    }
    if let Some(d) = f.dilatation_derivative_closed_form().cloned() {
        // omega~ = (conj(a) omega + conj(b))/(a + b omega)
        let k = affine.jacobian_factor();
        let hp = f.h_part().clone();
        let gp = f.g_part().clone();
        out.set_dilatation_derivative(Some(Arc::new(move |z| {
            let den = a + b * (gp.first(z) / hp.first(z));
            d(z) * k / (den * den)
        })));
    }
    if let Some(e) = f.envelope() {
        out = out.with_envelope(CoeffEnvelope::new(e.scale * (a.norm() + b.norm()), e.power));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutomorphismParam {
    alpha: Complex64,
}

impl AutomorphismParam {
    pub fn new(alpha: Complex64) -> Result<Self> {
        if !(alpha.norm() < 1.0) {
            return Err(invalid("alpha", format!("must satisfy |alpha| < 1, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InnerKind {
    /// `(z + alpha)/(1 + conj(alpha) z)`.
    Automorphism(Complex64),
    /// `z^n`.
    Power(u32),
    /// `c z` with `|c| <= 1`.
    Scaled(Complex64),
    Custom,
    Composite,
}

type PointMap = Arc<dyn Fn(&ComplexPoint) -> Result<ComplexPoint> + Send + Sync>;
type Derivative = Arc<dyn Fn(&ComplexPoint) -> Complex64 + Send + Sync>;

/// An analytic self-map `phi` of the disk with its first two derivatives.
///
/// `phi` returns a [`ComplexPoint`] so that the boundary distance of the image
/// is carried through exactly where the family admits it.
#[derive(Clone)]
pub struct InnerMap {
    kind: InnerKind,
    map: PointMap,
    first: Derivative,
    second: Derivative,
    normalized: bool,
}

impl std::fmt::Debug for InnerMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InnerMap")
            .field("kind", &self.kind)
            .field("normalized", &self.normalized)
            .finish()
    }
}

impl InnerMap {
    pub fn identity() -> Self {
        Self::scaled(Complex64::new(1.0, 0.0)).expect("unit scale is valid")
    }

    pub fn automorphism(param: AutomorphismParam) -> Self {
        let alpha = param.alpha;
        let shrink = 1.0 - alpha.norm_sqr();
        let denom = move |z: &ComplexPoint| Complex64::new(1.0, 0.0) + alpha.conj() * z.value();
        Self {
            kind: InnerKind::Automorphism(alpha),
            map: Arc::new(move |z| {
                let d = denom(z);
                let w = (z.value() + alpha) / d;
                // 1 - |phi|^2 = (1 - |alpha|^2)(1 - |z|^2)/|1 + conj(alpha) z|^2
                let gap = shrink * z.one_minus_r_sq() / d.norm_sqr();
                ComplexPoint::with_boundary_distance(w, gap / (1.0 + w.norm()))
            }),
            first: Arc::new(move |z| {
                let d = denom(z);
                Complex64::new(shrink, 0.0) / (d * d)
            }),
            second: Arc::new(move |z| {
                let d = denom(z);
                alpha.conj() * (-2.0 * shrink) / (d * d * d)
            }),
            normalized: alpha.norm() == 0.0,
        }
    }

    pub fn power(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n", "power must be at least 1"));
        }
        Ok(Self {
            kind: InnerKind::Power(n),
            map: Arc::new(move |z| {
                let r = z.radius();
                // 1 - r^n = (1 - r)(1 + r + ... + r^{n-1})
                let mut geometric = 0.0;
                let mut p = 1.0;
                for _ in 0..n {
                    geometric += p;
                    p *= r;
                }
                ComplexPoint::with_boundary_distance(z.value().powu(n), z.one_minus_r() * geometric)
            }),
            first: Arc::new(move |z| z.value().powu(n - 1) * n as f64),
            second: Arc::new(move |z| {
                if n < 2 {
                    Complex64::new(0.0, 0.0)
                } else {
                    z.value().powu(n - 2) * (n * (n - 1)) as f64
                }
            }),
            normalized: true,
        })
    }

    pub fn scaled(c: Complex64) -> Result<Self> {
        let m = c.norm();
        if !(m <= 1.0 && m > 0.0) {
            return Err(invalid("c", format!("must satisfy 0 < |c| <= 1, got {c}")));
        }
        Ok(Self {
            kind: InnerKind::Scaled(c),
            map: Arc::new(move |z| {
                ComplexPoint::with_boundary_distance(c * z.value(), (1.0 - m) + m * z.one_minus_r())
            }),
            first: Arc::new(move |_| c),
            second: Arc::new(|_| Complex64::new(0.0, 0.0)),
            normalized: true,
        })
    }

    /// A user-supplied self-map, accepted only after a sampled screen: at
    /// `samples` seeded points of `|z| <= 0.999` the image must lie in the
    /// disk and satisfy Schwarz-Pick `(1 - |z|^2)|phi'| <= 1 - |phi|^2`.
    pub fn custom<V, D1, D2>(value: V, first: D1, second: D2, seed: u64, samples: usize) -> Result<Self>
    where
        V: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        D1: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        D2: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        let at_origin = value(Complex64::new(0.0, 0.0));
        let normalized = at_origin.norm() == 0.0;
        let inner = Self {
            kind: InnerKind::Custom,
            map: Arc::new(move |z| {
                let w = value(z.value());
                ComplexPoint::new(w).map_err(|_| Error::InvalidInnerMap {
                    z: z.value(),
                    modulus: w.norm(),
                })
            }),
            first: Arc::new(move |z| first(z.value())),
            second: Arc::new(move |z| second(z.value())),
            normalized,
        };
        inner.screen(seed, samples)?;
        Ok(inner)
    }

    pub fn kind(&self) -> InnerKind {
        self.kind
    }

    /// `phi(0) = 0`, i.e. composition gives subordination rather than weak
    /// subordination.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn eval(&self, z: &ComplexPoint) -> Result<ComplexPoint> {
        (self.map)(z)
    }

    pub fn first(&self, z: &ComplexPoint) -> Complex64 {
        (self.first)(z)
    }

    pub fn second(&self, z: &ComplexPoint) -> Complex64 {
        (self.second)(z)
    }

    /// Checks the image and the Schwarz-Pick inequality at sampled points.
    pub fn screen(&self, seed: u64, samples: usize) -> Result<()> {
        let mut sampler = DiskSampler::new(seed, 0.999);
        let mut points = vec![ComplexPoint::origin()];
        points.extend(sampler.points(samples));
        for z in points {
            let w = self.eval(&z)?;
            if !(w.one_minus_r() > 0.0) {
                return Err(Error::InvalidInnerMap {
                    z: z.value(),
                    modulus: w.value().norm(),
                });
            }
            let lhs = z.one_minus_r_sq() * self.first(&z).norm();
            let rhs = w.one_minus_r_sq();
            if lhs > rhs * (1.0 + 1e-12) + 1e-15 {
                return Err(Error::SchwarzPick(z.value()));
            }
        }
        Ok(())
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &InnerMap) -> InnerMap {
        let (o1, o2, o3) = (self.clone(), self.clone(), self.clone());
        let (i1, i2, i3) = (inner.clone(), inner.clone(), inner.clone());
        InnerMap {
            kind: InnerKind::Composite,
            map: Arc::new(move |z| o1.eval(&i1.eval(z)?)),
            first: Arc::new(move |z| match i2.eval(z) {
                Ok(w) => o2.first(&w) * i2.first(z),
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }),
            second: Arc::new(move |z| match i3.eval(z) {
                Ok(w) => {
                    let d = i3.first(z);
                    o3.second(&w) * d * d + o3.first(&w) * i3.second(z)
                }
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }),
            normalized: self.normalized && inner.normalized,
        }
    }
}

fn nan() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

/// `part o phi + shift` with chain-rule derivatives.
fn compose_part(part: &AnalyticPart, phi: &InnerMap, shift: Complex64) -> AnalyticPart {
    let (p1, p2, p3) = (part.clone(), part.clone(), part.clone());
    let (f1, f2, f3) = (phi.clone(), phi.clone(), phi.clone());
    AnalyticPart::new(
        move |z| f1.eval(z).map(|w| p1.value(&w) + shift).unwrap_or_else(|_| nan()),
        move |z| {
            f2.eval(z)
                .map(|w| p2.first(&w) * f2.first(z))
                .unwrap_or_else(|_| nan())
        },
        move |z| {
            f3.eval(z)
                .map(|w| {
                    let d = f3.first(z);
                    p3.second(&w) * d * d + p3.first(&w) * f3.second(z)
                })
                .unwrap_or_else(|_| nan())
        },
    )
}

/// `F o phi`, and whether it is a subordinate (`phi(0) = 0`) or only weakly
/// subordinate to `F`.
#[derive(Debug, Clone)]
pub struct Subordinate {
    pub map: HarmonicMap,
    pub normalized: bool,
}

/// `F o phi` with `g`'s constant term moved into the analytic part.
pub fn subordinate(big_f: &HarmonicMap, phi: &InnerMap) -> Result<Subordinate> {
    let w0 = phi.eval(&ComplexPoint::origin())?;
    let c = big_f.g(&w0);
    let h = compose_part(big_f.h_part(), phi, c.conj());
    let g = compose_part(big_f.g_part(), phi, -c);
    let mut map = HarmonicMap::new(format!("{}∘phi", big_f.name()), h, g).with_params(big_f.params().clone());
    if let Some(j) = big_f.jacobian_closed_form().cloned() {
        let inner = phi.clone();
        map.set_jacobian(Some(Arc::new(move |z| match inner.eval(z) {
            Ok(w) => inner.first(z).norm_sqr() * j(&w),
            Err(_) => f64::NAN,
        })));
    }
    Ok(Subordinate {
        map,
        normalized: phi.is_normalized(),
    })
}

/// `f o phi_alpha` for the disk automorphism `phi_alpha`.
pub fn automorphism_compose(f: &HarmonicMap, alpha: AutomorphismParam) -> HarmonicMap {
    let phi = InnerMap::automorphism(alpha);
    let name = format!("{}∘phi_alpha", f.name());
    subordinate(f, &phi)
        .expect("automorphisms map the origin into the disk")
        .map
        .with_name(name)
}

/// `((1 + |alpha|)/(1 - |alpha|))^{|nu - 1|}`, the admissible growth of
/// `beta*_nu` under pre-composition with `phi_alpha`.
pub fn beta_star_distortion(alpha: AutomorphismParam, nu: f64) -> f64 {
    let m = alpha.alpha.norm();
    ((1.0 + m) / (1.0 - m)).powf((nu - 1.0).abs())
}

/// A bounded analytic function with its derivative and a declared bound
/// `sup |omega| <= bound`.
#[derive(Clone)]
pub struct BoundedAnalytic {
    pub part: AnalyticPart,
    pub bound: f64,
}

impl BoundedAnalytic {
    pub fn new(part: AnalyticPart, bound: f64) -> Result<Self> {
        if !(bound >= 0.0 && bound.is_finite()) {
            return Err(invalid(
                "bound",
                format!("must be finite and nonnegative, got {bound}"),
            ));
        }
        Ok(Self { part, bound })
    }

    pub fn zero() -> Self {
        Self {
            part: AnalyticPart::zero(),
            bound: 0.0,
        }
    }
}

const BRANCH_ANGLES: usize = 64;
const BRANCH_RADII: usize = 1000;
const BRANCH_MAX_RADIUS: f64 = 0.99;

/// `h = Log(H' + eps G')` and `g' = omega h'`, with `g` obtained by
/// integrating `g'` along `[0, z]`.
///
/// `h_prime` and `g_prime` are jets of `H'` and `G'` (value, first and second
/// derivative). Construction fails if `H' + eps G'` vanishes at a sample or
/// its argument jumps by more than `pi` between adjacent samples of a radius.
pub fn thm31_map(
    h_prime: &AnalyticPart,
    g_prime: &AnalyticPart,
    eps: Complex64,
    omega: &BoundedAnalytic,
) -> Result<HarmonicMap> {
    if !(eps.norm() <= 1.0) {
        return Err(invalid("eps", format!("must satisfy |eps| <= 1, got {eps}")));
    }
    let base = h_prime.linear_combination(Complex64::new(1.0, 0.0), g_prime, eps, Complex64::new(0.0, 0.0));
    for k in 0..BRANCH_ANGLES {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / BRANCH_ANGLES as f64;
        let mut prev: Option<f64> = None;
        for i in 0..=BRANCH_RADII {
            let r = BRANCH_MAX_RADIUS * i as f64 / BRANCH_RADII as f64;
            let z = ComplexPoint::from_polar(1.0 - r, theta)?;
            let u = base.value(&z);
            if !(u.norm() > 1e-300) || !u.is_finite() {
                return Err(Error::VanishingDerivative(z.value()));
            }
            let arg = u.arg();
            if let Some(p) = prev {
                if (arg - p).abs() > std::f64::consts::PI {
                    return Err(Error::BranchJump(z.value()));
                }
            }
            prev = Some(arg);
        }
    }
    let (b0, b1, b2) = (base.clone(), base.clone(), base.clone());
    let h_first = move |z: &ComplexPoint| b1.first(z) / b1.value(z);
    let h_second = move |z: &ComplexPoint| {
        let u = b2.value(z);
        let p = b2.first(z) / u;
        b2.second(z) / u - p * p
    };
    let h = AnalyticPart::new(move |z| b0.value(z).ln(), h_first.clone(), h_second.clone());
    let (w1, w2, w3) = (omega.part.clone(), omega.part.clone(), omega.part.clone());
    let (hf1, hf2, hf3) = (h_first.clone(), h_first.clone(), h_first);
    let g_first = move |z: &ComplexPoint| w1.value(z) * hf1(z);
    let g = AnalyticPart::new(
        move |z| {
            integrate_segment(
                |w| match ComplexPoint::new(w) {
                    Ok(p) => w3.value(&p) * hf3(&p),
                    Err(_) => nan(),
                },
                z.value(),
                1e-14,
            )
        },
        g_first,
        move |z| w2.first(z) * hf2(z) + w2.value(z) * h_second(z),
    );
    Ok(HarmonicMap::new("thm31", h, g))
}
