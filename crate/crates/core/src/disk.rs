//! Points of the open unit disk.
//!
//! Every weight that appears in the seminorms is a power of `1 - |z|^2`, and
//! every catalog mapping is singular at `z = 1` or `z = -1`. Forming `1 - |z|`
//! or `1 - z` from a rounded `z` throws away most of the significant digits
//! exactly where the suprema live, so [`ComplexPoint`] carries the boundary
//! distance as a separate field and derives `1 - z`, `1 + z` and `1 - |z|^2`
//! from it.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `z` of the open unit disk together with `1 - |z|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    value: Complex64,
    one_minus_r: f64,
}

impl ComplexPoint {
    /// Wraps an arbitrary complex number, computing `1 - |z|` directly.
    pub fn new(z: Complex64) -> Result<Self> {
        let one_minus_r = 1.0 - z.norm();
        if !(one_minus_r > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::OutsideDisk(z));
        }
        Ok(Self {
            value: z,
            one_minus_r,
        })
    }

    /// The point `(1 - one_minus_r) e^{i theta}`, keeping `one_minus_r` exact.
    pub fn from_polar(one_minus_r: f64, theta: f64) -> Result<Self> {
        if !(one_minus_r > 0.0 && one_minus_r <= 1.0) {
            return Err(Error::OutsideDisk(Complex64::from_polar(
                1.0 - one_minus_r,
                theta,
            )));
        }
        let r = 1.0 - one_minus_r;
        Ok(Self {
            value: Complex64::new(r * theta.cos(), r * theta.sin()),
            one_minus_r,
        })
    }

    /// Builds a point from a value and an independently known boundary
    /// distance, e.g. one obtained from an exact identity under composition.
    pub fn with_boundary_distance(value: Complex64, one_minus_r: f64) -> Result<Self> {
        if !(one_minus_r > 0.0) || !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::OutsideDisk(value));
        }
        Ok(Self { value, one_minus_r })
    }

    pub fn origin() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            one_minus_r: 1.0,
        }
    }

    pub fn real(x: f64) -> Result<Self> {
        if x >= 0.0 {
            Self::from_polar(1.0 - x, 0.0)
        } else {
            Self::from_polar(1.0 + x, PI)
        }
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.value
    }

    #[inline]
    pub fn one_minus_r(&self) -> f64 {
        self.one_minus_r
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        1.0 - self.one_minus_r
    }

    /// `1 - |z|^2 = (1 - r)(1 + r)`.
    #[inline]
    pub fn one_minus_r_sq(&self) -> f64 {
        self.one_minus_r * (2.0 - self.one_minus_r)
    }

    /// `1 - z` without cancellation near `z = 1`.
    pub fn one_minus_z(&self) -> Complex64 {
        let r = self.radius();
        let theta = self.value.arg();
        let s = (0.5 * theta).sin();
        Complex64::new(self.one_minus_r + 2.0 * r * s * s, -r * theta.sin())
    }

    /// `1 + z` without cancellation near `z = -1`.
    pub fn one_plus_z(&self) -> Complex64 {
        let r = self.radius();
        let theta = self.value.arg();
        let c = (0.5 * theta).cos();
        Complex64::new(self.one_minus_r + 2.0 * r * c * c, r * theta.sin())
    }

    /// `1 - z^2 = (1 - z)(1 + z)`.
    pub fn one_minus_z_sq(&self) -> Complex64 {
        self.one_minus_z() * self.one_plus_z()
    }
}

/// Seeded, area-uniform sampler on the disk of radius `max_radius`.
///
/// Radius is `max_radius * sqrt(u)` and angle `2 pi v` for uniform `u, v`, so
/// a fixed seed reproduces the same points on every platform.
pub struct DiskSampler {
    rng: ChaCha8Rng,
    max_radius: f64,
}

impl DiskSampler {
    pub fn new(seed: u64, max_radius: f64) -> Self {
        assert!(max_radius > 0.0 && max_radius < 1.0);
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_radius,
        }
    }

    pub fn next_point(&mut self) -> ComplexPoint {
        let u: f64 = self.rng.gen();
        let v: f64 = self.rng.gen();
        let r = self.max_radius * u.sqrt();
        ComplexPoint::from_polar(1.0 - r, 2.0 * PI * v).expect("radius below 1")
    }

    pub fn points(&mut self, n: usize) -> Vec<ComplexPoint> {
        (0..n).map(|_| self.next_point()).collect()
    }

    /// Uniform real number in `[lo, hi)` from the same stream.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }
}
