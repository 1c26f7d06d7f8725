//! Harmonic ν-Bloch and ν-Bloch-type mappings on the unit disk.
//!
//! A harmonic map `f = h + conj(g)` on the disk has the two Bloch-type
//! seminorms
//!
//! ```text
//! beta_nu(f)  = sup (1 - |z|^2)^nu (|h'(z)| + |g'(z)|)
//! beta*_nu(f) = sup (1 - |z|^2)^nu sqrt|J_f(z)|,   J_f = |h'|^2 - |g'|^2
//! ```
//!
//! This crate estimates them numerically ([`seminorm`]), provides the
//! extremal mappings of the theory in closed form ([`catalog`]), composes
//! maps with affine and disk self-maps ([`invariance`]), evaluates growth and
//! coefficient bounds ([`bounds`]), and solves the Bohr-radius equations
//! ([`bohr`]).
//!
//! ```
//! use hbloch::{catalog, seminorm::{estimate_beta_star, GridConfig, Verdict}};
//!
//! let f = catalog::example53(0.5).unwrap();
//! let est = estimate_beta_star(&f, 1.0, &GridConfig::default()).unwrap();
//! assert_eq!(est.verdict, Verdict::Finite);
//! assert!((est.value - 1.0).abs() < 1e-3);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bohr;
pub mod bounds;
pub mod catalog;
pub mod disk;
pub mod error;
pub mod invariance;
pub mod quad;
pub mod seminorm;
pub mod series;
pub mod special;

pub use catalog::HarmonicMap;
pub use disk::{ComplexPoint, DiskSampler};
pub use error::{Error, Result};
pub use series::TruncatedSeries;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/seminorms.md")]
    mod seminorms {}
    #[doc = include_str!("../../../book/src/invariance.md")]
    mod invariance {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/bohr.md")]
    mod bohr {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
