//! Named harmonic mappings with closed-form derivatives.
//!
//! Every entry is built once, validated at construction, and is immutable
//! afterwards. Fractional powers and logarithms of `1 +- z` use the principal
//! branch, which is smooth on the disk since `Re(1 +- z) > 0` there.

mod entries;
mod map;

use num_complex::Complex64;
use serde::Serialize;

pub use entries::{
    example22, example32, example32_generator, example53, exp_cayley, f_nu_t, h_nu, half_plane, identity,
    remark34, thm33_family, thm6_extremal, SelfConjugatePair,
};
pub use map::{AnalyticPart, Evaluator, HarmonicMap, MapMeta, MapParams, RealEvaluator, SeriesGenerator};

use crate::error::{invalid, Result};

/// One row of the catalog listing.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub description: &'static str,
}

const LISTING: &[CatalogEntry] = &[
    CatalogEntry {
        name: "identity",
        params: &[],
        description: "z",
    },
    CatalogEntry {
        name: "h_nu",
        params: &["nu"],
        description: "analytic extremal with h' = (1-z)^(-nu-1/2), h(0) = 0",
    },
    CatalogEntry {
        name: "f_nu_t",
        params: &["nu", "t"],
        description: "h_nu + conj(g) with dilatation t + (1-t) z",
    },
    CatalogEntry {
        name: "example22",
        params: &["mu", "nu"],
        description: "h + conj(h), h = (1-z)^(1-mu)/(mu-1), mu > 2 nu + 1",
    },
    CatalogEntry {
        name: "example22_F",
        params: &["mu", "nu"],
        description: "example22 plus the identity",
    },
    CatalogEntry {
        name: "exp_cayley",
        params: &[],
        description: "h + conj(h), h = exp((1+z)/(1-z))",
    },
    CatalogEntry {
        name: "example32",
        params: &["theta"],
        description: "h = log H', dilatation e^(i theta) z",
    },
    CatalogEntry {
        name: "example32_H",
        params: &[],
        description: "analytic H = exp(sqrt((1+z)/(1-z)))",
    },
    CatalogEntry {
        name: "remark34",
        params: &["which"],
        description: "log(1-z) +- conj(z + log(1-z)), which in {1, 2}",
    },
    CatalogEntry {
        name: "thm33",
        params: &["nu", "b1"],
        description: "h' = ((1+z)/(1-z))^(nu/2), g = b1 h",
    },
    CatalogEntry {
        name: "thm6",
        params: &["nu"],
        description: "analytic ((1-z^2)^(1-nu) - 1)/(2(nu-1)), nu > 1",
    },
    CatalogEntry {
        name: "example53",
        params: &["t"],
        description: "artanh-type map with dilatation (1-t) z + t, t in [1/2, 1)",
    },
    CatalogEntry {
        name: "half_plane",
        params: &[],
        description: "1/(1-z) + conj(z/(1-z))",
    },
];

pub fn listing() -> &'static [CatalogEntry] {
    LISTING
}

fn need(value: Option<f64>, name: &'static str) -> Result<f64> {
    value.ok_or_else(|| invalid(name, "required"))
}

/// Builds a catalog entry from its listing name.
pub fn by_name(name: &str, params: &MapParams) -> Result<HarmonicMap> {
    match name {
        "identity" => Ok(identity()),
        "h_nu" => h_nu(need(params.nu, "nu")?),
        "f_nu_t" => f_nu_t(need(params.nu, "nu")?, params.t.unwrap_or(0.0)),
        "example22" | "example22_F" => {
            let pair = example22(need(params.mu, "mu")?, need(params.nu, "nu")?)?;
            Ok(if name == "example22" {
                pair.f
            } else {
                pair.perturbed
            })
        }
        "exp_cayley" => Ok(exp_cayley()),
        "example32" => example32(params.theta.unwrap_or(0.0)),
        "example32_H" => Ok(example32_generator()),
        "remark34" => remark34(params.which.unwrap_or(1)),
        "thm33" => thm33_family(
            need(params.nu, "nu")?,
            params.b1.unwrap_or(Complex64::new(0.0, 0.0)),
        ),
        "thm6" => thm6_extremal(need(params.nu, "nu")?),
        "example53" => example53(need(params.t, "t")?),
        "half_plane" => Ok(half_plane()),
        other => Err(invalid("name", format!("unknown catalog entry `{other}`"))),
    }
}

/// One instance of every catalog entry at fixed, representative parameters.
pub fn representatives() -> Vec<HarmonicMap> {
    let pair = example22(4.0, 1.0).expect("valid parameters");
    vec![
        identity(),
        h_nu(1.0).expect("valid parameters"),
        f_nu_t(1.0, 0.5).expect("valid parameters"),
        pair.f,
        pair.perturbed,
        exp_cayley(),
        example32(0.4).expect("valid parameters"),
        example32_generator(),
        remark34(1).expect("valid parameters"),
        remark34(2).expect("valid parameters"),
        thm33_family(1.0, Complex64::new(0.3, -0.4)).expect("valid parameters"),
        thm6_extremal(2.0).expect("valid parameters"),
        example53(0.7).expect("valid parameters"),
        half_plane(),
    ]
}
