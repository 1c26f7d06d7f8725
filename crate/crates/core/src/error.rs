use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("point {0} is not inside the open unit disk")]
    OutsideDisk(Complex64),

    #[error("dilatation undefined at {0}: h'(z) vanishes")]
    UndefinedDilatation(Complex64),

    #[error("map is not sense-preserving at {0}")]
    NotSensePreserving(Complex64),

    #[error("inner map leaves the disk at {z}: |phi(z)| = {modulus}")]
    InvalidInnerMap { z: Complex64, modulus: f64 },

    #[error("inner map violates the Schwarz-Pick inequality at {0}")]
    SchwarzPick(Complex64),

    #[error("H' + eps G' vanishes near {0}")]
    VanishingDerivative(Complex64),

    #[error("logarithm branch jumps along the radius through {0}")]
    BranchJump(Complex64),

    #[error("map `{0}` has no series generator")]
    MissingSeries(String),

    #[error("no sign change of the equation on ({lo}, {hi})")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid grid configuration: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
