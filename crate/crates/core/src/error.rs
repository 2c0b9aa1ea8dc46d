use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Which kind of lattice point of the quantum dilogarithm was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Pole,
    Zero,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature error: {0}")]
    Quadrature(String),
    #[error("{kind:?} of the quantum dilogarithm at lattice (n1={n1}, n2={n2}), z={z}")]
    Pole {
        kind: LatticeKind,
        n1: u32,
        n2: u32,
        z: Complex64,
    },
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("invalid series parameters: {0}")]
    Param(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("square-root branch ambiguity: {0}")]
    Branch(String),
    #[error("level out of range: {0}")]
    Range(String),
    #[error("degenerate connection parameters: {0}")]
    Degenerate(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("argument on a branch cut: {0}")]
    Cut(String),
    #[error("ill-conditioned determinant (condition estimate {0:.3e})")]
    IllConditioned(f64),
}

impl Error {
    /// Short machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Quadrature(_) => "quadrature",
            Error::Pole { .. } => "pole",
            Error::Overflow(_) => "overflow",
            Error::Divergence(_) => "divergence",
            Error::Param(_) => "param",
            Error::Validation(_) => "validation",
            Error::SingularPoint(_) => "singular_point",
            Error::Branch(_) => "branch",
            Error::Range(_) => "range",
            Error::Degenerate(_) => "degenerate",
            Error::Inconclusive(_) => "inconclusive",
            Error::Cut(_) => "cut",
            Error::IllConditioned(_) => "ill_conditioned",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
