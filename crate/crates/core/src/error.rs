use thiserror::Error;

/// Errors raised by the symbolic and numeric layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("lines {first} and {second} define the same projective line")]
    DuplicateLine { first: usize, second: usize },
    #[error("line {index} has both coefficients zero")]
    ZeroForm { index: usize },
    #[error("line {index} has a nonzero constant term; only lines through the origin are supported")]
    AffineLine { index: usize },
    #[error("negative weight {value} for {target}")]
    NegativeCoefficient { target: String, value: String },
    #[error("{lines} lines but {coeffs} coefficients")]
    LengthMismatch { lines: usize, coeffs: usize },
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
    #[error("total mass is zero, so the log canonical threshold is +inf")]
    ZeroWeight,
    #[error("the zero polynomial has no multiplier-ideal membership test")]
    ZeroPolynomial,
    #[error("singularity classes live over different line arrangements")]
    ArrangementMismatch,
    #[error("radial integral diverges: exponent {exponent} <= -1")]
    NonIntegrableExponent { exponent: String },
    #[error("no admissible basis element of degree <= {max_degree}")]
    EmptyBasis { max_degree: u32 },
    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),
    #[error("invalid index list: {0}")]
    InvalidIndices(String),
    #[error("unknown preset {0:?} (expected theorem1, smooth or point)")]
    UnknownPreset(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
