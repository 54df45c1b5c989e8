//! Multiplier ideals, singularity classes and Bergman-kernel approximations
//! φ_m = (1/2m)·log Σ|σ_l|² for weights of weighted line arrangements through
//! the origin of C².
//!
//! The symbolic side ([`multiplier_ideal`], [`singularity`], [`sequence`]) is
//! exact over the rationals. [`bergman`] rebuilds φ_m numerically from an
//! orthonormalized monomial basis of the weighted L² space on the unit ball.

pub mod arrangement;
pub mod bergman;
pub mod error;
pub mod multiplier_ideal;
pub mod rational;
pub mod sequence;
pub mod singularity;

pub use bergman::{bergman_phi, gram_matrix, BergmanKernel, GramResult, QuadratureSpec};
pub use arrangement::{Line, Preset, WeightedArrangement};
pub use error::{Error, Result};
pub use multiplier_ideal::{
    contains, generators, ideal_of, ideal_of_m, is_trivial, BivariatePolynomial, IdealDescriptor,
};
pub use rational::{GaussianRational, Rational};
pub use sequence::{MonotonicityReport, SequenceEntry};
pub use singularity::{
    class_of_ideal, class_of_weight, compare, lelong, more_singular_or_equal, ComparisonResult,
    SingularityClass,
};
