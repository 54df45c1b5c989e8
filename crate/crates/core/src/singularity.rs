//! Singularity classes Π|ℓᵢ|^{γᵢ}·‖z‖^δ and the exact comparison of their weights.
//!
//! For ψ₁ - ψ₂ = Σ cᵢ·log|ℓᵢ| + c₀·log‖z‖ pulled back under the blowup of the
//! origin, the coefficient along each strict transform is cᵢ and along the
//! exceptional divisor it is Σcᵢ + c₀. The difference is bounded above near 0
//! exactly when all of these are nonnegative.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arrangement::{Line, WeightedArrangement};
use crate::error::{Error, Result};
use crate::multiplier_ideal::IdealDescriptor;
use crate::rational::{fmt_rational, int, serde_rational, serde_rational_vec, Rational};

/// Exponent data (γ; δ) of e^ψ ≍ Π|ℓᵢ|^{γᵢ}·‖z‖^δ over a fixed line list.
#[derive(Clone, Debug, Serialize)]
pub struct SingularityClass {
    #[serde(skip)]
    lines: Arc<[Line]>,
    #[serde(with = "serde_rational_vec")]
    gamma: Vec<Rational>,
    #[serde(with = "serde_rational")]
    delta: Rational,
}

impl PartialEq for SingularityClass {
    fn eq(&self, other: &Self) -> bool {
        self.same_lines(other) && self.gamma == other.gamma && self.delta == other.delta
    }
}

impl Eq for SingularityClass {}

impl SingularityClass {
    /// Arbitrary class over `arr`'s lines.
    ///
    /// # Panics
    ///
    /// If `gamma` has the wrong length.
    pub fn new(arr: &WeightedArrangement, gamma: Vec<Rational>, delta: Rational) -> Self {
        assert_eq!(gamma.len(), arr.len(), "one exponent per line");
        SingularityClass {
            lines: arr.shared_lines(),
            gamma,
            delta,
        }
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    fn same_lines(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lines, &other.lines) || self.lines == other.lines
    }

    /// Evaluates the representative ψ(z) = Σγᵢ·log|ℓᵢ(z)| + δ·log‖z‖.
    pub fn log_representative(&self, z: [num_complex::Complex64; 2]) -> f64 {
        let mut total = 0.0;
        for (line, g) in self.lines.iter().zip(&self.gamma) {
            if !g.is_zero() {
                total += crate::rational::to_f64(g) * line.eval(z).norm().ln();
            }
        }
        if !self.delta.is_zero() {
            let norm = (z[0].norm_sqr() + z[1].norm_sqr()).sqrt();
            total += crate::rational::to_f64(&self.delta) * norm.ln();
        }
        total
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gamma: Vec<_> = self.gamma.iter().map(fmt_rational).collect();
        write!(f, "γ=({}), δ={}", gamma.join(", "), fmt_rational(&self.delta))
    }
}

/// The class of φ itself: γᵢ = aᵢ, δ = δ₀.
pub fn class_of_weight(arr: &WeightedArrangement) -> SingularityClass {
    SingularityClass::new(arr, arr.coeffs().to_vec(), arr.point_mass().clone())
}

/// The class of (1/2m)·log Σ|gⱼ|² for generators of `ideal`: γᵢ = bᵢ/m, δ = p/m.
///
/// # Panics
///
/// If `m` is not positive.
pub fn class_of_ideal(
    arr: &WeightedArrangement,
    ideal: &IdealDescriptor,
    m: &Rational,
) -> SingularityClass {
    assert!(m.is_positive(), "m must be positive");
    let gamma = ideal.b.iter().map(|&b| int(b as i64) / m).collect();
    SingularityClass::new(arr, gamma, int(ideal.p as i64) / m)
}

/// Lelong number at the origin: Σγᵢ + δ.
pub fn lelong(s: &SingularityClass) -> Rational {
    s.gamma.iter().fold(s.delta.clone(), |acc, g| acc + g)
}

/// Which inequality of the criterion failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ViolationKind {
    /// Coefficient of line `index` (0-based).
    Line { index: usize },
    /// The exceptional-divisor coefficient Σγ + δ, i.e. the Lelong number.
    Total,
}

/// Witness that the first class is not more singular than the second:
/// `first < second` for the quantity named by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(flatten)]
    pub kind: ViolationKind,
    #[serde(with = "serde_rational")]
    pub first: Rational,
    #[serde(with = "serde_rational")]
    pub second: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ViolationKind::Line { index } => format!("γ{}", index + 1),
            ViolationKind::Total => "ν".to_string(),
        };
        write!(
            f,
            "{name}: {} < {}",
            fmt_rational(&self.first),
            fmt_rational(&self.second)
        )
    }
}

fn check_same(s1: &SingularityClass, s2: &SingularityClass) -> Result<()> {
    if s1.same_lines(s2) {
        Ok(())
    } else {
        Err(Error::ArrangementMismatch)
    }
}

/// First failed inequality of "s1 is at least as singular as s2", if any.
pub fn directed_violation(
    s1: &SingularityClass,
    s2: &SingularityClass,
) -> Result<Option<Violation>> {
    check_same(s1, s2)?;
    for (index, (g1, g2)) in s1.gamma.iter().zip(&s2.gamma).enumerate() {
        if g1 < g2 {
            return Ok(Some(Violation {
                kind: ViolationKind::Line { index },
                first: g1.clone(),
                second: g2.clone(),
            }));
        }
    }
    let (n1, n2) = (lelong(s1), lelong(s2));
    Ok((n1 < n2).then_some(Violation {
        kind: ViolationKind::Total,
        first: n1,
        second: n2,
    }))
}

/// Whether ψ₁ ≤ ψ₂ + O(1) near the origin.
pub fn more_singular_or_equal(s1: &SingularityClass, s2: &SingularityClass) -> Result<bool> {
    Ok(directed_violation(s1, s2)?.is_none())
}

/// Outcome of comparing s1 against s2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "relation")]
pub enum ComparisonResult {
    Equivalent,
    /// `witness` shows why s2 is not as singular as s1.
    FirstMoreSingular { witness: Violation },
    /// `witness` shows why s1 is not as singular as s2.
    SecondMoreSingular { witness: Violation },
    Incomparable {
        /// Why s1 is not as singular as s2.
        first_not_above: Violation,
        /// Why s2 is not as singular as s1.
        second_not_above: Violation,
    },
}

impl ComparisonResult {
    pub fn label(&self) -> &'static str {
        match self {
            ComparisonResult::Equivalent => "equivalent",
            ComparisonResult::FirstMoreSingular { .. } => "first more singular",
            ComparisonResult::SecondMoreSingular { .. } => "second more singular",
            ComparisonResult::Incomparable { .. } => "incomparable",
        }
    }
}

impl fmt::Display for ComparisonResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComparisonResult::Equivalent => f.write_str("equivalent"),
            ComparisonResult::FirstMoreSingular { witness }
            | ComparisonResult::SecondMoreSingular { witness } => {
                write!(f, "{} ({witness})", self.label())
            }
            ComparisonResult::Incomparable {
                first_not_above,
                second_not_above,
            } => write!(f, "incomparable ({first_not_above}; reversed {second_not_above})"),
        }
    }
}

pub fn compare(s1: &SingularityClass, s2: &SingularityClass) -> Result<ComparisonResult> {
    let forward = directed_violation(s1, s2)?;
    let reverse = directed_violation(s2, s1)?;
    Ok(match (forward, reverse) {
        (None, None) => ComparisonResult::Equivalent,
        (None, Some(witness)) => ComparisonResult::FirstMoreSingular { witness },
        (Some(witness), None) => ComparisonResult::SecondMoreSingular { witness },
        (Some(first_not_above), Some(second_not_above)) => ComparisonResult::Incomparable {
            first_not_above,
            second_not_above,
        },
    })
}
