//! Multiplier ideals J(c·φ) of weighted central line arrangements.
//!
//! A single blowup of the origin resolves the pair, with exceptional divisor
//! E and strict transforms Hᵢ. Relative canonical divisor is E and the pullback
//! of ℓᵢ is Hᵢ + E, so
//!
//! ```text
//! J(cφ) = π_* O(-Σ ⌊c·aᵢ⌋ Hᵢ - (⌊c·(Σaᵢ + δ₀)⌋ - 1) E)
//! ```
//!
//! A germ f lies in that sheaf iff ord_{ℓᵢ}(f) ≥ bᵢ for every line and
//! mult₀(f) ≥ e. Writing f = Πℓᵢ^{bᵢ}·g gives mult₀(f) = Σbᵢ + mult₀(g), hence
//! the normal form Πℓᵢ^{bᵢ}·𝔪^p with p = max(0, e - Σbᵢ).

mod polynomial;

use std::fmt;

use num_traits::Signed;
use serde::Serialize;

pub use polynomial::BivariatePolynomial;

use crate::arrangement::{Line, WeightedArrangement};
use crate::error::{Error, Result};
use crate::rational::{floor_to_i64, int, Rational};

/// J(cφ) = Πℓᵢ^{bᵢ} · 𝔪^p, with `e` the required order along the exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IdealDescriptor {
    pub b: Vec<u64>,
    pub p: u64,
    pub e: i64,
}

impl IdealDescriptor {
    pub fn unit(lines: usize) -> Self {
        IdealDescriptor {
            b: vec![0; lines],
            p: 0,
            e: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.p == 0 && self.b.iter().all(|&b| b == 0)
    }

    pub fn line_degree(&self) -> u64 {
        self.b.iter().sum()
    }

    /// Lowest degree of a nonzero element: Σbᵢ + p.
    pub fn order_at_origin(&self) -> u64 {
        self.line_degree() + self.p
    }
}

pub fn is_trivial(ideal: &IdealDescriptor) -> bool {
    ideal.is_trivial()
}

/// Closed-form J(c·φ) for c ≥ 0.
///
/// # Panics
///
/// If `c` is negative or a floor overflows `i64`.
pub fn ideal_of(arr: &WeightedArrangement, c: &Rational) -> IdealDescriptor {
    assert!(!c.is_negative(), "multiplier ideal needs c >= 0");
    let b: Vec<u64> = arr
        .coeffs()
        .iter()
        .map(|a| floor_to_i64(&(c * a)) as u64)
        .collect();
    let e = floor_to_i64(&(c * arr.total_mass())) - 1;
    let sum_b: u64 = b.iter().sum();
    let p = (e - sum_b as i64).max(0) as u64;
    IdealDescriptor { b, p, e }
}

/// Convenience for integer multiples J(m·φ).
pub fn ideal_of_m(arr: &WeightedArrangement, m: u64) -> IdealDescriptor {
    ideal_of(arr, &int(m as i64))
}

/// A generator Πℓᵢ^{bᵢ}·x^j·y^k kept in factored form for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredGenerator {
    pub line_powers: Vec<(Line, u64)>,
    pub x_power: u64,
    pub y_power: u64,
}

impl FactoredGenerator {
    pub fn expand(&self) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::one();
        for (line, k) in &self.line_powers {
            out = &out * &BivariatePolynomial::from_line(line).pow(*k);
        }
        &out * &BivariatePolynomial::monomial(self.x_power as u32, self.y_power as u32)
    }
}

fn wrap(line: &Line) -> String {
    let s = line.to_string();
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

fn with_power(base: String, k: u64) -> String {
    match k {
        1 => base,
        _ => format!("{base}^{k}"),
    }
}

impl fmt::Display for FactoredGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let active: Vec<_> = self.line_powers.iter().filter(|(_, k)| *k > 0).collect();
        let common = active.first().map(|(_, k)| *k);
        if active.len() > 1 && active.iter().all(|(_, k)| Some(*k) == common) {
            let product: Vec<_> = active.iter().map(|(l, _)| wrap(l)).collect();
            let k = common.unwrap();
            let inner = product.join("*");
            factors.push(if k == 1 { inner } else { format!("({inner})^{k}") });
        } else {
            factors.extend(active.iter().map(|(l, k)| with_power(wrap(l), *k)));
        }
        if self.x_power > 0 {
            factors.push(with_power("x".into(), self.x_power));
        }
        if self.y_power > 0 {
            factors.push(with_power("y".into(), self.y_power));
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join(" * "))
        }
    }
}

/// Πℓᵢ^{bᵢ}·x^j·y^{p-j} for j = p, p-1, ..., 0.
pub fn factored_generators(
    arr: &WeightedArrangement,
    ideal: &IdealDescriptor,
) -> Vec<FactoredGenerator> {
    let line_powers: Vec<_> = arr.lines().iter().cloned().zip(ideal.b.iter().copied()).collect();
    (0..=ideal.p)
        .rev()
        .map(|j| FactoredGenerator {
            line_powers: line_powers.clone(),
            x_power: j,
            y_power: ideal.p - j,
        })
        .collect()
}

/// Expanded generators of the ideal; `{1}` for the unit ideal.
pub fn generators(arr: &WeightedArrangement, ideal: &IdealDescriptor) -> Vec<BivariatePolynomial> {
    factored_generators(arr, ideal)
        .iter()
        .map(FactoredGenerator::expand)
        .collect()
}

/// Germ membership at the origin: f = Πℓᵢ^{bᵢ}·g with mult₀(g) ≥ p.
pub fn contains(
    arr: &WeightedArrangement,
    ideal: &IdealDescriptor,
    f: &BivariatePolynomial,
) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut quotient = f.clone();
    for (line, &b) in arr.lines().iter().zip(&ideal.b) {
        for _ in 0..b {
            match quotient.div_line(line) {
                Some(q) => quotient = q,
                None => return Ok(false),
            }
        }
    }
    Ok(quotient.multiplicity_at_origin().unwrap_or(0) as u64 >= ideal.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Preset;
    use crate::rational::rat;

    fn theorem1() -> WeightedArrangement {
        Preset::Theorem1.arrangement()
    }

    fn xyz() -> BivariatePolynomial {
        BivariatePolynomial::monomial(1, 1) * BivariatePolynomial::from_line(&Line::x_plus_y())
    }

    #[test]
    fn theorem1_descriptors() {
        let arr = theorem1();
        let cases = [
            (2, vec![1, 1, 1], 3, 0),
            (3, vec![2, 2, 2], 5, 0),
            (4, vec![2, 2, 2], 7, 1),
            (5, vec![3, 3, 3], 9, 0),
        ];
        for (m, b, e, p) in cases {
            assert_eq!(ideal_of_m(&arr, m), IdealDescriptor { b, p, e }, "m = {m}");
        }
        let half = ideal_of(&arr, &rat(1, 2));
        assert_eq!(half, IdealDescriptor { b: vec![0, 0, 0], p: 0, e: 0 });
        assert!(half.is_trivial());
    }

    #[test]
    fn presets_reproduce_warm_up_ideals() {
        let point = Preset::Point.arrangement();
        let smooth = Preset::Smooth.arrangement();
        for m in 1..=20u64 {
            let j = ideal_of_m(&point, m);
            assert_eq!((j.b.len(), j.e, j.p), (0, m as i64 - 1, m - 1));
            let j = ideal_of_m(&smooth, m);
            assert_eq!((j.b.clone(), j.e, j.p), (vec![m], m as i64 - 1, 0));
        }
    }

    #[test]
    fn generator_lists() {
        let arr = theorem1();
        let g3 = generators(&arr, &ideal_of_m(&arr, 3));
        assert_eq!(g3, vec![xyz().pow(2)]);
        let g4 = generators(&arr, &ideal_of_m(&arr, 4));
        assert_eq!(
            g4,
            vec![
                xyz().pow(2) * BivariatePolynomial::monomial(1, 0),
                xyz().pow(2) * BivariatePolynomial::monomial(0, 1),
            ]
        );
        let shown: Vec<_> = factored_generators(&arr, &ideal_of_m(&arr, 4))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(shown, ["(x*y*(x + y))^2 * x", "(x*y*(x + y))^2 * y"]);
        assert_eq!(generators(&arr, &IdealDescriptor::unit(3)), vec![BivariatePolynomial::one()]);
    }

    #[test]
    fn membership() {
        let arr = theorem1();
        let j4 = ideal_of_m(&arr, 4);
        let f = xyz().pow(2) * BivariatePolynomial::monomial(1, 0);
        assert!(contains(&arr, &j4, &f).unwrap());
        let redundant = xyz().pow(2) * BivariatePolynomial::from_line(&Line::x_plus_y());
        assert!(contains(&arr, &j4, &redundant).unwrap());
        assert!(!contains(&arr, &j4, &xyz().pow(2)).unwrap());

        let j3 = ideal_of_m(&arr, 3);
        let f = BivariatePolynomial::monomial(2, 2) * BivariatePolynomial::from_line(&Line::x_plus_y());
        assert!(!contains(&arr, &j3, &f).unwrap());
        assert!(!contains(&arr, &j3, &BivariatePolynomial::one()).unwrap());
        assert!(matches!(
            contains(&arr, &j3, &BivariatePolynomial::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn vacuous_exceptional_condition_is_trivial() {
        let d = IdealDescriptor { b: vec![0, 0], p: 0, e: -1 };
        assert!(is_trivial(&d));
        assert!(!is_trivial(&ideal_of_m(&theorem1(), 2)));
        let arr = theorem1();
        assert_eq!(ideal_of(&arr, &rat(1, 10)).e, -1);
    }
}
