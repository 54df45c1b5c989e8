use num_traits::Signed;
use serde::Serialize;

use crate::arrangement::{Line, WeightedArrangement};
use crate::error::{Error, Result};
use crate::multiplier_ideal::{ideal_of_m, BivariatePolynomial, FactoredGenerator, IdealDescriptor};
use crate::rational::{fmt_rational, int, to_f64, Rational};

/// Multiplier x^α·y^β of the common prefactor Πℓᵢ^{bᵢ}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub alpha: u32,
    pub beta: u32,
}

/// Basis Πℓᵢ^{bᵢ}·x^α·y^β, p ≤ α+β, of the degree-≤N part of J(mφ),
/// sorted by total degree and then by descending α.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleBasis {
    pub m: u64,
    pub max_degree: u32,
    pub ideal: IdealDescriptor,
    #[serde(skip)]
    pub prefactor: Vec<(Line, u64)>,
    pub prefactor_degree: u32,
    pub multipliers: Vec<Monomial>,
}

impl AdmissibleBasis {
    pub fn len(&self) -> usize {
        self.multipliers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multipliers.is_empty()
    }

    pub fn degree(&self, index: usize) -> u32 {
        let mono = self.multipliers[index];
        self.prefactor_degree + mono.alpha + mono.beta
    }

    /// Lowest total degree present.
    pub fn lowest_degree(&self) -> Option<u32> {
        (!self.is_empty()).then(|| self.degree(0))
    }

    pub fn factored(&self, index: usize) -> FactoredGenerator {
        let mono = self.multipliers[index];
        FactoredGenerator {
            line_powers: self.prefactor.clone(),
            x_power: mono.alpha as u64,
            y_power: mono.beta as u64,
        }
    }

    pub fn polynomial(&self, index: usize) -> BivariatePolynomial {
        self.factored(index).expand()
    }
}

pub fn admissible_basis(arr: &WeightedArrangement, m: u64, max_degree: u32) -> AdmissibleBasis {
    let ideal = ideal_of_m(arr, m);
    let prefactor_degree = ideal.line_degree() as u32;
    let p = ideal.p as u32;
    let mut multipliers = Vec::new();
    if let Some(room) = max_degree.checked_sub(prefactor_degree) {
        for d in p..=room {
            for alpha in (0..=d).rev() {
                multipliers.push(Monomial { alpha, beta: d - alpha });
            }
        }
    }
    AdmissibleBasis {
        m,
        max_degree,
        prefactor: arr.lines().iter().cloned().zip(ideal.b.iter().copied()).collect(),
        ideal,
        prefactor_degree,
        multipliers,
    }
}

/// ∫₀^R r^{d - s + 3} dr = R^{d-s+4}/(d-s+4), where d is the combined degree of
/// the two basis elements and s = 2m·(total mass).
pub fn radial_factor(d_total: u32, s: &Rational, radius: f64) -> Result<f64> {
    let power = int(d_total as i64) - s + int(4);
    if !power.is_positive() {
        return Err(Error::NonIntegrableExponent {
            exponent: fmt_rational(&(power - int(1))),
        });
    }
    let k = to_f64(&power);
    Ok(radius.powf(k) / k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Preset;
    use crate::multiplier_ideal::contains;
    use crate::rational::rat;

    #[test]
    fn theorem1_bases() {
        let arr = Preset::Theorem1.arrangement();
        let b = admissible_basis(&arr, 3, 6);
        assert_eq!(b.len(), 1);
        let xyz = BivariatePolynomial::monomial(1, 1) * BivariatePolynomial::from_line(&Line::x_plus_y());
        assert_eq!(b.polynomial(0), xyz.pow(2));
        assert_eq!(admissible_basis(&arr, 3, 7).len(), 3);
        let b = admissible_basis(&arr, 1, 1);
        assert_eq!(b.multipliers, [Monomial { alpha: 1, beta: 0 }, Monomial { alpha: 0, beta: 1 }]);
        assert!(admissible_basis(&arr, 8, 12).is_empty());
    }

    #[test]
    fn basis_elements_are_members_and_sorted() {
        let arr = Preset::Theorem1.arrangement();
        for m in 1..=5 {
            let b = admissible_basis(&arr, m, 10);
            for i in 0..b.len() {
                assert!(contains(&arr, &b.ideal, &b.polynomial(i)).unwrap());
                assert_eq!(b.polynomial(i).degree(), Some(b.degree(i)));
                if i > 0 {
                    assert!(b.degree(i) >= b.degree(i - 1));
                }
            }
        }
    }

    #[test]
    fn radial_factors() {
        assert_eq!(radial_factor(12, &int(12), 1.0).unwrap(), 0.25);
        assert!((radial_factor(2, &int(0), 1.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(radial_factor(14, &int(16), 1.0).unwrap(), 0.5);
        assert!((radial_factor(0, &int(0), 2.0).unwrap() - 4.0).abs() < 1e-12);
        assert!(matches!(
            radial_factor(2, &int(6), 1.0),
            Err(Error::NonIntegrableExponent { .. })
        ));
        assert!(radial_factor(2, &rat(11, 2), 1.0).is_ok());
    }
}
