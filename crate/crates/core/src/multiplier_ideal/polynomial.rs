use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::arrangement::Line;
use crate::rational::{fmt_gauss, fmt_rational, gauss_int, gauss_to_c64, is_zero_gauss, GaussianRational};

/// Polynomial in (x, y) with Gaussian-rational coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(alpha: u32, beta: u32) -> Self {
        Self::term(alpha, beta, gauss_int(1, 0))
    }

    pub fn term(alpha: u32, beta: u32, coeff: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(alpha, beta, coeff);
        p
    }

    pub fn from_line(line: &Line) -> Self {
        let mut p = Self::zero();
        p.add_term(1, 0, line.cx().clone());
        p.add_term(0, 1, line.cy().clone());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: u32, beta: u32) -> Option<&GaussianRational> {
        self.terms.get(&(alpha, beta))
    }

    fn add_term(&mut self, alpha: u32, beta: u32, coeff: GaussianRational) {
        if is_zero_gauss(&coeff) {
            return;
        }
        let entry = self
            .terms
            .entry((alpha, beta))
            .or_insert_with(|| gauss_int(0, 0));
        *entry += coeff;
        if is_zero_gauss(entry) {
            self.terms.remove(&(alpha, beta));
        }
    }

    /// Highest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// Lowest total degree, i.e. the multiplicity at the origin.
    pub fn multiplicity_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Exact quotient by a linear form, or `None` when it does not divide.
    pub fn div_line(&self, line: &Line) -> Option<Self> {
        // Division with x as the leading variable when cx ≠ 0, else by y.
        let (lead, other, lead_is_x) = if !is_zero_gauss(line.cx()) {
            (line.cx().clone(), line.cy().clone(), true)
        } else {
            (line.cy().clone(), line.cx().clone(), false)
        };
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        loop {
            let next = rem
                .terms
                .iter()
                .filter(|((a, b), _)| if lead_is_x { *a > 0 } else { *b > 0 })
                .max_by_key(|((a, b), _)| if lead_is_x { (*a, *b) } else { (*b, *a) })
                .map(|(k, v)| (*k, v.clone()));
            let Some(((a, b), coeff)) = next else { break };
            let q = coeff / &lead;
            let (qa, qb) = if lead_is_x { (a - 1, b) } else { (a, b - 1) };
            // rem -= q·x^qa·y^qb·(lead·v + other·w)
            rem.add_term(a, b, -(q.clone() * &lead));
            let (oa, ob) = if lead_is_x { (qa, qb + 1) } else { (qa + 1, qb) };
            rem.add_term(oa, ob, -(q.clone() * &other));
            quotient.add_term(qa, qb, q);
        }
        rem.is_zero().then_some(quotient)
    }

    /// Largest k with ℓᵏ | self. Infinite for the zero polynomial, returned as `u64::MAX`.
    pub fn order_along(&self, line: &Line) -> u64 {
        if self.is_zero() {
            return u64::MAX;
        }
        let mut k = 0;
        let mut current = self.clone();
        while let Some(q) = current.div_line(line) {
            current = q;
            k += 1;
        }
        k
    }

    pub fn eval(&self, z: [Complex64; 2]) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| gauss_to_c64(c) * z[0].powu(a) * z[1].powu(b))
            .sum()
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1.clone() * c2);
            }
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self * &rhs
    }
}

fn fmt_monomial(alpha: u32, beta: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    let pieces: Vec<_> = [part("x", alpha), part("y", beta)].into_iter().flatten().collect();
    pieces.join("*")
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Descending total degree, then descending x-power.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));
        for (i, (a, b)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let negative_real = c.im.is_zero() && c.re < num_rational::BigRational::zero();
            let (sign, mag) = if negative_real {
                ("-", GaussianRational::new(-c.re.clone(), c.im.clone()))
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono = fmt_monomial(a, b);
            let unit = mag.im.is_zero() && mag.re.is_one();
            match (unit, mono.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&mono)?,
                (false, true) => f.write_str(&fmt_gauss(&mag))?,
                (false, false) => write!(f, "{}*{mono}", fmt_gauss(&mag))?,
            }
        }
        Ok(())
    }
}

/// Sparse term list `[[α, β, "re", "im"], ...]`.
impl Serialize for BivariatePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(a, b), c) in &self.terms {
            seq.serialize_element(&(a, b, fmt_rational(&c.re), fmt_rational(&c.im)))?;
        }
        seq.end()
    }
}
