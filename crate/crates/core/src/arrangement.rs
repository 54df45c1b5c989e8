//! Weighted central line arrangements in C² and their weights
//! φ(z) = Σ aᵢ·log|ℓᵢ(z)| + δ₀·log‖z‖.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{
    fmt_gauss, fmt_rational, gauss_int, gauss_to_c64, int, is_zero_gauss, rat, serde_rational,
    to_f64, GaussianRational, Rational,
};

/// A line ℓ(x, y) = c_x·x + c_y·y through the origin, stored with its first
/// nonzero coefficient equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    cx: GaussianRational,
    cy: GaussianRational,
}

impl Line {
    pub fn new(cx: GaussianRational, cy: GaussianRational) -> Option<Line> {
        if !is_zero_gauss(&cx) {
            let cy = cy / &cx;
            Some(Line { cx: gauss_int(1, 0), cy })
        } else if !is_zero_gauss(&cy) {
            Some(Line {
                cx: gauss_int(0, 0),
                cy: gauss_int(1, 0),
            })
        } else {
            None
        }
    }

    /// The line `x = 0`.
    pub fn x() -> Line {
        Line::new(gauss_int(1, 0), gauss_int(0, 0)).unwrap()
    }

    /// The line `y = 0`.
    pub fn y() -> Line {
        Line::new(gauss_int(0, 0), gauss_int(1, 0)).unwrap()
    }

    /// The line `x + y = 0`.
    pub fn x_plus_y() -> Line {
        Line::new(gauss_int(1, 0), gauss_int(1, 0)).unwrap()
    }

    pub fn cx(&self) -> &GaussianRational {
        &self.cx
    }

    pub fn cy(&self) -> &GaussianRational {
        &self.cy
    }

    pub fn coefficients_f64(&self) -> [Complex64; 2] {
        [gauss_to_c64(&self.cx), gauss_to_c64(&self.cy)]
    }

    pub fn eval(&self, z: [Complex64; 2]) -> Complex64 {
        let [a, b] = self.coefficients_f64();
        a * z[0] + b * z[1]
    }

    /// Unit vector spanning the line (a zero of the form).
    pub fn direction(&self) -> [Complex64; 2] {
        let [a, b] = self.coefficients_f64();
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        [-b / norm, a / norm]
    }

    /// Unit normal: the conjugate coefficient vector, so that ℓ(normal) = |c|.
    pub fn normal(&self) -> [Complex64; 2] {
        let [a, b] = self.coefficients_f64();
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        [a.conj() / norm, b.conj() / norm]
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_zero_gauss(&self.cx) {
            return f.write_str("y");
        }
        if is_zero_gauss(&self.cy) {
            return f.write_str("x");
        }
        let c = &self.cy;
        if c.im.is_zero() {
            let mag = c.re.abs();
            let sign = if c.re.is_negative() { '-' } else { '+' };
            if mag == int(1) {
                write!(f, "x {sign} y")
            } else {
                write!(f, "x {sign} {}*y", fmt_rational(&mag))
            }
        } else {
            write!(f, "x + {}*y", fmt_gauss(c))
        }
    }
}

/// Finitely many distinct lines through 0 with nonnegative rational weights,
/// plus an isotropic point mass δ₀ at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArrangementFile", into = "ArrangementFile")]
pub struct WeightedArrangement {
    lines: Arc<[Line]>,
    coeffs: Vec<Rational>,
    point_mass: Rational,
    total_mass: Rational,
}

impl WeightedArrangement {
    pub fn new(lines: Vec<Line>, coeffs: Vec<Rational>, point_mass: Rational) -> Result<Self> {
        if lines.len() != coeffs.len() {
            return Err(Error::LengthMismatch {
                lines: lines.len(),
                coeffs: coeffs.len(),
            });
        }
        for (i, line) in lines.iter().enumerate() {
            if let Some(j) = lines[..i].iter().position(|l| l == line) {
                return Err(Error::DuplicateLine { first: j, second: i });
            }
        }
        for (i, a) in coeffs.iter().enumerate() {
            if a.is_negative() {
                return Err(Error::NegativeCoefficient {
                    target: format!("line {i}"),
                    value: fmt_rational(a),
                });
            }
        }
        if point_mass.is_negative() {
            return Err(Error::NegativeCoefficient {
                target: "point mass".into(),
                value: fmt_rational(&point_mass),
            });
        }
        let total_mass = coeffs.iter().fold(point_mass.clone(), |acc, a| acc + a);
        Ok(WeightedArrangement {
            lines: lines.into(),
            coeffs,
            point_mass,
            total_mass,
        })
    }

    /// Builds an arrangement from raw (unnormalized) coefficient pairs.
    pub fn from_forms(
        forms: Vec<(GaussianRational, GaussianRational)>,
        coeffs: Vec<Rational>,
        point_mass: Rational,
    ) -> Result<Self> {
        let lines = forms
            .into_iter()
            .enumerate()
            .map(|(index, (cx, cy))| Line::new(cx, cy).ok_or(Error::ZeroForm { index }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lines, coeffs, point_mass)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("arrangement serializes")
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub(crate) fn shared_lines(&self) -> Arc<[Line]> {
        Arc::clone(&self.lines)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn point_mass(&self) -> &Rational {
        &self.point_mass
    }

    pub fn total_mass(&self) -> &Rational {
        &self.total_mass
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// φ(z); `-inf` on a weighted line or at the origin when the mass is positive.
    pub fn phi_value(&self, z: [Complex64; 2]) -> f64 {
        let mut total = 0.0;
        for (line, a) in self.lines.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            total += to_f64(a) * line.eval(z).norm().ln();
        }
        if !self.point_mass.is_zero() {
            let norm = (z[0].norm_sqr() + z[1].norm_sqr()).sqrt();
            total += to_f64(&self.point_mass) * norm.ln();
        }
        total
    }

    /// Log canonical threshold at the origin: min(1/aᵢ, 2/total_mass).
    pub fn lct(&self) -> Result<Rational> {
        if self.total_mass.is_zero() {
            return Err(Error::ZeroWeight);
        }
        let mut best = int(2) / &self.total_mass;
        for a in self.coeffs.iter().filter(|a| !a.is_zero()) {
            let candidate = a.recip();
            if candidate < best {
                best = candidate;
            }
        }
        Ok(best)
    }
}

/// Built-in arrangements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// x, y, x + y, each with weight 2/3.
    Theorem1,
    /// The single line x with weight 1.
    Smooth,
    /// No lines; δ₀ = 1, i.e. φ = log‖z‖.
    Point,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Theorem1, Preset::Smooth, Preset::Point];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Theorem1 => "theorem1",
            Preset::Smooth => "smooth",
            Preset::Point => "point",
        }
    }

    pub fn arrangement(self) -> WeightedArrangement {
        match self {
            Preset::Theorem1 => WeightedArrangement::new(
                vec![Line::x(), Line::y(), Line::x_plus_y()],
                vec![rat(2, 3); 3],
                int(0),
            ),
            Preset::Smooth => WeightedArrangement::new(vec![Line::x()], vec![int(1)], int(0)),
            Preset::Point => WeightedArrangement::new(vec![], vec![], int(1)),
        }
        .expect("presets are valid")
    }

    /// The preset equal to `arr`, if any.
    pub fn identify(arr: &WeightedArrangement) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| &p.arrangement() == arr)
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem1" => Ok(Preset::Theorem1),
            "smooth" => Ok(Preset::Smooth),
            "point" => Ok(Preset::Point),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct Q(#[serde(with = "serde_rational")] Rational);

/// On-disk form: `{"lines": [[[re,im],[re,im]], ...], "coeffs": [...], "point_mass": "0"}`.
///
/// A line may carry a third `[re,im]` pair (a constant term); it must be zero.
#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementFile {
    lines: Vec<Vec<[Q; 2]>>,
    coeffs: Vec<Q>,
    #[serde(default = "zero_mass")]
    point_mass: Q,
}

fn zero_mass() -> Q {
    Q(int(0))
}

impl TryFrom<ArrangementFile> for WeightedArrangement {
    type Error = Error;

    fn try_from(file: ArrangementFile) -> Result<Self> {
        let mut forms = Vec::with_capacity(file.lines.len());
        for (index, entry) in file.lines.into_iter().enumerate() {
            let mut parts = entry
                .into_iter()
                .map(|[re, im]| GaussianRational::new(re.0, im.0));
            let (Some(cx), Some(cy)) = (parts.next(), parts.next()) else {
                return Err(Error::ZeroForm { index });
            };
            if let Some(constant) = parts.next() {
                if !is_zero_gauss(&constant) || parts.next().is_some() {
                    return Err(Error::AffineLine { index });
                }
            }
            forms.push((cx, cy));
        }
        WeightedArrangement::from_forms(
            forms,
            file.coeffs.into_iter().map(|q| q.0).collect(),
            file.point_mass.0,
        )
    }
}

impl From<WeightedArrangement> for ArrangementFile {
    fn from(arr: WeightedArrangement) -> Self {
        let pair = |z: &GaussianRational| [Q(z.re.clone()), Q(z.im.clone())];
        ArrangementFile {
            lines: arr
                .lines
                .iter()
                .map(|l| vec![pair(&l.cx), pair(&l.cy)])
                .collect(),
            coeffs: arr.coeffs.iter().cloned().map(Q).collect(),
            point_mass: Q(arr.point_mass.clone()),
        }
    }
}

/// Loads an arrangement file; errors carry serde's line/column context.
pub fn load_arrangement(path: &Path) -> std::result::Result<WeightedArrangement, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    WeightedArrangement::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}
