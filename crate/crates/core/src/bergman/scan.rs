use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::{BergmanKernel, QuadratureSpec};
use crate::arrangement::WeightedArrangement;
use crate::error::{Error, Result};

/// Slopes below `-SLOPE_TOLERANCE` are read as divergence to +∞ as t → 0.
pub const SLOPE_TOLERANCE: f64 = 0.05;

/// t ↦ (cx·t^px, cy·t^py).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Curve {
    pub cx: f64,
    pub px: u32,
    pub cy: f64,
    pub py: u32,
}

impl Curve {
    pub fn ray(a: f64, b: f64) -> Curve {
        Curve { cx: a, px: 1, cy: b, py: 1 }
    }

    pub fn at(&self, t: f64) -> [Complex64; 2] {
        [
            Complex64::new(self.cx * t.powi(self.px as i32), 0.0),
            Complex64::new(self.cy * t.powi(self.py as i32), 0.0),
        ]
    }
}

impl FromStr for Curve {
    type Err = Error;

    /// `x=y`, `x=-y`, `x=0`, `y=0`, `ray:a,b` or `mono:cx,px,cy,py`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidIndices(format!("unrecognized curve {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "x=y" | "y=x" => return Ok(Curve::ray(1.0, 1.0)),
            "x=-y" | "y=-x" => return Ok(Curve::ray(1.0, -1.0)),
            "x=0" => return Ok(Curve::ray(0.0, 1.0)),
            "y=0" => return Ok(Curve::ray(1.0, 0.0)),
            _ => {}
        }
        let (kind, rest) = compact.split_once(':').ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split(',').collect();
        let real = |t: &str| t.parse::<f64>().ok().filter(|v| v.is_finite());
        let curve = match (kind, parts.as_slice()) {
            ("ray", [a, b]) => Curve::ray(real(a).ok_or_else(bad)?, real(b).ok_or_else(bad)?),
            ("mono", [cx, px, cy, py]) => Curve {
                cx: real(cx).ok_or_else(bad)?,
                px: px.parse().map_err(|_| bad())?,
                cy: real(cy).ok_or_else(bad)?,
                py: py.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        if curve.px == 0 && curve.cx != 0.0 || curve.py == 0 && curve.cy != 0.0 {
            return Err(Error::InvalidIndices(format!("curve {s:?} does not pass through 0")));
        }
        if curve.cx == 0.0 && curve.cy == 0.0 {
            return Err(bad());
        }
        Ok(curve)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.px == 1 && self.py == 1 {
            write!(f, "ray:{},{}", self.cx, self.cy)
        } else {
            write!(f, "mono:{},{},{},{}", self.cx, self.px, self.cy, self.py)
        }
    }
}

/// `points` values of t spaced evenly in log t over [tmin, tmax].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogGrid {
    pub tmin: f64,
    pub tmax: f64,
    pub points: usize,
}

impl Default for LogGrid {
    fn default() -> Self {
        LogGrid { tmin: 1e-3, tmax: 1e-1, points: 21 }
    }
}

impl LogGrid {
    pub fn new(tmin: f64, tmax: f64, points: usize) -> Result<Self> {
        if !(tmin > 0.0 && tmin < tmax && tmax < 1.0 && points >= 2) {
            return Err(Error::InvalidQuadrature(format!(
                "need 0 < tmin < tmax < 1 and at least 2 points, got [{tmin}, {tmax}] with {points}"
            )));
        }
        Ok(LogGrid { tmin, tmax, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let (a, b) = (self.tmin.ln(), self.tmax.ln());
        (0..self.points)
            .map(|i| (a + (b - a) * i as f64 / (self.points - 1) as f64).exp())
            .collect()
    }
}

/// Least-squares slope of ys against xs.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Boundedness {
    Bounded,
    Unbounded,
}

impl Boundedness {
    pub fn from_slope(slope: f64) -> Self {
        if slope < -SLOPE_TOLERANCE {
            Boundedness::Unbounded
        } else {
            Boundedness::Bounded
        }
    }
}

impl fmt::Display for Boundedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundedness::Bounded => "BOUNDED",
            Boundedness::Unbounded => "UNBOUNDED",
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRow {
    pub t: f64,
    pub phi_m1: f64,
    pub phi_m2: f64,
    pub delta: f64,
}

/// Δ(t) = φ̂_{m2} − φ̂_{m1} along a curve.
#[derive(Clone, Debug, Serialize)]
pub struct CurveScan {
    pub curve: String,
    pub m1: u64,
    pub m2: u64,
    pub rows: Vec<ScanRow>,
    pub slope: f64,
    pub verdict: Boundedness,
}

impl CurveScan {
    pub fn from_kernels(k1: &BergmanKernel, k2: &BergmanKernel, curve: &Curve, grid: &LogGrid) -> Self {
        let rows: Vec<ScanRow> = grid
            .values()
            .into_iter()
            .map(|t| {
                let z = curve.at(t);
                let (phi_m1, phi_m2) = (k1.phi(z), k2.phi(z));
                ScanRow { t, phi_m1, phi_m2, delta: phi_m2 - phi_m1 }
            })
            .collect();
        let xs: Vec<f64> = rows.iter().map(|r| r.t.ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.delta).collect();
        let slope = fit_slope(&xs, &ys);
        CurveScan {
            curve: curve.to_string(),
            m1: k1.m(),
            m2: k2.m(),
            rows,
            slope,
            verdict: Boundedness::from_slope(slope),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,phi_m1,phi_m2,delta\n");
        for r in &self.rows {
            out.push_str(&format!("{:e},{},{},{}\n", r.t, r.phi_m1, r.phi_m2, r.delta));
        }
        out
    }
}

pub fn curve_scan(
    arr: &WeightedArrangement,
    m1: u64,
    m2: u64,
    curve: &Curve,
    grid: &LogGrid,
    quad: &QuadratureSpec,
) -> Result<CurveScan> {
    let k1 = BergmanKernel::new(arr, m1, quad)?;
    let k2 = BergmanKernel::new(arr, m2, quad)?;
    Ok(CurveScan::from_kernels(&k1, &k2, curve, grid))
}

/// Slope of φ̂_m(t·u) against log t.
pub fn ray_slope(kernel: &BergmanKernel, direction: [Complex64; 2], grid: &LogGrid) -> f64 {
    let ts = grid.values();
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = ts
        .iter()
        .map(|&t| kernel.phi([direction[0] * t, direction[1] * t]))
        .collect();
    fit_slope(&xs, &ys)
}

const GENERIC_RAYS: usize = 8;
const CANDIDATE_RAYS: usize = 64;
const MIN_LINE_DISTANCE: f64 = 0.2;

/// Eight fixed unit directions, each kept away from the arrangement's lines.
pub fn generic_rays(arr: &WeightedArrangement) -> Vec<[Complex64; 2]> {
    let forms: Vec<[Complex64; 2]> = arr
        .lines()
        .iter()
        .map(|l| {
            let c = l.coefficients_f64();
            let n = (c[0].norm_sqr() + c[1].norm_sqr()).sqrt();
            [c[0] / n, c[1] / n]
        })
        .collect();
    let mut scored: Vec<(f64, [Complex64; 2])> = (0..CANDIDATE_RAYS)
        .map(|k| {
            let k = k as f64;
            let theta = 0.15 + (k * 0.618_033_988_75).fract() * 1.27;
            let psi = (k * 0.414_213_562_37 + 0.1).fract() * std::f64::consts::TAU;
            let u = [
                Complex64::new(theta.cos(), 0.0),
                Complex64::from_polar(theta.sin(), psi),
            ];
            let clearance = forms
                .iter()
                .map(|c| (c[0] * u[0] + c[1] * u[1]).norm())
                .fold(f64::INFINITY, f64::min);
            (clearance, u)
        })
        .collect();
    let mut rays: Vec<[Complex64; 2]> = scored
        .iter()
        .filter(|(c, _)| *c >= MIN_LINE_DISTANCE)
        .take(GENERIC_RAYS)
        .map(|(_, u)| *u)
        .collect();
    if rays.len() < GENERIC_RAYS {
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));
        rays = scored.iter().take(GENERIC_RAYS).map(|(_, u)| *u).collect();
    }
    rays
}

pub fn generic_ray_slopes(kernel: &BergmanKernel, arr: &WeightedArrangement, grid: &LogGrid) -> Vec<f64> {
    generic_rays(arr)
        .into_iter()
        .map(|u| ray_slope(kernel, u, grid))
        .collect()
}

/// Mean generic-ray slope of φ̂_m over [10⁻³, 10⁻¹].
pub fn lelong_estimate(arr: &WeightedArrangement, m: u64, quad: &QuadratureSpec) -> Result<f64> {
    let kernel = BergmanKernel::new(arr, m, quad)?;
    let slopes = generic_ray_slopes(&kernel, arr, &LogGrid::default());
    Ok(slopes.iter().sum::<f64>() / slopes.len() as f64)
}
