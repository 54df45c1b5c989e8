//! Truncated Bergman kernels of e^{-2mφ} on the unit ball.
//!
//! The weight is log-homogeneous, so every inner product of two homogeneous
//! basis elements splits into an exact radial integral times a Monte Carlo
//! integral over S³. Admissibility of basis elements is decided symbolically.

mod basis;
mod scan;
mod sphere;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::arrangement::WeightedArrangement;
use crate::error::{Error, Result};
use crate::rational::{int, to_f64};

pub use basis::{admissible_basis, radial_factor, AdmissibleBasis, Monomial};
pub use scan::{
    curve_scan, fit_slope, generic_ray_slopes, generic_rays, lelong_estimate, ray_slope, Boundedness, Curve, CurveScan,
    LogGrid, ScanRow, SLOPE_TOLERANCE,
};
pub use sphere::{sample_sphere, SPHERE_AREA};

use sphere::{sphere_moments, SphereIntegrand};

/// Slope fits near 0 only see the lowest admissible degrees; this many extra
/// degrees above the lowest one are always kept, whatever `max_degree` says.
pub const DEGREE_MARGIN: u32 = 4;

/// Relative eigenvalue cut used when orthonormalizing.
pub const RANK_TOLERANCE: f64 = 1e-8;

pub const MIN_SPHERE_SAMPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub max_degree: u32,
    pub sphere_samples: usize,
    pub seed: u64,
    pub radius: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            max_degree: 12,
            sphere_samples: 1_000_000,
            seed: 42,
            radius: 1.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sphere_samples < MIN_SPHERE_SAMPLES {
            return Err(Error::InvalidQuadrature(format!(
                "sphere_samples must be at least {MIN_SPHERE_SAMPLES}, got {}",
                self.sphere_samples
            )));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidQuadrature(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        Ok(())
    }

    /// Degree cutoff actually used for index `m`.
    pub fn effective_max_degree(&self, arr: &WeightedArrangement, m: u64) -> u32 {
        let lowest = crate::multiplier_ideal::ideal_of_m(arr, m).order_at_origin() as u32;
        self.max_degree.max(lowest + DEGREE_MARGIN)
    }
}

/// Estimated Gram matrix of an admissible basis, with its orthonormalization.
#[derive(Clone, Debug, Serialize)]
pub struct GramResult {
    pub basis: AdmissibleBasis,
    pub quadrature: QuadratureSpec,
    #[serde(serialize_with = "ser_complex_matrix")]
    pub gram: DMatrix<Complex64>,
    #[serde(serialize_with = "ser_real_matrix")]
    pub stderr: DMatrix<f64>,
    /// Rows are the orthonormal elements in terms of the basis.
    #[serde(serialize_with = "ser_complex_matrix")]
    pub transform: DMatrix<Complex64>,
    pub effective_rank: usize,
    pub dropped: usize,
    pub eigen_min: f64,
    pub eigen_max: f64,
    pub degenerate: bool,
}

impl GramResult {
    pub fn m(&self) -> u64 {
        self.basis.m
    }

    /// Largest |⟨g,h⟩|/stderr over pairs of different total degree.
    pub fn max_cross_degree_zscore(&self) -> Option<f64> {
        let n = self.basis.len();
        let mut worst: Option<f64> = None;
        for g in 0..n {
            for h in g + 1..n {
                if self.basis.degree(g) == self.basis.degree(h) {
                    continue;
                }
                let se = self.stderr[(g, h)];
                let z = if se > 0.0 {
                    self.gram[(g, h)].norm() / se
                } else if self.gram[(g, h)].norm() == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                };
                worst = Some(worst.map_or(z, |w| w.max(z)));
            }
        }
        worst
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("gram results serialize")
    }
}

fn ser_complex_matrix<S: Serializer>(m: &DMatrix<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for row in m.row_iter() {
        let row: Vec<[f64; 2]> = row.iter().map(|z| [z.re, z.im]).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

fn ser_real_matrix<S: Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for row in m.row_iter() {
        let row: Vec<f64> = row.iter().copied().collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

pub fn gram_matrix(arr: &WeightedArrangement, m: u64, quad: &QuadratureSpec) -> Result<GramResult> {
    quad.validate()?;
    let max_degree = quad.effective_max_degree(arr, m);
    let basis = admissible_basis(arr, m, max_degree);
    if basis.is_empty() {
        return Err(Error::EmptyBasis { max_degree });
    }
    gram_for_basis(arr, basis, quad)
}

fn gram_for_basis(arr: &WeightedArrangement, basis: AdmissibleBasis, quad: &QuadratureSpec) -> Result<GramResult> {
    let m = basis.m;
    let integrand = SphereIntegrand {
        lines: arr.lines().iter().map(|l| l.coefficients_f64()).collect(),
        exponents: arr
            .coeffs()
            .iter()
            .zip(&basis.ideal.b)
            .map(|(a, b)| *b as f64 - m as f64 * to_f64(a))
            .collect(),
        multipliers: basis.multipliers.clone(),
    };
    let moments = sphere_moments(&integrand, quad.sphere_samples, quad.seed);
    let s = int(2 * m as i64) * arr.total_mass();
    let n = basis.len();
    let count = moments.samples as f64;

    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    let mut stderr = DMatrix::<f64>::zeros(n, n);
    for g in 0..n {
        for h in g..n {
            let scale = SPHERE_AREA * radial_factor(basis.degree(g) + basis.degree(h), &s, quad.radius)?;
            let mean = (moments.sum[(g, h)] + moments.sum[(h, g)].conj()) / (2.0 * count);
            let second = moments.sum_abs2[(g, h)] / count;
            let var = (second - mean.norm_sqr()).max(0.0) / (count - 1.0);
            gram[(g, h)] = mean * scale;
            gram[(h, g)] = (mean * scale).conj();
            stderr[(g, h)] = var.sqrt() * scale;
            stderr[(h, g)] = stderr[(g, h)];
        }
    }

    let raw = SymmetricEigen::new(gram.clone()).eigenvalues;
    let eigen_min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let eigen_max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    // Jacobi scaling first: basis norms span many orders of magnitude.
    let d: Vec<f64> = (0..n).map(|i| 1.0 / gram[(i, i)].re.max(f64::MIN_POSITIVE).sqrt()).collect();
    let scaled = DMatrix::from_fn(n, n, |i, j| gram[(i, j)] * (d[i] * d[j]));
    let eig = SymmetricEigen::new(scaled);
    let top = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let kept: Vec<usize> = (0..n)
        .filter(|&i| eig.eigenvalues[i] > RANK_TOLERANCE * top)
        .collect();
    let transform = DMatrix::from_fn(kept.len(), n, |r, j| {
        let i = kept[r];
        eig.eigenvectors[(j, i)].conj() * (d[j] / eig.eigenvalues[i].sqrt())
    });
    let effective_rank = kept.len();
    Ok(GramResult {
        basis,
        quadrature: quad.clone(),
        gram,
        stderr,
        transform,
        effective_rank,
        dropped: n - effective_rank,
        eigen_min,
        eigen_max,
        degenerate: effective_rank < n,
    })
}

/// φ̂_m = (1/2m)·log Σ|σ_l|² for the orthonormalized truncated basis.
#[derive(Clone, Debug)]
pub struct BergmanKernel {
    arr: WeightedArrangement,
    gram: GramResult,
}

impl BergmanKernel {
    pub fn new(arr: &WeightedArrangement, m: u64, quad: &QuadratureSpec) -> Result<Self> {
        Ok(BergmanKernel {
            arr: arr.clone(),
            gram: gram_matrix(arr, m, quad)?,
        })
    }

    pub fn gram(&self) -> &GramResult {
        &self.gram
    }

    pub fn m(&self) -> u64 {
        self.gram.basis.m
    }

    /// log Σ|σ_l(z)|². The common factor Πℓᵢ^{bᵢ} is pulled out before
    /// summing, so tiny |z| does not underflow.
    pub fn log_density(&self, z: [Complex64; 2]) -> f64 {
        let mut log_prefactor = 0.0;
        for (line, b) in self.arr.lines().iter().zip(&self.gram.basis.ideal.b) {
            if *b > 0 {
                log_prefactor += 2.0 * *b as f64 * line.eval(z).norm().ln();
            }
        }
        let mono = DVector::from_iterator(
            self.gram.basis.len(),
            self.gram
                .basis
                .multipliers
                .iter()
                .map(|mo| z[0].powu(mo.alpha) * z[1].powu(mo.beta)),
        );
        let sigma = &self.gram.transform * mono;
        log_prefactor + sigma.norm_squared().ln()
    }

    pub fn phi(&self, z: [Complex64; 2]) -> f64 {
        self.log_density(z) / (2.0 * self.m() as f64)
    }
}

pub fn bergman_phi(arr: &WeightedArrangement, m: u64, quad: &QuadratureSpec, point: [Complex64; 2]) -> Result<f64> {
    Ok(BergmanKernel::new(arr, m, quad)?.phi(point))
}
