//! Monte Carlo moments over the unit sphere S³ ⊂ C².
//!
//! Sample `i` of chunk `c` is drawn from the ChaCha8 stream `c` of the given
//! seed, and chunk sums are reduced in chunk order, so results depend only on
//! (inputs, seed) and not on the number of worker threads.

use nalgebra::{DMatrix, DMatrixView};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::basis::Monomial;

pub(crate) const CHUNK: usize = 4096;
const CHUNKS_PER_BATCH: usize = 16;

/// Surface area of S³.
pub const SPHERE_AREA: f64 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;

pub fn sample_sphere<R: Rng>(rng: &mut R) -> [Complex64; 2] {
    let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    [
        Complex64::new(g[0] / norm, g[1] / norm),
        Complex64::new(g[2] / norm, g[3] / norm),
    ]
}

/// u ↦ Π|ℓᵢ(u)|^{eᵢ}·u₁^α·u₂^β for each multiplier.
pub(crate) struct SphereIntegrand {
    pub lines: Vec<[Complex64; 2]>,
    /// Half the exponent of |ℓᵢ| in |g|²·e^{-2mφ}: bᵢ - m·aᵢ.
    pub exponents: Vec<f64>,
    pub multipliers: Vec<Monomial>,
}

impl SphereIntegrand {
    fn max_powers(&self) -> (usize, usize) {
        self.multipliers.iter().fold((0, 0), |(a, b), m| {
            (a.max(m.alpha as usize), b.max(m.beta as usize))
        })
    }

    fn envelope(&self, u: [Complex64; 2]) -> f64 {
        let log: f64 = self
            .lines
            .iter()
            .zip(&self.exponents)
            .filter(|(_, e)| **e != 0.0)
            .map(|(c, e)| e * (c[0] * u[0] + c[1] * u[1]).norm().ln())
            .sum();
        log.exp()
    }
}

/// Raw sums over all samples: Σ v_g·conj(v_h) and Σ |v_g|²·|v_h|².
pub(crate) struct SphereMoments {
    pub sum: DMatrix<Complex64>,
    pub sum_abs2: DMatrix<f64>,
    pub samples: usize,
}

fn chunk_sums(
    integrand: &SphereIntegrand,
    chunk: usize,
    count: usize,
    seed: u64,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let k = integrand.multipliers.len();
    let (max_a, max_b) = integrand.max_powers();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);

    // Row i holds [Re v, Im v] for sample i.
    let mut w = vec![0.0; count * 2 * k];
    let mut p = vec![0.0; count * k];
    let mut xp = vec![Complex64::new(1.0, 0.0); max_a + 1];
    let mut yp = vec![Complex64::new(1.0, 0.0); max_b + 1];
    for i in 0..count {
        let u = sample_sphere(&mut rng);
        for j in 1..=max_a {
            xp[j] = xp[j - 1] * u[0];
        }
        for j in 1..=max_b {
            yp[j] = yp[j - 1] * u[1];
        }
        let h = integrand.envelope(u);
        let row = &mut w[i * 2 * k..(i + 1) * 2 * k];
        let abs = &mut p[i * k..(i + 1) * k];
        for (j, mono) in integrand.multipliers.iter().enumerate() {
            let v = xp[mono.alpha as usize] * yp[mono.beta as usize] * h;
            row[j] = v.re;
            row[k + j] = v.im;
            abs[j] = v.norm_sqr();
        }
    }
    let w_rows = DMatrixView::from_slice_with_strides(&w, count, 2 * k, 2 * k, 1);
    let w_cols = DMatrixView::from_slice_with_strides(&w, 2 * k, count, 1, 2 * k);
    let mut wtw = DMatrix::zeros(2 * k, 2 * k);
    wtw.gemm(1.0, &w_cols, &w_rows, 0.0);
    let p_rows = DMatrixView::from_slice_with_strides(&p, count, k, k, 1);
    let p_cols = DMatrixView::from_slice_with_strides(&p, k, count, 1, k);
    let mut ptp = DMatrix::zeros(k, k);
    ptp.gemm(1.0, &p_cols, &p_rows, 0.0);
    (wtw, ptp)
}

pub(crate) fn sphere_moments(integrand: &SphereIntegrand, samples: usize, seed: u64) -> SphereMoments {
    let k = integrand.multipliers.len();
    let chunks = samples.div_ceil(CHUNK);
    let mut wtw = DMatrix::<f64>::zeros(2 * k, 2 * k);
    let mut ptp = DMatrix::<f64>::zeros(k, k);
    for start in (0..chunks).step_by(CHUNKS_PER_BATCH) {
        let end = (start + CHUNKS_PER_BATCH).min(chunks);
        let parts: Vec<_> = (start..end)
            .into_par_iter()
            .map(|c| {
                let count = CHUNK.min(samples - c * CHUNK);
                chunk_sums(integrand, c, count, seed)
            })
            .collect();
        for (a, b) in parts {
            wtw += a;
            ptp += b;
        }
    }
    // Σ v_g·conj(v_h) = (AᵀA + BᵀB) + i(BᵀA - AᵀB) for v = A + iB.
    let sum = DMatrix::from_fn(k, k, |g, h| {
        Complex64::new(
            wtw[(g, h)] + wtw[(k + g, k + h)],
            wtw[(k + g, h)] - wtw[(g, k + h)],
        )
    });
    SphereMoments {
        sum,
        sum_abs2: ptp,
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_lie_on_the_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let u = sample_sphere(&mut rng);
            assert!((u[0].norm_sqr() + u[1].norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn second_moment_of_a_coordinate() {
        // E|u₁|² = 1/2 and E|u₁|⁴ = 1/3 on S³.
        let integrand = SphereIntegrand {
            lines: vec![],
            exponents: vec![],
            multipliers: vec![Monomial { alpha: 1, beta: 0 }],
        };
        let m = sphere_moments(&integrand, 200_000, 3);
        let mean = m.sum[(0, 0)].re / m.samples as f64;
        let fourth = m.sum_abs2[(0, 0)] / m.samples as f64;
        assert!((mean - 0.5).abs() < 5e-3, "{mean}");
        assert!((fourth - 1.0 / 3.0).abs() < 5e-3, "{fourth}");
        assert!(m.sum[(0, 0)].im.abs() < 1e-9);
    }
}
