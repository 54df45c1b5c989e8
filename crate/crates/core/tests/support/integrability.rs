//! Brute-force local integrability of |f|²e^{-2cφ} at the origin.
//!
//! The polydisk is split by which unit-normalized form is smallest (the
//! arrangement's lines plus x and y). On the piece owned by form ℓ̂ we use
//! unitary coordinates w₁ = ℓ̂(z), w₂ ⟂ w₁ and log radii s = -ln|w₁|,
//! t = -ln|w₂|. The integrand only depends on the phase difference of w₁ and
//! w₂, and the volume element becomes 2π·|w₁|²|w₂|² ds dt dψ.
//!
//! Each piece is integrated over bands of s that are four decades wide.
//! Convergence means the band contributions decay: band 3 must be below
//! 10⁻³ of band 0 on every piece. A divergent integral keeps band sums of
//! comparable or growing size. The quadrature is shift-invariant from band
//! to band, so its bias cancels in the ratio.

use std::f64::consts::{LN_10, LN_2, PI};

use num_complex::Complex64;
use pshlab_core::rational::to_f64;
use pshlab_core::WeightedArrangement;

const BANDS: usize = 4;
const DECADES_PER_BAND: usize = 4;
const PSI_NODES: usize = 32;
const DECAY: f64 = 1e-3;

const GL_NODES: [f64; 4] = [-0.861_136_311_594_053, -0.339_981_043_584_856, 0.339_981_043_584_856, 0.861_136_311_594_053];
const GL_WEIGHTS: [f64; 4] = [0.347_854_845_137_454, 0.652_145_154_862_546, 0.652_145_154_862_546, 0.347_854_845_137_454];

/// Node data in log form. On its own piece the owning form equals w₁, so
/// its log modulus is set to -s exactly instead of being recomputed from z.
struct Node {
    band: usize,
    log_weight: f64,
    log_x: f64,
    log_y: f64,
    phi: f64,
}

struct Piece {
    nodes: Vec<Node>,
    /// log|ℓⱼ(z)| for each arrangement line, `lines` entries per node.
    log_lines: Vec<f64>,
}

pub struct IntegrabilityOracle {
    lines: usize,
    pieces: Vec<Piece>,
}

fn panel_nodes(lo: f64, hi: f64, width: f64) -> Vec<(f64, f64)> {
    let panels = ((hi - lo) / width).ceil() as usize;
    let mut out = Vec::with_capacity(4 * panels);
    for p in 0..panels {
        let a = lo + p as f64 * width;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            out.push((a + 0.5 * width * (x + 1.0), 0.5 * width * w));
        }
    }
    out
}

fn unit(c: [Complex64; 2]) -> [Complex64; 2] {
    let n = (c[0].norm_sqr() + c[1].norm_sqr()).sqrt();
    [c[0] / n, c[1] / n]
}

impl IntegrabilityOracle {
    pub fn new(arr: &WeightedArrangement) -> Self {
        let raw: Vec<[Complex64; 2]> = arr.lines().iter().map(|l| l.coefficients_f64()).collect();
        let mut forms: Vec<[Complex64; 2]> = raw.iter().map(|c| unit(*c)).collect();
        let scales: Vec<f64> = raw.iter().map(|c| (c[0].norm_sqr() + c[1].norm_sqr()).sqrt().ln()).collect();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut coordinate = [usize::MAX; 2];
        for (axis, extra) in [[one, zero], [zero, one]].into_iter().enumerate() {
            match forms.iter().position(|f| (f[0] * extra[1] - f[1] * extra[0]).norm() < 1e-12) {
                Some(j) => coordinate[axis] = j,
                None => {
                    coordinate[axis] = forms.len();
                    forms.push(extra);
                }
            }
        }
        let band_width = DECADES_PER_BAND as f64 * LN_10;
        let s_max = LN_2 + BANDS as f64 * band_width;
        let s_nodes = panel_nodes(LN_2, s_max, LN_10);
        let t_nodes = panel_nodes(LN_2, s_max + 5.0, LN_10);
        let dpsi = 2.0 * PI / PSI_NODES as f64;
        let n_lines = arr.len();

        let pieces = (0..forms.len())
            .map(|k| {
                let c = forms[k];
                let d = [-c[1].conj(), c[0].conj()];
                let mut piece = Piece { nodes: Vec::new(), log_lines: Vec::new() };
                let mut logs = vec![0.0; forms.len()];
                for &(s, ws) in &s_nodes {
                    let band = (((s - LN_2) / band_width) as usize).min(BANDS - 1);
                    let r1 = (-s).exp();
                    for &(t, wt) in &t_nodes {
                        let r2 = (-t).exp();
                        for q in 0..PSI_NODES {
                            let w1 = Complex64::from_polar(r1, q as f64 * dpsi);
                            let w2 = Complex64::new(r2, 0.0);
                            let z = [w1 * c[0].conj() + w2 * d[0].conj(), w1 * c[1].conj() + w2 * d[1].conj()];
                            let mut owned = true;
                            for (j, f) in forms.iter().enumerate() {
                                if j == k {
                                    logs[j] = -s;
                                    continue;
                                }
                                let v = (f[0] * z[0] + f[1] * z[1]).norm();
                                if v < r1 || (v == r1 && j < k) {
                                    owned = false;
                                    break;
                                }
                                logs[j] = v.ln();
                            }
                            if !owned {
                                continue;
                            }
                            let log_norm = 0.5 * (r1 * r1 + r2 * r2).ln();
                            let mut phi = 0.0;
                            for (j, a) in arr.coeffs().iter().enumerate() {
                                let a = to_f64(a);
                                if a != 0.0 {
                                    phi += a * (logs[j] + scales[j]);
                                }
                            }
                            let delta = to_f64(arr.point_mass());
                            if delta != 0.0 {
                                phi += delta * log_norm;
                            }
                            piece.log_lines.extend((0..n_lines).map(|j| logs[j] + scales[j]));
                            piece.nodes.push(Node {
                                band,
                                log_weight: (ws * wt * dpsi * 2.0 * PI).ln() - 2.0 * s - 2.0 * t,
                                log_x: logs[coordinate[0]],
                                log_y: logs[coordinate[1]],
                                phi,
                            });
                        }
                    }
                }
                piece
            })
            .collect();
        IntegrabilityOracle { lines: n_lines, pieces }
    }

    fn decide(&self, log_integrand: impl Fn(&Node, &[f64]) -> f64) -> bool {
        self.pieces.iter().all(|piece| {
            let logs: Vec<f64> = piece
                .nodes
                .iter()
                .enumerate()
                .map(|(i, n)| n.log_weight + log_integrand(n, &piece.log_lines[i * self.lines..(i + 1) * self.lines]))
                .collect();
            let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !top.is_finite() {
                return true;
            }
            let mut bands = [0.0; BANDS];
            for (n, l) in piece.nodes.iter().zip(&logs) {
                bands[n.band] += (l - top).exp();
            }
            bands[0] == 0.0 || bands[BANDS - 1] < DECAY * bands[0]
        })
    }

    /// Is x^α·y^β·e^{-cφ} square-integrable near 0?
    pub fn monomial_integrable(&self, alpha: u32, beta: u32, c: f64) -> bool {
        self.product_integrable(&[], alpha, beta, c)
    }

    /// Same for Πℓⱼ^{kⱼ}·x^α·y^β; missing trailing powers are zero.
    pub fn product_integrable(&self, line_powers: &[u32], alpha: u32, beta: u32, c: f64) -> bool {
        self.decide(|n, log_lines| {
            let mut v = -2.0 * c * n.phi;
            if alpha > 0 {
                v += 2.0 * alpha as f64 * n.log_x;
            }
            if beta > 0 {
                v += 2.0 * beta as f64 * n.log_y;
            }
            for (k, l) in line_powers.iter().zip(log_lines) {
                if *k > 0 {
                    v += 2.0 * *k as f64 * l;
                }
            }
            v
        })
    }
}
