//! Sampling probe for "ψ₁ - ψ₂ is bounded above near 0", where
//! ψ = Σγᵢ·log|ℓᵢ| + δ·log‖z‖.
//!
//! Points approach the origin along each line (with transverse offsets r^j),
//! approach each line transversally at a fixed base point, and follow 64
//! generic rays, for r = 10^{-k}, k = 1..40. The difference is declared
//! unbounded when the running maximum climbs by more than 5 over the first
//! decade's value.

use num_complex::Complex64;
use pshlab_core::rational::to_f64;
use pshlab_core::SingularityClass;

const DECADES: i32 = 40;
const GENERIC_RAYS: usize = 64;
const JUMP: f64 = 5.0;

fn dot(c: [Complex64; 2], z: [Complex64; 2]) -> Complex64 {
    c[0] * z[0] + c[1] * z[1]
}

pub fn difference_unbounded(s1: &SingularityClass, s2: &SingularityClass) -> bool {
    let lines = s1.lines();
    let coeff: Vec<f64> = s1.gamma().iter().zip(s2.gamma()).map(|(a, b)| to_f64(a) - to_f64(b)).collect();
    let point = to_f64(s1.delta()) - to_f64(s2.delta());
    let forms: Vec<[Complex64; 2]> = lines.iter().map(|l| l.coefficients_f64()).collect();

    // ψ₁ - ψ₂ at z = a·u + b·v, where ℓᵢ(u) and ℓᵢ(v) are supplied exactly.
    let value = |lu: &[Complex64], lv: &[Complex64], a: f64, b: f64, log_norm: f64| -> f64 {
        let mut total = point * log_norm;
        for i in 0..forms.len() {
            if coeff[i] != 0.0 {
                total += coeff[i] * (lu[i] * a + lv[i] * b).norm().ln();
            }
        }
        total
    };

    let mut paths: Vec<Box<dyn Fn(f64) -> f64 + '_>> = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let v = line.direction();
        let n = line.normal();
        let mut lv: Vec<Complex64> = forms.iter().map(|c| dot(*c, v)).collect();
        lv[i] = Complex64::new(0.0, 0.0);
        // A unit phase on the offset keeps real cancellations from landing
        // the path on another line.
        let twist = Complex64::from_polar(1.0, 1.0);
        let ln: Vec<Complex64> = forms.iter().map(|c| dot(*c, n) * twist).collect();
        for j in 1..=3 {
            let (lv, ln) = (lv.clone(), ln.clone());
            paths.push(Box::new(move |r: f64| {
                let off = r.powi(j);
                let log_norm = r.ln() + 0.5 * (1.0 + (off / r).powi(2)).ln();
                value(&lv, &ln, r, off, log_norm)
            }));
        }
        let (lv, ln) = (lv.clone(), ln.clone());
        paths.push(Box::new(move |r: f64| {
            let log_norm = 0.5 * (0.25 + r * r).ln();
            value(&lv, &ln, 0.5, r, log_norm)
        }));
    }
    for k in 0..GENERIC_RAYS {
        let kf = k as f64;
        let theta = 0.1 + (kf * 0.618_033_988_75).fract() * 1.37;
        let psi = (kf * 0.754_877_666_25).fract() * std::f64::consts::TAU;
        let u = [Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), psi)];
        let lu: Vec<Complex64> = forms.iter().map(|c| dot(*c, u)).collect();
        let zero = vec![Complex64::new(0.0, 0.0); forms.len()];
        paths.push(Box::new(move |r: f64| value(&lu, &zero, r, 0.0, r.ln())));
    }

    let decade_max = |k: i32| {
        let r = 10f64.powi(-k);
        paths.iter().map(|p| p(r)).fold(f64::NEG_INFINITY, f64::max)
    };
    let first = decade_max(1);
    (2..=DECADES).any(|k| decade_max(k) - first > JUMP)
}
