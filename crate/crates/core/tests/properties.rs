use num_complex::Complex64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use pshlab_core::multiplier_ideal::factored_generators;
use pshlab_core::rational::{gauss, int, rat};
use pshlab_core::sequence::{adjacent_violations, build_sequence, within_limit_bounds};
use pshlab_core::{
    class_of_weight, compare, contains, generators, ideal_of, ideal_of_m, lelong, more_singular_or_equal,
    ComparisonResult, GaussianRational, Line, Preset, Rational, SingularityClass, WeightedArrangement,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rational(), small_rational()).prop_map(|(re, im)| gauss(re, im))
}

fn line() -> impl Strategy<Value = Line> {
    (gaussian(), gaussian()).prop_filter_map("zero form", |(a, b)| Line::new(a, b))
}

/// Up to `max_lines` distinct lines with weights j/12, 1 ≤ j ≤ 36, and a point mass in [0, 3].
fn arrangement(max_lines: usize) -> impl Strategy<Value = WeightedArrangement> {
    (
        proptest::collection::vec((-4i64..=4, 1i64..=3, 1i64..=36), 0..=max_lines),
        0i64..=36,
        any::<bool>(),
    )
        .prop_map(|(raw, mass, with_mass)| {
            let mut lines: Vec<Line> = Vec::new();
            let mut coeffs = Vec::new();
            for (i, (p, q, j)) in raw.into_iter().enumerate() {
                // The first slot may be the vertical line x = 0.
                let l = if i == 0 && p == 0 {
                    Line::x()
                } else {
                    Line::new(gauss(int(1), int(0)), gauss(rat(p, q), int(0))).unwrap()
                };
                if !lines.contains(&l) {
                    lines.push(l);
                    coeffs.push(rat(j, 12));
                }
            }
            let delta = if with_mass { rat(mass, 12) } else { int(0) };
            WeightedArrangement::new(lines, coeffs, delta).unwrap()
        })
}

fn grid_rational(max: i64, denom: i64) -> impl Strategy<Value = Rational> {
    (0..=max * denom).prop_map(move |n| rat(n, denom))
}

fn point() -> impl Strategy<Value = [Complex64; 2]> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_map(|(a, b, c, d)| [Complex64::new(a, b), Complex64::new(c, d)])
}

fn class_over(arr: &WeightedArrangement) -> impl Strategy<Value = SingularityClass> {
    let arr = arr.clone();
    (proptest::collection::vec(0i64..=36, arr.len()), 0i64..=36).prop_map(move |(g, d)| {
        SingularityClass::new(&arr, g.into_iter().map(|n| rat(n, 12)).collect(), rat(d, 12))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalization_is_idempotent(l in line(), s in gaussian()) {
        prop_assert_eq!(&Line::new(l.cx().clone(), l.cy().clone()).unwrap(), &l);
        if !s.is_zero() {
            let scaled = Line::new(l.cx() * &s, l.cy() * &s).unwrap();
            prop_assert_eq!(scaled, l);
        }
    }

    #[test]
    fn phi_is_log_homogeneous(arr in arrangement(5), z in point(), re in 0.05f64..3.0, arg in 0.0f64..std::f64::consts::TAU) {
        let lambda = Complex64::from_polar(re, arg);
        let base = arr.phi_value(z);
        prop_assume!(base.is_finite());
        let scaled = arr.phi_value([z[0] * lambda, z[1] * lambda]);
        let mass = pshlab_core::rational::to_f64(arr.total_mass());
        prop_assert!((scaled - base - mass * re.ln()).abs() < 1e-10, "{} vs {}", scaled, base);
    }

    #[test]
    fn ideals_shrink_as_c_grows(arr in arrangement(5), c1 in grid_rational(20, 12), c2 in grid_rational(20, 12)) {
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        let (a, b) = (ideal_of(&arr, &lo), ideal_of(&arr, &hi));
        prop_assert!(a.b.iter().zip(&b.b).all(|(x, y)| x <= y));
        prop_assert!(a.order_at_origin() <= b.order_at_origin());
    }

    #[test]
    fn two_line_arrangements_are_snc(a1 in 1i64..=36, a2 in 1i64..=36, c in grid_rational(20, 12)) {
        let arr = WeightedArrangement::new(vec![Line::x(), Line::y()], vec![rat(a1, 12), rat(a2, 12)], int(0)).unwrap();
        let ideal = ideal_of(&arr, &c);
        prop_assert_eq!(ideal.p, 0);
        let floor = |a: i64| (c.clone() * rat(a, 12)).floor().to_integer();
        prop_assert_eq!(ideal.b.clone(), vec![
            u64::try_from(floor(a1)).unwrap(),
            u64::try_from(floor(a2)).unwrap(),
        ]);
    }

    #[test]
    fn generators_are_members(arr in arrangement(4), m in 1u64..=6) {
        let ideal = ideal_of_m(&arr, m);
        let gens = generators(&arr, &ideal);
        prop_assert_eq!(gens.len() as u64, ideal.p + 1);
        prop_assert_eq!(factored_generators(&arr, &ideal).len(), gens.len());
        for g in &gens {
            prop_assert!(contains(&arr, &ideal, g).unwrap());
            prop_assert_eq!(g.degree(), Some(ideal.order_at_origin() as u32));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// The first c on the 1/60 grid with a nontrivial ideal brackets lct from above.
    #[test]
    fn lct_matches_threshold_sweep(arr in arrangement(5)) {
        prop_assume!(!arr.total_mass().is_zero());
        let lct = arr.lct().unwrap();
        let first = (1..=60 * 30)
            .map(|n| rat(n, 60))
            .find(|c| !ideal_of(&arr, c).is_trivial())
            .expect("nontrivial before c = 30");
        prop_assert!(first >= lct && first.clone() - rat(1, 60) < lct, "first {} lct {}", first, lct);
    }

    #[test]
    fn lelong_sandwich_and_rates(arr in arrangement(6)) {
        let nu = lelong(&class_of_weight(&arr));
        for e in build_sequence(&arr, 1000) {
            let m = int(e.m as i64);
            prop_assert!(e.lelong <= nu, "m = {}", e.m);
            prop_assert!(nu.clone() - int(2) / &m <= e.lelong, "m = {}", e.m);
            prop_assert!(within_limit_bounds(&arr, &e), "m = {}", e.m);
            for (g, a) in e.class.gamma().iter().zip(arr.coeffs()) {
                prop_assert!((g - a).abs() <= int(1) / &m);
            }
        }
    }
}

fn theorem1() -> WeightedArrangement {
    Preset::Theorem1.arrangement()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn comparison_is_a_partial_order(
        a in class_over(&theorem1()),
        b in class_over(&theorem1()),
        c in class_over(&theorem1()),
    ) {
        prop_assert!(more_singular_or_equal(&a, &a).unwrap());
        prop_assert_eq!(compare(&a, &a).unwrap(), ComparisonResult::Equivalent);
        let ab = more_singular_or_equal(&a, &b).unwrap();
        let ba = more_singular_or_equal(&b, &a).unwrap();
        if ab && ba {
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(compare(&a, &b).unwrap(), ComparisonResult::Equivalent);
        }
        if ab && more_singular_or_equal(&b, &c).unwrap() {
            prop_assert!(more_singular_or_equal(&a, &c).unwrap());
        }
    }
}

#[test]
fn every_window_of_six_has_a_violation() {
    let violations = adjacent_violations(&theorem1(), 3 * 600 + 5);
    for k in 1..=600u64 {
        let window = 3 * k..=3 * k + 5;
        assert!(
            violations.iter().any(|(a, b)| window.contains(a) && window.contains(b)),
            "no violation in {window:?}"
        );
    }
}

#[test]
fn rescaling_forms_shifts_phi_but_not_the_class() {
    // 3x, -2iy and (x + y)/2 with weights 2/3.
    let raw = [
        [Complex64::new(3.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(0.0, -2.0)],
        [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)],
    ];
    let raw_phi = |z: [Complex64; 2]| -> f64 {
        raw.iter().map(|c| (2.0 / 3.0) * (c[0] * z[0] + c[1] * z[1]).norm().ln()).sum()
    };
    let scaled = WeightedArrangement::from_forms(
        vec![
            (gauss(int(3), int(0)), gauss(int(0), int(0))),
            (gauss(int(0), int(0)), gauss(int(0), int(-2))),
            (gauss(rat(1, 2), int(0)), gauss(rat(1, 2), int(0))),
        ],
        vec![rat(2, 3); 3],
        int(0),
    )
    .unwrap();
    let arr = theorem1();
    let z = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)];
    let w = [Complex64::new(0.01, -0.02), Complex64::new(0.005, 0.0)];
    let shift = raw_phi(z) - arr.phi_value(z);
    assert!((raw_phi(w) - arr.phi_value(w) - shift).abs() < 1e-12);
    assert!((shift - (2.0 / 3.0) * 3f64.ln()).abs() < 1e-12);
    assert_eq!(scaled, arr);
    assert_eq!(class_of_weight(&scaled), class_of_weight(&arr));
}
