//! Fixed registry of reproducible statements about the approximation
//! sequence, each with a stable ID.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use super::{
    build_sequence, check_subsequence, entries_for, entry, pattern_violations,
    within_limit_bounds,
};
use crate::arrangement::{Preset, WeightedArrangement};
use crate::error::{Error, Result};
use crate::arrangement::Line;
use crate::multiplier_ideal::{factored_generators, generators, ideal_of_m, BivariatePolynomial};
use crate::rational::{int, rat};
use crate::singularity::{
    class_of_weight, compare, directed_violation, lelong, more_singular_or_equal,
    ComparisonResult, ViolationKind,
};

/// Registry IDs, in report order.
pub const CLAIM_IDS: [&str; 8] = [
    "generators",
    "theorem1",
    "reversal",
    "family",
    "prop2",
    "linear",
    "smooth",
    "point",
];

#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub id: String,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claims: Vec<ClaimOutcome>,
    pub all_passed: bool,
}

impl ClaimReport {
    fn new(claims: Vec<ClaimOutcome>) -> Self {
        let all_passed = claims.iter().all(|c| c.passed);
        ClaimReport { claims, all_passed }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| claim | result | statement | detail |\n|---|---|---|---|\n");
        for c in &self.claims {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                c.id,
                if c.passed { "PASS" } else { "FAIL" },
                c.statement,
                c.detail.replace('|', "\\|")
            );
        }
        let passed = self.claims.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "\n{passed}/{} claims pass", self.claims.len());
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,passed,detail\n");
        for c in &self.claims {
            let _ = writeln!(out, "{},{},\"{}\"", c.id, c.passed, c.detail.replace('"', "'"));
        }
        out
    }
}

fn outcome(id: &str, statement: &str, passed: bool, detail: String) -> ClaimOutcome {
    ClaimOutcome {
        id: id.to_string(),
        statement: statement.to_string(),
        passed,
        detail,
    }
}

fn xyz() -> BivariatePolynomial {
    BivariatePolynomial::monomial(1, 1) * BivariatePolynomial::from_line(&Line::x_plus_y())
}

fn claim_generators() -> ClaimOutcome {
    let arr = Preset::Theorem1.arrangement();
    let expected: [(u64, Vec<BivariatePolynomial>); 4] = [
        (2, vec![xyz()]),
        (3, vec![xyz().pow(2)]),
        (
            4,
            vec![
                xyz().pow(2) * BivariatePolynomial::monomial(1, 0),
                xyz().pow(2) * BivariatePolynomial::monomial(0, 1),
            ],
        ),
        (5, vec![xyz().pow(3)]),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, want) in expected {
        let ideal = ideal_of_m(&arr, m);
        ok &= generators(&arr, &ideal) == want;
        let shown: Vec<_> = factored_generators(&arr, &ideal).iter().map(|g| g.to_string()).collect();
        parts.push(format!("m={m}: {}", shown.join(", ")));
    }
    let gamma5 = entry(&arr, 5).class.gamma().to_vec();
    ok &= gamma5 == vec![rat(3, 5); 3];
    outcome(
        "generators",
        "J(mφ) for m = 2..5 is generated by xyz, (xyz)², {(xyz)²x, (xyz)²y}, (xyz)³",
        ok,
        parts.join("; "),
    )
}

fn claim_theorem1() -> ClaimOutcome {
    let arr = Preset::Theorem1.arrangement();
    let (p3, p4) = (entry(&arr, 3).class, entry(&arr, 4).class);
    let witness = directed_violation(&p4, &p3).expect("same arrangement");
    let ok = matches!(&witness, Some(v) if v.kind == ViolationKind::Line { index: 0 }
        && v.first == rat(1, 2) && v.second == rat(2, 3));
    let detail = match &witness {
        Some(v) => format!("φ4 ⋠ φ3: {v}; no constants C_m make φ_m + C_m decreasing"),
        None => "φ4 is at least as singular as φ3".into(),
    };
    outcome("theorem1", "φ4 ⋠ φ3 for weights 2/3 on x, y, x+y", ok, detail)
}

fn claim_reversal() -> ClaimOutcome {
    let arr = Preset::Theorem1.arrangement();
    let (p3, p5) = (entry(&arr, 3).class, entry(&arr, 5).class);
    let reverse = more_singular_or_equal(&p3, &p5).expect("same arrangement");
    let forward = more_singular_or_equal(&p5, &p3).expect("same arrangement");
    outcome(
        "reversal",
        "φ5 ⪰ φ3 and φ5 ⋠ φ3",
        reverse && !forward,
        format!("class φ3 = {p3}, class φ5 = {p5}"),
    )
}

fn claim_family() -> ClaimOutcome {
    let arr = Preset::Theorem1.arrangement();
    let checks = pattern_violations(&arr, 100);
    let bad: Vec<_> = checks.iter().filter(|c| !c.is_reversal()).map(|c| c.k).collect();
    outcome(
        "family",
        "for k = 1..100, φ_{3k+2} ⋠ φ_{3k} while φ_{3k} ⪯ φ_{3k+2}",
        bad.is_empty(),
        if bad.is_empty() {
            "all 100 pairs reverse".into()
        } else {
            format!("pattern broken at k = {bad:?}")
        },
    )
}

/// Floor identities behind the alternating pattern of the powers of two.
fn pow2_floor_identities(k_max: u32) -> bool {
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    (1..=k_max).all(|j| {
        let even = num_traits::pow(two.clone(), 2 * j as usize);
        let odd = &even * &two;
        let floor_even = (&even * &two) / &three;
        let floor_odd = (&odd * &two) / &three;
        floor_even == &two * (&even - 1) / &three && floor_odd == (&even * 4 - 1) / &three
    })
}

fn claim_prop2() -> ClaimOutcome {
    let arr = Preset::Theorem1.arrangement();
    let indices: Vec<u64> = (1..=10).map(|k| 1u64 << k).collect();
    let verdict = check_subsequence(&arr, &indices).expect("valid indices");
    let entries = entries_for(&arr, &indices);
    let mut pattern_ok = true;
    for (k, w) in (1u32..).zip(entries.windows(2)) {
        let (g0, g1) = (&w[0].class.gamma()[0], &w[1].class.gamma()[0]);
        let (d0, d1) = (w[0].class.delta(), w[1].class.delta());
        pattern_ok &= if k % 2 == 0 {
            g1 > g0
        } else {
            g1 == g0 && d1 > d0
        };
    }
    let floors = pow2_floor_identities(5);
    let detail = format!(
        "decreasing: {}; alternating γ pattern: {pattern_ok}; floor identities: {floors}",
        verdict.decreasing
    );
    outcome(
        "prop2",
        "φ_{2^{k+1}} ⪯ φ_{2^k} for k = 1..10",
        verdict.decreasing && pattern_ok && floors,
        detail,
    )
}

fn claim_linear() -> ClaimOutcome {
    let arr = Preset::Theorem1.arrangement();
    let indices: Vec<u64> = (0..=50).map(|k| 3 * k + 2).collect();
    let verdict = check_subsequence(&arr, &indices).expect("valid indices");
    let shape_ok = entries_for(&arr, &indices).iter().enumerate().all(|(k, e)| {
        let k = k as i64;
        e.class.gamma().iter().all(|g| *g == rat(2 * k + 1, 3 * k + 2))
            && *e.class.delta() == int(0)
    });
    outcome(
        "linear",
        "φ_{3k+2} ~ log|xyz|^{(2k+1)/(3k+2)} is strictly decreasing and converges to φ",
        verdict.strictly && verdict.converges_to_weight && shape_ok,
        format!(
            "strictly decreasing: {}; rate bounds hold: {}; exponents (2k+1)/(3k+2): {shape_ok}",
            verdict.strictly, verdict.converges_to_weight
        ),
    )
}

fn claim_smooth() -> ClaimOutcome {
    let arr = Preset::Smooth.arrangement();
    let seq = build_sequence(&arr, 100);
    let first = seq[0].class.clone();
    let constant = seq.iter().all(|e| e.class == first) && first == class_of_weight(&arr);
    outcome(
        "smooth",
        "a smooth divisor gives a constant sequence",
        constant,
        format!("class φ_m = {first} for m ≤ 100"),
    )
}

fn claim_point() -> ClaimOutcome {
    let arr = Preset::Point.arrangement();
    let seq = build_sequence(&arr, 100);
    let shape = seq
        .iter()
        .all(|e| *e.class.delta() == rat(e.m as i64 - 1, e.m as i64));
    let strictly = seq.windows(2).all(|w| {
        matches!(
            compare(&w[1].class, &w[0].class),
            Ok(ComparisonResult::FirstMoreSingular { .. })
        )
    });
    outcome(
        "point",
        "φ = log‖z‖ gives φ_m ~ ((m-1)/m)·log‖z‖, strictly decreasing",
        shape && strictly,
        format!("δ_m = (m-1)/m: {shape}; strictly decreasing: {strictly}"),
    )
}

fn run_claim(id: &str) -> Result<ClaimOutcome> {
    Ok(match id {
        "generators" => claim_generators(),
        "theorem1" => claim_theorem1(),
        "reversal" => claim_reversal(),
        "family" => claim_family(),
        "prop2" => claim_prop2(),
        "linear" => claim_linear(),
        "smooth" => claim_smooth(),
        "point" => claim_point(),
        other => {
            return Err(Error::InvalidIndices(format!(
                "unknown claim {other:?}; known: {}",
                CLAIM_IDS.join(", ")
            )))
        }
    })
}

/// Runs the selected registry claims (all of them when `selection` is empty).
pub fn verify_claims(selection: &[String]) -> Result<ClaimReport> {
    let ids: Vec<&str> = if selection.is_empty() {
        CLAIM_IDS.to_vec()
    } else {
        selection.iter().map(String::as_str).collect()
    };
    Ok(ClaimReport::new(ids.into_iter().map(run_claim).collect::<Result<_>>()?))
}

/// Generic invariants for any arrangement, plus the registry claims that
/// concern it when it equals a preset.
pub fn verify_arrangement(arr: &WeightedArrangement, m_max: u64) -> ClaimReport {
    let seq = build_sequence(arr, m_max);
    let nu = lelong(&class_of_weight(arr));
    let sandwich_fail = seq.iter().find(|e| {
        let m = int(e.m as i64);
        !(e.lelong <= nu && nu.clone() - int(2) / &m <= e.lelong)
    });
    let rate_fail = seq.iter().find(|e| !within_limit_bounds(arr, e));
    let mut claims = vec![
        outcome(
            "sandwich",
            "ν(φ) - 2/m ≤ ν(φ_m) ≤ ν(φ)",
            sandwich_fail.is_none(),
            match sandwich_fail {
                Some(e) => format!("fails at m = {}", e.m),
                None => format!("holds for m ≤ {m_max}"),
            },
        ),
        outcome(
            "rate",
            "|γᵢ(m) - aᵢ| < 1/m and |δ(m) - δ₀| < max(2, k-1)/m",
            rate_fail.is_none(),
            match rate_fail {
                Some(e) => format!("fails at m = {}", e.m),
                None => format!("holds for m ≤ {m_max}"),
            },
        ),
    ];
    let related: &[&str] = match Preset::identify(arr) {
        Some(Preset::Theorem1) => &CLAIM_IDS[..6],
        Some(Preset::Smooth) => &["smooth"],
        Some(Preset::Point) => &["point"],
        None => &[],
    };
    claims.extend(related.iter().map(|id| run_claim(id).expect("registered claim")));
    ClaimReport::new(claims)
}
