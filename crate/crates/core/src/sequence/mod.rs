//! The symbolic approximation sequence m ↦ φ_m and its monotonicity.
//!
//! A step m → m′ is a violation when class(φ_{m′}) is not at least as singular
//! as class(φ_m). Classes ignore additive constants, so a violation rules out
//! every choice of renormalizing constants at that step.

pub mod claims;

use std::fmt::Write as _;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::WeightedArrangement;
use crate::error::{Error, Result};
use crate::multiplier_ideal::{ideal_of_m, IdealDescriptor};
use crate::rational::{fmt_rational, int, serde_rational, Rational};
use crate::singularity::{
    class_of_ideal, class_of_weight, compare, directed_violation, lelong,
    more_singular_or_equal, ComparisonResult, SingularityClass, Violation,
};

#[derive(Clone, Debug, Serialize)]
pub struct SequenceEntry {
    pub m: u64,
    pub ideal: IdealDescriptor,
    pub class: SingularityClass,
    #[serde(with = "serde_rational")]
    pub lelong: Rational,
}

pub fn entry(arr: &WeightedArrangement, m: u64) -> SequenceEntry {
    assert!(m >= 1, "sequence indices start at 1");
    let ideal = ideal_of_m(arr, m);
    let class = class_of_ideal(arr, &ideal, &int(m as i64));
    let lelong = lelong(&class);
    SequenceEntry {
        m,
        ideal,
        class,
        lelong,
    }
}

/// Entries for the given indices, in the given order.
pub fn entries_for(arr: &WeightedArrangement, indices: &[u64]) -> Vec<SequenceEntry> {
    indices.par_iter().map(|&m| entry(arr, m)).collect()
}

/// Entries for m = 1..=m_max.
pub fn build_sequence(arr: &WeightedArrangement, m_max: u64) -> Vec<SequenceEntry> {
    let indices: Vec<u64> = (1..=m_max).collect();
    entries_for(arr, &indices)
}

/// All steps (m, m+1) with m + 1 ≤ m_max whose directed check fails.
pub fn adjacent_violations(arr: &WeightedArrangement, m_max: u64) -> Vec<(u64, u64)> {
    let entries = build_sequence(arr, m_max);
    entries
        .windows(2)
        .filter(|w| !more_singular_or_equal(&w[1].class, &w[0].class).expect("same arrangement"))
        .map(|w| (w[0].m, w[1].m))
        .collect()
}

/// The (3k, 3k+2) pair for one k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCheck {
    pub k: u64,
    /// class(φ_{3k+2}) at least as singular as class(φ_{3k}).
    pub forward_holds: bool,
    /// class(φ_{3k}) at least as singular as class(φ_{3k+2}).
    pub reverse_holds: bool,
}

impl PatternCheck {
    /// The shape seen for equal weights 2/3 on three lines.
    pub fn is_reversal(&self) -> bool {
        !self.forward_holds && self.reverse_holds
    }
}

pub fn pattern_violations(arr: &WeightedArrangement, k_max: u64) -> Vec<PatternCheck> {
    (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let lower = entry(arr, 3 * k).class;
            let upper = entry(arr, 3 * k + 2).class;
            PatternCheck {
                k,
                forward_holds: more_singular_or_equal(&upper, &lower).expect("same arrangement"),
                reverse_holds: more_singular_or_equal(&lower, &upper).expect("same arrangement"),
            }
        })
        .collect()
}

/// Verdict on a subsequence m₁ < m₂ < ….
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsequenceVerdict {
    pub indices: Vec<u64>,
    pub decreasing: bool,
    pub strictly: bool,
    pub converges_to_weight: bool,
    /// First consecutive pair breaking the decreasing property.
    pub first_failure: Option<(u64, u64, Violation)>,
}

/// Exact rate bounds |γᵢ(m) - aᵢ| < 1/m and |δ(m) - δ₀| < max(2, k-1)/m for
/// k lines. Every entry satisfying them certifies convergence to class(φ).
pub fn within_limit_bounds(arr: &WeightedArrangement, e: &SequenceEntry) -> bool {
    let m = int(e.m as i64);
    let gamma_ok = e
        .class
        .gamma()
        .iter()
        .zip(arr.coeffs())
        .all(|(g, a)| (g - a).abs() * &m < int(1));
    let slack = int((arr.len() as i64 - 1).max(2));
    let delta_ok = (e.class.delta() - arr.point_mass()).abs() * &m < slack;
    gamma_ok && delta_ok
}

fn validate_indices(indices: &[u64]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::InvalidIndices("empty index list".into()));
    }
    if indices[0] == 0 {
        return Err(Error::InvalidIndices("indices start at 1".into()));
    }
    if let Some(w) = indices.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidIndices(format!(
            "not strictly increasing at {} -> {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

pub fn check_subsequence(arr: &WeightedArrangement, indices: &[u64]) -> Result<SubsequenceVerdict> {
    validate_indices(indices)?;
    let entries = entries_for(arr, indices);
    Ok(verdict_from_entries(arr, &entries))
}

fn verdict_from_entries(arr: &WeightedArrangement, entries: &[SequenceEntry]) -> SubsequenceVerdict {
    let mut decreasing = true;
    let mut strictly = true;
    let mut first_failure = None;
    for w in entries.windows(2) {
        if let Some(v) = directed_violation(&w[1].class, &w[0].class).expect("same arrangement") {
            if first_failure.is_none() {
                first_failure = Some((w[0].m, w[1].m, v));
            }
            decreasing = false;
        } else if w[1].class == w[0].class {
            strictly = false;
        }
    }
    SubsequenceVerdict {
        indices: entries.iter().map(|e| e.m).collect(),
        decreasing,
        strictly: decreasing && strictly,
        converges_to_weight: entries.iter().all(|e| within_limit_bounds(arr, e)),
        first_failure,
    }
}

/// Index families accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSpec {
    /// 2^k for k = 1..=k_max.
    Pow2 { k_max: u32 },
    /// a·k + b for k = 0..=k_max.
    Linear { a: u64, b: u64, k_max: u64 },
    List(Vec<u64>),
    Range { m_max: u64 },
}

impl IndexSpec {
    /// Parses `pow2`, `linear:A,B`, or a comma list such as `1,2,3,4`.
    pub fn parse(text: &str, k_max: Option<u64>) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidIndices(format!("{text:?}: {msg}"));
        let need_k = || k_max.ok_or_else(|| bad("needs --k-max"));
        if text == "pow2" {
            let k_max = need_k()?;
            if k_max == 0 || k_max > 62 {
                return Err(bad("k-max must be in 1..=62"));
            }
            return Ok(IndexSpec::Pow2 { k_max: k_max as u32 });
        }
        if let Some(rest) = text.strip_prefix("linear:") {
            let (a, b) = rest.split_once(',').ok_or_else(|| bad("expected linear:A,B"))?;
            let a = a.trim().parse().map_err(|_| bad("bad slope"))?;
            let b = b.trim().parse().map_err(|_| bad("bad offset"))?;
            if a == 0 {
                return Err(bad("slope must be positive"));
            }
            return Ok(IndexSpec::Linear { a, b, k_max: need_k()? });
        }
        let list = text
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| bad("expected integers")))
            .collect::<Result<Vec<_>>>()?;
        validate_indices(&list)?;
        Ok(IndexSpec::List(list))
    }

    pub fn indices(&self) -> Vec<u64> {
        match self {
            IndexSpec::Pow2 { k_max } => (1..=*k_max).map(|k| 1u64 << k).collect(),
            IndexSpec::Linear { a, b, k_max } => (0..=*k_max)
                .map(|k| a * k + b)
                .filter(|&m| m >= 1)
                .collect(),
            IndexSpec::List(v) => v.clone(),
            IndexSpec::Range { m_max } => (1..=*m_max).collect(),
        }
    }
}

/// One consecutive step of the examined index list.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub from: u64,
    pub to: u64,
    /// compare(class(φ_to), class(φ_from)).
    pub comparison: ComparisonResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub entries: Vec<SequenceEntry>,
    pub steps: Vec<Step>,
    /// Steps (m, m′) where class(φ_{m′}) is not at least as singular as class(φ_m).
    pub violations: Vec<(u64, u64)>,
    pub subsequence: SubsequenceVerdict,
    /// Class of φ itself, the limit of the sequence.
    pub limit: SingularityClass,
}

pub fn monotonicity_report(arr: &WeightedArrangement, indices: &[u64]) -> Result<MonotonicityReport> {
    validate_indices(indices)?;
    let entries = entries_for(arr, indices);
    let steps: Vec<Step> = entries
        .windows(2)
        .map(|w| Step {
            from: w[0].m,
            to: w[1].m,
            comparison: compare(&w[1].class, &w[0].class).expect("same arrangement"),
        })
        .collect();
    let violations = steps
        .iter()
        .filter(|s| {
            matches!(
                s.comparison,
                ComparisonResult::SecondMoreSingular { .. } | ComparisonResult::Incomparable { .. }
            )
        })
        .map(|s| (s.from, s.to))
        .collect();
    let subsequence = verdict_from_entries(arr, &entries);
    Ok(MonotonicityReport {
        entries,
        steps,
        violations,
        subsequence,
        limit: class_of_weight(arr),
    })
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    format!("({})", items.iter().map(f).collect::<Vec<_>>().join(","))
}

impl MonotonicityReport {
    /// Markdown table with one row per index.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| m | b | p | γ | δ | ν | vs previous |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for (i, e) in self.entries.iter().enumerate() {
            let cmp = match i.checked_sub(1) {
                Some(j) => self.steps[j].comparison.to_string(),
                None => "-".into(),
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} |",
                e.m,
                list(&e.ideal.b, |b| b.to_string()),
                e.ideal.p,
                list(e.class.gamma(), fmt_rational),
                fmt_rational(e.class.delta()),
                fmt_rational(&e.lelong),
                cmp
            );
        }
        let _ = writeln!(out);
        let v: Vec<_> = self.violations.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let _ = writeln!(out, "violations: {}", if v.is_empty() { "none".into() } else { v.join(" ") });
        let s = &self.subsequence;
        let _ = writeln!(
            out,
            "decreasing: {}, strictly: {}, converges to class(φ) = {}: {}",
            s.decreasing, s.strictly, self.limit, s.converges_to_weight
        );
        out
    }

    /// CSV with the same columns as the markdown table.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,b,p,gamma,delta,lelong,vs_previous\n");
        for (i, e) in self.entries.iter().enumerate() {
            let cmp = match i.checked_sub(1) {
                Some(j) => self.steps[j].comparison.label(),
                None => "",
            };
            let _ = writeln!(
                out,
                "{},\"{}\",{},\"{}\",{},{},{}",
                e.m,
                list(&e.ideal.b, |b| b.to_string()),
                e.ideal.p,
                list(e.class.gamma(), fmt_rational),
                fmt_rational(e.class.delta()),
                fmt_rational(&e.lelong),
                cmp
            );
        }
        out
    }
}
