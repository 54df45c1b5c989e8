use std::fmt::Write as _;

use pshlab_core::bergman::{CurveScan, LogGrid, QuadratureSpec};
use pshlab_core::rational::fmt_rational;
use pshlab_core::{ComparisonResult, IdealDescriptor, SingularityClass};
use serde::Serialize;

#[derive(Serialize)]
pub(crate) struct AnalyzeRow {
    pub m: u64,
    pub ideal: IdealDescriptor,
    pub trivial: bool,
    pub generators: Vec<String>,
    pub expanded: Vec<String>,
    pub class: SingularityClass,
    pub lelong: String,
}

fn tuple<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
    format!("({})", parts.join(","))
}

fn gamma(class: &SingularityClass) -> String {
    tuple(class.gamma().iter().map(fmt_rational))
}

pub(crate) fn analyze_md(rows: &[AnalyzeRow]) -> String {
    let mut out = String::from("| m | b | p | generators | γ | δ | ν |\n|---|---|---|---|---|---|---|\n");
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.m,
            tuple(&r.ideal.b),
            r.ideal.p,
            r.generators.join(", "),
            gamma(&r.class),
            fmt_rational(r.class.delta()),
            r.lelong
        );
    }
    out
}

pub(crate) fn analyze_csv(rows: &[AnalyzeRow]) -> String {
    let mut out = String::from("m,b,p,generators,gamma,delta,lelong\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},\"{}\",{},\"{}\",\"{}\",{},{}",
            r.m,
            tuple(&r.ideal.b),
            r.ideal.p,
            r.generators.join("; "),
            gamma(&r.class),
            fmt_rational(r.class.delta()),
            r.lelong
        );
    }
    out
}

#[derive(Serialize)]
pub(crate) struct Side {
    pub label: String,
    pub class: SingularityClass,
    pub lelong: String,
}

#[derive(Serialize)]
pub(crate) struct CompareReport {
    pub first: Side,
    pub second: Side,
    pub relation: ComparisonResult,
    pub first_at_least_as_singular: bool,
    pub second_at_least_as_singular: bool,
}

pub(crate) fn compare_md(r: &CompareReport) -> String {
    format!(
        "| | class | ν |\n|---|---|---|\n| {} | {} | {} |\n| {} | {} | {} |\n\n{} vs {}: {}\n",
        r.first.label, r.first.class, r.first.lelong, r.second.label, r.second.class, r.second.lelong,
        r.first.label, r.second.label, r.relation
    )
}

#[derive(Serialize)]
pub(crate) struct LctReport {
    pub lct: String,
    pub value: f64,
    pub ideal_at_lct: IdealDescriptor,
}

pub(crate) fn lct_md(r: &LctReport) -> String {
    format!(
        "lct = {} ≈ {:.6}\nJ(lct·φ): b = {}, p = {}\n",
        r.lct,
        r.value,
        tuple(&r.ideal_at_lct.b),
        r.ideal_at_lct.p
    )
}

#[derive(Serialize)]
pub(crate) struct KernelSummary {
    pub m: u64,
    pub max_degree: u32,
    pub basis_size: usize,
    pub effective_rank: usize,
    pub dropped: usize,
    pub degenerate: bool,
    pub eigen_min: f64,
    pub eigen_max: f64,
    pub max_cross_degree_zscore: Option<f64>,
    pub ray_slopes: Vec<f64>,
    pub lelong_estimate: f64,
    pub symbolic_lelong: f64,
}

#[derive(Serialize)]
pub(crate) struct BergmanReport {
    pub quadrature: QuadratureSpec,
    pub grid: LogGrid,
    pub kernels: Vec<KernelSummary>,
    pub scan: Option<CurveScan>,
}

pub(crate) fn bergman_csv(r: &BergmanReport) -> String {
    if let Some(scan) = &r.scan {
        return scan.to_csv();
    }
    let mut out = String::from("m,basis_size,effective_rank,max_cross_degree_zscore,lelong_estimate,symbolic_lelong\n");
    for k in &r.kernels {
        let z = k.max_cross_degree_zscore.map(|z| z.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            k.m, k.basis_size, k.effective_rank, z, k.lelong_estimate, k.symbolic_lelong
        );
    }
    out
}

pub(crate) fn bergman_md(r: &BergmanReport) -> String {
    let q = &r.quadrature;
    let mut out = format!(
        "samples {}, seed {}, N {}, R {}\n\n| m | N used | basis | rank | max cross-degree z | ν estimate | ν symbolic |\n|---|---|---|---|---|---|---|\n",
        q.sphere_samples, q.seed, q.max_degree, q.radius
    );
    for k in &r.kernels {
        let z = k.max_cross_degree_zscore.map_or("-".to_string(), |z| format!("{z:.2}"));
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {:.4} | {:.4} |",
            k.m, k.max_degree, k.basis_size, k.effective_rank, z, k.lelong_estimate, k.symbolic_lelong
        );
    }
    if let Some(s) = &r.scan {
        let _ = writeln!(
            out,
            "\nΔ = φ̂_{} - φ̂_{} along {}: slope {:.4}, {}\n\n| t | φ̂_{} | φ̂_{} | Δ |\n|---|---|---|---|",
            s.m2, s.m1, s.curve, s.slope, s.verdict, s.m1, s.m2
        );
        for row in &s.rows {
            let _ = writeln!(out, "| {:.3e} | {:.6} | {:.6} | {:.6} |", row.t, row.phi_m1, row.phi_m2, row.delta);
        }
    }
    out
}
