use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use pshlab_core::arrangement::load_arrangement;
use pshlab_core::bergman::{generic_ray_slopes, BergmanKernel, Curve, CurveScan, LogGrid, QuadratureSpec};
use pshlab_core::multiplier_ideal::factored_generators;
use pshlab_core::rational::{fmt_rational, to_f64};
use pshlab_core::sequence::claims::{verify_arrangement, verify_claims};
use pshlab_core::sequence::{monotonicity_report, IndexSpec};
use pshlab_core::singularity::class_of_weight;
use pshlab_core::{
    compare, ideal_of, ideal_of_m, lelong, more_singular_or_equal, sequence, Preset, SingularityClass,
    WeightedArrangement,
};
use serde::Serialize;

use crate::render::{
    analyze_csv, analyze_md, bergman_csv, bergman_md, compare_md, lct_md, AnalyzeRow, BergmanReport,
    CompareReport, KernelSummary, LctReport, Side,
};
use crate::{Command, Failure, Format, Output, Source};

pub(crate) fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Analyze { source, m, out } => analyze(&source, &m, &out),
        Command::Sequence { source, m_max, indices, k_max, out } => {
            sequence_cmd(&source, m_max, indices.as_deref(), k_max, &out)
        }
        Command::Compare { source, m1, m2, out } => compare_cmd(&source, &m1, &m2, &out),
        Command::VerifyPaper { claims, preset, file, m_max, out } => {
            verify(&claims, preset, file, m_max, &out)
        }
        Command::Bergman {
            source,
            m,
            m1,
            m2,
            curve,
            tmin,
            tmax,
            points,
            samples,
            seed,
            max_degree,
            radius,
            dump_gram,
            out,
        } => {
            let quad = QuadratureSpec { max_degree, sphere_samples: samples, seed, radius };
            let grid = LogGrid::new(tmin, tmax, points)?;
            let pair = m1.zip(m2);
            bergman(&source, m.as_deref(), pair, &curve, grid, quad, dump_gram.as_deref(), &out)
        }
        Command::Lct { source, out } => lct(&source, &out),
    }
}

struct Loaded {
    arr: WeightedArrangement,
    label: String,
}

fn load(source: &Source) -> Result<Loaded, Failure> {
    load_parts(source.preset.as_deref(), source.file.as_deref())
}

fn load_parts(preset: Option<&str>, file: Option<&Path>) -> Result<Loaded, Failure> {
    if let Some(path) = file {
        return Ok(Loaded {
            arr: load_arrangement(path).map_err(Failure)?,
            label: path.display().to_string(),
        });
    }
    let preset: Preset = preset.unwrap_or("theorem1").parse()?;
    Ok(Loaded { arr: preset.arrangement(), label: preset.name().to_string() })
}

/// `4`, `1..5` or `1,2,4`.
fn parse_m_list(text: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure(format!("--m {text:?}: expected N, A..B or a comma list of positive integers"));
    let values: Vec<u64> = if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if values.is_empty() || values.contains(&0) {
        return Err(Failure(format!("--m {text:?}: indices must be at least 1")));
    }
    Ok(values)
}

fn emit<T: Serialize>(
    out: &Output,
    command: &str,
    source: &str,
    report: &T,
    csv: impl FnOnce() -> String,
    md: impl FnOnce() -> String,
) -> Result<(), Failure> {
    let text = match out.format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("command".into(), command.into());
            doc.insert("source".into(), source.into());
            if !out.no_timestamp {
                let now = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
                doc.insert("timestamp".into(), now.into());
            }
            doc.insert("report".into(), serde_json::to_value(report)?);
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => csv(),
        Format::Md => md(),
    };
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn analyze(source: &Source, m: &str, out: &Output) -> Result<bool, Failure> {
    let Loaded { arr, label } = load(source)?;
    let rows: Vec<AnalyzeRow> = parse_m_list(m)?
        .into_iter()
        .map(|m| {
            let e = sequence::entry(&arr, m);
            AnalyzeRow {
                m,
                trivial: e.ideal.is_trivial(),
                generators: factored_generators(&arr, &e.ideal).iter().map(|g| g.to_string()).collect(),
                expanded: pshlab_core::generators(&arr, &e.ideal).iter().map(|g| g.to_string()).collect(),
                ideal: e.ideal,
                class: e.class,
                lelong: fmt_rational(&e.lelong),
            }
        })
        .collect();
    emit(out, "analyze", &label, &rows, || analyze_csv(&rows), || analyze_md(&rows))?;
    Ok(true)
}

fn sequence_cmd(
    source: &Source,
    m_max: Option<u64>,
    indices: Option<&str>,
    k_max: Option<u64>,
    out: &Output,
) -> Result<bool, Failure> {
    let Loaded { arr, label } = load(source)?;
    let spec = match (m_max, indices) {
        (Some(0), _) => return Err(Failure("--m-max must be at least 1".into())),
        (Some(m_max), _) => IndexSpec::Range { m_max },
        (None, Some(text)) => IndexSpec::parse(text, k_max)?,
        (None, None) => IndexSpec::Range { m_max: 40 },
    };
    let report = monotonicity_report(&arr, &spec.indices())?;
    emit(out, "sequence", &label, &report, || report.to_csv(), || report.to_markdown())?;
    Ok(true)
}

fn side(arr: &WeightedArrangement, text: &str) -> Result<(Side, SingularityClass), Failure> {
    if text == "weight" {
        let class = class_of_weight(arr);
        return Ok((Side { label: "φ".into(), lelong: fmt_rational(&lelong(&class)), class: class.clone() }, class));
    }
    let m: u64 = text
        .parse()
        .ok()
        .filter(|&m| m >= 1)
        .ok_or_else(|| Failure(format!("expected a positive index or `weight`, got {text:?}")))?;
    let e = sequence::entry(arr, m);
    let side = Side { label: format!("φ_{m}"), lelong: fmt_rational(&e.lelong), class: e.class.clone() };
    Ok((side, e.class))
}

fn compare_cmd(source: &Source, m1: &str, m2: &str, out: &Output) -> Result<bool, Failure> {
    let Loaded { arr, label } = load(source)?;
    let (first, c1) = side(&arr, m1)?;
    let (second, c2) = side(&arr, m2)?;
    let report = CompareReport {
        first_at_least_as_singular: more_singular_or_equal(&c1, &c2)?,
        second_at_least_as_singular: more_singular_or_equal(&c2, &c1)?,
        relation: compare(&c1, &c2)?,
        first,
        second,
    };
    emit(out, "compare", &label, &report, || {
        format!(
            "first,second,relation\n{},{},{}\n",
            report.first.label,
            report.second.label,
            report.relation.label()
        )
    }, || compare_md(&report))?;
    Ok(true)
}

fn verify(
    claims: &[String],
    preset: Option<String>,
    file: Option<PathBuf>,
    m_max: u64,
    out: &Output,
) -> Result<bool, Failure> {
    let (label, report) = if preset.is_none() && file.is_none() {
        ("registry".to_string(), verify_claims(claims)?)
    } else {
        if !claims.is_empty() {
            return Err(Failure("--claims applies to the registry run only".into()));
        }
        if m_max == 0 {
            return Err(Failure("--m-max must be at least 1".into()));
        }
        let Loaded { arr, label } = load_parts(preset.as_deref(), file.as_deref())?;
        (label, verify_arrangement(&arr, m_max))
    };
    emit(out, "verify-paper", &label, &report, || report.to_csv(), || report.to_markdown())?;
    Ok(report.all_passed)
}

#[allow(clippy::too_many_arguments)]
fn bergman(
    source: &Source,
    m: Option<&str>,
    pair: Option<(u64, u64)>,
    curve: &str,
    grid: LogGrid,
    quad: QuadratureSpec,
    dump_gram: Option<&Path>,
    out: &Output,
) -> Result<bool, Failure> {
    quad.validate()?;
    let Loaded { arr, label } = load(source)?;
    let mut indices: BTreeSet<u64> = match m {
        Some(text) => parse_m_list(text)?.into_iter().collect(),
        None => BTreeSet::new(),
    };
    if let Some((a, b)) = pair {
        if a == 0 || b == 0 {
            return Err(Failure("--m1 and --m2 must be at least 1".into()));
        }
        indices.extend([a, b]);
    }
    if indices.is_empty() {
        return Err(Failure("nothing to compute: pass --m or --m1/--m2".into()));
    }
    let curve: Curve = curve.parse()?;
    let kernels: Vec<BergmanKernel> = indices
        .iter()
        .map(|&m| BergmanKernel::new(&arr, m, &quad))
        .collect::<Result<_, _>>()?;
    let kernel = |m: u64| &kernels[indices.iter().position(|&i| i == m).expect("computed")];
    let summaries: Vec<KernelSummary> = kernels
        .iter()
        .map(|k| {
            let g = k.gram();
            let slopes = generic_ray_slopes(k, &arr, &grid);
            let symbolic = ideal_of_m(&arr, k.m()).order_at_origin() as f64 / k.m() as f64;
            KernelSummary {
                m: k.m(),
                max_degree: g.basis.max_degree,
                basis_size: g.basis.len(),
                effective_rank: g.effective_rank,
                dropped: g.dropped,
                degenerate: g.degenerate,
                eigen_min: g.eigen_min,
                eigen_max: g.eigen_max,
                max_cross_degree_zscore: g.max_cross_degree_zscore(),
                lelong_estimate: slopes.iter().sum::<f64>() / slopes.len() as f64,
                symbolic_lelong: symbolic,
                ray_slopes: slopes,
            }
        })
        .collect();
    let scan = pair.map(|(a, b)| CurveScan::from_kernels(kernel(a), kernel(b), &curve, &grid));
    if let Some(path) = dump_gram {
        let grams: Vec<_> = kernels.iter().map(|k| k.gram()).collect();
        let text = serde_json::to_string_pretty(&grams)? + "\n";
        std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    let report = BergmanReport { quadrature: quad, grid, kernels: summaries, scan };
    emit(out, "bergman", &label, &report, || bergman_csv(&report), || bergman_md(&report))?;
    Ok(true)
}

fn lct(source: &Source, out: &Output) -> Result<bool, Failure> {
    let Loaded { arr, label } = load(source)?;
    let c = arr.lct()?;
    let report = LctReport {
        lct: fmt_rational(&c),
        value: to_f64(&c),
        ideal_at_lct: ideal_of(&arr, &c),
    };
    emit(out, "lct", &label, &report, || format!("lct,value\n{},{}\n", report.lct, report.value), || lct_md(&report))?;
    Ok(true)
}
