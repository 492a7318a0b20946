//! Output rendering: text, JSON and CSV forms of every report. Identical
//! inputs produce identical bytes in all three formats.

use std::fmt::Write as _;

use hilmod_core::algebra::{zero_set, Enclosure, PPoly};
use hilmod_core::gallery::VerdictReport;
use hilmod_core::module::{ConvergenceRow, FrameReport};
use hilmod_core::rat::Rat;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

fn json_pretty<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))
}

fn csv_string(records: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for record in records {
        w.write_record(&record)
            .map_err(|e| CliError::Input(format!("csv write failed: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Input(format!("csv flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(format!("csv not utf-8: {e}")))
}

pub fn verify_reports(reports: &[VerdictReport], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_pretty(&reports),
        Format::Csv => {
            let mut records = vec![vec![
                "id".into(),
                "check".into(),
                "status".into(),
                "claim".into(),
            ]];
            for r in reports {
                for c in &r.checks {
                    records.push(vec![
                        r.id.clone(),
                        c.name.clone(),
                        if c.passed { "pass" } else { "fail" }.into(),
                        c.claim.clone(),
                    ]);
                }
            }
            csv_string(records)
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let params: Vec<String> =
                    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(
                    out,
                    "{} ({}) — {}",
                    r.id,
                    params.join(", "),
                    if r.all_passed { "all checks pass" } else { "FAILURES" }
                )
                .unwrap();
                for c in &r.checks {
                    writeln!(
                        out,
                        "  [{}] {}: {}",
                        if c.passed { "pass" } else { "FAIL" },
                        c.name,
                        c.claim
                    )
                    .unwrap();
                    if !c.passed {
                        for (k, v) in &c.witness {
                            writeln!(out, "         {k} = {v}").unwrap();
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

fn enclosure_pair(e: &Enclosure) -> (String, String) {
    (e.lo.to_string(), e.hi.to_string())
}

pub fn convergence_table(
    rows: &[ConvergenceRow],
    eps_list: &[Rat],
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct TableJson<'a> {
                eps: &'a [Rat],
                rows: &'a [ConvergenceRow],
            }
            json_pretty(&TableJson {
                eps: eps_list,
                rows,
            })
        }
        Format::Csv => {
            let mut header = vec![
                "n".to_string(),
                "residual_lb".to_string(),
                "residual_ub".to_string(),
            ];
            for (k, _) in eps_list.iter().enumerate() {
                header.push(format!("sup{k}_lb"));
                header.push(format!("sup{k}_ub"));
            }
            let mut records = vec![header];
            for row in rows {
                let (rlo, rhi) = enclosure_pair(&row.residual_norm);
                let mut rec = vec![row.n.to_string(), rlo, rhi];
                for m in &row.superlevel {
                    let (a, b) = enclosure_pair(m);
                    rec.push(a);
                    rec.push(b);
                }
                records.push(rec);
            }
            csv_string(records)
        }
        Format::Text => {
            let mut out = String::new();
            let eps_names: Vec<String> = eps_list.iter().map(|e| e.to_string()).collect();
            writeln!(out, "n | residual norm | measures above eps = {}", eps_names.join(", "))
                .unwrap();
            for row in rows {
                let measures: Vec<String> =
                    row.superlevel.iter().map(|m| m.to_string()).collect();
                writeln!(
                    out,
                    "{} | {} | {}",
                    row.n,
                    row.residual_norm,
                    measures.join(", ")
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

pub fn frame_report(report: &FrameReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_pretty(report),
        Format::Csv => {
            let mut records = vec![vec![
                "vector".to_string(),
                "lower_ok".to_string(),
                "upper_ok".to_string(),
                "tight".to_string(),
                "standard".to_string(),
                "lower_witness".to_string(),
                "upper_witness".to_string(),
            ]];
            for (k, r) in report.per_vector.iter().enumerate() {
                records.push(vec![
                    (k + 1).to_string(),
                    r.lower_ok.to_string(),
                    r.upper_ok.to_string(),
                    r.tight.to_string(),
                    r.standard.to_string(),
                    r.lower_witness
                        .as_ref()
                        .map_or(String::new(), |w| w.to_string()),
                    r.upper_witness
                        .as_ref()
                        .map_or(String::new(), |w| w.to_string()),
                ]);
            }
            csv_string(records)
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "frame bounds C = {}, D = {} on {} test vector(s)",
                report.lower,
                report.upper,
                report.per_vector.len()
            )
            .unwrap();
            for (k, r) in report.per_vector.iter().enumerate() {
                writeln!(
                    out,
                    "vector {}: lower {} upper {} tight {} standard {}",
                    k + 1,
                    if r.lower_ok { "ok" } else { "VIOLATED" },
                    if r.upper_ok { "ok" } else { "VIOLATED" },
                    r.tight,
                    r.standard
                )
                .unwrap();
                if let Some(w) = &r.lower_witness {
                    writeln!(out, "  lower bound fails at t = {w}").unwrap();
                }
                if let Some(w) = &r.upper_witness {
                    writeln!(out, "  upper bound fails at t = {w}").unwrap();
                }
            }
            Ok(out)
        }
    }
}

pub fn inspect(p: &PPoly, width: &Rat, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_pretty(p),
        Format::Csv => {
            let mut records = vec![vec![
                "piece_lo".to_string(),
                "piece_hi".to_string(),
                "coefficients".to_string(),
            ]];
            for (u, v, poly) in p.pieces() {
                let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
                records.push(vec![u.to_string(), v.to_string(), coeffs.join(" ")]);
            }
            csv_string(records)
        }
        Format::Text => {
            let mut out = String::new();
            let (lo, hi) = p.descriptor().domain();
            writeln!(out, "domain [{lo}, {hi}], {:?}", p.descriptor().regularity()).unwrap();
            let vanishing: Vec<String> = p
                .descriptor()
                .vanishing_points()
                .map(|v| v.to_string())
                .collect();
            if !vanishing.is_empty() {
                writeln!(out, "vanishing at {}", vanishing.join(", ")).unwrap();
            }
            writeln!(out, "pieces: {p}").unwrap();
            let norm = hilmod_core::algebra::sup_norm(p, width)
                .map_err(|e| CliError::Input(e.to_string()))?;
            writeln!(out, "sup norm in {norm}").unwrap();
            let zs = zero_set(p);
            let plateaus: Vec<String> = zs
                .plateaus
                .iter()
                .map(|(a, b)| format!("[{a}, {b}]"))
                .collect();
            let points: Vec<String> = zs
                .points
                .iter()
                .map(|r| {
                    let (a, b) = r.bounds();
                    if r.is_exact() {
                        format!("{a}")
                    } else {
                        format!("({a}, {b})")
                    }
                })
                .collect();
            writeln!(
                out,
                "zero set: plateaus {{{}}}, isolated {{{}}}",
                plateaus.join(", "),
                points.join(", ")
            )
            .unwrap();
            writeln!(out, "nonnegative: {}", p.is_nonneg()).unwrap();
            Ok(out)
        }
    }
}
