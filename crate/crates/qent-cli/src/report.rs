//! Report schema (versioned with `schema: 1`). Reports are deterministic:
//! identical inputs and seeds produce byte-identical JSON, so there are no
//! timestamps and float formatting is the serializer's shortest
//! round-trip form.

use serde::Serialize;

use qent::criteria::{CriterionReport, ScanRow, Verdict};
use qent::measures::MeasureResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct RngInfo {
    pub algorithm: &'static str,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<RngInfo>,
    pub results: Vec<ResultEntry>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            tool: "qent",
            version: env!("CARGO_PKG_VERSION"),
            command,
            input_digest: None,
            rng: None,
            results: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// Human-readable summary (the `--format text` view).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("qent {} (schema {})\n", self.version, self.schema));
        out.push_str(&format!("command: {}\n", self.command.join(" ")));
        if let Some(digest) = &self.input_digest {
            out.push_str(&format!("input: {digest}\n"));
        }
        if let Some(rng) = &self.rng {
            out.push_str(&format!("rng: {} seed {}\n", rng.algorithm, rng.seed));
        }
        for warning in &self.warnings {
            out.push_str(&format!("warning: {warning}\n"));
        }
        for entry in &self.results {
            out.push_str(&entry.to_text());
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ResultEntry {
    Measure {
        #[serde(flatten)]
        result: MeasureResult,
        #[serde(skip_serializing_if = "Option::is_none")]
        i_concurrence: Option<f64>,
        /// Per-particle values for the identical-particle measure.
        #[serde(skip_serializing_if = "Option::is_none")]
        per_particle: Option<Vec<f64>>,
    },
    Criterion {
        #[serde(flatten)]
        report: CriterionReport,
    },
    BasisCheck {
        basis: String,
        dim: usize,
        probes: usize,
        orthonormality_residual: f64,
        completeness_residual: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        sum_rule_residual: Option<f64>,
    },
    Schmidt {
        spectrum: Vec<f64>,
        measures: Vec<MeasureResult>,
    },
    Scan {
        family: String,
        rows: Vec<ScanRow>,
    },
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::EntangledDetected => "entangled_detected",
        Verdict::NotDetected => "not_detected",
    }
}

impl ResultEntry {
    fn to_text(&self) -> String {
        match self {
            ResultEntry::Measure {
                result,
                i_concurrence,
                per_particle,
            } => {
                let mut line = format!(
                    "M({}) [{:?}] = {:.12} (imag residual {:.3e})",
                    result.n, result.method, result.value, result.imag_residual
                );
                if !result.basis_labels.is_empty() {
                    line.push_str(&format!(" bases: {}", result.basis_labels.join(",")));
                }
                if let Some(ci) = i_concurrence {
                    line.push_str(&format!(" | I-concurrence = {ci:.12}"));
                }
                if let Some(pp) = per_particle {
                    let values: Vec<String> = pp.iter().map(|v| format!("{v:.12}")).collect();
                    line.push_str(&format!(" | per particle: [{}]", values.join(", ")));
                }
                line.push('\n');
                line
            }
            ResultEntry::Criterion { report } => {
                let mut line = format!(
                    "{:?}: value = {:.12}, threshold = {:.12} -> {}",
                    report.criterion,
                    report.value,
                    report.threshold,
                    verdict_text(report.verdict)
                );
                if let Some(basis) = &report.basis_name {
                    line.push_str(&format!(" (basis {basis}"));
                    if let Some(side) = report.b_side {
                        line.push_str(&format!(", b-side {side:?}"));
                    }
                    line.push(')');
                }
                if let Some(res) = report.identity_residual {
                    line.push_str(&format!(" identity residual {res:.3e}"));
                }
                line.push('\n');
                line
            }
            ResultEntry::BasisCheck {
                basis,
                dim,
                probes,
                orthonormality_residual,
                completeness_residual,
                sum_rule_residual,
            } => {
                let mut line = format!(
                    "basis {basis} (d={dim}, {probes} probes): gram residual {orthonormality_residual:.3e}, completeness residual {completeness_residual:.3e}"
                );
                match sum_rule_residual {
                    Some(r) => line.push_str(&format!(", sum rule residual {r:.3e}")),
                    None => line.push_str(", sum rule skipped"),
                }
                line.push('\n');
                line
            }
            ResultEntry::Schmidt { spectrum, measures } => {
                let coeffs: Vec<String> = spectrum.iter().map(|v| format!("{v:.12}")).collect();
                let mut out = format!("schmidt spectrum: [{}]\n", coeffs.join(", "));
                for m in measures {
                    out.push_str(&format!("M({}) = {:.12}\n", m.n, m.value));
                }
                out
            }
            ResultEntry::Scan { family, rows } => {
                let mut out = format!("scan of family {family}:\n");
                for row in rows {
                    let cells: Vec<String> = row
                        .reports
                        .iter()
                        .map(|r| {
                            format!(
                                "{:?} = {:.9} ({})",
                                r.criterion,
                                r.value,
                                verdict_text(r.verdict)
                            )
                        })
                        .collect();
                    out.push_str(&format!("  p = {:.4}: {}\n", row.parameter, cells.join(" | ")));
                }
                out
            }
        }
    }
}
