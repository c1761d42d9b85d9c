use std::fmt::Write as _;

use iwasawa_core::htype::HTypeReport;
use iwasawa_core::linalg::fmt_rational;
use iwasawa_core::roots::CheckReport;
use iwasawa_core::{AlgebraJson, MatrixQ};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Everything a command prints. `timings` is the only field that varies
/// between identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub algebra: Option<String>,
    pub seed: u64,
    pub timings: Timings,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "kebab-case")]
pub enum Payload {
    Build(AlgebraJson),
    Roots(RootsPayload),
    HtypeCheck(HTypePayload),
    DerSolve(DerPayload),
    DerVerify(DerPayload),
    Batch(BatchPayload),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub index: usize,
    pub covector: String,
    pub coefficients: Vec<i64>,
    pub height: i64,
    pub multiplicity: usize,
    pub simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsPayload {
    pub dim: usize,
    pub rank: usize,
    pub dim_m: usize,
    pub dim_n: usize,
    pub positive: Vec<RootEntry>,
    pub simple: Vec<usize>,
    /// Highest root, when the system is irreducible.
    pub omega: Option<usize>,
    pub max_height: i64,
    pub simple_gram: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HTypePayload {
    pub name: Option<String>,
    pub v_dim: usize,
    pub z_dim: usize,
    pub kaplan: HTypeReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerPayload {
    pub algebra: String,
    pub mode: String,
    pub dim_n: usize,
    pub dim_der: usize,
    pub dim_ad: usize,
    pub dim_sym: Option<usize>,
    pub dim_skew: Option<usize>,
    pub equal: bool,
    pub exceptional_expected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matches_expectation: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub summand_dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub line: usize,
    pub spec: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<DerPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchPayload {
    pub entries: Vec<BatchEntry>,
    pub errors: usize,
    pub mismatches: usize,
}

pub fn matrix_strings(m: &MatrixQ) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(fmt_rational).collect())
        .collect()
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

fn der_row(out: &mut String, d: &DerPayload) {
    let verdict = match d.matches_expectation {
        Some(false) => "MISMATCH",
        _ if d.equal => "equal",
        _ => "extra derivations",
    };
    let _ = writeln!(
        out,
        "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
        d.algebra,
        d.mode,
        d.dim_n,
        d.dim_der,
        d.dim_ad,
        opt(d.dim_sym),
        opt(d.dim_skew),
        if d.exceptional_expected { "yes" } else { "no" },
        verdict
    );
}

const DER_HEADER: &str =
    "| algebra | mode | dim n | dim Der | dim ad(m+a) | sym | skew | exceptional | verdict |\n\
                          |---|---|---|---|---|---|---|---|---|\n";

fn checks_table(out: &mut String, checks: &[CheckReport]) {
    if checks.is_empty() {
        return;
    }
    out.push_str("\n| check | cases | result |\n|---|---|---|\n");
    for c in checks {
        let result = if c.passed {
            "pass".to_string()
        } else {
            format!("FAIL: {}", c.witness.as_deref().unwrap_or(""))
        };
        let _ = writeln!(out, "| {} | {} | {} |", c.name, c.cases, result);
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let title = self.algebra.as_deref().unwrap_or("");
        match &self.payload {
            Payload::Build(j) => {
                let _ = writeln!(out, "## {title}\n");
                let _ = writeln!(out, "- dimension: {}", j.dim);
                let _ = writeln!(
                    out,
                    "- nonzero structure constants: {}",
                    j.structure_constants.len()
                );
                let _ = writeln!(
                    out,
                    "- real rank: {}",
                    j.a_basis.as_ref().map_or(0, Vec::len)
                );
                let _ = writeln!(out, "- basis: {}", j.labels.join(", "));
            }
            Payload::Roots(r) => {
                let _ = writeln!(out, "## Restricted roots of {title}\n");
                let _ = writeln!(
                    out,
                    "dim g = {}, rank = {}, dim m = {}, dim n = {}, max height = {}\n",
                    r.dim, r.rank, r.dim_m, r.dim_n, r.max_height
                );
                out.push_str(
                    "| # | root | coefficients | height | mult | |\n|---|---|---|---|---|---|\n",
                );
                for e in &r.positive {
                    let mark = match (e.simple, r.omega == Some(e.index)) {
                        (true, _) => "simple",
                        (_, true) => "highest",
                        _ => "",
                    };
                    let coeffs: Vec<String> = e.coefficients.iter().map(i64::to_string).collect();
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} |",
                        e.index,
                        e.covector,
                        coeffs.join(" "),
                        e.height,
                        e.multiplicity,
                        mark
                    );
                }
            }
            Payload::HtypeCheck(h) => {
                let name = h.name.as_deref().unwrap_or(title);
                let verdict = if h.kaplan.is_htype {
                    "H-type"
                } else {
                    "not H-type"
                };
                let _ = writeln!(out, "## {name}\n");
                let _ = writeln!(
                    out,
                    "dim v = {}, dim z = {}: **{verdict}** ({} cases)",
                    h.v_dim, h.z_dim, h.kaplan.cases
                );
                if let Some(w) = &h.kaplan.witness {
                    let _ = writeln!(out, "\nwitness: {w}");
                }
            }
            Payload::DerSolve(d) | Payload::DerVerify(d) => {
                out.push_str(DER_HEADER);
                der_row(&mut out, d);
                if let Some(w) = &d.witness {
                    out.push_str("\nwitness:\n\n```\n");
                    for row in w {
                        let _ = writeln!(out, "{}", row.join(" "));
                    }
                    out.push_str("```\n");
                }
                checks_table(&mut out, &d.checks);
            }
            Payload::Batch(b) => {
                out.push_str(DER_HEADER);
                for e in &b.entries {
                    match (&e.verdict, &e.error) {
                        (Some(d), _) => der_row(&mut out, d),
                        (None, err) => {
                            let msg = err.as_deref().unwrap_or("no result");
                            let _ = writeln!(
                                out,
                                "| {} | - | - | - | - | - | - | - | error (line {}): {msg} |",
                                e.spec, e.line
                            );
                        }
                    }
                }
                let _ = writeln!(
                    out,
                    "\n{} cases, {} errors, {} mismatches",
                    b.entries.len(),
                    b.errors,
                    b.mismatches
                );
            }
        }
        out
    }
}
