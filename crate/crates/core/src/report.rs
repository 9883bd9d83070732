//! Machine-readable reports: the JSON schema shared by the analysis layer
//! and the CLI, a structural diff, and CSV export of valuation tables.
//!
//! Every number that can be exact is a string (integer or rational); the
//! only floats are the degree-growth ratios, which are labeled approximate.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    /// Echo of the experiment configuration; reports are re-runnable.
    pub config: BTreeMap<String, String>,
    pub results: Results,
    /// Wall time per phase; excluded from diffs and determinism claims.
    pub timings_ms: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct Results {
    pub seed: u64,
    pub system: String,
    pub horizon: i64,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_terms: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub factors: Vec<FactorReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub coprime_matrix: Vec<CoprimeEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub irreducibility: Vec<IrreducibilityEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<DegreeReport>,
    /// Lattice window keyed "m,n" with canonical polynomial text.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermEntry {
    pub index: i64,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FactorReport {
    pub poly: String,
    /// index -> ord, indices as decimal strings.
    pub profile: BTreeMap<String, i64>,
    pub class: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CoprimeEntry {
    pub pair: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IrreducibilityEntry {
    pub term: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CertificateEntry {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub main_var: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub point: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub primes: Vec<u64>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DegreeReport {
    pub indices: Vec<i64>,
    pub degrees: Vec<u32>,
    pub differences: Vec<i64>,
    /// Labeled approximate: the only non-exact numbers in a report.
    pub approx_ratios: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("schema version mismatch: {a} vs {b}")]
    SchemaMismatch { a: u32, b: u32 },
    #[error("malformed report: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DiffEntry {
    pub path: String,
    pub left: Option<serde_json::Value>,
    pub right: Option<serde_json::Value>,
}

/// Field-level diff of the results sections; empty iff they are
/// bit-identical once serialized.
pub fn diff_reports(a: &Report, b: &Report) -> Result<Vec<DiffEntry>, ReportError> {
    if a.schema_version != b.schema_version {
        return Err(ReportError::SchemaMismatch {
            a: a.schema_version,
            b: b.schema_version,
        });
    }
    let va = serde_json::to_value(&a.results)
        .map_err(|e| ReportError::Malformed(e.to_string()))?;
    let vb = serde_json::to_value(&b.results)
        .map_err(|e| ReportError::Malformed(e.to_string()))?;
    let mut out = Vec::new();
    diff_values("results", &va, &vb, &mut out);
    Ok(out)
}

fn diff_values(
    path: &str,
    a: &serde_json::Value,
    b: &serde_json::Value,
    out: &mut Vec<DiffEntry>,
) {
    use serde_json::Value;
    match (a, b) {
        (Value::Object(ma), Value::Object(mb)) => {
            let keys: std::collections::BTreeSet<&String> =
                ma.keys().chain(mb.keys()).collect();
            for k in keys {
                let sub = format!("{path}.{k}");
                match (ma.get(k), mb.get(k)) {
                    (Some(x), Some(y)) => diff_values(&sub, x, y, out),
                    (x, y) => out.push(DiffEntry {
                        path: sub,
                        left: x.cloned(),
                        right: y.cloned(),
                    }),
                }
            }
        }
        (Value::Array(xa), Value::Array(xb)) => {
            let n = xa.len().max(xb.len());
            for i in 0..n {
                let sub = format!("{path}[{i}]");
                match (xa.get(i), xb.get(i)) {
                    (Some(x), Some(y)) => diff_values(&sub, x, y, out),
                    (x, y) => out.push(DiffEntry {
                        path: sub,
                        left: x.cloned(),
                        right: y.cloned(),
                    }),
                }
            }
        }
        _ if a == b => {}
        _ => out.push(DiffEntry {
            path: path.to_string(),
            left: Some(a.clone()),
            right: Some(b.clone()),
        }),
    }
}

/// Long-format CSV of the valuation tables: one row per (factor, index).
pub fn valuation_csv(factors: &[FactorReport]) -> String {
    let mut out = String::from("factor,index,ord\n");
    for f in factors {
        for (idx, ord) in &f.profile {
            out.push_str(&format!("\"{}\",{},{}\n", f.poly, idx, ord));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: "test".into(),
            config: BTreeMap::from([("system".to_string(), "somos4".to_string())]),
            results: Results {
                seed: 0,
                system: "somos4".into(),
                horizon: 14,
                checks: vec![CheckResult {
                    name: "integer-seq".into(),
                    pass: true,
                    detail: "ok".into(),
                }],
                ..Default::default()
            },
            timings_ms: BTreeMap::new(),
        }
    }

    #[test]
    fn report_diff_with_itself_is_empty() {
        let r = sample();
        assert!(diff_reports(&r, &r).unwrap().is_empty());
    }

    #[test]
    fn diff_pinpoints_changed_field() {
        let a = sample();
        let mut b = sample();
        b.results.horizon = 12;
        // timings are not part of the diff
        b.timings_ms.insert("evolve".into(), 10);
        let d = diff_reports(&a, &b).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].path, "results.horizon");
    }

    #[test]
    fn schema_mismatch_is_an_error() {
        let a = sample();
        let mut b = sample();
        b.schema_version = 2;
        assert!(matches!(
            diff_reports(&a, &b),
            Err(ReportError::SchemaMismatch { .. })
        ));
    }
}
