//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::numeric::Bound;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// How a case was judged.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Metric {
    /// Absolute error against a bound, both as `0` or `2^e`.
    Absolute { error: String, bound: String },
    /// p-adic valuation of the residual against the target precision.
    Padic { valuation: u32, target: u32 },
    /// Exact comparison; `mismatches` counts failing samples.
    Exact { samples: usize, mismatches: usize },
}

impl Metric {
    pub fn absolute(error_log2: f64, bound: Bound) -> Self {
        Metric::Absolute { error: Bound::from_log2(error_log2).to_string(), bound: bound.to_string() }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Absolute { error, bound } => write!(f, "abs {error} <= {bound}"),
            Metric::Padic { valuation, target } => write!(f, "v_p {valuation} >= {target}"),
            Metric::Exact { samples, mismatches } => write!(f, "exact {mismatches}/{samples} mismatches"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub metric: Metric,
    /// `printed`, `corrected` or `n/a`.
    pub variant: String,
    pub elapsed_ms: u64,
    pub details: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn new(identity: &str, metric: Metric) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            params: BTreeMap::new(),
            status: Status::Inconclusive,
            lhs: String::new(),
            rhs: String::new(),
            metric,
            variant: "n/a".into(),
            elapsed_ms: 0,
            details: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }

    pub fn sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self
    }

    pub fn passed(mut self, pass: bool) -> Self {
        self.status = if pass { Status::Pass } else { Status::Fail };
        self
    }

    pub fn with_variant(mut self, variant: impl ToString) -> Self {
        self.variant = variant.to_string();
        self
    }

    /// Key used to order reports: identity, then parameters.
    pub fn sort_key(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}|{}", self.identity, params.join(";"))
    }
}

fn join_map(m: &BTreeMap<String, String>) -> String {
    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn to_json(reports: &[VerificationReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| crate::Error::InvalidArgument(e.to_string()))
}

pub const CSV_HEADER: [&str; 9] =
    ["identity", "params", "status", "lhs", "rhs", "metric", "variant", "elapsed_ms", "details"];

pub fn to_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| crate::Error::InvalidArgument(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        w.write_record([
            r.identity.clone(),
            join_map(&r.params),
            r.status.to_string(),
            r.lhs.clone(),
            r.rhs.clone(),
            r.metric.to_string(),
            r.variant.clone(),
            r.elapsed_ms.to_string(),
            join_map(&r.details),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
