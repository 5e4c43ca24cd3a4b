//! Value tables in CSV or JSON.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::chi_eulerian::{chi_eulerian_table, weight_zero_euler_table};
use crate::dirichlet::enumerate_characters;
use crate::error::{Error, Result};
use crate::eulerian::eulerian_table;
use crate::exact::rational::{self, Rational};
use crate::lfunction::l_eulerian;
use crate::numeric::ExactComplex;
use crate::suite::exact_string;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Classical,
    ChiEulerian,
    WeightZeroEuler,
    LValues,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(TableKind::Classical),
            "chi-eulerian" => Ok(TableKind::ChiEulerian),
            "weight-zero-euler" => Ok(TableKind::WeightZeroEuler),
            "l-values" => Ok(TableKind::LValues),
            _ => Err(Error::InvalidArgument(format!("unknown table kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Parses `a..b` (half-open), `a..=b` or a single `n`.
pub fn parse_range(s: &str) -> Result<Range<usize>> {
    let bad = || Error::InvalidArgument(format!("bad range {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let r = if let Some((a, b)) = s.split_once("..=") {
        num(a)?..num(b)? + 1
    } else if let Some((a, b)) = s.split_once("..") {
        num(a)?..num(b)?
    } else {
        let n = num(s)?;
        n..n + 1
    };
    if r.start > r.end {
        return Err(bad());
    }
    Ok(r)
}

/// What to tabulate. `n` ranges over `range`; the other axes are
/// cartesian.
#[derive(Clone, Debug)]
pub struct TableSpec {
    pub kind: TableKind,
    pub range: Range<usize>,
    pub moduli: Vec<u64>,
    pub char_index: Option<usize>,
    pub qs: Vec<Rational>,
    pub xs: Vec<Rational>,
    pub bits: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn build_table(spec: &TableSpec) -> Result<Table> {
    let Range { start, end } = spec.range.clone();
    let mut rows = Vec::new();
    let header = match spec.kind {
        TableKind::Classical => {
            if end > 0 {
                for p in eulerian_table(end - 1).into_iter().skip(start) {
                    let cs: Vec<String> = p.int_coeffs().iter().map(|c| c.to_string()).collect();
                    rows.push(vec![p.n.to_string(), cs.join(",")]);
                }
            }
            vec!["n", "coefficients"]
        }
        TableKind::ChiEulerian => {
            for &d in &spec.moduli {
                for chi in characters(d, spec.char_index)? {
                    for q in &spec.qs {
                        if end == 0 {
                            continue;
                        }
                        let t = chi_eulerian_table(end - 1, &chi, q)?;
                        for (n, v) in t.iter().enumerate().skip(start) {
                            rows.push(vec![
                                n.to_string(),
                                d.to_string(),
                                chi.index().to_string(),
                                rational::format(q),
                                exact_string(v),
                            ]);
                        }
                    }
                }
            }
            vec!["n", "d", "char", "q", "value"]
        }
        TableKind::WeightZeroEuler => {
            for q in &spec.qs {
                for x in &spec.xs {
                    if end == 0 {
                        continue;
                    }
                    let t = weight_zero_euler_table(end - 1, q, x)?;
                    for (n, v) in t.iter().enumerate().skip(start) {
                        rows.push(vec![n.to_string(), rational::format(q), rational::format(x), rational::format(v)]);
                    }
                }
            }
            vec!["n", "q", "x", "value"]
        }
        TableKind::LValues => {
            for &d in &spec.moduli {
                for chi in characters(d, spec.char_index)? {
                    for q in &spec.qs {
                        for n in start..end {
                            let s = ExactComplex::real(-Rational::from_integer((n as i64).into()));
                            let v = l_eulerian(&s, &chi, q, spec.bits)?;
                            let digits = (spec.bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
                            rows.push(vec![
                                n.to_string(),
                                d.to_string(),
                                chi.index().to_string(),
                                rational::format(q),
                                s.to_string(),
                                v.value.to_decimal(digits),
                                spec.bits.to_string(),
                                v.total_bound().to_string(),
                            ]);
                        }
                    }
                }
            }
            vec!["n", "d", "char", "q", "s", "value", "bits", "error_bound"]
        }
    };
    Ok(Table { header, rows })
}

fn characters(d: u64, index: Option<usize>) -> Result<Vec<crate::dirichlet::DirichletCharacter>> {
    let all = enumerate_characters(d)?;
    match index {
        None => Ok(all),
        Some(k) => all
            .into_iter()
            .nth(k)
            .map(|c| vec![c])
            .ok_or_else(|| Error::InvalidArgument(format!("modulus {d} has no character {k}"))),
    }
}

impl Table {
    pub fn to_csv(&self) -> Result<String> {
        let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> =
                    self.header.iter().zip(r).map(|(h, v)| (h.to_string(), Value::String(v.clone()))).collect();
                Value::Object(m)
            })
            .collect();
        serde_json::to_string_pretty(&rows).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

pub fn emit_table(spec: &TableSpec, format: Format) -> Result<String> {
    build_table(spec)?.render(format)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn spec(kind: TableKind, range: &str) -> TableSpec {
        TableSpec {
            kind,
            range: parse_range(range).unwrap(),
            moduli: vec![3],
            char_index: None,
            qs: vec![int(2)],
            xs: vec![int(0)],
            bits: 96,
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..=5").unwrap(), 0..6);
        assert_eq!(parse_range("2..4").unwrap(), 2..4);
        assert_eq!(parse_range("3").unwrap(), 3..4);
        assert_eq!(parse_range("3..3").unwrap(), 3..3);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn classical_csv() {
        let s = emit_table(&spec(TableKind::Classical, "0..=5"), Format::Csv).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "n,coefficients");
        assert_eq!(lines[6], "5,\"1,26,66,26,1\"");
    }

    #[test]
    fn chi_eulerian_json() {
        let s = emit_table(&spec(TableKind::ChiEulerian, "0..=1"), Format::Json).unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        let find =
            |n: &str| v.as_array().unwrap().iter().find(|r| r["n"] == n && r["char"] == "1").unwrap()["value"].clone();
        assert_eq!(find("0"), "-4/1");
        assert_eq!(find("1"), "12/1");
    }

    #[test]
    fn empty_l_values() {
        let s = emit_table(&spec(TableKind::LValues, "0..0"), Format::Csv).unwrap();
        assert_eq!(s.lines().count(), 1);
        let j = emit_table(&spec(TableKind::LValues, "0..0"), Format::Json).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&j).unwrap(), Value::Array(vec![]));
    }

    #[test]
    fn weight_zero_rows() {
        let t = build_table(&spec(TableKind::WeightZeroEuler, "0..=1")).unwrap();
        assert_eq!(t.rows[1], vec!["1", "2/1", "0/1", "-2/3"]);
    }
}
