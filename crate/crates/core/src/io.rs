//! File formats. Every number that could exceed 53 bits is written as a
//! decimal string (`"p"` or `"p/q"`), so no output ever passes through floating point.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Matrix, Rational, TensorVector};
use crate::oracle::{PartitionInstance, PerfectStructure, Vertex};
use crate::quotient::{FeasibilityReport, SizeStatus};
use crate::recursion::{DistributionTable, TableKind, Triple, Violation};
use crate::screen::{Certificate, SweepRecord};

pub const INDEX_ORDER: &str = "i-major,k-minor";

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents always serialize")
}

/// `{"n": 3, "S": [[0,3],[1,2]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    #[serde(rename = "S")]
    pub s: Vec<Vec<i64>>,
}

impl MatrixDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = parse_json(text)?;
        let m = doc.s.len();
        if m == 0 || doc.s.iter().any(|r| r.len() != m) {
            return Err(Error::Parse(format!("S must be a nonempty square matrix, got {m} rows")));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_integers(&self.s).expect("checked square on parse")
    }
}

pub fn triple_key(t: Triple) -> String {
    format!("{},{},{}", t.0, t.1, t.2)
}

pub fn parse_triple_key(key: &str) -> Result<Triple> {
    let parts: Vec<usize> = key
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("invalid triple key '{key}'"))))
        .collect::<Result<_>>()?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(Error::Parse(format!("invalid triple key '{key}'"))),
    }
}

/// A distribution table with exact string values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub kind: String,
    pub n: usize,
    pub m: usize,
    pub index_order: String,
    pub entries: BTreeMap<String, Vec<String>>,
}

impl TableDocument {
    pub fn from_table(table: &DistributionTable) -> Self {
        Self {
            kind: table.kind().as_str().to_string(),
            n: table.n(),
            m: table.m(),
            index_order: INDEX_ORDER.to_string(),
            entries: table.iter().map(|(t, v)| (triple_key(*t), v.entries().iter().map(format_rational).collect())).collect(),
        }
    }

    pub fn to_table(&self) -> Result<DistributionTable> {
        let kind = TableKind::parse(&self.kind)?;
        if self.index_order != INDEX_ORDER {
            return Err(Error::Parse(format!("unsupported index order '{}'", self.index_order)));
        }
        let mut entries = BTreeMap::new();
        let mut max_level = 0;
        for (key, values) in &self.entries {
            let t = parse_triple_key(key)?;
            max_level = max_level.max(t.0 + t.1 + t.2);
            let vals = values.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            entries.insert(t, TensorVector::from_entries(self.m, vals)?);
        }
        DistributionTable::new(kind, self.n, self.m, max_level, entries)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    /// Pretty JSON with one entry per line.
    pub fn to_json(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let mut out = String::from("{\n");
        writeln!(out, "  \"kind\": {},", q(&self.kind)).unwrap();
        writeln!(out, "  \"n\": {},", self.n).unwrap();
        writeln!(out, "  \"m\": {},", self.m).unwrap();
        writeln!(out, "  \"index_order\": {},", q(&self.index_order)).unwrap();
        out.push_str("  \"entries\": {");
        for (idx, (key, values)) in self.entries.iter().enumerate() {
            let sep = if idx == 0 { "\n" } else { ",\n" };
            let vals: Vec<String> = values.iter().map(|v| q(v)).collect();
            write!(out, "{sep}    {}: [{}]", q(key), vals.join(", ")).unwrap();
        }
        out.push_str(if self.entries.is_empty() { "}\n}" } else { "\n  }\n}" });
        out
    }
}

/// One row per entry: `r1,r2,r3,i,j,k,value` with 1-based cell indices.
pub fn table_to_csv(table: &DistributionTable) -> String {
    let mut out = String::from("r1,r2,r3,i,j,k,value\n");
    for (t, v) in table.iter_by_level() {
        for (flat, value) in v.entries().iter().enumerate() {
            let (i, j, k) = v.triple_of(flat);
            writeln!(out, "{},{},{},{},{},{},{}", t.0, t.1, t.2, i + 1, j + 1, k + 1, format_rational(value)).unwrap();
        }
    }
    out
}

pub fn table_from_csv(text: &str, kind: TableKind, n: usize, m: usize) -> Result<DistributionTable> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("r1,r2,r3,i,j,k,value") {
        return Err(Error::Parse("missing CSV header".into()));
    }
    let mut entries: BTreeMap<Triple, TensorVector> = BTreeMap::new();
    let mut max_level = 0;
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(Error::Parse(format!("bad CSV row '{line}'")));
        }
        let idx = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad CSV row '{line}'")));
        let t = (idx(f[0])?, idx(f[1])?, idx(f[2])?);
        let (i, j, k) = (idx(f[3])?, idx(f[4])?, idx(f[5])?);
        if i == 0 || j == 0 || k == 0 || i > m || j > m || k > m {
            return Err(Error::Parse(format!("cell index out of range in '{line}'")));
        }
        max_level = max_level.max(t.0 + t.1 + t.2);
        entries.entry(t).or_insert_with(|| TensorVector::zeros(m))[(i - 1, j - 1, k - 1)] = parse_rational(f[6])?;
    }
    DistributionTable::new(kind, n, m, max_level, entries)
}

/// `{"n": 3, "m": 2, "cells": [[0,7],[1,2,3,4,5,6]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDocument {
    pub n: usize,
    pub m: usize,
    pub cells: Vec<Vec<Vertex>>,
}

impl PartitionDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn from_instance(p: &PartitionInstance) -> Self {
        Self { n: p.n(), m: p.m(), cells: p.cells() }
    }

    pub fn to_instance(&self) -> Result<PartitionInstance> {
        if self.cells.len() != self.m {
            return Err(Error::Parse(format!("m = {} but {} cells given", self.m, self.cells.len())));
        }
        PartitionInstance::from_cells(self.n, &self.cells)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

/// An integer, or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalValue {
    Int(i64),
    Text(String),
}

impl RationalValue {
    pub fn from_rational(r: &Rational) -> Self {
        match i64::try_from(r.numer()) {
            Ok(v) if r.is_integer() => RationalValue::Int(v),
            _ => RationalValue::Text(format_rational(r)),
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalValue::Int(v) => Ok(Rational::from_integer((*v).into())),
            RationalValue::Text(s) => parse_rational(s),
        }
    }
}

/// `{"n": 2, "m": 2, "values": [[2,0],[2,0],[0,2],[0,2]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectStructureDocument {
    pub n: usize,
    pub m: usize,
    pub values: Vec<Vec<RationalValue>>,
}

impl PerfectStructureDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn from_structure(ps: &PerfectStructure) -> Self {
        Self {
            n: ps.n(),
            m: ps.m(),
            values: ps.values().iter().map(|v| v.iter().map(RationalValue::from_rational).collect()).collect(),
        }
    }

    pub fn to_structure(&self) -> Result<PerfectStructure> {
        let values = self.values.iter().map(|v| v.iter().map(RationalValue::to_rational).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        PerfectStructure::new(self.n, self.m, values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDocument {
    pub triple: [usize; 3],
    /// 1-based `(i, j, k)`.
    pub index: [usize; 3],
    pub value: String,
    pub reason: String,
}

impl ViolationDocument {
    pub fn from_violation(v: &Violation) -> Self {
        Self {
            triple: [v.triple.0, v.triple.1, v.triple.2],
            index: [v.index.0 + 1, v.index.1 + 1, v.index.2 + 1],
            value: format_rational(&v.value),
            reason: v.reason.as_str().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityDocument {
    pub row_sum_ok: bool,
    /// Cell sizes as exact strings; absent when undetermined.
    pub sizes: Option<Vec<String>>,
    pub sizes_integral: bool,
    pub sizes_connected: bool,
    pub divisibility_ok: Option<bool>,
    pub ci_bound_ok: Option<bool>,
    pub spectrum_ok: bool,
    pub char_poly: Vec<String>,
    pub eigenvalues: Vec<i64>,
    pub failures: Vec<String>,
    pub verdict: String,
}

impl FeasibilityDocument {
    pub fn from_report(r: &FeasibilityReport) -> Self {
        Self {
            row_sum_ok: r.row_sum_ok,
            sizes: r.sizes.rationals().map(|v| v.iter().map(format_rational).collect()),
            sizes_integral: matches!(r.sizes, SizeStatus::Integral(_)),
            sizes_connected: r.sizes_connected,
            divisibility_ok: r.divisibility_ok,
            ci_bound_ok: r.ci_bound_ok,
            spectrum_ok: r.spectrum.ok(),
            char_poly: r.spectrum.char_poly.iter().map(ToString::to_string).collect(),
            eigenvalues: r.spectrum.eigenvalues.clone(),
            failures: r.failures().into_iter().map(String::from).collect(),
            verdict: r.verdict.as_str().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub n: usize,
    #[serde(rename = "S")]
    pub s: Vec<Vec<i64>>,
    pub verdict: String,
    pub validation_error: Option<String>,
    pub feasibility: Option<FeasibilityDocument>,
    pub first_violation: Option<ViolationDocument>,
    pub violation_count: usize,
    pub levels_scanned: usize,
}

impl CertificateDocument {
    pub fn from_certificate(c: &Certificate) -> Self {
        Self {
            n: c.n,
            s: c.matrix.clone(),
            verdict: c.verdict.as_str().to_string(),
            validation_error: c.validation_error.as_ref().map(ToString::to_string),
            feasibility: c.feasibility.as_ref().map(FeasibilityDocument::from_report),
            first_violation: c.first_violation.as_ref().map(ViolationDocument::from_violation),
            violation_count: c.violation_count,
            levels_scanned: c.levels_scanned,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub const NO_WITNESS: &str = "NO WITNESS FOUND";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessField {
    Found { r2: usize, r3: usize, value: String },
    Missing(String),
}

/// One JSON line of a sweep report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepLine {
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub witness: WitnessField,
    pub levels_scanned: usize,
}

impl SweepLine {
    pub fn from_record(r: &SweepRecord) -> Self {
        let witness = match &r.witness {
            Some(((r2, r3), v)) => WitnessField::Found { r2: *r2, r3: *r3, value: format_rational(v) },
            None => WitnessField::Missing(NO_WITNESS.to_string()),
        };
        Self { n: r.n, a: r.a, b: r.b, c: r.c, d: r.d, witness, levels_scanned: r.levels_scanned }
    }

    pub fn parse(line: &str) -> Result<Self> {
        parse_json(line)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

/// Human-readable table of sweep records.
pub fn sweep_summary(records: &[SweepRecord], n_max: usize) -> String {
    let mut out = String::new();
    writeln!(out, "{:>4} {:>4} {:>4} {:>4} {:>4}  {:<16} T^{{0,r2,r3}}_111", "n", "a", "b", "c", "d", "witness (r2,r3)").unwrap();
    for r in records {
        let w = match &r.witness {
            Some(((r2, r3), v)) => format!("{:<16} {}", format!("({r2},{r3})"), format_rational(v)),
            None => NO_WITNESS.to_string(),
        };
        writeln!(out, "{:>4} {:>4} {:>4} {:>4} {:>4}  {w}", r.n, r.a, r.b, r.c, r.d).unwrap();
    }
    let missing = records.iter().filter(|r| r.witness.is_none()).count();
    writeln!(out, "n <= {n_max}: {} candidates, {} with witness, {missing} without", records.len(), records.len() - missing).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::quotient::validate_quotient;
    use crate::recursion::build_table;

    #[test]
    fn matrix_document() {
        let doc = MatrixDocument::parse(r#"{"n":3,"S":[[0,3],[1,2]]}"#).unwrap();
        assert_eq!(doc.s, vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(MatrixDocument::parse(&doc.to_json()).unwrap(), doc);
        assert!(MatrixDocument::parse(r#"{"n":3,"S":[[0,3],[1]]}"#).is_err());
        assert!(MatrixDocument::parse(r#"{"n":3,"S":[]}"#).is_err());
    }

    #[test]
    fn table_round_trips() {
        let q = validate_quotient(&[vec![0, 3], vec![1, 2]], 3).unwrap();
        let t = build_table(&q, TableKind::Triangle, 3, None).unwrap();
        let doc = TableDocument::from_table(&t);
        assert_eq!(doc.entries["0,0,1"], ["0", "6", "0", "0", "0", "0", "6", "12"]);
        let back = TableDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_table().unwrap(), t);
        assert_eq!(table_from_csv(&table_to_csv(&t), TableKind::Triangle, 3, 2).unwrap(), t);
    }

    #[test]
    fn rational_values() {
        let doc = PerfectStructureDocument::parse(r#"{"n":1,"m":2,"values":[[1,"1/2"],["-3",0]]}"#).unwrap();
        let ps = doc.to_structure().unwrap();
        assert_eq!(ps.value(0)[1], Rational::new(1.into(), 2.into()));
        assert_eq!(ps.value(1)[0], rat(-3));
        let again = PerfectStructureDocument::from_structure(&ps);
        assert_eq!(PerfectStructureDocument::parse(&again.to_json()).unwrap().to_structure().unwrap(), ps);
    }

    #[test]
    fn sweep_lines() {
        let rec = SweepRecord { n: 5, a: 0, b: 5, c: 3, d: 2, witness: Some(((2, 3), rat(-60))), levels_scanned: 5 };
        let line = SweepLine::from_record(&rec);
        assert_eq!(SweepLine::parse(&line.to_json_line()).unwrap(), line);
        let none = SweepLine::from_record(&SweepRecord { witness: None, ..rec });
        assert!(none.to_json_line().contains(NO_WITNESS));
        assert_eq!(SweepLine::parse(&none.to_json_line()).unwrap(), none);
    }
}
