//! JSON interchange.
//!
//! A matrix is `{"n": 2, "entries": [[[re, im], ...], ...]}`, row-major. A
//! quantum Latin square is `{"n", "rows": [matrix, ...]}` holding `Q_0..Q_{n-1}`,
//! a classical Latin square `{"n", "grid": [[int, ...], ...]}`, a basis
//! `{"n", "provenance", "elements": [matrix; n²]}` and a projective
//! representation `{"n", "group": [[int, ...], ...], "images": [matrix, ...]}`.
//! Every top-level object may carry a free-text `"source"` field.
//!
//! Output is canonical: fixed key order, one matrix row per line, and
//! shortest round-trip float formatting, so `write(parse(s)) == s` for any
//! `s` produced here.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::catalog::{Fixture, FixtureObject};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, ProjectiveRepresentation};
use crate::hadamard::{validate_hadamard, HadamardMatrix};
use crate::linalg::{ComplexMatrix, Tolerance, C64};
use crate::qls::{validate_qls, ClassicalLatinSquare, QuantumLatinSquare};
use crate::ueb::{Provenance, UnitaryErrorBasis};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, rename = "source")]
    _source: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QlsDoc {
    n: usize,
    rows: Vec<MatrixDoc>,
    #[serde(default, rename = "source")]
    _source: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatinDoc {
    n: usize,
    grid: Vec<Vec<usize>>,
    #[serde(default, rename = "source")]
    _source: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UebDoc {
    n: usize,
    provenance: Provenance,
    elements: Vec<MatrixDoc>,
    #[serde(default, rename = "source")]
    _source: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    n: usize,
    group: Vec<Vec<usize>>,
    images: Vec<MatrixDoc>,
    #[serde(default, rename = "source")]
    _source: Option<String>,
}

#[derive(Deserialize)]
struct SourceOnly {
    #[serde(default)]
    source: Option<String>,
}

fn decode(doc: MatrixDoc, what: &str) -> Result<ComplexMatrix> {
    if doc.entries.len() != doc.n || doc.entries.iter().any(|r| r.len() != doc.n) {
        let found = doc.entries.iter().map(Vec::len).collect::<Vec<_>>();
        return Err(Error::Shape(format!(
            "{what}: declared n = {} but rows have lengths {found:?}",
            doc.n
        )));
    }
    let rows: Vec<Vec<C64>> = doc
        .entries
        .iter()
        .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
}

fn check_n(declared: usize, found: usize, what: &str) -> Result<()> {
    if declared != found {
        return Err(Error::Shape(format!(
            "{what}: declared n = {declared} but content has order {found}"
        )));
    }
    Ok(())
}

fn decode_all(docs: Vec<MatrixDoc>, n: usize, what: &str) -> Result<Vec<ComplexMatrix>> {
    docs.into_iter()
        .enumerate()
        .map(|(k, d)| {
            let m = decode(d, &format!("{what}[{k}]"))?;
            check_n(n, m.n(), &format!("{what}[{k}]"))?;
            Ok(m)
        })
        .collect()
}

pub fn parse_matrix(s: &str) -> Result<ComplexMatrix> {
    decode(serde_json::from_str(s)?, "matrix")
}

pub fn parse_hadamard(s: &str, tol: Tolerance) -> Result<HadamardMatrix> {
    validate_hadamard(parse_matrix(s)?, tol)
}

/// The `Q_i` matrices of a square, unvalidated.
pub fn parse_qls_rows(s: &str) -> Result<Vec<ComplexMatrix>> {
    let doc: QlsDoc = serde_json::from_str(s)?;
    check_n(doc.n, doc.rows.len(), "rows")?;
    decode_all(doc.rows, doc.n, "rows")
}

pub fn parse_qls(s: &str, tol: Tolerance) -> Result<QuantumLatinSquare> {
    validate_qls(parse_qls_rows(s)?, tol)
}

pub fn parse_latin(s: &str) -> Result<ClassicalLatinSquare> {
    let doc: LatinDoc = serde_json::from_str(s)?;
    check_n(doc.n, doc.grid.len(), "grid")?;
    ClassicalLatinSquare::new(doc.grid)
}

/// Elements and provenance tag of a basis file, unvalidated.
pub fn parse_ueb_elements(s: &str) -> Result<(Vec<ComplexMatrix>, Provenance)> {
    let doc: UebDoc = serde_json::from_str(s)?;
    let elements = decode_all(doc.elements, doc.n, "elements")?;
    Ok((elements, doc.provenance))
}

pub fn parse_ueb(s: &str, tol: Tolerance) -> Result<UnitaryErrorBasis> {
    let (elements, provenance) = parse_ueb_elements(s)?;
    UnitaryErrorBasis::new(elements, provenance, tol)
}

pub fn parse_representation(s: &str, tol: Tolerance) -> Result<ProjectiveRepresentation> {
    let doc: RepDoc = serde_json::from_str(s)?;
    let images = decode_all(doc.images, doc.n, "images")?;
    ProjectiveRepresentation::new(CayleyTable::new(doc.group)?, images, tol)
}

/// The `"source"` field of any document, if present.
pub fn parse_source(s: &str) -> Result<Option<String>> {
    Ok(serde_json::from_str::<SourceOnly>(s)?.source)
}

fn float(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

fn header(out: &mut String, pad: &str, n: usize, source: Option<&str>) {
    let _ = writeln!(out, "{pad}  \"n\": {n},");
    if let Some(src) = source {
        let _ = writeln!(out, "{pad}  \"source\": {},", quoted(src));
    }
}

fn matrix_block(out: &mut String, m: &ComplexMatrix, indent: usize, source: Option<&str>) {
    let pad = " ".repeat(indent);
    let n = m.n();
    out.push_str("{\n");
    header(out, &pad, n, source);
    let _ = writeln!(out, "{pad}  \"entries\": [");
    for r in 0..n {
        let cells: Vec<String> = m
            .row(r)
            .iter()
            .map(|z| format!("[{}, {}]", float(z.re), float(z.im)))
            .collect();
        let sep = if r + 1 < n { "," } else { "" };
        let _ = writeln!(out, "{pad}    [{}]{sep}", cells.join(", "));
    }
    let _ = writeln!(out, "{pad}  ]");
    let _ = write!(out, "{pad}}}");
}

fn matrix_list(out: &mut String, key: &str, ms: &[ComplexMatrix]) {
    let _ = writeln!(out, "  \"{key}\": [");
    for (k, m) in ms.iter().enumerate() {
        out.push_str("    ");
        matrix_block(out, m, 4, None);
        out.push_str(if k + 1 < ms.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
}

pub fn write_matrix(m: &ComplexMatrix, source: Option<&str>) -> String {
    let mut out = String::new();
    matrix_block(&mut out, m, 0, source);
    out.push('\n');
    out
}

pub fn write_qls(q: &QuantumLatinSquare, source: Option<&str>) -> String {
    let mut out = String::from("{\n");
    header(&mut out, "", q.n(), source);
    matrix_list(&mut out, "rows", q.rows());
    out
}

pub fn write_latin(l: &ClassicalLatinSquare, source: Option<&str>) -> String {
    let mut out = String::from("{\n");
    header(&mut out, "", l.n(), source);
    out.push_str("  \"grid\": [\n");
    for (i, row) in l.grid().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let sep = if i + 1 < l.n() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_ueb(b: &UnitaryErrorBasis, source: Option<&str>) -> String {
    let mut out = String::from("{\n");
    header(&mut out, "", b.n(), source);
    let _ = writeln!(
        out,
        "  \"provenance\": {},",
        quoted(b.provenance().as_str())
    );
    matrix_list(&mut out, "elements", b.elements());
    out
}

pub fn write_representation(rep: &ProjectiveRepresentation, source: Option<&str>) -> String {
    let mut out = String::from("{\n");
    header(&mut out, "", rep.dim(), source);
    out.push_str("  \"group\": [\n");
    let table = rep.group().table();
    for (g, row) in table.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let sep = if g + 1 < table.len() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
    }
    out.push_str("  ],\n");
    matrix_list(&mut out, "images", rep.images());
    out
}

pub fn write_fixture(f: &Fixture) -> String {
    let src = Some(f.source);
    match &f.object {
        FixtureObject::QuantumLatinSquare(q) => write_qls(q, src),
        FixtureObject::ClassicalLatinSquare(l) => write_latin(l, src),
        FixtureObject::Hadamard(h) => write_matrix(h.matrix(), src),
        FixtureObject::Basis(b) => write_ueb(b, src),
        FixtureObject::Matrix(m) => write_matrix(m, src),
    }
}
