//! The textual document formats: complexes (`.cx`) and chain maps
//! (`.cm`), plus module literals.
//!
//! A complex document is line-based:
//!
//! ```text
//! # a comment
//! ring Z
//! name example
//! degree -1 rank 1
//! degree 0 rank 1
//! diff -1 [[2]]
//! ```
//!
//! Matrices are row-major and bracketed, entries are integers (rationals
//! `p/q` over Q; integers are reduced mod p over a prime field).
//! Unspecified differentials are zero.  `d^2 = 0` is checked on load.
//!
//! A map document carries two prefixed complexes and its components:
//!
//! ```text
//! ring Z
//! source degree 0 rank 1
//! target degree 0 rank 1
//! component 0 [[2]]
//! ```
//!
//! Module literals name finitely generated modules: `0`, `Z`, `Z^2`,
//! `Z/4`, `Z^2+Z/2+Z/6`, `Q^3`, `F5^2`; a bare positive integer k means
//! Z/k.

use chaincalc_core::complex::{ChainComplex, ChainMap};
use chaincalc_core::matrix::ExactMatrix;
use chaincalc_core::module::FgModule;
use chaincalc_core::ring::{parse_ring, CoefficientRing, Scalar};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;

/// A positioned document error; lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl DocError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        DocError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for DocError {}

/// The raw content of a complex document before assembly.
#[derive(Debug, Default)]
pub struct ComplexDocument {
    pub ring: Option<CoefficientRing>,
    pub name: Option<String>,
    pub ranks: BTreeMap<i64, usize>,
    pub diffs: BTreeMap<i64, Vec<Vec<String>>>,
}

fn parse_matrix_literal(
    text: &str,
    line: usize,
    col0: usize,
) -> Result<Vec<Vec<String>>, DocError> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut current: Vec<String> = Vec::new();
    let mut entry = String::new();
    let mut depth = 0usize;
    let mut finished = false;
    for (i, ch) in text.char_indices() {
        let col = col0 + i;
        if finished && !ch.is_whitespace() {
            return Err(DocError::new(line, col, "trailing input after matrix"));
        }
        match ch {
            '[' => {
                depth += 1;
                if depth > 2 {
                    return Err(DocError::new(line, col, "matrices nest at most two brackets"));
                }
            }
            ']' => {
                if depth == 0 {
                    return Err(DocError::new(line, col, "unbalanced ']'"));
                }
                if depth == 2 {
                    if !entry.trim().is_empty() {
                        current.push(entry.trim().to_string());
                    }
                    entry.clear();
                    rows.push(std::mem::take(&mut current));
                }
                depth -= 1;
                if depth == 0 {
                    finished = true;
                }
            }
            ',' => match depth {
                2 => {
                    if entry.trim().is_empty() {
                        return Err(DocError::new(line, col, "empty matrix entry"));
                    }
                    current.push(entry.trim().to_string());
                    entry.clear();
                }
                1 => {}
                _ => return Err(DocError::new(line, col, "',' outside matrix")),
            },
            c if c.is_whitespace() => {
                if depth == 2 {
                    entry.push(c);
                }
            }
            c => {
                if depth != 2 {
                    return Err(DocError::new(line, col, format!("unexpected '{c}'")));
                }
                entry.push(c);
            }
        }
    }
    if !finished {
        return Err(DocError::new(line, col0 + text.len(), "unterminated matrix"));
    }
    Ok(rows)
}

fn build_matrix(
    ring: CoefficientRing,
    rows: usize,
    cols: usize,
    literal: &[Vec<String>],
    line: usize,
) -> Result<ExactMatrix, DocError> {
    if literal.len() != rows || literal.iter().any(|r| r.len() != cols) {
        return Err(DocError::new(
            line,
            1,
            format!(
                "matrix shape mismatch: expected {rows}x{cols}, got {}x{}",
                literal.len(),
                literal.first().map_or(0, |r| r.len())
            ),
        ));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in literal {
        for cell in row {
            let scalar = ring
                .parse_scalar(cell)
                .ok_or_else(|| DocError::new(line, 1, format!("bad entry '{cell}' over {ring}")))?;
            entries.push(scalar);
        }
    }
    Ok(ExactMatrix::from_entries(ring, rows, cols, entries))
}

fn split_keyword(rest: &str) -> (String, &str, usize) {
    let trimmed = rest.trim_start();
    let offset = rest.len() - trimmed.len();
    match trimmed.find(char::is_whitespace) {
        Some(pos) => (trimmed[..pos].to_string(), &trimmed[pos..], offset + pos),
        None => (trimmed.to_string(), "", offset + trimmed.len()),
    }
}

fn parse_int<T: std::str::FromStr>(
    token: &str,
    line: usize,
    col: usize,
    what: &str,
) -> Result<T, DocError> {
    token
        .trim()
        .parse()
        .map_err(|_| DocError::new(line, col, format!("expected {what}, got '{}'", token.trim())))
}

/// Parses a complex document.  The ring line wins over `default_ring`;
/// if neither is present the document is rejected.
pub fn parse_complex(
    text: &str,
    default_ring: Option<CoefficientRing>,
) -> Result<ChainComplex, DocError> {
    let doc = parse_complex_document(text, "")?;
    assemble_complex(&doc, default_ring, text)
}

fn parse_complex_document(text: &str, prefix: &str) -> Result<ComplexDocument, DocError> {
    let mut doc = ComplexDocument::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let (mut word, mut rest, mut col) = split_keyword(line);
        if !prefix.is_empty() {
            if word != prefix {
                continue;
            }
            (word, rest, col) = {
                let (w, r, c) = split_keyword(rest);
                (w, r, col + c)
            };
        }
        match word.as_str() {
            "ring" => {
                let tag = rest.trim();
                let ring = parse_ring(tag)
                    .map_err(|e| DocError::new(line_no, col + 1, e.to_string()))?;
                doc.ring = Some(ring);
            }
            "name" => {
                doc.name = Some(rest.trim().to_string());
            }
            "degree" => {
                let (deg_tok, rest2, col2) = split_keyword(rest);
                let degree: i64 = parse_int(&deg_tok, line_no, col + 1, "an integer degree")?;
                let (kw, rest3, col3) = split_keyword(rest2);
                if kw != "rank" {
                    return Err(DocError::new(
                        line_no,
                        col + col2 + 1,
                        "expected 'rank' after the degree",
                    ));
                }
                let rank: usize =
                    parse_int(rest3, line_no, col + col2 + col3 + 1, "a nonnegative rank")?;
                doc.ranks.insert(degree, rank);
            }
            "diff" => {
                let (deg_tok, rest2, col2) = split_keyword(rest);
                let degree: i64 = parse_int(&deg_tok, line_no, col + 1, "an integer degree")?;
                let literal = parse_matrix_literal(rest2, line_no, col + col2 + 1)?;
                doc.diffs.insert(degree, literal);
            }
            other if prefix.is_empty() => {
                return Err(DocError::new(
                    line_no,
                    1,
                    format!("unknown directive '{other}'"),
                ));
            }
            _ => {}
        }
    }
    Ok(doc)
}

fn diff_line_number(text: &str, prefix: &str, degree: i64) -> usize {
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_start();
        let body = if prefix.is_empty() {
            line.to_string()
        } else if let Some(rest) = line.strip_prefix(prefix) {
            rest.trim_start().to_string()
        } else {
            continue;
        };
        if body.starts_with("diff") && body.split_whitespace().nth(1) == Some(&degree.to_string()) {
            return idx + 1;
        }
    }
    1
}

fn assemble_complex(
    doc: &ComplexDocument,
    default_ring: Option<CoefficientRing>,
    text: &str,
) -> Result<ChainComplex, DocError> {
    let ring = doc
        .ring
        .or(default_ring)
        .ok_or_else(|| DocError::new(1, 1, "no ring declared (and no default ring set)"))?;
    if doc.ranks.is_empty() {
        return Ok(ChainComplex::zero(ring));
    }
    let lo = *doc.ranks.keys().next().unwrap();
    let hi = *doc.ranks.keys().last().unwrap();
    let ranks: Vec<usize> = (lo..=hi).map(|n| doc.ranks.get(&n).copied().unwrap_or(0)).collect();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let rows = ranks[(n + 1 - lo) as usize];
        let cols = ranks[(n - lo) as usize];
        let m = match doc.diffs.get(&n) {
            Some(literal) => build_matrix(ring, rows, cols, literal, diff_line_number(text, "", n))?,
            None => ExactMatrix::zero(ring, rows, cols),
        };
        diffs.push(m);
    }
    for (&n, _) in &doc.diffs {
        if n < lo || n >= hi {
            return Err(DocError::new(
                diff_line_number(text, "", n),
                1,
                format!("differential at degree {n} is outside the declared support"),
            ));
        }
    }
    let complex = ChainComplex::from_parts(ring, lo, ranks, diffs)
        .map_err(|e| DocError::new(1, 1, e.to_string()))?;
    complex.validate().map_err(|e| {
        let degree = match e {
            chaincalc_core::Error::DifferentialSquare(d) => d,
            _ => lo,
        };
        DocError::new(
            diff_line_number(text, "", degree),
            1,
            format!("differentials do not square to zero at degree {degree}"),
        )
    })?;
    Ok(complex)
}

/// Parses a chain-map document with `source`/`target` sections and
/// `component` lines.
pub fn parse_chain_map(
    text: &str,
    default_ring: Option<CoefficientRing>,
) -> Result<ChainMap, DocError> {
    let mut shared = ComplexDocument::default();
    let mut components: BTreeMap<i64, (usize, Vec<Vec<String>>)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let (word, rest, col) = split_keyword(line);
        match word.as_str() {
            "ring" => {
                let ring = parse_ring(rest.trim())
                    .map_err(|e| DocError::new(line_no, col + 1, e.to_string()))?;
                shared.ring = Some(ring);
            }
            "name" => shared.name = Some(rest.trim().to_string()),
            "source" | "target" => {}
            "component" => {
                let (deg_tok, rest2, col2) = split_keyword(rest);
                let degree: i64 = parse_int(&deg_tok, line_no, col + 1, "an integer degree")?;
                let literal = parse_matrix_literal(rest2, line_no, col + col2 + 1)?;
                components.insert(degree, (line_no, literal));
            }
            other => {
                return Err(DocError::new(
                    line_no,
                    1,
                    format!("unknown directive '{other}'"),
                ));
            }
        }
    }
    let mut src_doc = parse_complex_document(text, "source")?;
    let mut tgt_doc = parse_complex_document(text, "target")?;
    src_doc.ring = src_doc.ring.or(shared.ring).or(default_ring);
    tgt_doc.ring = tgt_doc.ring.or(shared.ring).or(default_ring);
    let source = assemble_complex(&src_doc, default_ring, text)?;
    let target = assemble_complex(&tgt_doc, default_ring, text)?;
    let ring = source.ring();
    let mut comps = BTreeMap::new();
    for (degree, (line_no, literal)) in components {
        let m = build_matrix(
            ring,
            target.rank(degree),
            source.rank(degree),
            &literal,
            line_no,
        )?;
        comps.insert(degree, m);
    }
    ChainMap::new(source, target, comps).map_err(|e| DocError::new(1, 1, e.to_string()))
}

/// Canonical rendering of a complex document; parsing it back yields a
/// structurally equal complex.
pub fn render_complex(c: &ChainComplex, name: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str(&format!("ring {}\n", c.ring()));
    if let Some(n) = name {
        out.push_str(&format!("name {n}\n"));
    }
    for n in c.support() {
        out.push_str(&format!("degree {n} rank {}\n", c.rank(n)));
    }
    for n in c.support() {
        let d = c.diff(n);
        if d.rows() > 0 && d.cols() > 0 {
            out.push_str(&format!("diff {n} {d}\n"));
        }
    }
    out
}

/// Canonical rendering of a chain-map document.
pub fn render_chain_map(f: &ChainMap) -> String {
    let mut out = String::new();
    out.push_str(&format!("ring {}\n", f.ring()));
    let src = f.source();
    let tgt = f.target();
    for n in src.support() {
        out.push_str(&format!("source degree {n} rank {}\n", src.rank(n)));
    }
    for n in src.support() {
        let d = src.diff(n);
        if d.rows() > 0 && d.cols() > 0 {
            out.push_str(&format!("source diff {n} {d}\n"));
        }
    }
    for n in tgt.support() {
        out.push_str(&format!("target degree {n} rank {}\n", tgt.rank(n)));
    }
    for n in tgt.support() {
        let d = tgt.diff(n);
        if d.rows() > 0 && d.cols() > 0 {
            out.push_str(&format!("target diff {n} {d}\n"));
        }
    }
    for n in src.support() {
        let m = f.component(n);
        if m.rows() > 0 && m.cols() > 0 {
            out.push_str(&format!("component {n} {m}\n"));
        }
    }
    out
}

/// Parses a module literal: `0`, `Z`, `Z^2`, `Z/4`, `Z^2+Z/2+Z/6`,
/// `Q^3`, `F5^2`, or a bare integer k meaning Z/k.
pub fn parse_module(text: &str) -> Result<FgModule, String> {
    let text = text.trim();
    if text == "0" {
        return Ok(FgModule::zero(CoefficientRing::Integers));
    }
    if let Ok(k) = text.parse::<u64>() {
        return Ok(FgModule::cyclic(k));
    }
    let mut ring: Option<CoefficientRing> = None;
    let mut free_rank = 0usize;
    let mut factors: Vec<BigInt> = Vec::new();
    for part in text.split('+') {
        let part = part.trim();
        let (ring_tag, rest) = if let Some(i) = part.find(['^', '/']) {
            (&part[..i], &part[i..])
        } else {
            (part, "")
        };
        let r = parse_ring(ring_tag).map_err(|e| e.to_string())?;
        if let Some(prev) = ring {
            if prev != r {
                return Err(format!("mixed rings in module literal '{text}'"));
            }
        }
        ring = Some(r);
        if let Some(pow) = rest.strip_prefix('^') {
            free_rank += pow
                .parse::<usize>()
                .map_err(|_| format!("bad exponent in '{part}'"))?;
        } else if let Some(div) = rest.strip_prefix('/') {
            if r != CoefficientRing::Integers {
                return Err("torsion factors need the integers".to_string());
            }
            let k: u64 = div.parse().map_err(|_| format!("bad factor in '{part}'"))?;
            if k == 0 {
                return Err("Z/0 is Z; write Z instead".to_string());
            }
            if k > 1 {
                factors.push(BigInt::from(k));
            }
        } else {
            free_rank += 1;
        }
    }
    let ring = ring.ok_or_else(|| format!("empty module literal '{text}'"))?;
    // renormalize arbitrary factor lists into invariant-factor form
    let gens = free_rank + factors.len();
    let mut rel = ExactMatrix::zero(ring, gens, factors.len());
    for (i, f) in factors.iter().enumerate() {
        rel[(i, i)] = ring.from_bigint(f);
    }
    Ok(chaincalc_core::module::cokernel_presentation(&rel))
}

/// Renders a scalar for JSON payloads.
pub fn scalar_string(s: &Scalar) -> String {
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use chaincalc_core::complex::interval_complex;

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn parse_canonical_example() {
        let text = "ring Z\ndegree -1 rank 1\ndegree 0 rank 1\ndiff -1 [[2]]\n";
        let c = parse_complex(text, None).unwrap();
        assert_eq!(c, interval_complex(Z, -1, 2));
    }

    #[test]
    fn round_trip() {
        let c = interval_complex(Z, -1, 2);
        let text = render_complex(&c, Some("resolution"));
        assert_eq!(parse_complex(&text, None).unwrap(), c);
    }

    #[test]
    fn validation_error_names_degree() {
        let text = "ring Z\ndegree 0 rank 1\ndegree 1 rank 1\ndegree 2 rank 1\n\
                    diff 0 [[1]]\ndiff 1 [[1]]\n";
        let err = parse_complex(text, None).unwrap_err();
        assert!(err.message.contains("degree 0"), "{err}");
        assert_eq!(err.line, 5);
    }

    #[test]
    fn empty_document_is_zero_complex() {
        let c = parse_complex("ring Z\n", None).unwrap();
        assert!(c.is_zero_complex());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_complex("ring Z\ndegree 0 rank x\n", None).unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_complex("ring Z\ndegree 0 rank 1\ndiff 0 [[1,]]\n", None).unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_complex("frobnicate\n", None).unwrap_err();
        assert_eq!((err.line, err.col), (1, 1));
    }

    #[test]
    fn missing_ring_needs_default() {
        let text = "degree 0 rank 1\n";
        assert!(parse_complex(text, None).is_err());
        let c = parse_complex(text, Some(Z)).unwrap();
        assert_eq!(c.rank(0), 1);
    }

    #[test]
    fn map_document_round_trip() {
        let text = "ring Z\n\
                    source degree -1 rank 1\nsource degree 0 rank 1\nsource diff -1 [[2]]\n\
                    target degree -1 rank 1\ntarget degree 0 rank 1\ntarget diff -1 [[4]]\n\
                    component -1 [[2]]\ncomponent 0 [[4]]\n";
        let f = parse_chain_map(text, None).unwrap();
        assert_eq!(f.source(), &interval_complex(Z, -1, 2));
        assert_eq!(f.target(), &interval_complex(Z, -1, 4));
        let again = parse_chain_map(&render_chain_map(&f), None).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn map_document_rejects_non_chain_map() {
        let text = "ring Z\n\
                    source degree -1 rank 1\nsource degree 0 rank 1\nsource diff -1 [[2]]\n\
                    target degree -1 rank 1\ntarget degree 0 rank 1\ntarget diff -1 [[4]]\n\
                    component -1 [[1]]\ncomponent 0 [[1]]\n";
        assert!(parse_chain_map(text, None).is_err());
    }

    #[test]
    fn rational_entries() {
        let text = "ring Q\ndegree 0 rank 1\ndegree 1 rank 1\ndiff 0 [[1/2]]\n";
        let c = parse_complex(text, None).unwrap();
        let q = CoefficientRing::Rationals;
        assert_eq!(c.diff(0)[(0, 0)], q.parse_scalar("1/2").unwrap());
    }

    #[test]
    fn module_literals() {
        assert_eq!(parse_module("Z/4").unwrap(), FgModule::cyclic(4));
        assert_eq!(parse_module("6").unwrap(), FgModule::cyclic(6));
        assert_eq!(parse_module("Z").unwrap(), FgModule::free(Z, 1));
        assert_eq!(parse_module("0").unwrap(), FgModule::zero(Z));
        assert_eq!(parse_module("1").unwrap(), FgModule::zero(Z));
        assert_eq!(
            parse_module("Z^2+Z/2+Z/6").unwrap(),
            FgModule::new(Z, 2, vec![BigInt::from(2), BigInt::from(6)])
        );
        // non-chained factors renormalize
        assert_eq!(parse_module("Z/2+Z/3").unwrap(), FgModule::cyclic(6));
        assert_eq!(
            parse_module("Q^3").unwrap(),
            FgModule::free(CoefficientRing::Rationals, 3)
        );
        assert!(parse_module("Q+Z").is_err());
        assert!(parse_module("Q/3").is_err());
    }
}
