//! The `.alg` text format and the JSON report shape.
//!
//! ```text
//! # comment
//! algebra B2
//! profile theyting
//! elements 0 1
//! leq 0<=1
//! const c 0
//! op1 G 0 1
//! op2 imp
//! 1 1
//! 0 1
//! ```
//!
//! `op2 imp: 1 1 ; 0 1` is accepted as a one-line form of the same table.
//! Emission is canonical: `algebra`, `profile`, `elements`, `leq`, then
//! constants, unary and binary tables, each group sorted by symbol.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, OpTable, Profile};
use crate::error::Error;
use crate::lattice::build_lattice;
use crate::report::AxiomReport;

/// A parsed description; tables hold element indices in `elements` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDocument {
    pub name: String,
    pub profile: Profile,
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
    pub ops: BTreeMap<String, OpTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: found {found}, expected one of {expected:?}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub found: String,
    pub expected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: unknown element `{name}`")]
pub struct ResolveError {
    pub line: usize,
    pub col: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: table `{symbol}` expected {expected} entries, found {found}")]
pub struct ShapeError {
    pub line: usize,
    pub symbol: String,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("resolve error: {0}")]
    Resolve(#[from] ResolveError),
    #[error("shape error: {0}")]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.text)
    }
}

fn tokens(line_no: usize, line: &str) -> Vec<Tok<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Tok {
                    text: &body[s..i],
                    line: line_no,
                    col: body[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn expected(found: String, line: usize, col: usize, what: &[&str]) -> ParseError {
    ParseError {
        line,
        col,
        found,
        expected: what.iter().map(|s| s.to_string()).collect(),
    }
}

fn unexpected(t: &Tok<'_>, what: &[&str]) -> ParseError {
    expected(t.to_string(), t.line, t.col, what)
}

const KEYWORDS: [&str; 7] = ["algebra", "profile", "elements", "leq", "const", "op1", "op2"];

struct Parser<'a> {
    lines: Vec<Vec<Tok<'a>>>,
    pos: usize,
    name: Option<String>,
    profile: Option<Profile>,
    elements: Option<Vec<String>>,
    order: Vec<(String, String)>,
    ops: BTreeMap<String, OpTable>,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn index(&self, t: &Tok<'_>, text: &str) -> Result<usize, SpecError> {
        let elements = self.elements.as_ref().expect("checked by caller");
        elements.iter().position(|e| e == text).ok_or_else(|| {
            ResolveError {
                line: t.line,
                col: t.col,
                name: text.to_string(),
            }
            .into()
        })
    }

    fn need_elements(&self, t: &Tok<'_>) -> Result<usize, SpecError> {
        match &self.elements {
            Some(e) => Ok(e.len()),
            None => Err(unexpected(t, &["elements"]).into()),
        }
    }

    fn single(&self, head: &Tok<'_>, rest: &[Tok<'a>], what: &str) -> Result<Tok<'a>, SpecError> {
        match rest {
            [t] => Ok(*t),
            [] => Err(expected("end of line".into(), head.line, head.col + head.text.len(), &[what]).into()),
            [_, extra, ..] => Err(unexpected(extra, &["end of line"]).into()),
        }
    }

    fn symbol(&mut self, t: &Tok<'_>) -> Result<String, SpecError> {
        let s = t.text.strip_suffix(':').unwrap_or(t.text);
        if s.is_empty() {
            return Err(unexpected(t, &["<symbol>"]).into());
        }
        if self.ops.contains_key(s) {
            return Err(unexpected(t, &["<new symbol>"]).into());
        }
        Ok(s.to_string())
    }

    fn entries(&self, toks: &[Tok<'_>]) -> Result<Vec<usize>, SpecError> {
        toks.iter().map(|t| self.index(t, t.text)).collect()
    }

    fn parse(mut self) -> Result<SpecDocument, SpecError> {
        while self.pos < self.lines.len() {
            let line = std::mem::take(&mut self.lines[self.pos]);
            self.pos += 1;
            let Some((head, rest)) = line.split_first() else {
                continue;
            };
            self.last_line = head.line;
            match head.text {
                "algebra" if self.name.is_some() => {
                    return Err(unexpected(head, &KEYWORDS[2..]).into());
                }
                "profile" if self.profile.is_some() => {
                    return Err(unexpected(head, &KEYWORDS[2..]).into());
                }
                "algebra" => self.name = Some(self.single(head, rest, "<name>")?.text.to_string()),
                "profile" => {
                    let t = self.single(head, rest, "<profile>")?;
                    let p = t.text.parse::<Profile>().map_err(|_| {
                        let ids: Vec<&str> = Profile::ALL.iter().map(|p| p.id()).collect();
                        unexpected(&t, &ids)
                    })?;
                    self.profile = Some(p);
                }
                "elements" => {
                    if self.elements.is_some() {
                        return Err(unexpected(head, &["leq", "const", "op1", "op2"]).into());
                    }
                    if rest.is_empty() {
                        return Err(expected("end of line".into(), head.line, head.col + 8, &["<element>"]).into());
                    }
                    let names: Vec<String> = rest.iter().map(|t| t.text.to_string()).collect();
                    for (i, t) in rest.iter().enumerate() {
                        if names[..i].contains(&names[i]) {
                            return Err(unexpected(t, &["<new element>"]).into());
                        }
                    }
                    self.elements = Some(names);
                }
                "leq" => {
                    self.need_elements(head)?;
                    for t in rest {
                        let Some((a, b)) = t.text.split_once("<=") else {
                            return Err(unexpected(t, &["<a><=<b>"]).into());
                        };
                        let ia = self.index(t, a)?;
                        let ib = self.index(t, b)?;
                        let names = self.elements.as_ref().unwrap();
                        self.order.push((names[ia].clone(), names[ib].clone()));
                    }
                }
                "const" => {
                    self.need_elements(head)?;
                    let (s, v) = match rest {
                        [s, v] => (s, v),
                        [s] => return Err(expected("end of line".into(), s.line, s.col + s.text.len(), &["<element>"]).into()),
                        [] => return Err(expected("end of line".into(), head.line, head.col + 5, &["<symbol>"]).into()),
                        [_, _, extra, ..] => return Err(unexpected(extra, &["end of line"]).into()),
                    };
                    let sym = self.symbol(s)?;
                    let v = self.index(v, v.text)?;
                    self.ops.insert(sym, OpTable::Constant(v));
                }
                "op1" => {
                    let n = self.need_elements(head)?;
                    let Some((s, vals)) = rest.split_first() else {
                        return Err(expected("end of line".into(), head.line, head.col + 3, &["<symbol>"]).into());
                    };
                    let sym = self.symbol(s)?;
                    if vals.len() != n {
                        return Err(ShapeError {
                            line: head.line,
                            symbol: sym,
                            expected: n,
                            found: vals.len(),
                        }
                        .into());
                    }
                    let t = self.entries(vals)?;
                    self.ops.insert(sym, OpTable::Unary(t));
                }
                "op2" => {
                    let n = self.need_elements(head)?;
                    let Some((s, inline)) = rest.split_first() else {
                        return Err(expected("end of line".into(), head.line, head.col + 3, &["<symbol>"]).into());
                    };
                    let sym = self.symbol(s)?;
                    let rows: Vec<(usize, Vec<Tok<'a>>)> = if inline.is_empty() {
                        let mut rows = Vec::with_capacity(n);
                        while rows.len() < n {
                            let Some(row) = self.lines.get_mut(self.pos) else {
                                break;
                            };
                            let row = std::mem::take(row);
                            self.pos += 1;
                            if let Some(first) = row.first() {
                                if KEYWORDS.contains(&first.text) {
                                    self.pos -= 1;
                                    self.lines[self.pos] = row;
                                    break;
                                }
                                rows.push((first.line, row));
                            }
                        }
                        rows
                    } else {
                        inline
                            .split(|t| t.text == ";")
                            .map(|r| (head.line, r.to_vec()))
                            .collect()
                    };
                    if rows.len() != n {
                        return Err(ShapeError {
                            line: rows.last().map_or(head.line, |r| r.0),
                            symbol: sym,
                            expected: n,
                            found: rows.len(),
                        }
                        .into());
                    }
                    let mut table = Vec::with_capacity(n * n);
                    for (line, row) in &rows {
                        if row.len() != n {
                            return Err(ShapeError {
                                line: *line,
                                symbol: sym,
                                expected: n,
                                found: row.len(),
                            }
                            .into());
                        }
                        table.extend(self.entries(row)?);
                    }
                    self.ops.insert(sym, OpTable::Binary(table));
                }
                _ => return Err(unexpected(head, &KEYWORDS).into()),
            }
        }
        let eof = |what: &str| expected("end of input".into(), self.last_line + 1, 1, &[what]);
        let name = self.name.clone().ok_or_else(|| eof("algebra"))?;
        let profile = self.profile.ok_or_else(|| eof("profile"))?;
        let elements = self.elements.clone().ok_or_else(|| eof("elements"))?;
        Ok(SpecDocument {
            name,
            profile,
            elements,
            order: self.order,
            ops: self.ops,
        })
    }
}

pub fn parse_spec(text: &str) -> Result<SpecDocument, SpecError> {
    let lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokens(i + 1, l))
        .collect();
    Parser {
        lines,
        pos: 0,
        name: None,
        profile: None,
        elements: None,
        order: Vec::new(),
        ops: BTreeMap::new(),
        last_line: 0,
    }
    .parse()
}

pub fn emit_spec(doc: &SpecDocument) -> String {
    let mut out = String::new();
    let name = |i: usize| doc.elements[i].as_str();
    out.push_str(&format!("algebra {}\n", doc.name));
    out.push_str(&format!("profile {}\n", doc.profile));
    out.push_str(&format!("elements {}\n", doc.elements.join(" ")));
    if !doc.order.is_empty() {
        let pairs: Vec<String> = doc.order.iter().map(|(a, b)| format!("{a}<={b}")).collect();
        out.push_str(&format!("leq {}\n", pairs.join(" ")));
    }
    for arity in 0..3 {
        for (s, t) in doc.ops.iter().filter(|(_, t)| t.arity() == arity) {
            match t {
                OpTable::Constant(c) => out.push_str(&format!("const {s} {}\n", name(*c))),
                OpTable::Unary(u) => {
                    let row: Vec<&str> = u.iter().map(|&x| name(x)).collect();
                    out.push_str(&format!("op1 {s} {}\n", row.join(" ")));
                }
                OpTable::Binary(b) => {
                    out.push_str(&format!("op2 {s}\n"));
                    for row in b.chunks(doc.elements.len().max(1)) {
                        let row: Vec<&str> = row.iter().map(|&x| name(x)).collect();
                        out.push_str(&row.join(" "));
                        out.push('\n');
                    }
                }
            }
        }
    }
    out
}

impl SpecDocument {
    /// Builds the lattice and tables and checks the profile's signature.
    pub fn to_algebra(&self) -> Result<Algebra, Error> {
        let lattice = build_lattice(&self.elements, &self.order)?;
        let mut a = Algebra::new(self.name.clone(), lattice, self.profile);
        for (s, t) in &self.ops {
            a.set_op(s.clone(), t.clone())?;
        }
        a.validate_profile()?;
        Ok(a)
    }

    /// The document of `a`, with the order given by its covering pairs.
    pub fn from_algebra(a: &Algebra) -> SpecDocument {
        let lat = a.lattice();
        SpecDocument {
            name: a.name().to_string(),
            profile: a.profile(),
            elements: lat.names().to_vec(),
            order: lat
                .covers()
                .into_iter()
                .map(|(x, y)| (lat.name(x).to_string(), lat.name(y).to_string()))
                .collect(),
            ops: a.ops().clone(),
        }
    }
}

/// Parses and builds in one step.
pub fn parse_algebra(text: &str) -> Result<Algebra, SpecError> {
    Ok(parse_spec(text)?.to_algebra()?)
}

pub fn emit_algebra(a: &Algebra) -> String {
    emit_spec(&SpecDocument::from_algebra(a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonAxiom {
    pub id: String,
    pub holds: bool,
    /// Element names of the violating tuple; empty when the axiom holds.
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonSummary {
    pub checked: usize,
    pub failed: usize,
}

/// `{ algebra, profile, axioms: [{id, holds, witness}], summary: {checked, failed} }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonReport {
    pub algebra: String,
    pub profile: String,
    pub axioms: Vec<JsonAxiom>,
    pub summary: JsonSummary,
}

impl JsonReport {
    pub fn new(a: &Algebra, profile: Profile, r: &AxiomReport) -> Self {
        let axioms: Vec<JsonAxiom> = r
            .outcomes()
            .iter()
            .map(|o| JsonAxiom {
                id: o.id.clone(),
                holds: o.holds,
                witness: o
                    .witness
                    .iter()
                    .flatten()
                    .map(|&x| a.element_name(x).to_string())
                    .collect(),
            })
            .collect();
        JsonReport {
            algebra: a.name().to_string(),
            profile: profile.id().to_string(),
            summary: JsonSummary {
                checked: axioms.len(),
                failed: axioms.iter().filter(|x| !x.holds).count(),
            },
            axioms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const B2: &str = "algebra B2\nprofile dli\nelements 0 1\nleq 0<=1\nop2 imp: 1 1 ; 0 1\n";

    #[test]
    fn inline_table() {
        let d = parse_spec(B2).unwrap();
        assert_eq!(d.ops["imp"], OpTable::Binary(vec![1, 1, 0, 1]));
        assert_eq!(d.elements, ["0", "1"]);
        assert!(d.to_algebra().is_ok());
    }

    #[test]
    fn block_table_and_comments() {
        let text = "# fixture\nalgebra B2 # name\nprofile dli\nelements 0 1\nleq 0<=1\nop2 imp\n1 1\n\n0 1\n";
        assert_eq!(parse_spec(text).unwrap(), parse_spec(B2).unwrap());
    }

    #[test]
    fn short_row_is_shape_error() {
        let text = "algebra B2\nprofile dli\nelements 0 1\nleq 0<=1\nop2 imp\n1 1 1\n0 1\n";
        let SpecError::Shape(e) = parse_spec(text).unwrap_err() else {
            panic!("expected a shape error")
        };
        assert_eq!((e.line, e.expected, e.found), (6, 2, 3));
    }

    #[test]
    fn undeclared_name_is_resolve_error() {
        let text = "algebra X\nprofile dl\nelements 0 m 1\nleq 0<=m m<=q\n";
        let SpecError::Resolve(e) = parse_spec(text).unwrap_err() else {
            panic!("expected a resolve error")
        };
        assert_eq!(e.name, "q");
        assert_eq!((e.line, e.col), (4, 10));
    }

    #[test]
    fn unknown_keyword_lists_expected() {
        let SpecError::Parse(e) = parse_spec("algebra X\nbogus 1\n").unwrap_err() else {
            panic!("expected a parse error")
        };
        assert_eq!((e.line, e.col), (2, 1));
        assert!(e.expected.contains(&"op2".to_string()));
    }

    #[test]
    fn missing_profile_at_eof() {
        let SpecError::Parse(e) = parse_spec("algebra X\nelements 0\n").unwrap_err() else {
            panic!("expected a parse error")
        };
        assert_eq!(e.expected, ["profile"]);
    }

    #[test]
    fn round_trip_fixtures() {
        for a in fixtures::all() {
            let text = emit_algebra(&a);
            let doc = parse_spec(&text).unwrap();
            assert_eq!(doc, SpecDocument::from_algebra(&a));
            assert_eq!(emit_spec(&doc), text);
            assert_eq!(doc.to_algebra().unwrap(), a);
        }
    }

    #[test]
    fn canonical_b2() {
        assert_eq!(
            emit_algebra(&fixtures::b2()),
            "algebra B2\nprofile theyting\nelements 0 1\nleq 0<=1\n\
             op1 F 0 1\nop1 G 0 1\nop1 H 0 1\nop1 P 0 1\nop2 imp\n1 1\n0 1\n"
        );
    }

    #[test]
    fn kleene_profile_rejects_f() {
        let text = "algebra K\nprofile kleene\nelements 0 1\nleq 0<=1\nop1 neg 1 0\nop1 F 0 1\n";
        assert!(matches!(
            parse_algebra(text),
            Err(SpecError::Invalid(Error::RejectedOperation { .. }))
        ));
    }

    #[test]
    fn json_report_counts() {
        let mut a = fixtures::b2();
        a.set_op("imp", OpTable::Binary(vec![1, 1, 1, 1])).unwrap();
        let r = crate::check_profile(&a, Profile::DliPlus).unwrap();
        let j = JsonReport::new(&a, Profile::DliPlus, &r);
        assert_eq!(j.summary, JsonSummary { checked: 5, failed: 1 });
        let i5 = j.axioms.iter().find(|x| x.id == "I5").unwrap();
        assert_eq!(i5.witness, ["1", "0"]);
    }
}
