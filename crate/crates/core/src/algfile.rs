//! Line-oriented algebra definition files.
//!
//! ```text
//! file    := line*
//! line    := blank | comment | field | gen | diff | elem
//! comment := '#' anything
//! field   := 'field' ('Q' | 'Qi')
//! gen     := 'gen' NAME DEGREE ('even' | 'odd')
//! diff    := 'd' NAME '=' EXPR
//! elem    := 'elem' LABEL '=' EXPR
//! ```
//!
//! `EXPR` uses the element grammar of [`Element::parse`]. Generators without a
//! `d` line have zero differential. A missing `field` line means `Q`.
//! Everything after `#` on a line is ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::dgca::{DgcaError, Presentation};
use crate::field::FieldKind;
use crate::gca::{Algebra, Element, Generator, Parity, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: in {context}: {error}")]
    Expression { line: usize, column: usize, context: String, error: ParseError },
    #[error("line {line}: {error}")]
    Invalid { line: usize, error: DgcaError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    name: String,
    expr: String,
    line: usize,
    column: usize,
}

/// The syntactic content of a definition file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    field: FieldKind,
    generators: Vec<(Generator, usize)>,
    differentials: Vec<Entry>,
    elements: Vec<Entry>,
}

/// A loaded file: the presentation (with `d^2` not yet required to vanish)
/// and the labelled elements in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedFile {
    pub presentation: Presentation,
    pub elements: Vec<(String, Element)>,
}

impl LoadedFile {
    pub fn element(&self, label: &str) -> Option<&Element> {
        self.elements.iter().find(|(l, _)| l == label).map(|(_, e)| e)
    }

    /// A labelled element, or else `text` parsed as an expression.
    pub fn resolve(&self, text: &str) -> Result<Element, ParseError> {
        match self.element(text) {
            Some(e) => Ok(e.clone()),
            None => Element::parse(self.presentation.algebra(), text),
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> AlgFileError {
    AlgFileError::Syntax { line, column, message: message.into() }
}

/// Split `NAME = EXPR` after the keyword, returning the name, the expression
/// and the 1-based column where the expression starts.
fn assignment(rest: &str, rest_col: usize, line: usize) -> Result<(String, String, usize), AlgFileError> {
    let Some(eq) = rest.find('=') else {
        return Err(syntax(line, rest_col, "expected 'NAME = EXPR'"));
    };
    let name = rest[..eq].trim();
    if name.is_empty() || name.split_whitespace().count() != 1 {
        return Err(syntax(line, rest_col, "expected a single name before '='"));
    }
    let after = &rest[eq + 1..];
    let lead = after.len() - after.trim_start().len();
    let expr = after.trim();
    if expr.is_empty() {
        return Err(syntax(line, rest_col + eq + 1, "missing expression after '='"));
    }
    Ok((name.to_string(), expr.to_string(), rest_col + eq + 1 + lead))
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, AlgFileError> {
        let mut file = AlgebraFile {
            field: FieldKind::Rational,
            generators: Vec::new(),
            differentials: Vec::new(),
            elements: Vec::new(),
        };
        let mut seen_field = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let indent = content.len() - trimmed.len();
            let keyword = trimmed.split_whitespace().next().unwrap_or("");
            let rest = &trimmed[keyword.len()..];
            let rest_col = indent + keyword.len() + 1;
            match keyword {
                "field" => {
                    if seen_field {
                        return Err(syntax(line, indent + 1, "duplicate 'field' line"));
                    }
                    seen_field = true;
                    let tag = rest.trim();
                    file.field = FieldKind::from_tag(tag).ok_or_else(|| {
                        syntax(line, rest_col + 1, format!("unknown field {tag:?}; expected Q or Qi"))
                    })?;
                }
                "gen" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(syntax(line, rest_col, "expected 'gen NAME DEGREE even|odd'"));
                    }
                    let degree: u32 =
                        parts[1].parse().map_err(|_| syntax(line, rest_col, format!("bad degree {:?}", parts[1])))?;
                    let parity = Parity::from_name(parts[2]).ok_or_else(|| {
                        syntax(line, rest_col, format!("bad parity {:?}; expected even or odd", parts[2]))
                    })?;
                    file.generators.push((Generator::new(parts[0], degree, parity), line));
                }
                "d" => {
                    let (name, expr, column) = assignment(rest, rest_col, line)?;
                    if file.differentials.iter().any(|e| e.name == name) {
                        return Err(syntax(line, rest_col, format!("second differential for {name:?}")));
                    }
                    file.differentials.push(Entry { name, expr, line, column });
                }
                "elem" => {
                    let (name, expr, column) = assignment(rest, rest_col, line)?;
                    if file.elements.iter().any(|e| e.name == name) {
                        return Err(syntax(line, rest_col, format!("duplicate element label {name:?}")));
                    }
                    file.elements.push(Entry { name, expr, line, column });
                }
                other => return Err(syntax(line, indent + 1, format!("unknown keyword {other:?}"))),
            }
        }
        Ok(file)
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter().map(|(g, _)| g)
    }

    /// Build the algebra, parse every expression and check differential
    /// degrees. `d^2 = 0` is left to the caller.
    pub fn load(&self) -> Result<LoadedFile, AlgFileError> {
        let gens: Vec<Generator> = self.generators().cloned().collect();
        let first_line = self.generators.first().map_or(1, |g| g.1);
        let alg = Algebra::new(self.field, gens).map_err(|e| {
            let line = match &e {
                crate::gca::GcaError::DuplicateName(n)
                | crate::gca::GcaError::InvalidName(n)
                | crate::gca::GcaError::DegreeZero(n) => self
                    .generators
                    .iter()
                    .filter(|(g, _)| &g.name == n)
                    .map(|(_, l)| *l)
                    .next_back()
                    .unwrap_or(first_line),
                _ => first_line,
            };
            AlgFileError::Invalid { line, error: e.into() }
        })?;
        let parse = |entry: &Entry, context: String| {
            Element::parse(&alg, &entry.expr).map_err(|error| AlgFileError::Expression {
                line: entry.line,
                column: entry.column + error.offset,
                context,
                error,
            })
        };
        let mut d = vec![Element::zero(&alg); alg.len()];
        for entry in &self.differentials {
            let Some(id) = alg.id_of(&entry.name) else {
                return Err(syntax(
                    entry.line,
                    entry.column,
                    format!("differential for unknown generator {:?}", entry.name),
                ));
            };
            d[id] = parse(entry, format!("d {}", entry.name))?;
        }
        let presentation = Presentation::new(alg.clone(), d).map_err(|error| {
            let line = match &error {
                DgcaError::DegreeMismatch { generator, .. } => {
                    self.differentials.iter().find(|e| &e.name == generator).map_or(first_line, |e| e.line)
                }
                _ => first_line,
            };
            AlgFileError::Invalid { line, error }
        })?;
        let mut elements = Vec::new();
        for entry in &self.elements {
            elements.push((entry.name.clone(), parse(entry, format!("elem {}", entry.name))?));
        }
        Ok(LoadedFile { presentation, elements })
    }
}

pub fn load(text: &str) -> Result<LoadedFile, AlgFileError> {
    AlgebraFile::parse(text)?.load()
}

/// Canonical text for a presentation and labelled elements; [`load`]
/// reproduces an identical presentation.
pub fn dump(p: &Presentation, elements: &[(String, Element)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", p.algebra().field().tag());
    for g in p.generators() {
        let _ = writeln!(out, "gen {} {} {}", g.name, g.degree, g.parity.name());
    }
    for (g, dg) in p.generators().iter().zip(p.differentials()) {
        if !dg.is_zero() {
            let _ = writeln!(out, "d {} = {}", g.name, dg);
        }
    }
    for (label, e) in elements {
        let _ = writeln!(out, "elem {label} = {e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BTFOLD: &str = "# the T-fold\nfield Q\ngen x2c 2 even\ngen x2t 2 even\ngen y3 3 even\nd y3 = x2c*x2t\nelem h3 = y3  # trivialization\n";

    #[test]
    fn loads_btfold() {
        let f = load(BTFOLD).unwrap();
        assert_eq!(f.presentation, crate::tduality::btfold());
        assert_eq!(f.element("h3").unwrap(), &f.presentation.gen("y3").unwrap());
        assert_eq!(f.resolve("x2c + x2t").unwrap(), f.presentation.element("x2c + x2t").unwrap());
    }

    #[test]
    fn dump_round_trips() {
        let f = load(BTFOLD).unwrap();
        let text = dump(&f.presentation, &f.elements);
        assert_eq!(load(&text).unwrap(), f);
    }

    #[test]
    fn errors_carry_positions() {
        let e = load("field Q\ngen x 2 even\nd x = 2*x +* x\n").unwrap_err();
        match e {
            AlgFileError::Expression { line: 3, column, .. } => assert!(column > 7, "{column}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(load("field R\n"), Err(AlgFileError::Syntax { line: 1, .. })));
        assert!(matches!(load("gen x 2 neutral\n"), Err(AlgFileError::Syntax { line: 1, .. })));
        assert!(matches!(load("frobnicate\n"), Err(AlgFileError::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(load("gen x 2 even\nd y = x\n"), Err(AlgFileError::Syntax { line: 2, .. })));
        assert!(matches!(load("gen x 0 even\n"), Err(AlgFileError::Invalid { line: 1, .. })));
    }

    #[test]
    fn degree_violation_is_reported_at_its_line() {
        let text = "gen x2c 2 even\ngen x2t 2 even\ngen y3 3 even\nd y3 = x2c\n";
        match load(text) {
            Err(AlgFileError::Invalid { line: 4, error: DgcaError::DegreeMismatch { .. } }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nonzero_square_is_loaded_but_unverified() {
        let f = load("gen a2 2 even\ngen b3 3 even\nd a2 = b3\nd b3 = a2^2\n");
        let f = f.unwrap_or_else(|e| panic!("{e}"));
        assert!(f.presentation.verify_d_squared().is_err());
    }
}
