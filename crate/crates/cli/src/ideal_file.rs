//! The ideal file format.
//!
//! ```text
//! # twisted cubic
//! ring: x0, x1, x2, x3 over Fp:2147483647
//! degree: 2
//! ideal: x0*x2 - x1^2, x0*x3 - x1*x2,
//!        x1*x3 - x2^2
//! ```
//!
//! `#` starts a comment. The `ideal:` value may continue on the following
//! lines. `over <field>` is optional; `<field>` is `Q` or `Fp:<prime>`.

use std::fmt;
use std::str::FromStr;

use segreta::kernel::{parse_polynomial_list, IntegerPolynomial, PrimeField, MAX_VARS};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .ok_or_else(|| format!("unknown field '{s}', expected Q or Fp:<prime>"))?;
        let p: u64 = p.parse().map_err(|_| format!("bad modulus '{p}'"))?;
        PrimeField::new(p).map_err(|e| e.to_string())?;
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IdealFileErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("generator {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("declared degree {declared} but the generators have maximal degree {found}")]
    DegreeMismatch { declared: u32, found: u32 },
    #[error("missing '{0}:' line")]
    Missing(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct IdealFileError {
    pub line: usize,
    pub column: usize,
    pub kind: IdealFileErrorKind,
}

fn err(line: usize, column: usize, kind: IdealFileErrorKind) -> IdealFileError {
    IdealFileError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> IdealFileError {
    err(line, column, IdealFileErrorKind::Syntax(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub names: Vec<String>,
    pub field: Option<FieldSpec>,
    pub degree: u32,
    pub generators: Vec<IntegerPolynomial>,
}

impl IdealFile {
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Text that parses back to the same file.
    pub fn render(&self) -> String {
        let mut out = format!("ring: {}", self.names.join(", "));
        if let Some(f) = self.field {
            out.push_str(&format!(" over {f}"));
        }
        out.push_str(&format!("\ndegree: {}\nideal: ", self.degree));
        let gens: Vec<String> = self.generators.iter().map(|g| g.format(&self.names)).collect();
        out.push_str(&gens.join(",\n       "));
        out.push('\n');
        out
    }
}

/// A stretch of the `ideal:` value and where it sits in the file.
struct Segment {
    start: usize,
    line: usize,
    column: usize,
}

fn locate(segments: &[Segment], offset: usize) -> (usize, usize) {
    let seg = segments
        .iter()
        .rev()
        .find(|s| s.start <= offset)
        .expect("at least one segment");
    (seg.line, seg.column + offset - seg.start)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn key_of(line: &str) -> Option<(&str, usize)> {
    let trimmed = line.trim_start();
    let indent = line.len() - trimmed.len();
    for key in ["ring", "degree", "ideal"] {
        if let Some(rest) = trimmed.strip_prefix(key) {
            if rest.trim_start().starts_with(':') {
                let colon = indent + key.len() + (rest.len() - rest.trim_start().len());
                return Some((key, colon + 1));
            }
        }
    }
    None
}

pub fn parse_ideal(text: &str) -> Result<IdealFile, IdealFileError> {
    let mut ring: Option<(Vec<String>, Option<FieldSpec>)> = None;
    let mut degree: Option<(u32, usize)> = None;
    let mut ideal_text = String::new();
    let mut segments: Vec<Segment> = Vec::new();
    let mut ideal_line: Option<usize> = None;
    let mut in_ideal = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap();
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, value_at)) = key_of(line) else {
            if in_ideal {
                ideal_text.push('\n');
                segments.push(Segment {
                    start: ideal_text.len(),
                    line: lineno,
                    column: 1,
                });
                ideal_text.push_str(line);
                continue;
            }
            let col = line.len() - line.trim_start().len() + 1;
            return Err(syntax(lineno, col, "expected 'ring:', 'degree:' or 'ideal:'"));
        };
        in_ideal = false;
        let value = &line[value_at..];
        let value_col = value_at + 1;
        match key {
            "ring" => {
                if ring.is_some() {
                    return Err(syntax(lineno, 1, "duplicate 'ring:' line"));
                }
                ring = Some(parse_ring(value, lineno, value_col)?);
            }
            "degree" => {
                if degree.is_some() {
                    return Err(syntax(lineno, 1, "duplicate 'degree:' line"));
                }
                let t = value.trim();
                let col = value_col + value.len() - value.trim_start().len();
                match t.parse::<u32>() {
                    Ok(d) if d > 0 => degree = Some((d, lineno)),
                    _ => return Err(syntax(lineno, col, format!("expected a positive degree, found '{t}'"))),
                }
            }
            _ => {
                if ideal_line.is_some() {
                    return Err(syntax(lineno, 1, "duplicate 'ideal:' line"));
                }
                ideal_line = Some(lineno);
                in_ideal = true;
                segments.push(Segment {
                    start: 0,
                    line: lineno,
                    column: value_col,
                });
                ideal_text.push_str(value);
            }
        }
    }

    let (names, field) = ring.ok_or(err(1, 1, IdealFileErrorKind::Missing("ring")))?;
    let (declared, degree_line) = degree.ok_or(err(1, 1, IdealFileErrorKind::Missing("degree")))?;
    ideal_line.ok_or(err(1, 1, IdealFileErrorKind::Missing("ideal")))?;

    let parsed = parse_polynomial_list(&ideal_text, &names).map_err(|e| {
        let (line, column) = locate(&segments, e.offset);
        let kind = match e.message.strip_prefix("unknown variable '") {
            Some(rest) => IdealFileErrorKind::UnknownVariable(rest.trim_end_matches('\'').to_string()),
            None => IdealFileErrorKind::Syntax(e.message),
        };
        err(line, column, kind)
    })?;

    let mut max_degree = 0;
    let mut generators = Vec::with_capacity(parsed.len());
    for (i, (offset, g)) in parsed.into_iter().enumerate() {
        let at = offset + ideal_text[offset..].len() - ideal_text[offset..].trim_start().len();
        let (line, column) = locate(&segments, at);
        if g.is_zero() {
            return Err(err(line, column, IdealFileErrorKind::ZeroGenerator(i + 1)));
        }
        let Some(d) = g.homogeneous_degree() else {
            return Err(err(line, column, IdealFileErrorKind::Inhomogeneous(i + 1)));
        };
        max_degree = max_degree.max(d);
        generators.push(g);
    }
    if max_degree != declared {
        return Err(err(
            degree_line,
            1,
            IdealFileErrorKind::DegreeMismatch {
                declared,
                found: max_degree,
            },
        ));
    }
    Ok(IdealFile {
        names,
        field,
        degree: declared,
        generators,
    })
}

fn parse_ring(
    value: &str,
    line: usize,
    value_col: usize,
) -> Result<(Vec<String>, Option<FieldSpec>), IdealFileError> {
    let (vars, field) = match value.find(" over ") {
        Some(at) => (&value[..at], Some((&value[at + 6..], at + 6))),
        None => (value, None),
    };
    let mut names: Vec<String> = Vec::new();
    let mut col = value_col;
    for piece in vars.split(',') {
        for word in piece.split_whitespace() {
            let at = col + piece.find(word).unwrap_or(0);
            if !is_identifier(word) {
                return Err(syntax(line, at, format!("'{word}' is not a variable name")));
            }
            if names.iter().any(|n| n == word) {
                return Err(syntax(line, at, format!("variable '{word}' declared twice")));
            }
            names.push(word.to_string());
        }
        col += piece.len() + 1;
    }
    if names.len() < 2 || names.len() > MAX_VARS {
        return Err(syntax(
            line,
            value_col,
            format!("need between 2 and {MAX_VARS} variables, found {}", names.len()),
        ));
    }
    let field = match field {
        None => None,
        Some((f, at)) => Some(f.parse::<FieldSpec>().map_err(|m| syntax(line, value_col + at, m))?),
    };
    Ok((names, field))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
# monomial scheme
ring: x0, x1, x2, x3 over Fp:2147483647
degree: 8
ideal: x1^2*x2^6, x1^3*x2^4, x1^4*x2^3, x1^5*x2, x1^7
";

    #[test]
    fn parses_the_monomial_fixture() {
        let f = parse_ideal(EXAMPLE).unwrap();
        assert_eq!(f.names, ["x0", "x1", "x2", "x3"]);
        assert_eq!(f.field, Some(FieldSpec::Prime(2147483647)));
        assert_eq!(f.degree, 8);
        assert_eq!(f.generators.len(), 5);
    }

    #[test]
    fn hyperplane_without_field() {
        let f = parse_ideal("ring: x0 x1 x2\ndegree: 1\nideal: x0\n").unwrap();
        assert_eq!(f.field, None);
        assert_eq!(f.generators.len(), 1);
    }

    #[test]
    fn continuation_lines_and_comments() {
        let text = "ring: a, b, c # names\ndegree: 2\nideal: a*b,\n   # nothing here\n  b^2 - c*a\n";
        let f = parse_ideal(text).unwrap();
        assert_eq!(f.generators.len(), 2);
        assert_eq!(f.generators[1].format(&f.names), "b^2 - a*c");
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let e = parse_ideal("ring: x0, x1, x2\ndegree: 3\nideal: x0^2 - x1*x2\n").unwrap_err();
        assert_eq!(
            e.kind,
            IdealFileErrorKind::DegreeMismatch {
                declared: 3,
                found: 2
            }
        );
        assert_eq!(e.line, 2);
    }

    #[test]
    fn errors_point_at_the_offending_text() {
        let e = parse_ideal("ring: x0, x1\ndegree: 2\nideal: x0^2,\n  x0*y1\n").unwrap_err();
        assert_eq!(e.kind, IdealFileErrorKind::UnknownVariable("y1".into()));
        assert_eq!((e.line, e.column), (4, 6));

        let e = parse_ideal("ring: x0, x1\ndegree: 2\nideal: x0^2, x0 + x1^2\n").unwrap_err();
        assert_eq!(e.kind, IdealFileErrorKind::Inhomogeneous(2));
        assert_eq!((e.line, e.column), (3, 14));

        let e = parse_ideal("ring: x0, x1\ndegree: 2\nideal: x0^2 +* x1\n").unwrap_err();
        assert!(matches!(e.kind, IdealFileErrorKind::Syntax(_)));
        assert_eq!(e.line, 3);

        let e = parse_ideal("ring: x0, x0\ndegree: 1\nideal: x0\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));

        let e = parse_ideal("ring: x0, x1 over Fp:12\ndegree: 1\nideal: x0\n").unwrap_err();
        assert_eq!(e.line, 1);

        let e = parse_ideal("ring: x0, x1\nideal: x0\n").unwrap_err();
        assert_eq!(e.kind, IdealFileErrorKind::Missing("degree"));

        let e = parse_ideal("ring: x0, x1\ndegree: 1\nideal: x0 - x0\n").unwrap_err();
        assert_eq!(e.kind, IdealFileErrorKind::ZeroGenerator(1));

        let e = parse_ideal("rings: x0\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn render_round_trips() {
        let text = "ring: x, y, z over Q\ndegree: 3\nideal: y^2*z - x^2*(x + z), -123456789012345678901*x^3\n";
        let f = parse_ideal(text).unwrap();
        let again = parse_ideal(&f.render()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn field_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp:101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(101));
        assert!("Fp:100".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "Fp:7");
    }
}
