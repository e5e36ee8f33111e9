use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jetcalc::{jet_table, AffinePresentation};
use crate::polyring::{is_prime, Field, Polynomial, Scalar, VariableTable};

use super::parse::parse_expr;
use super::print::format_polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPoint {
    pub label: String,
    pub coords: Vec<Scalar>,
}

/// An arc given by one polynomial in `t` per ring variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedArc {
    pub label: String,
    pub images: Vec<Polynomial>,
}

/// Generators of a closed subset of some jet scheme, over the jet table at
/// `level` (the highest jet level mentioned).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedHint {
    pub label: String,
    pub level: usize,
    pub gens: Vec<Polynomial>,
}

/// A parsed system file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDocument {
    pub field: Field,
    pub ring: Arc<VariableTable>,
    pub generators: Vec<Polynomial>,
    pub points: Vec<NamedPoint>,
    pub arcs: Vec<NamedArc>,
    pub hints: Vec<NamedHint>,
}

impl SystemDocument {
    pub fn presentation(&self) -> Result<AffinePresentation> {
        AffinePresentation::new(&self.ring, self.field, self.generators.clone())
    }

    pub fn point(&self, label: &str) -> Option<&NamedPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    pub fn arc(&self, label: &str) -> Option<&NamedArc> {
        self.arcs.iter().find(|a| a.label == label)
    }

    pub fn hint(&self, label: &str) -> Option<&NamedHint> {
        self.hints.iter().find(|h| h.label == label)
    }

    /// The table of the arc parameter.
    pub fn arc_table() -> Arc<VariableTable> {
        VariableTable::from_names(&["t"]).expect("single name")
    }
}

fn perr<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column, message: message.into() })
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits on commas, yielding each piece with its 1-based column.
fn split_list(body: &str, col0: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in body.char_indices() {
        if c == ',' {
            out.push((&body[start..i], col0 + start));
            start = i + 1;
        }
    }
    out.push((&body[start..], col0 + start));
    out
}

enum Section {
    Preamble,
    Ideal,
    Trailer,
}

/// Parses a system file.
///
/// ```text
/// field Q            # or: field Fp 101
/// ring x y z
/// ideal:
/// x*y + z^2          # one generator per line
/// point origin: 0, 0, 0
/// arc a: t, t^2, 0
/// hint Z: x, y(1)
/// ```
pub fn parse_system(src: &str) -> Result<SystemDocument> {
    let mut field = Field::Rational;
    let mut field_seen = false;
    let mut ring: Option<Arc<VariableTable>> = None;
    let mut generators = Vec::new();
    let mut points = Vec::new();
    let mut arcs = Vec::new();
    let mut hints = Vec::new();
    let mut labels = BTreeSet::new();
    let mut section = Section::Preamble;
    let mut last_line = 0;

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let text = raw.split('#').next().unwrap_or("");
        let trimmed = text.trim_start();
        let indent = text.len() - trimmed.len();
        let content = trimmed.trim_end();
        if content.is_empty() {
            continue;
        }
        let col0 = indent + 1;
        let (keyword, rest) = match content.find(char::is_whitespace) {
            Some(i) => (&content[..i], &content[i..]),
            None => (content, ""),
        };

        if matches!(keyword, "point" | "arc" | "hint") {
            let kind = keyword;
            if let Some(colon) = rest.find(':') {
                let label = rest[..colon].trim();
                if is_ident(label) {
                    let Some(table) = ring.clone() else {
                        return perr(line, col0, format!("{kind} before ring declaration"));
                    };
                    if !labels.insert(label.to_string()) {
                        return perr(line, col0 + keyword.len() + 1, format!("duplicate label {label}"));
                    }
                    let body_off = keyword.len() + colon + 1;
                    let body = &content[body_off..];
                    let items = split_list(body, col0 + body_off);
                    section = Section::Trailer;
                    match kind {
                        "point" => points.push(parse_point(label, &items, &table, field, line)?),
                        "arc" => arcs.push(parse_arc(label, &items, &table, field, line)?),
                        _ => hints.push(parse_hint(label, &items, &table, field, line)?),
                    }
                    continue;
                }
            }
        }

        match section {
            Section::Preamble => match keyword {
                "field" => {
                    if field_seen || ring.is_some() {
                        return perr(line, col0, "field must be declared once, before ring");
                    }
                    field_seen = true;
                    let words: Vec<&str> = rest.split_whitespace().collect();
                    field = match words.as_slice() {
                        ["Q"] => Field::Rational,
                        ["Fp", p] => {
                            let pcol = col0 + content.rfind(p).unwrap_or(0);
                            let p: u64 = match p.parse() {
                                Ok(p) => p,
                                Err(_) => return perr(line, pcol, format!("invalid modulus {p}")),
                            };
                            if !is_prime(p) {
                                return perr(line, pcol, format!("modulus {p} is not prime"));
                            }
                            Field::Prime(p)
                        }
                        _ => return perr(line, col0 + keyword.len() + 1, "expected 'Q' or 'Fp <prime>'"),
                    };
                }
                "ring" => {
                    if ring.is_some() {
                        return perr(line, col0, "ring declared twice");
                    }
                    let mut names: Vec<&str> = Vec::new();
                    let mut offset = keyword.len();
                    for w in rest.split_whitespace() {
                        let at = content[offset..].find(w).expect("word of rest") + offset;
                        offset = at + w.len();
                        if !is_ident(w) {
                            return perr(line, col0 + at, format!("invalid variable name {w}"));
                        }
                        if names.contains(&w) {
                            return perr(line, col0 + at, format!("variable {w} declared twice"));
                        }
                        names.push(w);
                    }
                    if names.is_empty() {
                        return perr(line, col0 + content.len(), "ring needs at least one variable");
                    }
                    ring = Some(VariableTable::from_names(&names)?);
                }
                _ if content == "ideal:" => {
                    if ring.is_none() {
                        return perr(line, col0, "ideal before ring declaration");
                    }
                    section = Section::Ideal;
                }
                _ => return perr(line, col0, format!("unexpected '{keyword}'")),
            },
            Section::Ideal => {
                let table = ring.as_ref().expect("ring precedes ideal");
                let expr = parse_expr(content, line, col0)?;
                generators.push(expr.to_polynomial(table, field)?);
            }
            Section::Trailer => {
                return perr(line, col0, "expected point, arc or hint");
            }
        }
    }

    let Some(ring) = ring else {
        return perr(last_line.max(1), 1, "missing ring declaration");
    };
    Ok(SystemDocument { field, ring, generators, points, arcs, hints })
}

fn check_count(items: &[(&str, usize)], want: usize, line: usize, what: &str) -> Result<()> {
    if items.len() != want {
        let col = items.last().map(|(_, c)| *c).unwrap_or(1);
        return perr(line, col, format!("{what} has {} entries, ring has {want}", items.len()));
    }
    Ok(())
}

fn parse_point(
    label: &str,
    items: &[(&str, usize)],
    ring: &VariableTable,
    field: Field,
    line: usize,
) -> Result<NamedPoint> {
    check_count(items, ring.len(), line, "point")?;
    let empty = VariableTable::empty();
    let coords = items
        .iter()
        .map(|(s, c)| {
            let p = parse_expr(s, line, *c)?.to_polynomial(&empty, field)?;
            Ok(p.constant_value().expect("constant over the empty table"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NamedPoint { label: label.to_string(), coords })
}

fn parse_arc(
    label: &str,
    items: &[(&str, usize)],
    ring: &VariableTable,
    field: Field,
    line: usize,
) -> Result<NamedArc> {
    check_count(items, ring.len(), line, "arc")?;
    let t = SystemDocument::arc_table();
    let images =
        items.iter().map(|(s, c)| parse_expr(s, line, *c)?.to_polynomial(&t, field)).collect::<Result<Vec<_>>>()?;
    Ok(NamedArc { label: label.to_string(), images })
}

fn parse_hint(
    label: &str,
    items: &[(&str, usize)],
    ring: &VariableTable,
    field: Field,
    line: usize,
) -> Result<NamedHint> {
    let exprs = items.iter().map(|(s, c)| parse_expr(s, line, *c)).collect::<Result<Vec<_>>>()?;
    let mut level = 0;
    for e in &exprs {
        for (v, col) in e.variables() {
            if ring.position_of(&v.name, 0).is_none() {
                return perr(line, col, format!("unknown variable {v}"));
            }
            level = level.max(v.level as usize);
        }
    }
    let table = jet_table(ring, level)?;
    let gens = exprs.iter().map(|e| e.to_polynomial(&table, field)).collect::<Result<Vec<_>>>()?;
    Ok(NamedHint { label: label.to_string(), level, gens })
}

fn join(ps: &[Polynomial]) -> String {
    ps.iter().map(format_polynomial).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for SystemDocument {
    /// The canonical spelling; parsing it yields an equal document.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::Rational => writeln!(f, "field Q")?,
            Field::Prime(p) => writeln!(f, "field Fp {p}")?,
        }
        writeln!(f, "ring {}", self.ring)?;
        writeln!(f, "ideal:")?;
        for g in &self.generators {
            writeln!(f, "{}", format_polynomial(g))?;
        }
        for p in &self.points {
            let coords: Vec<String> = p
                .coords
                .iter()
                .map(|c| match c {
                    Scalar::Rational(q) if !q.is_integer() && c.is_negative() => format!("-({})", -c),
                    Scalar::Rational(q) if !q.is_integer() => format!("({c})"),
                    _ => c.to_string(),
                })
                .collect();
            writeln!(f, "point {}: {}", p.label, coords.join(", "))?;
        }
        for a in &self.arcs {
            writeln!(f, "arc {}: {}", a.label, join(&a.images))?;
        }
        for h in &self.hints {
            writeln!(f, "hint {}: {}", h.label, join(&h.gens))?;
        }
        Ok(())
    }
}
