//! The plain-text input language: polynomials, system files and their
//! canonical spelling.

mod document;
mod parse;
mod print;

pub use document::{parse_system, NamedArc, NamedHint, NamedPoint, SystemDocument};
pub use parse::{parse_expr, parse_polynomial, ParsedExpr};
pub use print::{format_polynomial, format_polynomial_with};
