//! Recursive-descent parser for the polynomial language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | '(' INT '/' INT ')' | '(' expr ')' | NAME | NAME '(' INT ')'
//! ```
//!
//! Juxtaposition is not multiplication; `2x` is an error.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polyring::{Field, Polynomial, VarId, VariableTable};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(digits.parse().expect("decimal digits")), col });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Name(chars[start..i].iter().collect()), col });
        } else {
            return Err(Error::Parse { line, column: col, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Ratio(BigInt, BigInt, usize),
    Var(VarId, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn err<T>(&self, col: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, column: col, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let col = self.col();
        match self.bump() {
            Some(t) if t.tok == want => Ok(()),
            _ => self.err(col, format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let col = self.col();
            match self.bump().map(|t| t.tok) {
                Some(Tok::Int(k)) => match u32::try_from(k) {
                    Ok(k) => return Ok(Expr::Pow(Box::new(base), k)),
                    Err(_) => return self.err(col, "exponent too large"),
                },
                _ => return self.err(col, "expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Name(name)) => {
                if let Some(Tok::LParen) = self.peek() {
                    self.bump();
                    let lcol = self.col();
                    let level = match self.bump().map(|t| t.tok) {
                        Some(Tok::Int(l)) => match u32::try_from(l) {
                            Ok(l) => l,
                            Err(_) => return self.err(lcol, "jet level too large"),
                        },
                        _ => return self.err(lcol, "expected a jet level"),
                    };
                    self.expect(Tok::RParen, "')' after jet level")?;
                    Ok(Expr::Var(VarId::new(name, level), col))
                } else {
                    Ok(Expr::Var(VarId::base(name), col))
                }
            }
            Some(Tok::LParen) => {
                // `(a/b)` is a rational literal.
                if let (Some(Tok::Int(a)), Some(Tok::Slash)) =
                    (self.toks.get(self.pos).map(|t| &t.tok), self.toks.get(self.pos + 1).map(|t| &t.tok))
                {
                    let a = a.clone();
                    self.pos += 2;
                    let dcol = self.col();
                    let b = match self.bump().map(|t| t.tok) {
                        Some(Tok::Int(b)) => b,
                        _ => return self.err(dcol, "expected a denominator"),
                    };
                    self.expect(Tok::RParen, "')' closing the rational")?;
                    return Ok(Expr::Ratio(a, b, dcol));
                }
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Slash) => self.err(col, "'/' is only allowed in a parenthesized rational"),
            Some(_) => self.err(col, "expected a term"),
            None => self.err(col, "unexpected end of input"),
        }
    }
}

/// A parsed polynomial expression awaiting a variable table.
#[derive(Debug, Clone)]
pub struct ParsedExpr {
    expr: Expr,
    line: usize,
}

/// Parses one expression spanning the whole of `src`. `line` and `col0`
/// locate `src` within its file for diagnostics (1-based).
pub fn parse_expr(src: &str, line: usize, col0: usize) -> Result<ParsedExpr> {
    let toks = lex(src, line, col0)?;
    let end_col = col0 + src.chars().count();
    let mut p = Parser { toks, pos: 0, line, end_col };
    let expr = p.expr()?;
    if p.pos < p.toks.len() {
        let col = p.col();
        return p.err(col, "expected an operator");
    }
    Ok(ParsedExpr { expr, line })
}

impl ParsedExpr {
    /// Every variable mentioned, with the column of its first use.
    pub fn variables(&self) -> Vec<(VarId, usize)> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        collect(&self.expr, &mut out, &mut seen);
        out
    }

    /// Builds the polynomial; every variable must be in `table`.
    pub fn to_polynomial(&self, table: &Arc<VariableTable>, field: Field) -> Result<Polynomial> {
        build(&self.expr, table, field, self.line)
    }
}

fn collect(e: &Expr, out: &mut Vec<(VarId, usize)>, seen: &mut BTreeSet<VarId>) {
    match e {
        Expr::Var(v, col) => {
            if seen.insert(v.clone()) {
                out.push((v.clone(), *col));
            }
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect(a, out, seen),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            collect(a, out, seen);
            collect(b, out, seen);
        }
        Expr::Int(_) | Expr::Ratio(..) => {}
    }
}

fn build(e: &Expr, table: &Arc<VariableTable>, field: Field, line: usize) -> Result<Polynomial> {
    Ok(match e {
        Expr::Int(n) => Polynomial::constant(table, field.from_bigint(n)),
        Expr::Ratio(a, b, col) => {
            let c = field.from_ratio(a, b).map_err(|_| Error::Parse {
                line,
                column: *col,
                message: "zero denominator".into(),
            })?;
            Polynomial::constant(table, c)
        }
        Expr::Var(v, col) => match table.position(v) {
            Some(i) => Polynomial::var(table, field, i),
            None => return Err(Error::Parse { line, column: *col, message: format!("unknown variable {v}") }),
        },
        Expr::Neg(a) => -&build(a, table, field, line)?,
        Expr::Add(a, b) => &build(a, table, field, line)? + &build(b, table, field, line)?,
        Expr::Sub(a, b) => &build(a, table, field, line)? - &build(b, table, field, line)?,
        Expr::Mul(a, b) => &build(a, table, field, line)? * &build(b, table, field, line)?,
        Expr::Pow(a, k) => build(a, table, field, line)?.pow(*k),
    })
}

/// Parses a standalone polynomial over `table`.
pub fn parse_polynomial(src: &str, table: &Arc<VariableTable>, field: Field) -> Result<Polynomial> {
    parse_expr(src, 1, 1)?.to_polynomial(table, field)
}
