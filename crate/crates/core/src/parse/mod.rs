//! The expression language used on the command line and in JSON files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := rational | 'i' | 'h' | identifier | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication, and `h` (the formal parameter)
//! and `i` (the imaginary unit) are reserved.

mod eval;
mod lexer;
mod parser;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

pub use eval::{eval_ast, eval_expression, parse_scalar, EvalOutput};
pub use parser::parse_expression;

/// Identifiers that can never name a generator.
pub const RESERVED: [&str; 2] = ["h", "i"];

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    NegativeExponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos_line}:{pos_col}: {msg}", pos_line = .pos.line, pos_col = .pos.column, msg = .kind)]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(pos: Pos, kind: ParseErrorKind) -> Self {
        Self { pos, kind }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::UnknownIdentifier(id) => write!(f, "unknown identifier `{id}`"),
            ParseErrorKind::NegativeExponent => f.write_str("negative exponent"),
        }
    }
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rational(BigRational),
    ImagUnit,
    Hbar,
    /// Index into the identifier list the expression was parsed against.
    Generator(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Number of top-level summands.
    pub fn num_summands(&self) -> usize {
        match self {
            Expr::Add(a, b) | Expr::Sub(a, b) => a.num_summands() + b.num_summands(),
            _ => 1,
        }
    }

    /// An upper bound on the ħ-degree of the expression.
    pub(crate) fn hbar_degree(&self) -> u64 {
        match self {
            Expr::Hbar => 1,
            Expr::Rational(_) | Expr::ImagUnit | Expr::Generator(_) => 0,
            Expr::Neg(a) => a.hbar_degree(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.hbar_degree().max(b.hbar_degree()),
            Expr::Mul(a, b) => a.hbar_degree().saturating_add(b.hbar_degree()),
            Expr::Pow(a, k) => a.hbar_degree().saturating_mul(*k as u64),
        }
    }
}
