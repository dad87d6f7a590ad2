use num_traits::{Signed, ToPrimitive};

use super::lexer::{tokenize, Tok};
use super::{Expr, ParseError, ParseErrorKind, Pos, RESERVED};

#[derive(Clone, Copy)]
enum BinOp {
    Add,
    Sub,
    Mul,
}

impl BinOp {
    fn of(tok: &Tok) -> Option<(BinOp, u8)> {
        match tok {
            Tok::Plus => Some((BinOp::Add, 1)),
            Tok::Minus => Some((BinOp::Sub, 1)),
            Tok::Star => Some((BinOp::Mul, 2)),
            _ => None,
        }
    }

    fn build(self, lhs: Expr, rhs: Expr) -> Expr {
        let (l, r) = (Box::new(lhs), Box::new(rhs));
        match self {
            BinOp::Add => Expr::Add(l, r),
            BinOp::Sub => Expr::Sub(l, r),
            BinOp::Mul => Expr::Mul(l, r),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    known: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos(), ParseErrorKind::Syntax(msg.into())))
    }

    /// Precedence climbing over the left-associative `+ - *` operators.
    fn binary(&mut self, min_prec: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some((op, prec)) = BinOp::of(self.peek()) {
            if prec < min_prec {
                break;
            }
            self.bump();
            let rhs = self.binary(prec + 1)?;
            lhs = op.build(lhs, rhs);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Rational(r) if r.is_integer() && !r.is_negative() => {
                let k = r.numer().to_u32().ok_or_else(|| {
                    ParseError::new(pos, ParseErrorKind::Syntax("exponent too large".into()))
                })?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            Tok::Minus => Err(ParseError::new(pos, ParseErrorKind::NegativeExponent)),
            Tok::Rational(_) => Err(ParseError::new(
                pos,
                ParseErrorKind::Syntax("exponent must be a non-negative integer".into()),
            )),
            t => Err(ParseError::new(
                pos,
                ParseErrorKind::Syntax(format!("expected exponent, found {}", t.describe())),
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Rational(r) => Ok(Expr::Rational(r)),
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Expr::ImagUnit),
                "h" => Ok(Expr::Hbar),
                _ => match self.known.iter().position(|k| *k == name) {
                    Some(idx) => Ok(Expr::Generator(idx)),
                    None => Err(ParseError::new(pos, ParseErrorKind::UnknownIdentifier(name))),
                },
            },
            Tok::LParen => {
                let e = self.binary(1)?;
                if *self.peek() != Tok::RParen {
                    return self.syntax(format!("expected `)`, found {}", self.peek().describe()));
                }
                self.bump();
                Ok(e)
            }
            t => Err(ParseError::new(
                pos,
                ParseErrorKind::Syntax(format!("expected operand, found {}", t.describe())),
            )),
        }
    }
}

/// Parses `src`, resolving identifiers against `known` (reserved names
/// `h` and `i` are never looked up there).
pub fn parse_expression(src: &str, known: &[String]) -> Result<Expr, ParseError> {
    debug_assert!(known.iter().all(|k| !RESERVED.contains(&k.as_str())));
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
        known,
    };
    let e = p.binary(1)?;
    match p.peek() {
        Tok::Eof => Ok(e),
        Tok::Ident(_) | Tok::Rational(_) | Tok::LParen => {
            p.syntax(format!("unexpected {}; use `*` for multiplication", p.peek().describe()))
        }
        t => p.syntax(format!("unexpected {}", t.describe())),
    }
}
