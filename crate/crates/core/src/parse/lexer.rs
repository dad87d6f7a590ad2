use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ParseError, ParseErrorKind, Pos};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Rational(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Rational(r) => format!("number `{r}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// Splits source text into positioned tokens. A rational literal is
/// `digits` or `digits/digits` with no interior whitespace.
pub(crate) fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            col += 1;
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let num: BigInt = chars[start..k].iter().collect::<String>().parse().expect("digits");
            let mut den = BigInt::from(1);
            if k + 1 < chars.len() && chars[k] == '/' && chars[k + 1].is_ascii_digit() {
                k += 1;
                let ds = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                den = chars[ds..k].iter().collect::<String>().parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError::new(pos, ParseErrorKind::Syntax("zero denominator".into())));
                }
            }
            col += k - start;
            out.push((Tok::Rational(BigRational::new(num, den)), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            col += k - start;
            out.push((Tok::Ident(chars[start..k].iter().collect()), pos));
            continue;
        }
        return Err(ParseError::new(
            pos,
            ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
        ));
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}
