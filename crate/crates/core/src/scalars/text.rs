//! Compact expression-syntax printing shared by scalars, polynomials and
//! operators. Everything printed here parses back with the expression
//! parser.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gaussian::GaussianRational;

/// One summand: a Gaussian-rational coefficient times textual factors
/// (`h^2`, `q`, `p^3`, ...).
#[derive(Debug, Clone)]
pub struct Term {
    pub coeff: GaussianRational,
    pub factors: Vec<String>,
}

impl Term {
    pub fn new(coeff: GaussianRational, factors: Vec<String>) -> Self {
        Self { coeff, factors }
    }
}

fn bare_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A non-negative rational as a multiplicative prefix.
fn prefix_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

/// Returns `(negative, body)` for a nonzero term.
fn term_body(term: &Term) -> (bool, String) {
    let c = &term.coeff;
    let mut parts: Vec<String> = Vec::new();
    let negative;
    if c.im().is_zero() {
        negative = c.re().is_negative();
        let a = c.re().abs();
        if term.factors.is_empty() {
            parts.push(bare_rational(&a));
        } else if !a.is_one() {
            parts.push(prefix_rational(&a));
        }
    } else if c.re().is_zero() {
        negative = c.im().is_negative();
        let b = c.im().abs();
        if !b.is_one() {
            parts.push(prefix_rational(&b));
        }
        parts.push("i".to_string());
    } else {
        negative = false;
        let re = c.re();
        let b = c.im().abs();
        let sign = if c.im().is_negative() { '-' } else { '+' };
        let im = if b.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", bare_rational(&b))
        };
        let re_txt = if re.is_negative() {
            format!("-{}", bare_rational(&re.abs()))
        } else {
            bare_rational(re)
        };
        parts.push(format!("({re_txt} {sign} {im})"));
    }
    parts.extend(term.factors.iter().cloned());
    (negative, parts.join("*"))
}

/// Joins terms as `a + b - c`; the empty sum prints as `0`.
pub fn format_sum<I: IntoIterator<Item = Term>>(terms: I) -> String {
    let mut out = String::new();
    for term in terms {
        if term.coeff.is_zero() {
            continue;
        }
        let (neg, body) = term_body(&term);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `name` or `name^k` for a positive exponent.
pub fn power_factor(name: &str, exp: u32) -> String {
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}
