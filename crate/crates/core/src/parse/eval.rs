use std::sync::Arc;

use super::{parse_expression, Expr};
use crate::error::Result;
use crate::scalars::{FormalScalar, GaussianRational};
use crate::symalg::{FormalPolynomial, Generators};

/// Result of folding an expression, with any truncation warnings.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalOutput {
    pub value: FormalPolynomial,
    pub warnings: Vec<String>,
}

/// Highest ħ-degree evaluated exactly before reporting dropped terms.
const OVERFLOW_PROBE: u64 = 64;

fn fold(e: &Expr, gens: &Arc<Generators>, n: u32) -> FormalPolynomial {
    let constant = |c: FormalScalar| FormalPolynomial::constant(gens, c);
    match e {
        Expr::Rational(r) => constant(FormalScalar::rational(n, r.clone())),
        Expr::ImagUnit => constant(FormalScalar::constant(n, GaussianRational::i())),
        Expr::Hbar => constant(FormalScalar::hbar(n)),
        Expr::Generator(i) => FormalPolynomial::var(gens, *i, n),
        Expr::Neg(a) => -&fold(a, gens, n),
        Expr::Add(a, b) => &fold(a, gens, n) + &fold(b, gens, n),
        Expr::Sub(a, b) => &fold(a, gens, n) - &fold(b, gens, n),
        Expr::Mul(a, b) => &fold(a, gens, n) * &fold(b, gens, n),
        Expr::Pow(a, k) => fold(a, gens, n).pow(*k, &FormalScalar::one(n)),
    }
}

/// Folds an expression into a polynomial truncated at `ħ^truncation`.
///
/// Powers of `h` beyond the truncation are dropped; when that discards
/// a nonzero coefficient a warning is returned alongside the value.
pub fn eval_ast(e: &Expr, gens: &Arc<Generators>, truncation: u32) -> EvalOutput {
    let hdeg = e.hbar_degree();
    let mut warnings = Vec::new();
    if hdeg <= truncation as u64 {
        return EvalOutput { value: fold(e, gens, truncation), warnings };
    }
    if hdeg > truncation as u64 + OVERFLOW_PROBE {
        warnings.push(format!(
            "expression may contain powers of h beyond truncation {truncation}; they are dropped"
        ));
        return EvalOutput { value: fold(e, gens, truncation), warnings };
    }
    let wide = fold(e, gens, hdeg as u32);
    let dropped = wide
        .terms()
        .flat_map(|(_, c)| c.terms().map(|(k, _)| k).collect::<Vec<_>>())
        .filter(|&k| k > truncation)
        .max();
    if let Some(k) = dropped {
        warnings.push(format!(
            "terms up to h^{k} exceed truncation {truncation}; they are dropped"
        ));
    }
    EvalOutput { value: wide.with_truncation(truncation), warnings }
}

/// Parses and evaluates in one step.
pub fn eval_expression(src: &str, gens: &Arc<Generators>, truncation: u32) -> Result<EvalOutput> {
    let ast = parse_expression(src, gens.names())?;
    Ok(eval_ast(&ast, gens, truncation))
}

/// Parses a generator-free expression such as `1/2 - i*h` into a
/// formal scalar.
pub fn parse_scalar(src: &str, truncation: u32) -> Result<FormalScalar> {
    let gens = Generators::new(["_"])?;
    let ast = parse_expression(src, &[])?;
    let p = eval_ast(&ast, &gens, truncation).value;
    let c = p.terms().next().map(|(_, c)| c.clone());
    Ok(c.unwrap_or_else(|| FormalScalar::zero(truncation)))
}
