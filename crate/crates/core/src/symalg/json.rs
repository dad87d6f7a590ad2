use serde::{Deserialize, Serialize};

use super::{FormalPolynomial, Generators, MultiIndex};
use crate::error::{Error, Result};
use crate::parse::parse_scalar;

/// Wire form of a formal polynomial:
/// `{"generators":[..], "scalar_domain":"formal", "truncation":8,
///   "terms":[{"exp":[2,1], "coeff":"1/2"}, ..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub generators: Vec<String>,
    pub scalar_domain: String,
    pub truncation: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

impl PolynomialJson {
    /// Terms are listed in the same (descending) order as the text form.
    pub fn from_polynomial(p: &FormalPolynomial, truncation: u32) -> Self {
        Self {
            generators: p.gens().names().to_vec(),
            scalar_domain: "formal".into(),
            truncation,
            terms: p
                .terms()
                .rev()
                .map(|(e, c)| TermJson {
                    exp: e.exponents().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<FormalPolynomial> {
        if self.scalar_domain != "formal" {
            return Err(Error::InvalidInput(format!(
                "unsupported scalar domain `{}`",
                self.scalar_domain
            )));
        }
        let gens = Generators::new(self.generators.iter().cloned())?;
        let mut p = FormalPolynomial::zero(&gens);
        for t in &self.terms {
            if t.exp.len() != gens.len() {
                return Err(Error::LengthMismatch { expected: gens.len(), got: t.exp.len() });
            }
            let c = parse_scalar(&t.coeff, self.truncation)?;
            p.add_term(MultiIndex::new(t.exp.clone()), c);
        }
        Ok(p)
    }
}
