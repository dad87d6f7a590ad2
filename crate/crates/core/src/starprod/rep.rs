use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalars::FormalScalar;
use crate::symalg::{binomial, falling, FormalPolynomial, Generators, MultiIndex};

/// A polynomial differential operator `Σ c_{α,β} q^α ∂^β` acting on
/// polynomials in the configuration generators, with every derivative
/// written to the right of the coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialOperator {
    config: Arc<Generators>,
    terms: BTreeMap<(MultiIndex, MultiIndex), FormalScalar>,
}

impl DifferentialOperator {
    pub fn zero(config: &Arc<Generators>) -> Self {
        Self {
            config: config.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(config: &Arc<Generators>, truncation: u32) -> Self {
        let mut d = Self::zero(config);
        let z = MultiIndex::zero(config.len());
        d.add_term(z.clone(), z, FormalScalar::one(truncation));
        d
    }

    pub fn config(&self) -> &Arc<Generators> {
        &self.config
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &FormalScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c q^coef ∂^deriv`.
    pub fn add_term(&mut self, coef: MultiIndex, deriv: MultiIndex, c: FormalScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((coef, deriv)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.config == other.config {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras("operators on different spaces".into()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &FormalScalar) -> Self {
        let mut out = Self::zero(&self.config);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c * s);
        }
        out
    }

    /// `self ∘ other`, normal-ordered with the Leibniz rule
    /// `∂^β q^γ = Σ_κ C(β, κ) (∂^κ q^γ) ∂^{β-κ}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.config);
        for ((a, b), c1) in &self.terms {
            for ((g, d), c2) in &other.terms {
                let prod = c1 * c2;
                for k in b.sub_indices() {
                    let Some(g_rest) = g.checked_sub(&k) else { continue };
                    let mut weight = num_bigint::BigInt::from(1);
                    for i in 0..k.len() {
                        weight *= binomial(b.get(i), k.get(i)) * falling(g.get(i), k.get(i));
                    }
                    let b_rest = b.checked_sub(&k).expect("sub-index");
                    out.add_term(a + &g_rest, &b_rest + d, prod.scale(&BigRational::from_integer(weight)));
                }
            }
        }
        Ok(out)
    }

    /// Applies the operator to a polynomial in the configuration generators.
    pub fn apply(&self, f: &FormalPolynomial) -> Result<FormalPolynomial> {
        if **f.gens() != *self.config {
            return Err(Error::IncompatibleAlgebras("operand not on configuration space".into()));
        }
        let mut out = FormalPolynomial::zero(&self.config);
        for ((a, b), c) in &self.terms {
            for (e, fc) in f.terms() {
                let Some(rest) = e.checked_sub(b) else { continue };
                let w: u64 = (0..e.len()).map(|i| falling(e.get(i), b.get(i))).product();
                out.add_term(a + &rest, (c * fc).scale(&BigRational::from_integer(w.into())));
            }
        }
        Ok(out)
    }

    /// Formal adjoint by integration by parts:
    /// `(c q^α ∂^β)† = (-1)^{|β|} ∂^β ∘ conj(c) q^α`, then normal-ordered.
    pub fn formal_adjoint(&self) -> Self {
        let mut out = Self::zero(&self.config);
        for ((a, b), c) in &self.terms {
            let sign = if b.degree() % 2 == 0 { 1 } else { -1 };
            let cc = c.conj().scale(&BigRational::from_integer(sign.into()));
            for k in b.sub_indices() {
                let Some(a_rest) = a.checked_sub(&k) else { continue };
                let mut weight = num_bigint::BigInt::from(1);
                for i in 0..k.len() {
                    weight *= binomial(b.get(i), k.get(i)) * falling(a.get(i), k.get(i));
                }
                let b_rest = b.checked_sub(&k).expect("sub-index");
                out.add_term(a_rest, b_rest, cc.scale(&BigRational::from_integer(weight)));
            }
        }
        out
    }

    /// Names of the derivative symbols: `D` followed by the generator.
    pub fn symbol_generators(config: &Generators) -> Result<Arc<Generators>> {
        let names = config
            .names()
            .iter()
            .cloned()
            .chain(config.names().iter().map(|n| format!("D{n}")));
        Generators::new(names)
    }

    /// The normal-ordered symbol: a polynomial in `q.., Dq..` whose
    /// monomial `q^α Dq^β` stands for `q^α ∂^β`.
    pub fn to_symbol(&self) -> Result<FormalPolynomial> {
        let gens = Self::symbol_generators(&self.config)?;
        let mut p = FormalPolynomial::zero(&gens);
        for ((a, b), c) in &self.terms {
            let exps = a.exponents().iter().chain(b.exponents()).copied().collect();
            p.add_term(MultiIndex::new(exps), c.clone());
        }
        Ok(p)
    }

    /// Inverse of [`to_symbol`](Self::to_symbol).
    pub fn from_symbol(config: &Arc<Generators>, symbol: &FormalPolynomial) -> Result<Self> {
        let n = config.len();
        if symbol.nvars() != 2 * n {
            return Err(Error::LengthMismatch { expected: 2 * n, got: symbol.nvars() });
        }
        let mut d = Self::zero(config);
        for (e, c) in symbol.terms() {
            let ex = e.exponents();
            d.add_term(MultiIndex::new(ex[..n].to_vec()), MultiIndex::new(ex[n..].to_vec()), c.clone());
        }
        Ok(d)
    }
}

impl fmt::Display for DifferentialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_symbol() {
            Ok(p) => write!(f, "{p}"),
            Err(_) => f.write_str("<operator>"),
        }
    }
}
