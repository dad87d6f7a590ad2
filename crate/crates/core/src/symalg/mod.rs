//! The symmetric algebra `Sym(V)` as sparse multivariate polynomials.
//!
//! A [`Polynomial`] maps exponent vectors ([`MultiIndex`]) to nonzero
//! coefficients of some [`Scalar`] domain. Iteration follows the graded
//! lexicographic order of [`MultiIndex`]; printing runs it in reverse so
//! that high-degree terms come first.

mod json;
mod multi_index;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalars::text::{format_sum, power_factor, Term};
use crate::scalars::{hbar_factor, FormalScalar, GaussianRational, NumericScalar, Scalar};

pub use json::{PolynomialJson, TermJson};
pub use multi_index::MultiIndex;

/// Ordered, distinct generator names of `V` (e.g. `q, p` or `x1, x2, x3`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generators {
    names: Vec<String>,
}

impl Generators {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidGenerators("at least one generator required".into()));
        }
        for (k, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidGenerators("empty generator name".into()));
            }
            if names[..k].contains(name) {
                return Err(Error::InvalidGenerators(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// `x1, ..., xn`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Arc<Self>> {
        Self::new((1..=n).map(|k| format!("{prefix}{k}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A sparse polynomial over the generators with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C: Scalar> {
    gens: Arc<Generators>,
    terms: BTreeMap<MultiIndex, C>,
}

/// Polynomials with exact formal coefficients.
pub type FormalPolynomial = Polynomial<FormalScalar>;
/// Polynomials with floating-point complex coefficients.
pub type NumericPolynomial = Polynomial<NumericScalar>;

impl<C: Scalar> Polynomial<C> {
    pub fn zero(gens: &Arc<Generators>) -> Self {
        Self {
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(gens: &Arc<Generators>, c: C) -> Self {
        Self::monomial(gens, MultiIndex::zero(gens.len()), c)
    }

    pub fn monomial(gens: &Arc<Generators>, exp: MultiIndex, c: C) -> Self {
        assert_eq!(exp.len(), gens.len(), "multi-index length must match generators");
        let mut p = Self::zero(gens);
        p.add_term(exp, c);
        p
    }

    /// The generator `x_i` with coefficient `one`.
    pub fn generator(gens: &Arc<Generators>, i: usize, one: C) -> Result<Self> {
        if i >= gens.len() {
            return Err(Error::IndexOutOfRange { index: i, dim: gens.len() });
        }
        Ok(Self::monomial(gens, MultiIndex::unit(gens.len(), i), one))
    }

    /// `Σ v_i x_i` for a coefficient vector `v`.
    pub fn linear(gens: &Arc<Generators>, v: &[C]) -> Result<Self> {
        if v.len() != gens.len() {
            return Err(Error::LengthMismatch { expected: gens.len(), got: v.len() });
        }
        let mut p = Self::zero(gens);
        for (i, c) in v.iter().enumerate() {
            p.add_term(MultiIndex::unit(gens.len(), i), c.clone());
        }
        Ok(p)
    }

    pub fn from_terms(gens: &Arc<Generators>, terms: impl IntoIterator<Item = (MultiIndex, C)>) -> Self {
        let mut p = Self::zero(gens);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn gens(&self) -> &Arc<Generators> {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.gens.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (MultiIndex, C)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &MultiIndex) -> Option<&C> {
        self.terms.get(exp)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    /// Adds `c * x^exp`, keeping the canonical sparse form.
    pub fn add_term(&mut self, exp: MultiIndex, c: C) {
        debug_assert_eq!(exp.len(), self.gens.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.gens == other.gens {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras(format!(
                "generators [{}] vs [{}]",
                self.gens.names().join(", "),
                other.gens.names().join(", ")
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    /// The commutative product of `Sym(V)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.gens);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca.clone() * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32, one: &C) -> Self {
        let mut acc = Self::constant(&self.gens, one.clone());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.clone() * c)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.map_coeffs(|x| x.scale(r))
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(&self.gens);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Same polynomial over a different coefficient domain.
    pub fn convert<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(&self.gens);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Conjugates all coefficients; generators are treated as real.
    pub fn conj(&self) -> Self {
        self.map_coeffs(Scalar::conj)
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars() {
            return Err(Error::IndexOutOfRange { index: i, dim: self.nvars() });
        }
        let mut out = Self::zero(&self.gens);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k > 0 {
                out.add_term(e.lowered(i, 1), c.mul_int(k as u64));
            }
        }
        Ok(out)
    }

    /// Substitutes `x_i -> x_i + shift_i`.
    pub fn translate(&self, shift: &[C]) -> Result<Self> {
        if shift.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), got: shift.len() });
        }
        let mut out = Self::zero(&self.gens);
        for (e, c) in &self.terms {
            for sub in e.sub_indices() {
                // c * prod binom(a_i, k_i) s_i^(a_i - k_i) x_i^(k_i)
                let mut coeff = c.clone();
                for i in 0..e.len() {
                    let (a, k) = (e.get(i), sub.get(i));
                    if a == k {
                        continue;
                    }
                    coeff = coeff * &shift[i].pow(a - k);
                    coeff = coeff.scale(&BigRational::from_integer(binomial(a, k)));
                }
                out.add_term(sub, coeff);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), got: point.len() });
        }
        let Some(first) = point.first() else {
            return Err(Error::InvalidGenerators("empty point".into()));
        };
        let mut acc = first.zero_like();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let k = e.get(i);
                if k > 0 {
                    t = t * &x.pow(k);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// The homogeneous part of total degree `k`.
    pub fn graded_component(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.gens);
        for (e, c) in &self.terms {
            if e.degree() == k {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Drops every term of total degree above `k`.
    pub fn truncate_degree(&self, k: u32) -> Self {
        Self {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

impl FormalPolynomial {
    pub fn one(gens: &Arc<Generators>, truncation: u32) -> Self {
        Self::constant(gens, FormalScalar::one(truncation))
    }

    /// Generator `x_i` with unit coefficient at the given truncation.
    pub fn var(gens: &Arc<Generators>, i: usize, truncation: u32) -> Self {
        Self::monomial(gens, MultiIndex::unit(gens.len(), i), FormalScalar::one(truncation))
    }

    /// Coefficient-wise `ħ^r` part, as a polynomial with constant
    /// (order-zero) coefficients.
    pub fn hbar_coefficient(&self, r: u32) -> Result<Self> {
        let mut out = Self::zero(&self.gens);
        for (e, c) in &self.terms {
            if r > c.truncation() {
                return Err(Error::TruncationExceeded { order: r, truncation: c.truncation() });
            }
            out.add_term(e.clone(), FormalScalar::constant(c.truncation(), c.coeff(r)));
        }
        Ok(out)
    }

    /// Largest coefficient part `max(|re|, |im|)` over all terms.
    pub fn max_abs_part(&self) -> BigRational {
        self.terms
            .values()
            .map(FormalScalar::max_abs_part)
            .max()
            .unwrap_or_else(|| BigRational::from_integer(0.into()))
    }

    /// Evaluates the formal coefficients at a real ħ.
    pub fn to_numeric(&self, hbar: f64) -> NumericPolynomial {
        self.convert(|c| NumericScalar(c.evaluate_at(hbar)))
    }

    /// Re-truncates every coefficient.
    pub fn with_truncation(&self, n: u32) -> Self {
        self.map_coeffs(|c| c.with_truncation(n))
    }

    pub fn from_gaussian_terms(
        gens: &Arc<Generators>,
        truncation: u32,
        terms: impl IntoIterator<Item = (MultiIndex, GaussianRational)>,
    ) -> Self {
        Self::from_terms(gens, terms.into_iter().map(|(e, c)| (e, FormalScalar::constant(truncation, c))))
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub(crate) fn falling(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).map(|j| (n - j) as u64).product()
}

fn monomial_factors(gens: &Generators, e: &MultiIndex) -> Vec<String> {
    (0..e.len())
        .filter(|&i| e.get(i) > 0)
        .map(|i| power_factor(gens.name(i), e.get(i)))
        .collect()
}

impl fmt::Display for FormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono = monomial_factors(&self.gens, e);
            for (k, g) in c.terms() {
                let mut factors = hbar_factor(k);
                factors.extend(mono.iter().cloned());
                terms.push(Term::new(g.clone(), factors));
            }
        }
        f.write_str(&format_sum(terms))
    }
}

impl fmt::Display for NumericPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = monomial_factors(&self.gens, e);
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    /// Panics on mismatched generators; use [`Polynomial::try_add`] to
    /// get an error instead.
    fn add(self, o: &Polynomial<C>) -> Polynomial<C> {
        self.try_add(o).expect("incompatible algebras")
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, o: &Polynomial<C>) -> Polynomial<C> {
        self.try_sub(o).expect("incompatible algebras")
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, o: &Polynomial<C>) -> Polynomial<C> {
        self.try_mul(o).expect("incompatible algebras")
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.map_coeffs(|c| -c.clone())
    }
}
