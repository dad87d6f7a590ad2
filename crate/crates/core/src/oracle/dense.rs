use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::FormalScalar;
use crate::symalg::{FormalPolynomial, Generators, MultiIndex};

/// Per-variable exponent bound used unless another is requested.
pub const DEFAULT_BOX: u32 = 8;

/// A polynomial stored as a dense array over the box
/// `{0..=bound}^nvars`, row-major with the first variable slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePolynomial {
    nvars: usize,
    bound: u32,
    truncation: u32,
    /// `None` marks a zero slot.
    coeffs: Vec<Option<FormalScalar>>,
}

impl DensePolynomial {
    pub fn zero(nvars: usize, bound: u32, truncation: u32) -> Self {
        let size = (bound as usize + 1).pow(nvars as u32);
        Self {
            nvars,
            bound,
            truncation,
            coeffs: vec![None; size],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    fn offset(&self, exps: &[u32]) -> Result<usize> {
        let mut idx = 0usize;
        for &e in exps {
            if e > self.bound {
                return Err(Error::BoxOverflow { exponent: e, bound: self.bound });
            }
            idx = idx * (self.bound as usize + 1) + e as usize;
        }
        Ok(idx)
    }

    fn exponents_at(&self, mut idx: usize) -> Vec<u32> {
        let base = self.bound as usize + 1;
        let mut exps = vec![0u32; self.nvars];
        for slot in exps.iter_mut().rev() {
            *slot = (idx % base) as u32;
            idx /= base;
        }
        exps
    }

    pub fn get(&self, exps: &[u32]) -> Result<FormalScalar> {
        let i = self.offset(exps)?;
        Ok(self.coeffs[i].clone().unwrap_or_else(|| FormalScalar::zero(self.truncation)))
    }

    pub fn add_at(&mut self, exps: &[u32], c: &FormalScalar) -> Result<()> {
        let i = self.offset(exps)?;
        self.add_slot(i, c);
        Ok(())
    }

    fn add_slot(&mut self, i: usize, c: &FormalScalar) {
        let slot = &mut self.coeffs[i];
        let sum = match slot.take() {
            Some(old) => old + c,
            None => c.with_truncation(self.truncation),
        };
        if !sum.is_zero() {
            *slot = Some(sum);
        }
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, &FormalScalar)> {
        self.coeffs.iter().enumerate().filter_map(|(i, c)| c.as_ref().map(|c| (i, c)))
    }

    pub fn from_polynomial(p: &FormalPolynomial, bound: u32, truncation: u32) -> Result<Self> {
        let mut d = Self::zero(p.nvars(), bound, truncation);
        for (e, c) in p.terms() {
            d.add_at(e.exponents(), c)?;
        }
        Ok(d)
    }

    pub fn to_polynomial(&self, gens: &Arc<Generators>) -> Result<FormalPolynomial> {
        if gens.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: gens.len() });
        }
        let mut p = FormalPolynomial::zero(gens);
        for (idx, c) in self.nonzero() {
            p.add_term(MultiIndex::new(self.exponents_at(idx)), c.clone());
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Option::is_none)
    }

    /// Largest total degree present.
    pub fn degree(&self) -> Option<u32> {
        self.nonzero().map(|(i, _)| self.exponents_at(i).iter().sum()).max()
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.bound, self.truncation);
        for (idx, c) in self.nonzero() {
            let mut exps = self.exponents_at(idx);
            if exps[i] == 0 {
                continue;
            }
            let k = exps[i];
            exps[i] -= 1;
            let j = out.offset(&exps).expect("inside box");
            out.add_slot(j, &(c * &FormalScalar::integer(self.truncation, k as i64)));
        }
        out
    }

    /// Commutative product; fails if any exponent leaves the box.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.nvars, self.bound, self.truncation);
        for (ia, ca) in self.nonzero() {
            let ea = self.exponents_at(ia);
            for (ib, cb) in other.nonzero() {
                let eb = other.exponents_at(ib);
                let e: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                out.add_at(&e, &(ca * cb))?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &FormalScalar) -> Self {
        Self {
            nvars: self.nvars,
            bound: self.bound,
            truncation: self.truncation,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.as_ref().map(|c| c * s).filter(|c| !c.is_zero()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.nonzero() {
            out.add_slot(i, c);
        }
        out
    }
}

/// All tuples in `{0..n}^r`.
fn tuples(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// `Σ_r (z^r/r!) Σ_{i_1..i_r, j_1..j_r} (Π_t Λ_{i_t j_t}) (∂_{i_1}…∂_{i_r} a)(∂_{j_1}…∂_{j_r} b)`,
/// written out as literal loops over index tuples.
///
/// `lambda[i][j]` is the form on basis vectors `i`, `j`.
pub fn naive_star(
    lambda: &[Vec<FormalScalar>],
    z: &FormalScalar,
    a: &DensePolynomial,
    b: &DensePolynomial,
) -> Result<DensePolynomial> {
    let n = a.nvars;
    if b.nvars != n || lambda.len() != n || lambda.iter().any(|row| row.len() != n) {
        return Err(Error::LengthMismatch { expected: n, got: b.nvars });
    }
    let t = a.truncation.min(b.truncation);
    let mut out = DensePolynomial::zero(n, a.bound, t);
    let max_r = a.degree().unwrap_or(0).min(b.degree().unwrap_or(0));
    let mut z_pow = FormalScalar::one(t);
    let mut r_fact: i64 = 1;
    for r in 0..=max_r as usize {
        if r > 0 {
            z_pow = &z_pow * z;
            r_fact *= r as i64;
        }
        let weight = z_pow.scale(&num_rational::BigRational::new(1.into(), r_fact.into()));
        let idx = tuples(n, r);
        // ∂ of b along every j-tuple, computed once
        let b_derivs: Vec<DensePolynomial> = idx
            .iter()
            .map(|js| js.iter().fold(b.clone(), |acc, &j| acc.derivative(j)))
            .collect();
        for is in &idx {
            let da = is.iter().fold(a.clone(), |acc, &i| acc.derivative(i));
            if da.is_zero() {
                continue;
            }
            for (js, db) in idx.iter().zip(&b_derivs) {
                let mut coef = FormalScalar::one(t);
                for (&i, &j) in is.iter().zip(js) {
                    coef = &coef * &lambda[i][j];
                }
                if coef.is_zero() || db.is_zero() {
                    continue;
                }
                out = out.add(&da.mul(db)?.scale(&(&coef * &weight)));
            }
        }
    }
    Ok(out)
}
