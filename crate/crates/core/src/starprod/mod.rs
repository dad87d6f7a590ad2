//! Star products with constant coefficients.
//!
//! A bilinear form `Λ` on `V` extends to the biderivation `P_Λ` of
//! `Sym(V) ⊗ Sym(V)`, and `a ⋆ b = μ ∘ exp(z P_Λ)(a ⊗ b)`. Because `P_Λ`
//! lowers the degree of both tensor factors by one, the exponential
//! series stops after `min(deg a, deg b) + 1` terms.
//!
//! Conventions:
//! - matrix entry `(i, j)` is `Λ(e_i, e_j)`;
//! - the standard-ordering preset uses `Λ(e_p, e_q) = 1` and `z = -iħ`;
//! - `{v, w}_Λ = Λ(v, w) - Λ(w, v)` on linear elements.

mod form;
mod ordering;
mod phase;
mod rep;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::scalars::{factorial, Scalar};
use crate::symalg::{MultiIndex, Polynomial};

pub use form::{BilinearForm, BilinearFormJson};
pub use ordering::{apply_equivalence, OrderingOperator};
pub use phase::PhaseSpace;
pub use rep::DifferentialOperator;

/// An element of `Sym(V) ⊗ Sym(V)` in sparse form.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSquareElement<C: Scalar> {
    terms: BTreeMap<(MultiIndex, MultiIndex), C>,
}

impl<C: Scalar> Default for TensorSquareElement<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> TensorSquareElement<C> {
    /// `a ⊗ b`.
    pub fn from_pair(a: &Polynomial<C>, b: &Polynomial<C>) -> Result<Self> {
        a.check_compatible(b)?;
        let mut t = Self::default();
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                t.add_term(ea.clone(), eb.clone(), ca.clone() * cb);
            }
        }
        Ok(t)
    }

    pub fn add_term(&mut self, left: MultiIndex, right: MultiIndex, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The multiplication map `μ(a ⊗ b) = ab`.
    pub fn multiply_out(&self, like: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero(like.gens());
        for ((l, r), c) in &self.terms {
            out.add_term(l + r, c.clone());
        }
        out
    }
}

/// `P_Λ(x^α ⊗ x^β) = Σ_{i,j} Λ_ij α_i β_j x^{α-e_i} ⊗ x^{β-e_j}`.
pub fn p_lambda<C: Scalar>(form: &BilinearForm<C>, t: &TensorSquareElement<C>) -> TensorSquareElement<C> {
    let entries = form.nonzero_entries();
    let mut out = TensorSquareElement::default();
    for ((alpha, beta), c) in &t.terms {
        for (i, j, lam) in &entries {
            let (a, b) = (alpha.get(*i), beta.get(*j));
            if a == 0 || b == 0 {
                continue;
            }
            let coeff = (c.clone() * lam).mul_int(a as u64 * b as u64);
            out.add_term(alpha.lowered(*i, 1), beta.lowered(*j, 1), coeff);
        }
    }
    out
}

/// Bookkeeping from one evaluation of [`star_with_stats`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarStats {
    /// Number of `z^r/r! μ(P_Λ^r(a ⊗ b))` terms summed.
    pub orders_evaluated: u32,
}

/// `a ⋆ b = Σ_r (z^r / r!) μ(P_Λ^r (a ⊗ b))`.
pub fn star<C: Scalar>(form: &BilinearForm<C>, z: &C, a: &Polynomial<C>, b: &Polynomial<C>) -> Result<Polynomial<C>> {
    star_with_stats(form, z, a, b).map(|(p, _)| p)
}

pub fn star_with_stats<C: Scalar>(
    form: &BilinearForm<C>,
    z: &C,
    a: &Polynomial<C>,
    b: &Polynomial<C>,
) -> Result<(Polynomial<C>, StarStats)> {
    form.check_polynomial(a)?;
    a.check_compatible(b)?;
    let mut out = Polynomial::zero(a.gens());
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Ok((out, StarStats { orders_evaluated: 0 }));
    };
    let last = da.min(db);
    let mut t = TensorSquareElement::from_pair(a, b)?;
    let mut z_pow = z.one_like();
    for r in 0..=last {
        if r > 0 {
            t = p_lambda(form, &t);
            z_pow = z_pow * z;
        }
        let weight = z_pow.scale(&BigRational::new(BigInt::from(1), factorial(r)));
        for ((l, rr), c) in &t.terms {
            out.add_term(l + rr, c.clone() * &weight);
        }
    }
    Ok((out, StarStats { orders_evaluated: last + 1 }))
}

/// `a ⋆ b - b ⋆ a`.
pub fn commutator<C: Scalar>(form: &BilinearForm<C>, z: &C, a: &Polynomial<C>, b: &Polynomial<C>) -> Result<Polynomial<C>> {
    let ab = star(form, z, a, b)?;
    let ba = star(form, z, b, a)?;
    ab.try_sub(&ba)
}

/// `{a, b}_Λ = μ(P_Λ(a ⊗ b) - P_Λ(b ⊗ a))`.
pub fn poisson_bracket<C: Scalar>(form: &BilinearForm<C>, a: &Polynomial<C>, b: &Polynomial<C>) -> Result<Polynomial<C>> {
    form.check_polynomial(a)?;
    a.check_compatible(b)?;
    let ab = p_lambda(form, &TensorSquareElement::from_pair(a, b)?).multiply_out(a);
    let ba = p_lambda(form, &TensorSquareElement::from_pair(b, a)?).multiply_out(a);
    ab.try_sub(&ba)
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}` for any bracket.
pub fn jacobi_defect<C, B>(bracket: B, f: &Polynomial<C>, g: &Polynomial<C>, h: &Polynomial<C>) -> Result<Polynomial<C>>
where
    C: Scalar,
    B: Fn(&Polynomial<C>, &Polynomial<C>) -> Result<Polynomial<C>>,
{
    let a = bracket(f, &bracket(g, h)?)?;
    let b = bracket(g, &bracket(h, f)?)?;
    let c = bracket(h, &bracket(f, g)?)?;
    a.try_add(&b)?.try_add(&c)
}

#[cfg(test)]
mod tests;
