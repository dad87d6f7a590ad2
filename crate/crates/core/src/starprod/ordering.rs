use num_bigint::BigInt;
use num_rational::BigRational;

use super::{star, BilinearForm};
use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::symalg::Polynomial;

/// The operator `exp(z Δ_S)` with `Δ_S = (1/2) Σ_{i,j} S_ij ∂_i ∂_j` for a
/// symmetric form `S`.
///
/// `Δ_S` lowers degree by two, so the series terminates on every
/// polynomial. With `S` the symmetric part of the standard form and
/// `z = -iħ` this is `N = exp((ħ/2i) ∂²/∂q∂p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderingOperator<C: Scalar> {
    form: BilinearForm<C>,
    z: C,
}

impl<C: Scalar> OrderingOperator<C> {
    pub fn new(form: BilinearForm<C>, z: C) -> Result<Self> {
        if !form.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { form, z })
    }

    pub fn form(&self) -> &BilinearForm<C> {
        &self.form
    }

    pub fn z(&self) -> &C {
        &self.z
    }

    /// `exp(-z Δ_S)`.
    pub fn inverse(&self) -> Self {
        Self {
            form: self.form.clone(),
            z: -self.z.clone(),
        }
    }

    /// `Δ_S p`.
    pub fn laplacian(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        self.form.check_polynomial(p)?;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut out = Polynomial::zero(p.gens());
        for (i, j, s) in self.form.nonzero_entries() {
            let d = p.partial_derivative(i)?.partial_derivative(j)?;
            out = out.try_add(&d.scale(&s.scale(&half)))?;
        }
        Ok(out)
    }

    pub fn apply(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        let mut out = p.clone();
        let mut term = p.clone();
        let mut k: u64 = 0;
        loop {
            term = self.laplacian(&term)?;
            if term.is_zero() {
                return Ok(out);
            }
            k += 1;
            // z^k/k! Δ^k p
            term = term.scale(&self.z).scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(k)));
            out = out.try_add(&term)?;
        }
    }
}

/// `T^{-1}(T f ⋆_Λ T g)`. For `T = exp(zΔ_S)` this equals `f ⋆_{Λ-S} g`.
pub fn apply_equivalence<C: Scalar>(
    t: &OrderingOperator<C>,
    form: &BilinearForm<C>,
    z: &C,
    f: &Polynomial<C>,
    g: &Polynomial<C>,
) -> Result<Polynomial<C>> {
    if t.form.gens() != form.gens() {
        return Err(Error::IncompatibleAlgebras("ordering operator and form differ".into()));
    }
    let prod = star(form, z, &t.apply(f)?, &t.apply(g)?)?;
    t.inverse().apply(&prod)
}
