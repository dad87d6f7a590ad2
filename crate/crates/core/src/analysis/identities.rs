use num_traits::Zero;
use serde::Serialize;

use super::exponential::exponential_components;
use crate::error::{Error, Result};
use crate::scalars::{canonical_rational, FormalScalar, Scalar};
use crate::starprod::{star, BilinearForm};
use crate::symalg::{FormalPolynomial, Polynomial};

/// Which graded components an exponential identity is compared on, and
/// where the exponentials are cut off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpWindow {
    /// Highest Sym-degree compared.
    pub degree: u32,
    /// Highest ħ-order compared.
    pub orders: u32,
    /// Sym-degree cutoff of the exponentials.
    pub cutoff: u32,
}

impl ExpWindow {
    /// Uses the smallest exact cutoff `degree + 2·orders`.
    pub fn new(degree: u32, orders: u32) -> Self {
        Self {
            degree,
            orders,
            cutoff: degree + 2 * orders,
        }
    }

    /// A component of degree `d` at order `r` only sees operand pieces of
    /// total degree `d + 2r`, because each power of `z` removes one
    /// degree from each side.
    pub fn reach(&self) -> u32 {
        self.degree + 2 * self.orders
    }

    fn check(&self, z: &FormalScalar) -> Result<()> {
        if self.cutoff < self.reach() {
            return Err(Error::TruncationTooSmall { given: self.cutoff, required: self.reach() });
        }
        // orders in z must not exceed orders in ħ
        if !z.is_zero() && z.valuation() == Some(0) {
            return Err(Error::InvalidInput("z must vanish at h = 0 for an exact window".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowJson {
    pub degree: u32,
    pub orders: u32,
}

/// `{"check":"weyl_relation","window":{"degree":6,"orders":4},"defect_max":"0","status":"pass"}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectReport {
    pub check: String,
    pub window: WindowJson,
    pub defect_max: String,
    pub status: String,
}

impl DefectReport {
    fn from_difference(check: &str, window: ExpWindow, diff: &FormalPolynomial) -> Self {
        let m = diff.max_abs_part();
        Self {
            check: check.into(),
            window: WindowJson { degree: window.degree, orders: window.orders },
            defect_max: if m.is_zero() { "0".into() } else { canonical_rational(&m) },
            status: if m.is_zero() { "pass" } else { "fail" }.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn lift(v: &[FormalScalar], n: u32) -> Vec<FormalScalar> {
    v.iter().map(|c| c.with_truncation(n)).collect()
}

fn sum(parts: &[FormalPolynomial]) -> Result<FormalPolynomial> {
    let mut out = FormalPolynomial::zero(parts[0].gens());
    for p in parts {
        out = out.try_add(p)?;
    }
    Ok(out)
}

/// Compares `e^v ⋆ e^w` with `e^{zΛ(v,w)} e^{v+w}` on the window.
pub fn weyl_relation_defect(
    form: &BilinearForm<FormalScalar>,
    z: &FormalScalar,
    v: &[FormalScalar],
    w: &[FormalScalar],
    window: ExpWindow,
) -> Result<DefectReport> {
    window.check(z)?;
    let n = window.orders;
    let gens = form.gens();
    let (v, w, z) = (lift(v, n), lift(w, n), z.with_truncation(n));
    let one = FormalScalar::one(n);
    let reach = window.reach();
    let ev = exponential_components(gens, &v, &one, reach)?;
    let ew = exponential_components(gens, &w, &one, reach)?;
    // Σ_a e_a(v) ⋆ Σ_{b ≤ reach-a} e_b(w)
    let mut lhs = FormalPolynomial::zero(gens);
    for (a, piece) in ev.iter().enumerate() {
        let right = sum(&ew[..=reach as usize - a])?;
        lhs = lhs.try_add(&star(form, &z, piece, &right)?)?;
    }
    let lhs = lhs.truncate_degree(window.degree);

    let factor = (z.clone() * &form.eval(&v, &w)?).exp()?;
    let vw: Vec<FormalScalar> = v.iter().zip(&w).map(|(a, b)| a.clone() + b).collect();
    let rhs = sum(&exponential_components(gens, &vw, &one, window.degree)?)?.scale(&factor);
    Ok(DefectReport::from_difference("weyl_relation", window, &lhs.try_sub(&rhs)?))
}

/// `translate(a ⋆ b, s) - translate(a, s) ⋆ translate(b, s)`.
pub fn translation_automorphism_defect<C: Scalar>(
    form: &BilinearForm<C>,
    z: &C,
    shift: &[C],
    a: &Polynomial<C>,
    b: &Polynomial<C>,
) -> Result<Polynomial<C>> {
    let lhs = star(form, z, a, b)?.translate(shift)?;
    let rhs = star(form, z, &a.translate(shift)?, &b.translate(shift)?)?;
    lhs.try_sub(&rhs)
}

/// `φ_w(e_i) = z(Λ(w, e_i) - Λ(e_i, w)) = 2zΛ(w, e_i)` for antisymmetric `Λ`.
pub fn musical_shift(form: &BilinearForm<FormalScalar>, z: &FormalScalar, w: &[FormalScalar]) -> Result<Vec<FormalScalar>> {
    let n = form.dim();
    if w.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: w.len() });
    }
    Ok((0..n)
        .map(|i| {
            let mut acc = z.zero_like();
            for (j, wj) in w.iter().enumerate() {
                acc += &(wj.clone() * form.entry(j, i));
            }
            (acc * z).mul_int(2)
        })
        .collect())
}

/// Compares `e^w ⋆ a ⋆ e^{-w}` with `translate(a, φ_w)` on the window.
pub fn inner_automorphism_defect(
    form: &BilinearForm<FormalScalar>,
    z: &FormalScalar,
    w: &[FormalScalar],
    a: &FormalPolynomial,
    window: ExpWindow,
) -> Result<DefectReport> {
    if !form.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    window.check(z)?;
    let n = window.orders;
    let gens = form.gens();
    let (w, z, a) = (lift(w, n), z.with_truncation(n), a.with_truncation(n));
    let one = FormalScalar::one(n);
    let reach = window.reach();
    let plus = exponential_components(gens, &w, &one, reach)?;
    let minus = exponential_components(gens, &w, &-one.clone(), reach)?;
    let mut lhs = FormalPolynomial::zero(gens);
    for (s, piece) in plus.iter().enumerate() {
        let left = star(form, &z, piece, &a)?;
        let right = sum(&minus[..=reach as usize - s])?;
        lhs = lhs.try_add(&star(form, &z, &left, &right)?)?;
    }
    let lhs = lhs.truncate_degree(window.degree);
    let rhs = a.translate(&musical_shift(form, &z, &w)?)?.truncate_degree(window.degree);
    Ok(DefectReport::from_difference("inner_automorphism", window, &lhs.try_sub(&rhs)?))
}
