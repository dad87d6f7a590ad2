use super::ue::{insert_element, ratio, ue_multiply, UEElement, Word};
use super::LieAlgebra;
use crate::error::Result;
use crate::scalars::{FormalScalar, DEFAULT_TRUNCATION};
use crate::symalg::{FormalPolynomial, MultiIndex};

/// `{f, h}(x) = x_i c^i_kl ∂_k f ∂_l h`.
pub fn kks_bracket(g: &LieAlgebra, f: &FormalPolynomial, h: &FormalPolynomial) -> Result<FormalPolynomial> {
    g.check_polynomial(f)?;
    g.check_polynomial(h)?;
    let m = g.dim();
    let df: Vec<_> = (0..m).map(|k| f.partial_derivative(k)).collect::<Result<_>>()?;
    let dh: Vec<_> = (0..m).map(|l| h.partial_derivative(l)).collect::<Result<_>>()?;
    let n = truncation_of(f).min(truncation_of(h));
    let mut out = FormalPolynomial::zero(g.basis());
    for k in (0..m).filter(|&k| !df[k].is_zero()) {
        for l in (0..m).filter(|&l| !dh[l].is_zero()) {
            let v = g.bracket_basis(k, l);
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let lin = g.linear_polynomial(&v, n)?;
            out = out.try_add(&lin.try_mul(&df[k].try_mul(&dh[l])?)?)?;
        }
    }
    Ok(out)
}

/// Smallest ħ-truncation among the coefficients.
pub(crate) fn truncation_of(f: &FormalPolynomial) -> u32 {
    f.terms().map(|(_, c)| c.truncation()).min().unwrap_or(DEFAULT_TRUNCATION)
}

/// `σ(x^α)`, the normal-ordered symmetrization, via
/// `σ(x^α) = (1/k) Σ_i α_i ξ_i σ(x^{α - e_i})` with `k = |α|`.
fn sigma_monomial(g: &LieAlgebra, n: u32, alpha: &MultiIndex) -> UEElement {
    let m = g.dim();
    if alpha.degree() == 0 {
        return UEElement::one(m, n);
    }
    let key = (n, alpha.exponents().to_vec());
    if let Some(hit) = g.caches.sigma.lock().expect("cache").get(&key) {
        let mut u = UEElement::zero(m, n);
        for (w, c) in hit {
            u.add_term(w.clone(), c.clone());
        }
        return u;
    }
    let k = alpha.degree();
    let mut out = UEElement::zero(m, n);
    for i in 0..m {
        let a = alpha.get(i);
        if a == 0 {
            continue;
        }
        let lower = sigma_monomial(g, n, &alpha.lowered(i, 1));
        let w = FormalScalar::rational(n, ratio(a, k));
        out.add_scaled(&insert_element(g, i, &lower), &w);
    }
    let cached: Vec<(Word, FormalScalar)> = out.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    g.caches.sigma.lock().expect("cache").insert(key, cached);
    out
}

/// The symmetrization map `σ: Sym(g) → U(g)`.
pub fn pbw_symmetrize(g: &LieAlgebra, a: &FormalPolynomial) -> Result<UEElement> {
    g.check_polynomial(a)?;
    let n = truncation_of(a);
    let mut out = UEElement::zero(g.dim(), n);
    for (alpha, c) in a.terms() {
        out.add_scaled(&sigma_monomial(g, n, alpha), c);
    }
    Ok(out)
}

/// Inverse of [`pbw_symmetrize`]. The longest PBW monomial `ξ^w` of `u` is
/// the leading term of `σ(x^α)` (α the letter counts of `w`), so it can be
/// peeled off; what remains is strictly shorter or equally long with one
/// fewer term.
pub fn pbw_symmetrize_inverse(g: &LieAlgebra, u: &UEElement) -> Result<FormalPolynomial> {
    let m = g.dim();
    if u.dim() != m {
        return Err(crate::Error::IncompatibleAlgebras("element does not belong to this algebra".into()));
    }
    let n = u.truncation();
    let mut rest = u.clone();
    let mut out = FormalPolynomial::zero(g.basis());
    loop {
        let Some((w, c)) = rest
            .terms()
            .max_by(|a, b| a.0.len().cmp(&b.0.len()))
            .map(|(w, c)| (w.clone(), c.clone()))
        else {
            return Ok(out);
        };
        let mut counts = vec![0u32; m];
        for &letter in &w {
            counts[letter] += 1;
        }
        let alpha = MultiIndex::new(counts);
        rest.add_scaled(&sigma_monomial(g, n, &alpha), &-c.clone());
        debug_assert!(rest.coeff(&w).is_none());
        out.add_term(alpha, c);
    }
}

/// `f ⋆_G h = σ^{-1}(σ(f) σ(h))`.
pub fn gutt_star(g: &LieAlgebra, f: &FormalPolynomial, h: &FormalPolynomial) -> Result<FormalPolynomial> {
    let prod = ue_multiply(g, &pbw_symmetrize(g, f)?, &pbw_symmetrize(g, h)?)?;
    pbw_symmetrize_inverse(g, &prod)
}
