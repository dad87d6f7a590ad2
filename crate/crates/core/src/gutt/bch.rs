use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::pbw::{pbw_symmetrize, pbw_symmetrize_inverse};
use super::ue::{ue_multiply, UEElement};
use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalars::{factorial, FormalScalar, GaussianRational};
use crate::symalg::FormalPolynomial;

/// Highest BCH order computed unless a caller raises it explicitly.
pub const BCH_ORDER_CAP: u32 = 8;

/// `Σ_m ħ^m L_m` with each `L_m ∈ g` stored as a coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LieSeries {
    dim: usize,
    /// `orders[m]` is `L_m`; `orders[0]` is always zero.
    orders: Vec<Vec<GaussianRational>>,
}

impl LieSeries {
    pub fn zero(dim: usize, truncation: u32) -> Self {
        Self {
            dim,
            orders: vec![vec![GaussianRational::zero(); dim]; truncation as usize + 1],
        }
    }

    /// `orders[m]` is the coefficient vector of `ħ^m`.
    pub fn from_orders(dim: usize, orders: Vec<Vec<GaussianRational>>) -> Self {
        assert!(!orders.is_empty() && orders.iter().all(|o| o.len() == dim), "malformed series");
        Self { dim, orders }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> u32 {
        (self.orders.len() - 1) as u32
    }

    /// `L_m`.
    pub fn order(&self, m: u32) -> &[GaussianRational] {
        &self.orders[m as usize]
    }

    /// The series as a linear polynomial on `g*` with ħ-series coefficients.
    pub fn to_polynomial(&self, g: &LieAlgebra) -> Result<FormalPolynomial> {
        if g.dim() != self.dim {
            return Err(Error::LengthMismatch { expected: g.dim(), got: self.dim });
        }
        let n = self.truncation();
        let coeffs: Vec<FormalScalar> = (0..self.dim)
            .map(|j| FormalScalar::from_terms(n, (0..=n).map(|m| (m, self.orders[m as usize][j].clone()))))
            .collect();
        FormalPolynomial::linear(g.basis(), &coeffs)
    }

    /// Renders with the algebra's basis names, e.g. `h*X + h*Y + (1/2)*h^2*Z`.
    pub fn display<'a>(&'a self, g: &'a LieAlgebra) -> impl fmt::Display + 'a {
        struct D<'a>(&'a LieSeries, &'a LieAlgebra);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match self.0.to_polynomial(self.1) {
                    Ok(p) => write!(f, "{p}"),
                    Err(_) => f.write_str("<series>"),
                }
            }
        }
        D(self, g)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Letter {
    X,
    Y,
}

/// `BCH(ħX, ħY)` through `ħ^order`, capped at [`BCH_ORDER_CAP`].
pub fn bch(g: &LieAlgebra, x: &[GaussianRational], y: &[GaussianRational], order: u32) -> Result<LieSeries> {
    bch_with_cap(g, x, y, order, BCH_ORDER_CAP)
}

/// Dynkin's formula evaluated in `g`:
///
/// `L_m = Σ_n (-1)^{n-1}/n Σ [X^{r_1} Y^{s_1} … X^{r_n} Y^{s_n}] / (m Π r_i! s_i!)`
///
/// over `r_i + s_i ≥ 1`, `Σ (r_i + s_i) = m`, with the right-nested bracket
/// `[a_1, [a_2, … [a_{m-1}, a_m]…]]`.
pub fn bch_with_cap(g: &LieAlgebra, x: &[GaussianRational], y: &[GaussianRational], order: u32, cap: u32) -> Result<LieSeries> {
    if order > cap {
        return Err(Error::OrderBeyondCap { order, cap });
    }
    let m = g.dim();
    for v in [x, y] {
        if v.len() != m {
            return Err(Error::LengthMismatch { expected: m, got: v.len() });
        }
    }
    let mut series = LieSeries::zero(m, order);
    for total in 1..=order {
        let mut acc = vec![GaussianRational::zero(); m];
        let mut word = Vec::new();
        let mut blocks = Vec::new();
        dynkin_terms(total, &mut word, &mut blocks, &mut |word, blocks| {
            let Some(v) = nested_bracket(g, word, x, y) else { return };
            let n = blocks.len() as i64;
            let mut den = BigInt::from(n) * BigInt::from(total);
            for &(r, s) in blocks.iter() {
                den *= factorial(r) * factorial(s);
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let w = BigRational::new(BigInt::from(sign), den);
            for (a, b) in acc.iter_mut().zip(&v) {
                *a += &b.scale(&w);
            }
        });
        series.orders[total as usize] = acc;
    }
    Ok(series)
}

/// Enumerates every block sequence `(r_1, s_1) … (r_n, s_n)` whose word
/// has length `remaining` more letters.
fn dynkin_terms(
    remaining: u32,
    word: &mut Vec<Letter>,
    blocks: &mut Vec<(u32, u32)>,
    visit: &mut dyn FnMut(&[Letter], &[(u32, u32)]),
) {
    if remaining == 0 {
        if !blocks.is_empty() {
            visit(word, blocks);
        }
        return;
    }
    for t in 1..=remaining {
        for r in 0..=t {
            let s = t - r;
            let len = word.len();
            word.extend(std::iter::repeat_n(Letter::X, r as usize));
            word.extend(std::iter::repeat_n(Letter::Y, s as usize));
            blocks.push((r, s));
            dynkin_terms(remaining - t, word, blocks, visit);
            blocks.pop();
            word.truncate(len);
        }
    }
}

/// `[a_1, [a_2, … [a_{m-1}, a_m]…]]`, or `None` when it vanishes trivially.
fn nested_bracket(g: &LieAlgebra, word: &[Letter], x: &[GaussianRational], y: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    let vec_of = |l: Letter| if l == Letter::X { x } else { y };
    let k = word.len();
    if k >= 2 && word[k - 1] == word[k - 2] {
        return None;
    }
    let mut v = vec_of(word[k - 1]).to_vec();
    for &l in word[..k - 1].iter().rev() {
        v = g.bracket(vec_of(l), &v).expect("lengths checked");
        if v.iter().all(GaussianRational::is_zero) {
            return None;
        }
    }
    Some(v)
}

/// Window of an exponential-identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BchWindow {
    /// Highest ħ-order compared.
    pub orders: u32,
    /// Highest Sym-degree compared.
    pub degree: u32,
    /// Sym-degree at which both exponentials are cut off.
    pub cutoff: u32,
}

impl BchWindow {
    /// The smallest safe cutoff for the given window.
    pub fn new(orders: u32, degree: u32) -> Self {
        Self {
            orders,
            degree,
            cutoff: orders + degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BchReport {
    pub window: BchWindow,
    /// Highest order `r` such that all graded components agree at every
    /// order `≤ r`; `None` if even order 0 differs.
    pub agree_through: Option<u32>,
    /// Largest rational part of any coefficient of the difference.
    pub defect_max: String,
}

impl BchReport {
    pub fn passed(&self) -> bool {
        self.agree_through == Some(self.window.orders)
    }
}

/// `Σ_{k≤K} (Σ v_i x_i)^k / k!` split by degree.
fn exp_components(g: &LieAlgebra, v: &[GaussianRational], cutoff: u32, n: u32) -> Result<Vec<FormalPolynomial>> {
    let lin = g.linear_polynomial(v, n)?;
    exp_of_linear(&lin, cutoff, n)
}

fn exp_of_linear(lin: &FormalPolynomial, cutoff: u32, n: u32) -> Result<Vec<FormalPolynomial>> {
    let mut out = vec![FormalPolynomial::one(lin.gens(), n)];
    for k in 1..=cutoff {
        let next = out[k as usize - 1]
            .try_mul(lin)?
            .scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(k)));
        out.push(next);
    }
    Ok(out)
}

/// Checks `e^ξ ⋆_G e^η = exp(Σ_m (iħ)^{m-1} L_m(ξ, η))` on a window, with
/// `L_m` the Dynkin terms of [`bch`].
///
/// The symmetrizer here sends `x_i` to the rescaled generator, which is
/// `iħ` times the generator of the unrescaled `U(g)`; hence `BCH(ħξ, ħη)`
/// with ħ standing in for `iħ` and one overall factor removed.
///
/// Both exponentials are products of graded pieces `ξ^a/a!`, `η^b/b!`.
/// Under `⋆_G` a component of Sym-degree `d` at order `r` only sees pairs
/// with `a + b = d + r`, so the cutoff must be at least
/// `degree + orders` and only pairs with `a + b ≤ degree + orders` are
/// multiplied.
pub fn check_bch_property(g: &LieAlgebra, xi: &[GaussianRational], eta: &[GaussianRational], window: BchWindow) -> Result<BchReport> {
    let BchWindow { orders: n, degree: d, cutoff: k } = window;
    if k < d + n {
        return Err(Error::TruncationTooSmall { given: k, required: d + n });
    }
    let reach = d + n;
    let ea = exp_components(g, xi, reach.min(k), n)?;
    let eb = exp_components(g, eta, reach.min(k), n)?;
    let sa: Vec<UEElement> = ea.iter().map(|p| pbw_symmetrize(g, p)).collect::<Result<_>>()?;
    let sb: Vec<UEElement> = eb.iter().map(|p| pbw_symmetrize(g, p)).collect::<Result<_>>()?;

    // Σ_a σ(ξ^a/a!) · Σ_{b ≤ reach - a} σ(η^b/b!)
    let mut partial = Vec::with_capacity(sb.len());
    let mut running = UEElement::zero(g.dim(), n);
    for s in &sb {
        running = running.try_add(s)?;
        partial.push(running.clone());
    }
    let mut prod = UEElement::zero(g.dim(), n);
    for (a, s) in sa.iter().enumerate() {
        prod = prod.try_add(&ue_multiply(g, s, &partial[reach as usize - a])?)?;
    }
    let lhs = pbw_symmetrize_inverse(g, &prod)?.truncate_degree(d);

    let series = bch(g, xi, eta, n + 1)?;
    let coeffs: Vec<FormalScalar> = (0..g.dim())
        .map(|j| {
            let terms = (1..=n + 1).map(|m| {
                let c = &series.order(m)[j] * &GaussianRational::i().pow(m - 1);
                (m - 1, c)
            });
            FormalScalar::from_terms(n, terms)
        })
        .collect();
    let zeta = FormalPolynomial::linear(g.basis(), &coeffs)?;
    let rhs_parts = exp_of_linear(&zeta, d, n)?;
    let mut rhs = FormalPolynomial::zero(g.basis());
    for p in &rhs_parts {
        rhs = rhs.try_add(p)?;
    }

    let diff = lhs.try_sub(&rhs)?;
    let mut agree_through = None;
    for r in 0..=n {
        if diff.hbar_coefficient(r)?.is_zero() {
            agree_through = Some(r);
        } else {
            break;
        }
    }
    let defect = diff.max_abs_part();
    Ok(BchReport {
        window,
        agree_through,
        defect_max: if defect.is_zero() { "0".into() } else { crate::scalars::canonical_rational(&defect) },
    })
}
