use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalars::text::{format_sum, power_factor, Term};
use crate::scalars::{hbar_factor, FormalScalar};

/// A word in the basis indices of `g`.
pub type Word = Vec<usize>;

/// An element of the ħ-rescaled enveloping algebra, stored on the PBW
/// basis: every key is a non-decreasing word.
#[derive(Clone, Debug, PartialEq)]
pub struct UEElement {
    dim: usize,
    truncation: u32,
    terms: BTreeMap<Word, FormalScalar>,
}

impl UEElement {
    pub fn zero(dim: usize, truncation: u32) -> Self {
        Self {
            dim,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, truncation: u32) -> Self {
        let mut u = Self::zero(dim, truncation);
        u.terms.insert(Vec::new(), FormalScalar::one(truncation));
        u
    }

    /// The basis element `ξ_i`.
    pub fn generator(dim: usize, i: usize, truncation: u32) -> Result<Self> {
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        let mut u = Self::zero(dim, truncation);
        u.terms.insert(vec![i], FormalScalar::one(truncation));
        Ok(u)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &FormalScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &[usize]) -> Option<&FormalScalar> {
        self.terms.get(word)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest PBW monomial.
    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    /// Adds `c · word`; `word` must already be non-decreasing.
    pub(crate) fn add_term(&mut self, word: Word, c: FormalScalar) {
        debug_assert!(word.windows(2).all(|w| w[0] <= w[1]));
        if c.is_zero() {
            return;
        }
        let c = c.with_truncation(self.truncation);
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Self, s: &FormalScalar) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * s);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.with_truncation(self.truncation.min(other.truncation));
        out.add_scaled(other, &FormalScalar::one(out.truncation));
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.with_truncation(self.truncation.min(other.truncation));
        out.add_scaled(other, &-FormalScalar::one(out.truncation));
        Ok(out)
    }

    pub fn scale(&self, s: &FormalScalar) -> Self {
        let mut out = Self::zero(self.dim, self.truncation.min(s.truncation()));
        out.add_scaled(self, s);
        out
    }

    pub fn with_truncation(&self, n: u32) -> Self {
        let mut out = Self::zero(self.dim, n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras(format!(
                "enveloping algebras of dimension {} and {}",
                self.dim, other.dim
            )))
        }
    }

    /// Renders with the algebra's basis names, e.g. `X*Y - i*h*Z`.
    pub fn display<'a>(&'a self, g: &'a LieAlgebra) -> impl fmt::Display + 'a {
        DisplayUE { u: self, g }
    }
}

struct DisplayUE<'a> {
    u: &'a UEElement,
    g: &'a LieAlgebra,
}

impl fmt::Display for DisplayUE<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut words: Vec<_> = self.u.terms.iter().collect();
        words.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then(a.cmp(b)));
        let mut terms = Vec::new();
        for (w, c) in words {
            let mut letters = Vec::new();
            let mut k = 0;
            while k < w.len() {
                let run = w[k..].iter().take_while(|&&x| x == w[k]).count();
                letters.push(power_factor(self.g.basis().name(w[k]), run as u32));
                k += run;
            }
            for (order, gc) in c.terms() {
                let mut factors = hbar_factor(order);
                factors.extend(letters.iter().cloned());
                terms.push(Term::new(gc.clone(), factors));
            }
        }
        f.write_str(&format_sum(terms))
    }
}

/// Order in which descents are rewritten by [`ue_normal_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RewriteStrategy {
    /// Always rewrite the leftmost descent first.
    LeftToRight,
    /// Always rewrite the rightmost descent first.
    RightToLeft,
}

fn i_hbar_times(g: &LieAlgebra, k: usize, i: usize, j: usize, n: u32) -> Option<FormalScalar> {
    let c = g.structure_constant(k, i, j);
    (!c.is_zero()).then(|| FormalScalar::monomial(n, 1, crate::scalars::GaussianRational::i() * c))
}

/// Brings an arbitrary word into PBW normal form with
/// `ξ_i ξ_j = ξ_j ξ_i + iħ [ξ_i, ξ_j]` for `i > j`.
pub fn ue_normal_order(g: &LieAlgebra, word: &[usize], strategy: RewriteStrategy, truncation: u32) -> Result<UEElement> {
    let m = g.dim();
    if let Some(&bad) = word.iter().find(|&&i| i >= m) {
        return Err(Error::IndexOutOfRange { index: bad, dim: m });
    }
    let mut memo = HashMap::new();
    Ok(rewrite(g, word.to_vec(), strategy, truncation, &mut memo))
}

fn rewrite(
    g: &LieAlgebra,
    word: Word,
    strategy: RewriteStrategy,
    n: u32,
    memo: &mut HashMap<Word, UEElement>,
) -> UEElement {
    if let Some(u) = memo.get(&word) {
        return u.clone();
    }
    let mut descents = (0..word.len().saturating_sub(1)).filter(|&p| word[p] > word[p + 1]);
    let pos = match strategy {
        RewriteStrategy::LeftToRight => descents.next(),
        RewriteStrategy::RightToLeft => descents.last(),
    };
    let out = match pos {
        None => {
            let mut u = UEElement::zero(g.dim(), n);
            u.add_term(word.clone(), FormalScalar::one(n));
            u
        }
        Some(p) => {
            let (i, j) = (word[p], word[p + 1]);
            let mut swapped = word.clone();
            swapped.swap(p, p + 1);
            let mut u = rewrite(g, swapped, strategy, n, memo);
            for k in 0..g.dim() {
                if let Some(c) = i_hbar_times(g, k, i, j, n) {
                    let mut shorter = word[..p].to_vec();
                    shorter.push(k);
                    shorter.extend_from_slice(&word[p + 2..]);
                    u.add_scaled(&rewrite(g, shorter, strategy, n, memo), &c);
                }
            }
            u
        }
    };
    memo.insert(word, out.clone());
    out
}

/// `ξ_i · w` for a sorted word `w`, in normal form. Memoized per algebra.
fn insert(g: &LieAlgebra, n: u32, i: usize, w: &[usize]) -> Vec<(Word, FormalScalar)> {
    if w.first().is_none_or(|&w0| i <= w0) {
        let mut word = Vec::with_capacity(w.len() + 1);
        word.push(i);
        word.extend_from_slice(w);
        return vec![(word, FormalScalar::one(n))];
    }
    let key = (n, i, w.to_vec());
    if let Some(hit) = g.caches.insert.lock().expect("cache").get(&key) {
        return hit.clone();
    }
    // ξ_i ξ_{w0} rest = ξ_{w0} (ξ_i rest) + iħ Σ_k c^k_{i w0} ξ_k rest
    let (w0, rest) = (w[0], &w[1..]);
    let mut out = UEElement::zero(g.dim(), n);
    let tail = element_of(g.dim(), n, insert(g, n, i, rest));
    out.add_scaled(&insert_element(g, w0, &tail), &FormalScalar::one(n));
    for k in 0..g.dim() {
        if let Some(c) = i_hbar_times(g, k, i, w0, n) {
            for (word, d) in insert(g, n, k, rest) {
                out.add_term(word, &d * &c);
            }
        }
    }
    let result: Vec<_> = out.terms.into_iter().collect();
    g.caches.insert.lock().expect("cache").insert(key, result.clone());
    result
}

fn element_of(dim: usize, n: u32, terms: Vec<(Word, FormalScalar)>) -> UEElement {
    let mut u = UEElement::zero(dim, n);
    for (w, c) in terms {
        u.add_term(w, c);
    }
    u
}

/// `ξ_i · u`.
pub(crate) fn insert_element(g: &LieAlgebra, i: usize, u: &UEElement) -> UEElement {
    let n = u.truncation;
    let mut out = UEElement::zero(u.dim, n);
    for (w, c) in &u.terms {
        for (word, d) in insert(g, n, i, w) {
            out.add_term(word, &d * c);
        }
    }
    out
}

/// Product in the enveloping algebra.
pub fn ue_multiply(g: &LieAlgebra, a: &UEElement, b: &UEElement) -> Result<UEElement> {
    a.check(b)?;
    if a.dim != g.dim() {
        return Err(Error::IncompatibleAlgebras("element does not belong to this algebra".into()));
    }
    let n = a.truncation.min(b.truncation);
    let b = b.with_truncation(n);
    let mut out = UEElement::zero(g.dim(), n);
    for (w, c) in &a.terms {
        let mut tmp = b.clone();
        for &letter in w.iter().rev() {
            tmp = insert_element(g, letter, &tmp);
        }
        out.add_scaled(&tmp, c);
    }
    Ok(out)
}

pub(crate) fn ratio(num: u32, den: u32) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
