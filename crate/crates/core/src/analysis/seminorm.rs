use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::NumericScalar;
use crate::symalg::{MultiIndex, NumericPolynomial};

/// Weights of the ℓ¹ norm `p(v) = Σ w_i |v_i|` on `V` together with the
/// exponent `R` of `p_R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormSpec {
    weights: Vec<f64>,
    r: f64,
}

impl SeminormSpec {
    pub fn new(weights: Vec<f64>, r: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSeminorm("no weights".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidSeminorm(format!("weight {w} is not strictly positive")));
        }
        if !(r.is_finite() && r >= 0.5) {
            return Err(Error::InvalidSeminorm(format!("R = {r} is below 1/2")));
        }
        Ok(Self { weights, r })
    }

    /// All weights one.
    pub fn uniform(n: usize, r: f64) -> Result<Self> {
        Self::new(vec![1.0; n], r)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn with_r(&self, r: f64) -> Result<Self> {
        Self::new(self.weights.clone(), r)
    }

    /// `p(v)`.
    pub fn norm_of_vector(&self, v: &[NumericScalar]) -> Result<f64> {
        self.check_len(v.len())?;
        Ok(v.iter().zip(&self.weights).map(|(x, w)| w * x.abs()).sum())
    }

    /// `w^α`.
    pub(crate) fn weight_power(&self, alpha: &MultiIndex) -> f64 {
        alpha
            .exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&a, w)| w.powi(a as i32))
            .product()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if n == self.weights.len() {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.weights.len(), got: n })
        }
    }
}

/// `k!^R`, computed in log space so large `k` does not overflow early.
pub(crate) fn factorial_power(k: u32, r: f64) -> f64 {
    let ln: f64 = (2..=k).map(|j| (j as f64).ln()).sum();
    (r * ln).exp()
}

/// `p^{⊗k}` of a homogeneous component.
///
/// The symmetrization projector sends `x^α` (`|α| = k`) to `k!/α!` distinct
/// tensor words, each with coefficient `α!/k!` and weight `w^α`, so its ℓ¹
/// norm is `w^α`. Distinct `α` use disjoint words, so the norm of a
/// component is `Σ_α |c_α| w^α`.
pub fn tensor_norm(spec: &SeminormSpec, component: &NumericPolynomial) -> Result<f64> {
    spec.check_len(component.nvars())?;
    Ok(component.terms().map(|(e, c)| c.abs() * spec.weight_power(e)).sum())
}

/// `p_R(a) = Σ_k k!^R p^{⊗k}(a_k)`.
pub fn seminorm_p_r(spec: &SeminormSpec, a: &NumericPolynomial) -> Result<f64> {
    spec.check_len(a.nvars())?;
    let total: f64 = a
        .terms()
        .map(|(e, c)| factorial_power(e.degree(), spec.r) * c.abs() * spec.weight_power(e))
        .sum();
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::NonFinite)
    }
}

/// The same norm obtained by literally writing each homogeneous
/// component as a tensor: every word `i_1 … i_k` gets the coefficient
/// `c_α α!/k!` of the monomial it symmetrizes to. Exponential in `k`;
/// used to cross-check [`tensor_norm`].
pub fn tensor_norm_by_words(spec: &SeminormSpec, component: &NumericPolynomial, k: u32) -> Result<f64> {
    let n = spec.weights.len();
    spec.check_len(component.nvars())?;
    let k_fact = (1..=k as u64).map(BigInt::from).product::<BigInt>();
    let mut word = vec![0usize; k as usize];
    let mut total = 0.0;
    loop {
        let mut counts = vec![0u32; n];
        for &i in &word {
            counts[i] += 1;
        }
        let alpha = MultiIndex::new(counts);
        if let Some(c) = component.coeff(&alpha) {
            let ratio = alpha.factorial().to_f64().unwrap_or(f64::INFINITY) / k_fact.to_f64().unwrap_or(f64::INFINITY);
            let w: f64 = word.iter().map(|&i| spec.weights[i]).product();
            total += c.abs() * ratio * w;
        }
        // next word in base n
        let mut pos = 0;
        loop {
            if pos == word.len() {
                return Ok(total);
            }
            word[pos] += 1;
            if word[pos] < n {
                break;
            }
            word[pos] = 0;
            pos += 1;
        }
    }
}
