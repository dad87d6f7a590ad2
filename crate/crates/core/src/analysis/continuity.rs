use serde::Serialize;

use super::exponential::truncated_exponential;
use super::seminorm::{factorial_power, tensor_norm, SeminormSpec};
use super::TAIL_TOLERANCE;
use crate::error::{Error, Result};
use crate::scalars::NumericScalar;
use crate::starprod::{star, BilinearForm};

/// Graded `p_R` partial sums of `a ⋆ b` for two truncated exponentials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub r: f64,
    pub cutoff: u32,
    /// `Σ_{k≤d} k!^R p^{⊗k}((a⋆b)_k)` for `d = 0, 1, …`.
    pub partial_sums: Vec<f64>,
    pub monotone: bool,
    /// Mass of the graded terms above the cutoff.
    pub tail: f64,
}

impl ContinuityReport {
    pub fn passed(&self) -> bool {
        self.monotone && self.tail < TAIL_TOLERANCE
    }
}

/// Empirical absolute-convergence check: `a = e^v`, `b = e^w`, both cut
/// at Sym-degree `cutoff`, multiplied with a numeric `z`. No bound on
/// `p_R(a ⋆ b)` is asserted; the report only shows the partial sums
/// settle.
pub fn continuity_diagnostic(
    spec: &SeminormSpec,
    form: &BilinearForm<NumericScalar>,
    z: NumericScalar,
    v: &[NumericScalar],
    w: &[NumericScalar],
    cutoff: u32,
) -> Result<ContinuityReport> {
    let gens = form.gens();
    spec.check_len(gens.len())?;
    let one = NumericScalar::real(1.0);
    let a = truncated_exponential(gens, v, &one, cutoff)?;
    let b = truncated_exponential(gens, w, &one, cutoff)?;
    let prod = star(form, &z, a.base(), b.base())?;
    let top = prod.degree().unwrap_or(0);
    let mut partial_sums = Vec::with_capacity(top as usize + 1);
    let mut total = 0.0;
    let mut tail = 0.0;
    for k in 0..=top {
        let t = factorial_power(k, spec.r()) * tensor_norm(spec, &prod.graded_component(k))?;
        if !t.is_finite() {
            return Err(Error::NonFinite);
        }
        total += t;
        if k > cutoff {
            tail += t;
        }
        partial_sums.push(total);
    }
    let monotone = partial_sums.windows(2).all(|p| p[1] >= p[0]);
    Ok(ContinuityReport {
        r: spec.r(),
        cutoff,
        partial_sums,
        monotone,
        tail,
    })
}
