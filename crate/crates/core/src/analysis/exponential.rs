use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::seminorm::{factorial_power, seminorm_p_r, tensor_norm, SeminormSpec};
use crate::error::{Error, Result};
use crate::scalars::{NumericScalar, Scalar};
use crate::symalg::{Generators, NumericPolynomial, Polynomial};

/// An element of the completion known only through its graded
/// components of degree `≤ cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedElement<C: Scalar> {
    base: Polynomial<C>,
    cutoff: u32,
}

impl<C: Scalar> TruncatedElement<C> {
    /// Drops everything above the cutoff.
    pub fn new(base: &Polynomial<C>, cutoff: u32) -> Self {
        Self {
            base: base.truncate_degree(cutoff),
            cutoff,
        }
    }

    pub fn base(&self) -> &Polynomial<C> {
        &self.base
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn component(&self, k: u32) -> Polynomial<C> {
        self.base.graded_component(k)
    }
}

impl TruncatedElement<NumericScalar> {
    pub fn seminorm(&self, spec: &SeminormSpec) -> Result<f64> {
        seminorm_p_r(spec, &self.base)
    }
}

/// The graded pieces `(αv)^k / k!` for `k = 0..=cutoff`.
pub(crate) fn exponential_components<C: Scalar>(
    gens: &Arc<Generators>,
    v: &[C],
    alpha: &C,
    cutoff: u32,
) -> Result<Vec<Polynomial<C>>> {
    let scaled: Vec<C> = v.iter().map(|x| x.clone() * alpha).collect();
    let lin = Polynomial::linear(gens, &scaled)?;
    let one = alpha.one_like();
    let mut out = vec![Polynomial::constant(gens, one)];
    for k in 1..=cutoff {
        let next = out[k as usize - 1]
            .try_mul(&lin)?
            .scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(k)));
        out.push(next);
    }
    Ok(out)
}

/// `Σ_{k≤K} α^k v^k / k!`.
pub fn truncated_exponential<C: Scalar>(
    gens: &Arc<Generators>,
    v: &[C],
    alpha: &C,
    cutoff: u32,
) -> Result<TruncatedElement<C>> {
    let mut base = Polynomial::zero(gens);
    for c in exponential_components(gens, v, alpha, cutoff)? {
        base = base.try_add(&c)?;
    }
    Ok(TruncatedElement { base, cutoff })
}

/// Partial sums above this count as divergence.
pub const DIVERGENCE_BOUND: f64 = 1e12;
/// Tail required before a series is declared convergent.
pub const TAIL_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConvergenceStatus {
    /// Ratio of consecutive terms settled below one and the geometric
    /// tail bound is under [`TAIL_TOLERANCE`].
    Converged { limit: f64, tail_bound: f64 },
    /// Partial sums exceeded [`DIVERGENCE_BOUND`], or terms stopped
    /// shrinking (ratio at least one).
    Diverged { reason: String },
    /// Neither conclusion reached within `K_max`.
    Undecided { tail_bound: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub r: f64,
    /// `|α| p(v)`.
    pub rate: f64,
    /// `(K, p_R(truncated_exponential(v, α, K)))`.
    pub partial_sums: Vec<(u32, f64)>,
    pub status: ConvergenceStatus,
}

impl ConvergenceReport {
    /// Columns `K,partial_sum`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("K,partial_sum\n");
        for (k, v) in &self.partial_sums {
            let _ = writeln!(s, "{k},{v}");
        }
        s
    }

    pub fn converged(&self) -> bool {
        matches!(self.status, ConvergenceStatus::Converged { .. })
    }

    pub fn diverged(&self) -> bool {
        matches!(self.status, ConvergenceStatus::Diverged { .. })
    }
}

/// Partial sums of `p_R(e^{αv})`, each graded term measured with
/// [`tensor_norm`] on the component `(αv)^k/k!`.
///
/// The component is carried pre-multiplied by `k!^R` so that neither the
/// factorial nor `1/k!` leaves the range of `f64`. For `R ≤ 1` the ratio
/// of consecutive terms, `k^{R-1}|α|p(v)`, is non-increasing in `k`, so
/// once it is below one the remaining tail is bounded by `t_K ρ/(1-ρ)`;
/// the sweep stops there. For `R > 1` the ratio grows without bound and
/// no tail bound is claimed.
pub fn exponential_convergence_report(
    spec: &SeminormSpec,
    v: &[NumericScalar],
    alpha: NumericScalar,
    k_max: u32,
) -> Result<ConvergenceReport> {
    spec.check_len(v.len())?;
    let gens = Generators::numbered("v", v.len())?;
    let r = spec.r();
    let rate = alpha.abs() * spec.norm_of_vector(v)?;
    let scaled: Vec<NumericScalar> = v.iter().map(|x| *x * &alpha).collect();
    let lin: NumericPolynomial = Polynomial::linear(&gens, &scaled)?;
    // k!^R (αv)^k / k!
    let mut component = Polynomial::constant(&gens, NumericScalar::real(1.0));
    let mut terms = Vec::new();
    let mut partial_sums = Vec::new();
    let mut sum = 0.0;
    for k in 0..=k_max {
        if k > 0 {
            component = component.try_mul(&lin)?.scale(&NumericScalar::real((k as f64).powf(r - 1.0)));
        }
        let t = tensor_norm(spec, &component)?;
        if !t.is_finite() {
            return Err(Error::NonFinite);
        }
        sum += t;
        terms.push(t);
        partial_sums.push((k, sum));
        if sum > DIVERGENCE_BOUND {
            let reason = format!("partial sum exceeds {DIVERGENCE_BOUND:e} at K = {k}");
            return Ok(ConvergenceReport {
                r,
                rate,
                partial_sums,
                status: ConvergenceStatus::Diverged { reason },
            });
        }
        if r <= 1.0 && matches!(classify(&terms, sum, r), ConvergenceStatus::Converged { .. }) {
            break;
        }
    }
    let status = classify(&terms, sum, r);
    Ok(ConvergenceReport {
        r,
        rate,
        partial_sums,
        status,
    })
}

fn classify(terms: &[f64], sum: f64, r: f64) -> ConvergenceStatus {
    let last = *terms.last().expect("at least K = 0");
    if last == 0.0 {
        return ConvergenceStatus::Converged { limit: sum, tail_bound: 0.0 };
    }
    if terms.len() < 2 {
        return ConvergenceStatus::Undecided { tail_bound: f64::INFINITY };
    }
    let rho = last / terms[terms.len() - 2];
    if rho >= 1.0 - 1e-12 {
        return ConvergenceStatus::Diverged {
            reason: format!("terms do not decrease (ratio {rho})"),
        };
    }
    if r > 1.0 {
        return ConvergenceStatus::Undecided { tail_bound: f64::INFINITY };
    }
    let tail_bound = last * rho / (1.0 - rho);
    if tail_bound < TAIL_TOLERANCE {
        ConvergenceStatus::Converged { limit: sum, tail_bound }
    } else {
        ConvergenceStatus::Undecided { tail_bound }
    }
}

/// `Σ_{k≤K} k!^{R-1} t^k`, the closed form of `p_R` on a truncated
/// exponential with `t = |α| p(v)`.
pub fn exponential_norm_closed_form(r: f64, rate: f64, cutoff: u32) -> f64 {
    (0..=cutoff).map(|k| factorial_power(k, r - 1.0) * rate.powi(k as i32)).sum()
}
