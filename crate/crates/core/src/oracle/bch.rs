use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gutt::{LieAlgebra, LieSeries, BCH_ORDER_CAP};
use crate::scalars::GaussianRational;

/// `(ħ-power, sorted word) ↦ coefficient` in the ordinary `U(g)`, where a
/// word of the exponential series carries ħ to its original length.
type Elem = BTreeMap<(u32, Vec<usize>), GaussianRational>;

fn add_into(out: &mut Elem, key: (u32, Vec<usize>), c: GaussianRational) {
    let slot = out.entry(key.clone()).or_insert_with(GaussianRational::zero);
    *slot += &c;
    if slot.is_zero() {
        out.remove(&key);
    }
}

/// Sorts a word with `ξ_i ξ_j = ξ_j ξ_i + [ξ_i, ξ_j]`, using an explicit
/// worklist of unsorted words.
fn straighten(g: &LieAlgebra, power: u32, word: Vec<usize>, c: GaussianRational, out: &mut Elem) {
    let m = g.dim();
    let mut work = vec![(word, c)];
    while let Some((w, c)) = work.pop() {
        match (1..w.len()).find(|&p| w[p - 1] > w[p]) {
            None => add_into(out, (power, w), c),
            Some(p) => {
                let mut swapped = w.clone();
                swapped.swap(p - 1, p);
                work.push((swapped, c.clone()));
                for k in 0..m {
                    let s = g.structure_constant(k, w[p - 1], w[p]);
                    if s.is_zero() {
                        continue;
                    }
                    let mut shorter = w[..p - 1].to_vec();
                    shorter.push(k);
                    shorter.extend_from_slice(&w[p + 1..]);
                    work.push((shorter, &c * s));
                }
            }
        }
    }
}

fn multiply(g: &LieAlgebra, a: &Elem, b: &Elem, n: u32) -> Elem {
    let mut out = Elem::new();
    for ((pa, wa), ca) in a {
        for ((pb, wb), cb) in b {
            if pa + pb > n {
                continue;
            }
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            straighten(g, pa + pb, w, ca * cb, &mut out);
        }
    }
    out
}

fn scale(a: &Elem, s: &BigRational) -> Elem {
    a.iter().map(|(k, c)| (k.clone(), c.scale(s))).collect()
}

/// `Σ_{k≤n} ħ^k v^k / k!` with `v = Σ v_i ξ_i`.
fn exponential(g: &LieAlgebra, v: &[GaussianRational], n: u32) -> Elem {
    let mut lin = Elem::new();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            lin.insert((1, vec![i]), c.clone());
        }
    }
    let mut out = Elem::new();
    out.insert((0, Vec::new()), GaussianRational::one());
    let mut power = out.clone();
    for k in 1..=n {
        power = scale(&multiply(g, &power, &lin, n), &BigRational::new(BigInt::from(1), BigInt::from(k)));
        for (key, c) in &power {
            add_into(&mut out, key.clone(), c.clone());
        }
    }
    out
}

/// `log(exp(ħX) exp(ħY))` inside the ħ-graded `U(g)`, truncated at `ħ^n`
/// and read off on the length-one words.
pub fn naive_bch_via_ue(g: &LieAlgebra, x: &[GaussianRational], y: &[GaussianRational], n: u32) -> Result<LieSeries> {
    if n > BCH_ORDER_CAP {
        return Err(Error::OrderBeyondCap { order: n, cap: BCH_ORDER_CAP });
    }
    let m = g.dim();
    for v in [x, y] {
        if v.len() != m {
            return Err(Error::LengthMismatch { expected: m, got: v.len() });
        }
    }
    let mut u = multiply(g, &exponential(g, x, n), &exponential(g, y, n), n);
    u.remove(&(0, Vec::new()));
    // log(1 + u) = Σ_j (-1)^{j+1} u^j / j; u has no ħ^0 part.
    let mut log = Elem::new();
    let mut power = u.clone();
    for j in 1..=n.max(1) {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        for (key, c) in scale(&power, &BigRational::new(BigInt::from(sign), BigInt::from(j))) {
            add_into(&mut log, key, c);
        }
        power = multiply(g, &power, &u, n);
    }
    let mut orders = vec![vec![GaussianRational::zero(); m]; n as usize + 1];
    for ((k, w), c) in log {
        if w.len() != 1 {
            return Err(Error::Internal(format!(
                "non-primitive remainder at order {k}: word {w:?} with coefficient {c}"
            )));
        }
        orders[k as usize][w[0]] = c;
    }
    Ok(LieSeries::from_orders(m, orders))
}
