use std::cmp::Ordering;
use std::ops::Add;

/// Exponent vector of a monomial.
///
/// Ordered by total degree first, then lexicographically on the
/// exponents, so `q^2 > q*p > p^2 > q > p > 1` for generators `(q, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exps: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Self { exps, degree: 1 }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Lowers exponent `i` by `k`. Panics if that would go negative.
    pub fn lowered(&self, i: usize, k: u32) -> Self {
        let mut exps = self.exps.clone();
        exps[i] = exps[i].checked_sub(k).expect("exponent underflow");
        Self { exps, degree: self.degree - k }
    }

    pub fn raised(&self, i: usize, k: u32) -> Self {
        let mut exps = self.exps.clone();
        exps[i] += k;
        Self { exps, degree: self.degree + k }
    }

    /// Componentwise difference; `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(exps))
    }

    /// `α!` as an exact integer product.
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.exps
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, &k| acc * crate::scalars::factorial(k))
    }

    /// All `β` with `β <= self` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.exps.len())];
        for &a in &self.exps {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=a).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Self::new).collect()
    }

    /// All multi-indices of length `n` and total degree exactly `d`.
    pub fn of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(MultiIndex::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in (0..=d).rev() {
                prefix.push(k);
                rec(n, d - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex::new(vec![]));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, o: &MultiIndex) -> MultiIndex {
        MultiIndex {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + o.degree,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let q2 = MultiIndex::new(vec![2, 0]);
        let qp = MultiIndex::new(vec![1, 1]);
        let q = MultiIndex::new(vec![1, 0]);
        let p = MultiIndex::new(vec![0, 1]);
        assert!(q2 > qp && qp > q && q > p && p > MultiIndex::zero(2));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::of_degree(3, 5).len(), 21);
        assert_eq!(MultiIndex::new(vec![2, 1]).sub_indices().len(), 6);
    }
}
