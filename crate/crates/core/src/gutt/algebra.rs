use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::ue::Word;
use crate::error::{Error, Result};
use crate::parse::parse_scalar;
use crate::scalars::text::{format_sum, Term};
use crate::scalars::{FormalScalar, GaussianRational};
use crate::symalg::{FormalPolynomial, Generators};

type Terms = Vec<(Word, FormalScalar)>;

/// Memo tables shared by every clone of one algebra.
#[derive(Default)]
pub(crate) struct Caches {
    /// `(truncation, i, sorted word) ↦ ξ_i · word` in normal form.
    pub(crate) insert: Mutex<HashMap<(u32, usize, Word), Terms>>,
    /// `(truncation, exponent vector) ↦ σ(x^α)`.
    pub(crate) sigma: Mutex<HashMap<(u32, Vec<u32>), Terms>>,
}

/// A finite-dimensional Lie algebra given by structure constants
/// `[ξ_i, ξ_j] = Σ_k c^k_ij ξ_k`.
///
/// The basis names double as the names of the linear coordinates on the
/// dual, so polynomials on `g*` are written in the same letters.
#[derive(Clone)]
pub struct LieAlgebra {
    basis: Arc<Generators>,
    /// `c[k][i][j]`.
    c: Vec<Vec<Vec<GaussianRational>>>,
    pub(crate) caches: Arc<Caches>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.c == other.c
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("basis", &self.basis.names())
            .field("c", &self.c)
            .finish()
    }
}

impl LieAlgebra {
    /// Checks antisymmetry and the Jacobi identity.
    pub fn new(basis: Arc<Generators>, c: Vec<Vec<Vec<GaussianRational>>>) -> Result<Self> {
        let m = basis.len();
        if c.len() != m {
            return Err(Error::LengthMismatch { expected: m, got: c.len() });
        }
        for ck in &c {
            if ck.len() != m {
                return Err(Error::LengthMismatch { expected: m, got: ck.len() });
            }
            if let Some(row) = ck.iter().find(|r| r.len() != m) {
                return Err(Error::LengthMismatch { expected: m, got: row.len() });
            }
        }
        for (k, ck) in c.iter().enumerate() {
            for i in 0..m {
                for j in 0..=i {
                    if !(&ck[i][j] + &ck[j][i]).is_zero() {
                        return Err(Error::InvalidLieAlgebra(format!(
                            "structure constants not antisymmetric at c^{k}_{{{i}{j}}}"
                        )));
                    }
                }
            }
        }
        let g = Self {
            basis,
            c,
            caches: Arc::default(),
        };
        g.check_jacobi()?;
        Ok(g)
    }

    fn check_jacobi(&self) -> Result<()> {
        let m = self.dim();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for s in 0..m {
                        let mut acc = GaussianRational::zero();
                        for r in 0..m {
                            acc += &(&self.c[r][i][j] * &self.c[s][r][k]);
                            acc += &(&self.c[r][j][k] * &self.c[s][r][i]);
                            acc += &(&self.c[r][k][i] * &self.c[s][r][j]);
                        }
                        if !acc.is_zero() {
                            return Err(Error::InvalidLieAlgebra(format!(
                                "Jacobi identity fails on ({}, {}, {})",
                                self.basis.name(i),
                                self.basis.name(j),
                                self.basis.name(k)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds from the brackets of pairs `i < j` (or any order; the
    /// opposite entry is filled by antisymmetry). Missing pairs are zero.
    pub fn from_brackets(basis: Arc<Generators>, brackets: &[(usize, usize, Vec<GaussianRational>)]) -> Result<Self> {
        let m = basis.len();
        let mut c = vec![vec![vec![GaussianRational::zero(); m]; m]; m];
        let mut seen = vec![vec![false; m]; m];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx >= m {
                    return Err(Error::IndexOutOfRange { index: idx, dim: m });
                }
            }
            if coeffs.len() != m {
                return Err(Error::LengthMismatch { expected: m, got: coeffs.len() });
            }
            if seen[i][j] {
                return Err(Error::InvalidLieAlgebra(format!("bracket ({i}, {j}) given twice")));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            if i == j && coeffs.iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidLieAlgebra(format!("[ξ_{i}, ξ_{i}] must vanish")));
            }
            for (k, x) in coeffs.iter().enumerate() {
                c[k][i][j] = x.clone();
                c[k][j][i] = -x.clone();
            }
        }
        Self::new(basis, c)
    }

    /// Heisenberg algebra `[X, Y] = Z`.
    pub fn heisenberg() -> Self {
        let basis = Generators::new(["X", "Y", "Z"]).expect("names");
        let one = GaussianRational::one;
        let zero = GaussianRational::zero;
        Self::from_brackets(basis, &[(0, 1, vec![zero(), zero(), one()])]).expect("h3")
    }

    /// `sl2`: `[H, E] = 2E`, `[H, F] = -2F`, `[E, F] = H`.
    pub fn sl2() -> Self {
        let basis = Generators::new(["H", "E", "F"]).expect("names");
        let n = GaussianRational::from_integer;
        Self::from_brackets(
            basis,
            &[
                (0, 1, vec![n(0), n(2), n(0)]),
                (0, 2, vec![n(0), n(0), n(-2)]),
                (1, 2, vec![n(1), n(0), n(0)]),
            ],
        )
        .expect("sl2")
    }

    pub fn abelian(basis: Arc<Generators>) -> Self {
        Self::from_brackets(basis, &[]).expect("abelian")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Arc<Generators> {
        &self.basis
    }

    /// `c^k_ij`.
    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> &GaussianRational {
        &self.c[k][i][j]
    }

    /// Coefficient vector of `[ξ_i, ξ_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<GaussianRational> {
        (0..self.dim()).map(|k| self.c[k][i][j].clone()).collect()
    }

    /// Bracket of two coefficient vectors.
    pub fn bracket(&self, u: &[GaussianRational], v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        let m = self.dim();
        for x in [u, v] {
            if x.len() != m {
                return Err(Error::LengthMismatch { expected: m, got: x.len() });
            }
        }
        let mut out = vec![GaussianRational::zero(); m];
        for i in (0..m).filter(|&i| !u[i].is_zero()) {
            for j in (0..m).filter(|&j| !v[j].is_zero()) {
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[k][i][j].is_zero() {
                        *o += &(&uv * &self.c[k][i][j]);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(GaussianRational::is_zero)
    }

    /// `Σ v_i x_i` as a polynomial on `g*`.
    pub fn linear_polynomial(&self, v: &[GaussianRational], truncation: u32) -> Result<FormalPolynomial> {
        let coeffs: Vec<FormalScalar> = v.iter().map(|c| FormalScalar::constant(truncation, c.clone())).collect();
        FormalPolynomial::linear(&self.basis, &coeffs)
    }

    pub(crate) fn check_polynomial(&self, p: &FormalPolynomial) -> Result<()> {
        if **p.gens() == *self.basis {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras(format!(
                "polynomial on [{}], algebra with basis [{}]",
                p.gens().names().join(", "),
                self.basis.names().join(", ")
            )))
        }
    }
}

/// Wire form: `{"dim":3,"basis":["X","Y","Z"],"brackets":[{"i":0,"j":1,"coeffs":["0","0","1"]}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

impl LieAlgebraJson {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let m = g.dim();
        let mut brackets = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let v = g.bracket_basis(i, j);
                if v.iter().any(|x| !x.is_zero()) {
                    brackets.push(BracketJson {
                        i,
                        j,
                        coeffs: v.iter().map(|c| format_sum([Term::new(c.clone(), Vec::new())])).collect(),
                    });
                }
            }
        }
        Self {
            dim: m,
            basis: g.basis().names().to_vec(),
            brackets,
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        if self.basis.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: self.basis.len() });
        }
        let basis = Generators::new(self.basis.iter().cloned())?;
        let mut brackets = Vec::new();
        for b in &self.brackets {
            let coeffs = b
                .coeffs
                .iter()
                .map(|s| {
                    let c = parse_scalar(s, 1)?;
                    if !c.coeff(1).is_zero() {
                        return Err(Error::InvalidLieAlgebra(format!("structure constant `{s}` depends on h")));
                    }
                    Ok(c.coeff(0))
                })
                .collect::<Result<Vec<_>>>()?;
            brackets.push((b.i, b.j, coeffs));
        }
        LieAlgebra::from_brackets(basis, &brackets)
    }
}
