use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_scalar;
use crate::scalars::{FormalScalar, Scalar};
use crate::symalg::{Generators, Polynomial};

/// A bilinear form `Λ` on `V`, stored as its matrix in the generator
/// basis: `matrix[i][j] = Λ(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<C: Scalar> {
    gens: Arc<Generators>,
    matrix: Vec<Vec<C>>,
}

impl<C: Scalar> BilinearForm<C> {
    pub fn new(gens: &Arc<Generators>, matrix: Vec<Vec<C>>) -> Result<Self> {
        let n = gens.len();
        if matrix.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: row.len() });
        }
        Ok(Self { gens: gens.clone(), matrix })
    }

    pub fn zero(gens: &Arc<Generators>, like: &C) -> Self {
        let n = gens.len();
        Self {
            gens: gens.clone(),
            matrix: vec![vec![like.zero_like(); n]; n],
        }
    }

    pub fn gens(&self) -> &Arc<Generators> {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &C {
        &self.matrix[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.matrix[i][j] = c;
    }

    pub fn rows(&self) -> &[Vec<C>] {
        &self.matrix
    }

    pub(crate) fn nonzero_entries(&self) -> Vec<(usize, usize, C)> {
        let mut out = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        Self {
            gens: self.gens.clone(),
            matrix: (0..n).map(|i| (0..n).map(|j| self.matrix[j][i].clone()).collect()).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self> {
        if self.gens != other.gens {
            return Err(Error::IncompatibleAlgebras("bilinear forms on different spaces".into()));
        }
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(Self { gens: self.gens.clone(), matrix })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b)
    }

    /// `(Λ + Λ^T) / 2`.
    pub fn symmetric_part(&self) -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        self.zip(&self.transpose(), |a, b| (a.clone() + b).scale(&half))
            .expect("same space")
    }

    /// `(Λ - Λ^T) / 2`.
    pub fn antisymmetric_part(&self) -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        self.zip(&self.transpose(), |a, b| (a.clone() - b).scale(&half))
            .expect("same space")
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..=i).all(|j| (self.matrix[i][j].clone() + &self.matrix[j][i]).is_zero()))
    }

    /// `Λ(v, w) = Σ v_i Λ_ij w_j`.
    pub fn eval(&self, v: &[C], w: &[C]) -> Result<C> {
        let n = self.dim();
        for x in [v, w] {
            if x.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: x.len() });
            }
        }
        let mut acc = v[0].zero_like();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if w[j].is_zero() || self.matrix[i][j].is_zero() {
                    continue;
                }
                acc += &(v[i].clone() * &self.matrix[i][j] * &w[j]);
            }
        }
        Ok(acc)
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> BilinearForm<D> {
        BilinearForm {
            gens: self.gens.clone(),
            matrix: self.matrix.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub(crate) fn check_polynomial(&self, p: &Polynomial<C>) -> Result<()> {
        if **p.gens() == *self.gens {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras(format!(
                "form on [{}], polynomial on [{}]",
                self.gens.names().join(", "),
                p.gens().names().join(", ")
            )))
        }
    }
}

/// Wire form `{"generators":[..], "matrix":[["0","1"],["0","0"]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BilinearFormJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    pub matrix: Vec<Vec<String>>,
}

impl BilinearFormJson {
    pub fn from_form(form: &BilinearForm<FormalScalar>) -> Self {
        Self {
            generators: Some(form.gens().names().to_vec()),
            matrix: form.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        }
    }

    /// Builds the form on `gens`; the embedded generator list, when
    /// present, must agree with it.
    pub fn to_form(&self, gens: &Arc<Generators>, truncation: u32) -> Result<BilinearForm<FormalScalar>> {
        if let Some(names) = &self.generators {
            if names.as_slice() != gens.names() {
                return Err(Error::IncompatibleAlgebras(format!(
                    "form declared on [{}], session uses [{}]",
                    names.join(", "),
                    gens.names().join(", ")
                )));
            }
        }
        let matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s, truncation)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        BilinearForm::new(gens, matrix)
    }
}
