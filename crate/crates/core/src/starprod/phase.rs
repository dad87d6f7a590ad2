use std::sync::Arc;

use super::{apply_equivalence, star, BilinearForm, DifferentialOperator, OrderingOperator};
use crate::error::{Error, Result};
use crate::scalars::{FormalScalar, Scalar};
use crate::symalg::{FormalPolynomial, Generators, MultiIndex};

/// Phase space with generators `(q_1..q_n, p_1..p_n)` and the standard
/// and Weyl orderings, both at `z = -iħ`.
#[derive(Clone, Debug)]
pub struct PhaseSpace {
    phase: Arc<Generators>,
    config: Arc<Generators>,
    truncation: u32,
}

impl PhaseSpace {
    /// `q, p` for one degree of freedom, `q1..qn, p1..pn` otherwise.
    pub fn new(dof: usize, truncation: u32) -> Result<Self> {
        let names: Vec<String> = if dof == 1 {
            vec!["q".into(), "p".into()]
        } else {
            (1..=dof).map(|k| format!("q{k}")).chain((1..=dof).map(|k| format!("p{k}"))).collect()
        };
        Self::from_generators(&Generators::new(names)?, truncation)
    }

    /// Splits an even generator list into positions then momenta.
    pub fn from_generators(phase: &Arc<Generators>, truncation: u32) -> Result<Self> {
        if phase.len() % 2 != 0 {
            return Err(Error::InvalidGenerators(
                "phase space needs an even number of generators (positions, then momenta)".into(),
            ));
        }
        let dof = phase.len() / 2;
        let config = Generators::new(phase.names()[..dof].iter().cloned())?;
        Ok(Self {
            phase: phase.clone(),
            config,
            truncation,
        })
    }

    pub fn dof(&self) -> usize {
        self.config.len()
    }

    pub fn generators(&self) -> &Arc<Generators> {
        &self.phase
    }

    pub fn config(&self) -> &Arc<Generators> {
        &self.config
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// `-iħ`.
    pub fn z(&self) -> FormalScalar {
        FormalScalar::minus_i_hbar(self.truncation)
    }

    /// `Λ_std(e_{p_i}, e_{q_i}) = 1`, all other entries zero.
    pub fn standard_form(&self) -> BilinearForm<FormalScalar> {
        let n = self.dof();
        let mut form = BilinearForm::zero(&self.phase, &FormalScalar::zero(self.truncation));
        for i in 0..n {
            form.set(n + i, i, FormalScalar::one(self.truncation));
        }
        form
    }

    pub fn weyl_form(&self) -> BilinearForm<FormalScalar> {
        self.standard_form().antisymmetric_part()
    }

    /// `N = exp(z Δ_S)` with `S` the symmetric part of the standard form.
    pub fn n_operator(&self) -> OrderingOperator<FormalScalar> {
        OrderingOperator::new(self.standard_form().symmetric_part(), self.z()).expect("symmetric part")
    }

    pub fn star_standard(&self, f: &FormalPolynomial, g: &FormalPolynomial) -> Result<FormalPolynomial> {
        star(&self.standard_form(), &self.z(), f, g)
    }

    pub fn star_weyl(&self, f: &FormalPolynomial, g: &FormalPolynomial) -> Result<FormalPolynomial> {
        star(&self.weyl_form(), &self.z(), f, g)
    }

    /// `N^{-1}(N f ⋆_std N g)`, the second route to the Weyl product.
    pub fn star_weyl_via_n(&self, f: &FormalPolynomial, g: &FormalPolynomial) -> Result<FormalPolynomial> {
        apply_equivalence(&self.n_operator(), &self.standard_form(), &self.z(), f, g)
    }

    /// `ρ_std(q^α p^β) = (-iħ)^{|β|} q^α ∂^β`, extended linearly.
    pub fn std_rep(&self, f: &FormalPolynomial) -> Result<DifferentialOperator> {
        self.check(f)?;
        let n = self.dof();
        let z = self.z();
        let mut d = DifferentialOperator::zero(&self.config);
        for (e, c) in f.terms() {
            let ex = e.exponents();
            let (a, b) = (MultiIndex::new(ex[..n].to_vec()), MultiIndex::new(ex[n..].to_vec()));
            let factor = Scalar::pow(&z, b.degree());
            d.add_term(a, b, c * &factor);
        }
        Ok(d)
    }

    /// `ρ_W(f) = ρ_std(N f)`.
    pub fn weyl_rep(&self, f: &FormalPolynomial) -> Result<DifferentialOperator> {
        self.std_rep(&self.n_operator().apply(f)?)
    }

    fn check(&self, f: &FormalPolynomial) -> Result<()> {
        if **f.gens() == *self.phase {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras(format!(
                "expected polynomial on [{}]",
                self.phase.names().join(", ")
            )))
        }
    }
}
