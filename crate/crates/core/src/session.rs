//! Session configuration: generators, truncation, the active structure
//! (a constant form `Λ` or a Lie algebra) and the seminorm.
//!
//! ```json
//! {"generators":["q","p"],"truncation":8,"lambda":{"matrix":[["0","0"],["1","0"]]},
//!  "z":"-i*h","seminorm":{"weights":[1,1],"R":0.5}}
//! ```
//!
//! Without `generators`, `lambda` or `lie` the session is the standard
//! ordering on `(q, p)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::analysis::SeminormSpec;
use crate::error::{Error, Result};
use crate::gutt::{LieAlgebra, LieAlgebraJson};
use crate::parse::{eval_expression, parse_scalar, EvalOutput, RESERVED};
use crate::scalars::{FormalScalar, DEFAULT_TRUNCATION};
use crate::starprod::{BilinearForm, BilinearFormJson, PhaseSpace};
use crate::symalg::{FormalPolynomial, Generators};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<BilinearFormJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieAlgebraJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seminorm: Option<SeminormConfig>,
    /// Real value substituted for ħ when a numeric evaluation is needed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar_value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormConfig {
    pub weights: Vec<f64>,
    #[serde(rename = "R")]
    pub r: f64,
}

/// The algebraic structure commands operate with.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Constant(BilinearForm<FormalScalar>),
    Lie(LieAlgebra),
}

#[derive(Clone, Debug)]
pub struct Session {
    gens: Arc<Generators>,
    truncation: u32,
    structure: Option<Structure>,
    z: FormalScalar,
    seminorm: SeminormSpec,
    hbar_value: f64,
}

fn check_names(names: &[String]) -> Result<()> {
    for n in names {
        if RESERVED.contains(&n.as_str()) {
            return Err(Error::InvalidGenerators(format!("`{n}` is reserved and cannot name a generator")));
        }
        let mut chars = n.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidGenerators(format!("`{n}` is not an identifier")));
        }
    }
    Ok(())
}

impl Session {
    /// The standard-ordering preset on `(q, p)`.
    pub fn standard(truncation: u32) -> Self {
        let ps = PhaseSpace::new(1, truncation).expect("q, p");
        Self {
            gens: ps.generators().clone(),
            truncation,
            structure: Some(Structure::Constant(ps.standard_form())),
            z: ps.z(),
            seminorm: SeminormSpec::uniform(2, 0.5).expect("valid"),
            hbar_value: 1.0,
        }
    }

    /// A Lie-algebra session on its dual.
    pub fn lie(g: LieAlgebra, truncation: u32) -> Self {
        let n = g.dim();
        Self {
            gens: g.basis().clone(),
            truncation,
            structure: Some(Structure::Lie(g)),
            z: FormalScalar::minus_i_hbar(truncation),
            seminorm: SeminormSpec::uniform(n, 0.5).expect("valid"),
            hbar_value: 1.0,
        }
    }

    /// `truncation` overrides the configured value when given.
    pub fn from_config(cfg: &SessionConfig, truncation: Option<u32>) -> Result<Self> {
        let n = truncation.or(cfg.truncation).unwrap_or(DEFAULT_TRUNCATION);
        if cfg.lambda.is_some() && cfg.lie.is_some() {
            return Err(Error::InvalidInput("configure either `lambda` or `lie`, not both".into()));
        }
        let mut session = match (&cfg.lie, &cfg.generators, &cfg.lambda) {
            (Some(lie), gens, _) => {
                let g = lie.to_algebra()?;
                check_names(g.basis().names())?;
                if let Some(names) = gens {
                    if names.as_slice() != g.basis().names() {
                        return Err(Error::IncompatibleAlgebras(
                            "`generators` must match the Lie algebra basis".into(),
                        ));
                    }
                }
                Self::lie(g, n)
            }
            (None, None, None) => Self::standard(n),
            (None, gens, lambda) => {
                let names = match (gens, lambda) {
                    (Some(names), _) => names.clone(),
                    (None, Some(BilinearFormJson { generators: Some(names), .. })) => names.clone(),
                    _ => Self::standard(n).gens.names().to_vec(),
                };
                check_names(&names)?;
                let gens = Generators::new(names)?;
                let structure = lambda.as_ref().map(|l| l.to_form(&gens, n)).transpose()?.map(Structure::Constant);
                let k = gens.len();
                Self {
                    gens,
                    truncation: n,
                    structure,
                    z: FormalScalar::minus_i_hbar(n),
                    seminorm: SeminormSpec::uniform(k, 0.5)?,
                    hbar_value: 1.0,
                }
            }
        };
        if let Some(z) = &cfg.z {
            session.z = parse_scalar(z, n)?;
        }
        if let Some(s) = &cfg.seminorm {
            session.seminorm = SeminormSpec::new(s.weights.clone(), s.r)?;
            session.seminorm.check_len(session.gens.len())?;
        }
        if let Some(h) = cfg.hbar_value {
            if !h.is_finite() {
                return Err(Error::NonFinite);
            }
            session.hbar_value = h;
        }
        Ok(session)
    }

    pub fn generators(&self) -> &Arc<Generators> {
        &self.gens
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn structure(&self) -> Option<&Structure> {
        self.structure.as_ref()
    }

    pub fn z(&self) -> &FormalScalar {
        &self.z
    }

    pub fn seminorm(&self) -> &SeminormSpec {
        &self.seminorm
    }

    pub fn hbar_value(&self) -> f64 {
        self.hbar_value
    }

    pub fn set_hbar_value(&mut self, h: f64) {
        self.hbar_value = h;
    }

    pub fn set_seminorm(&mut self, spec: SeminormSpec) -> Result<()> {
        spec.check_len(self.gens.len())?;
        self.seminorm = spec;
        Ok(())
    }

    /// The constant form, or an error naming what is configured instead.
    pub fn form(&self) -> Result<&BilinearForm<FormalScalar>> {
        match &self.structure {
            Some(Structure::Constant(f)) => Ok(f),
            Some(Structure::Lie(_)) => Err(Error::InvalidInput(
                "this command needs a constant form `lambda`; the session has a Lie algebra".into(),
            )),
            None => Err(Error::InvalidInput("no `lambda` configured".into())),
        }
    }

    pub fn lie_algebra(&self) -> Result<&LieAlgebra> {
        match &self.structure {
            Some(Structure::Lie(g)) => Ok(g),
            Some(Structure::Constant(_)) => Err(Error::InvalidInput(
                "this command needs a Lie algebra (`lie` in the config or --algebra)".into(),
            )),
            None => Err(Error::InvalidInput("no Lie algebra configured".into())),
        }
    }

    /// Phase-space view of the generators (positions first, then momenta).
    pub fn phase_space(&self) -> Result<PhaseSpace> {
        PhaseSpace::from_generators(&self.gens, self.truncation)
    }

    pub fn parse(&self, src: &str) -> Result<EvalOutput> {
        eval_expression(src, &self.gens, self.truncation)
    }

    pub fn parse_polynomial(&self, src: &str) -> Result<FormalPolynomial> {
        Ok(self.parse(src)?.value)
    }
}
