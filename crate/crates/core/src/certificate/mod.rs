//! Serializable certificates and their independent checker.
//!
//! Every certificate carries enough exact data to be re-checked from the
//! payload alone: the checker rebuilds the algebra and polynomial spaces,
//! recomputes brackets and reductions directly, and uses its own
//! determinant routine. It never calls the producing algorithms.

mod verify;

pub use verify::{verify, VerifyError};

use crate::liealg::{AlgebraJson, LieAlgebra, LieError};
use crate::poisson::{ActingSet, Monomial, OrbitIdeal, PoissonError, Polynomial};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub const SCHEMA: &str = "nogo-certificate";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: Payload,
    /// Set only by the independent checker.
    #[serde(default)]
    pub checked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    DerivedIdeal,
    BracketDecomposition,
    GramPositivity,
    TrivialityConclusion,
    FeasibilityVerdict,
    AdInvariance,
    Minimality,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload")]
pub enum Payload {
    DerivedIdeal(DerivedIdealPayload),
    BracketDecomposition(BracketDecompositionPayload),
    GramPositivity(GramPositivityPayload),
    TrivialityConclusion(TrivialityPayload),
    FeasibilityVerdict(crate::nogo::FeasibilityPayload),
    AdInvariance(AdInvariancePayload),
    Minimality(MinimalityPayload),
}

impl Payload {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Payload::DerivedIdeal(_) => CertificateKind::DerivedIdeal,
            Payload::BracketDecomposition(_) => CertificateKind::BracketDecomposition,
            Payload::GramPositivity(_) => CertificateKind::GramPositivity,
            Payload::TrivialityConclusion(_) => CertificateKind::TrivialityConclusion,
            Payload::FeasibilityVerdict(_) => CertificateKind::FeasibilityVerdict,
            Payload::AdInvariance(_) => CertificateKind::AdInvariance,
            Payload::Minimality(_) => CertificateKind::Minimality,
        }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("not valid JSON: {0}")]
    Syntax(String),
    #[error("unsupported certificate schema {schema:?} version {version}")]
    Schema { schema: String, version: String },
    #[error("certificate does not match the schema: {0}")]
    Shape(String),
}

impl Certificate {
    pub fn new(body: Payload) -> Self {
        Certificate {
            schema: SCHEMA.into(),
            schema_version: SCHEMA_VERSION,
            body,
            checked: false,
        }
    }

    pub fn kind(&self) -> CertificateKind {
        self.body.kind()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    /// Parses with the schema header checked before the payload.
    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| LoadError::Syntax(e.to_string()))?;
        let schema = v.get("schema").and_then(|s| s.as_str()).unwrap_or("");
        let version = v.get("schema_version");
        if schema != SCHEMA || version.and_then(|x| x.as_u64()) != Some(SCHEMA_VERSION as u64) {
            return Err(LoadError::Schema {
                schema: schema.to_string(),
                version: version.map_or("missing".into(), |x| x.to_string()),
            });
        }
        serde_json::from_value(v).map_err(|e| LoadError::Shape(e.to_string()))
    }
}

/// Algebra, orbit ideal and degree cap a certificate refers to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Setting {
    pub algebra: AlgebraJson,
    /// Generators of the orbit ideal, if any.
    pub ideal: Option<Vec<Polynomial>>,
    pub k: u32,
    pub max_dim: usize,
}

#[derive(Debug, Error)]
pub enum SettingError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

impl Setting {
    pub fn new(l: &LieAlgebra, ideal: Option<&OrbitIdeal>, k: u32, max_dim: usize) -> Self {
        Setting {
            algebra: l.to_json(),
            ideal: ideal.map(|i| i.relations().iter().map(|r| r.poly.clone()).collect()),
            k,
            max_dim,
        }
    }

    pub fn algebra(&self) -> Result<LieAlgebra, SettingError> {
        Ok(self.algebra.to_algebra()?)
    }

    pub fn orbit_ideal(&self) -> Result<Option<OrbitIdeal>, SettingError> {
        Ok(match &self.ideal {
            None => None,
            Some(rels) => Some(OrbitIdeal::new(rels.clone())?),
        })
    }
}

/// `Δ(P^k) = P_0^k`: Δ, its normalized left null vector, and an explicit
/// preimage of every `e_a - mean(e_a)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedIdealPayload {
    pub setting: Setting,
    pub basis: Vec<Monomial>,
    #[serde(with = "crate::rational::serde_rational_rows")]
    pub laplacian: Vec<Vec<Rational>>,
    pub rank: usize,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub mean: Vec<Rational>,
    pub preimages: Vec<Preimage>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preimage {
    /// Basis index `a` of the target `e_a - mean(e_a)`.
    pub target: usize,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub coords: Vec<Rational>,
}

/// `f = sum {u_i, v_i}` with `g` the Laplacian preimage used to build it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketDecompositionPayload {
    pub setting: Setting,
    pub f: Polynomial,
    pub g: Polynomial,
    pub pairs: Vec<(Polynomial, Polynomial)>,
}

/// Leading principal minors of `G_ab = mean(e_a e_b)`, with the mean on
/// degree `2k` included for recomputation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramPositivityPayload {
    pub setting: Setting,
    pub mean_degree: u32,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub mean: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational_rows")]
    pub gram: Vec<Vec<Rational>>,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub minors: Vec<Rational>,
}

/// `mean({f,g} h + g {f,h}) = 0` over basis triples and seeded samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdInvariancePayload {
    pub setting: Setting,
    pub acting: ActingSet,
    pub mean_degree: u32,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub mean: Vec<Rational>,
    pub triples: usize,
    pub samples: usize,
    pub seed: u64,
    #[serde(with = "crate::rational::serde_rational")]
    pub max_residual: Rational,
}

/// A generation tree showing that `[b, h]` generates `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimalityPayload {
    pub algebra: AlgebraJson,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub h: Vec<Rational>,
    pub steps: Vec<GenerationStep>,
    /// Span dimension after each closure round.
    pub chain: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStep {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub vector: Vec<Rational>,
    pub origin: StepOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepOrigin {
    /// `[e_i, h]`, 1-based `i`.
    Tangent(usize),
    /// Bracket of two earlier steps, 0-based positions.
    Bracket(usize, usize),
}

/// Outcome of one step of the no-go chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: String,
    pub cites: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrivialityPayload {
    pub setting: Setting,
    pub steps: Vec<StepRecord>,
    pub derived_ideal: Box<Certificate>,
    pub gram_positivity: Box<Certificate>,
    pub ad_invariance: Box<Certificate>,
    pub machine_checked: Vec<String>,
    pub cited: Vec<String>,
    pub conclusion: String,
}
