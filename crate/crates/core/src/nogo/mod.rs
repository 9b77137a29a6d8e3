//! The no-go certificate chain, the trivial prequantization `f -> mean(f)`,
//! and the spin-`j` feasibility probe.

pub(crate) mod probe;
pub mod spin;

pub use probe::{
    feasibility_probe, AnsatzImage, Combination, CombinationTerm, DomainElement,
    FeasibilityPayload, Multiplier, ParamValue, Verdict, MAX_PROBE_SPIN,
};
pub(crate) use probe::{
    image_matrix, pm_add_scaled, pm_commutator, pm_equations, univariate, upoly_rem, ParamMatrix,
};

use crate::certificate::{
    verify, AdInvariancePayload, BracketDecompositionPayload, Certificate, DerivedIdealPayload,
    GramPositivityPayload, Payload, Preimage, Setting, StepRecord, TrivialityPayload,
};
use crate::liealg::{LieAlgebra, LieError, StructureConstants};
use crate::linalg::dot;
use crate::poisson::{
    bracket_mod, check_ad_invariance_with_mean, gram_with, laplacian, mean, poly_space, ActingSet,
    LinOp, MeanFunctional, OrbitIdeal, PoissonError, PolySpace, Polynomial,
};
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum NogoError {
    #[error("{step} check failed: {reason}")]
    CertificateFailure { step: String, reason: String },
    #[error("polynomial has mean {mean}, not zero")]
    NotZeroMean { mean: Rational },
    #[error("unsupported truncation k_domain = {0}; expected 2 or 3")]
    UnsupportedTruncation(u32),
    #[error("invalid spin: {0}")]
    InvalidSpin(String),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn failure(step: &str, reason: impl Into<String>) -> NogoError {
    NogoError::CertificateFailure {
        step: step.into(),
        reason: reason.into(),
    }
}

/// Runs the independent checker on a freshly produced certificate.
fn self_check(cert: Certificate) -> Result<Certificate, NogoError> {
    verify(&cert).map_err(|e| failure("independent", e.to_string()))
}

/// Certificate that Δ maps `P^k` onto the zero-mean polynomials `P_0^k`.
pub fn derived_ideal_certificate(l: &LieAlgebra, s: &PolySpace) -> Result<Certificate, NogoError> {
    derived_ideal_certificate_for(l, &laplacian(l, s)?)
}

/// As [`derived_ideal_certificate`] but trusting a supplied Δ matrix; the
/// result is still checked against a recomputation.
pub fn derived_ideal_certificate_for(l: &LieAlgebra, op: &LinOp) -> Result<Certificate, NogoError> {
    let s = &op.domain;
    let n = s.dim();
    let m = &op.matrix;
    let rank = m.rank();
    if rank + 1 != n {
        return Err(failure(
            "derived ideal",
            format!(
                "Laplacian has rank {rank} on a space of dimension {n}; kernel contains nonconstant invariants"
            ),
        ));
    }
    let kernel = m.kernel();
    if !(kernel[0].iter().skip(1).all(Zero::is_zero)) {
        return Err(failure(
            "derived ideal",
            "kernel of the Laplacian is not the constants",
        ));
    }
    let left = m.left_kernel();
    let c = left[0][0].clone();
    if c.is_zero() {
        return Err(failure(
            "derived ideal",
            "constants lie in the image of the Laplacian",
        ));
    }
    let mu: Vec<Rational> = left[0].iter().map(|v| v / &c).collect();
    let mut preimages = Vec::with_capacity(n);
    for a in 0..n {
        let mut target = vec![Rational::zero(); n];
        target[a] += Rational::one();
        target[0] -= &mu[a];
        let coords = m.solve(&target).ok_or_else(|| {
            failure(
                "derived ideal",
                format!("no preimage for basis element {a}"),
            )
        })?;
        preimages.push(Preimage { target: a, coords });
    }
    let cert = Certificate::new(Payload::DerivedIdeal(DerivedIdealPayload {
        setting: Setting::new(l, s.ideal(), s.degree_cap(), s.max_dim()),
        basis: s.basis().to_vec(),
        laplacian: m.to_rows(),
        rank,
        mean: mu,
        preimages,
    }));
    self_check(cert)
}

/// Writes a zero-mean `f` as `sum {u_i, v_i}` with `u_i = -x_i` and
/// `v_i = {x_i, g}` for the zero-mean solution of `Δg = f`.
pub fn bracket_decomposition(
    l: &LieAlgebra,
    s: &PolySpace,
    f: &Polynomial,
) -> Result<Certificate, NogoError> {
    let m = mean(l, f, s)?;
    if !m.is_zero() {
        return Err(NogoError::NotZeroMean { mean: m });
    }
    let op = laplacian(l, s)?;
    let x = s.coords(f)?;
    let mut y = op
        .matrix
        .solve(&x)
        .ok_or_else(|| failure("bracket decomposition", "no Laplacian preimage"))?;
    let mu = MeanFunctional::new(l, s)?;
    let shift = dot(&mu.weights, &y);
    y[0] -= shift;
    let g = s.to_poly(&y);
    let n = l.dim();
    let mut pairs = Vec::new();
    for i in 0..n {
        let xi = Polynomial::var(n, i);
        let v = bracket_mod(&xi, &g, l, s.ideal())?;
        if !v.is_zero() {
            pairs.push((xi.neg(), v));
        }
    }
    let cert = Certificate::new(Payload::BracketDecomposition(BracketDecompositionPayload {
        setting: Setting::new(l, s.ideal(), s.degree_cap(), s.max_dim()),
        f: s.reduce(f),
        g,
        pairs,
    }));
    self_check(cert)
}

/// Leading principal minors of the Gram form on `s`, all strictly positive.
pub fn gram_positivity_certificate(
    l: &LieAlgebra,
    s: &PolySpace,
) -> Result<Certificate, NogoError> {
    let mean_degree = 2 * s.degree_cap();
    let mu = MeanFunctional::new(l, &s.with_degree(mean_degree)?)?;
    let g = gram_with(&mu, s)?;
    let minors = g.leading_minors();
    if let Some(i) = minors.iter().position(|m| !m.is_positive()) {
        return Err(failure(
            "Gram positivity",
            format!("leading principal minor {} is {}", i + 1, minors[i]),
        ));
    }
    let cert = Certificate::new(Payload::GramPositivity(GramPositivityPayload {
        setting: Setting::new(l, s.ideal(), s.degree_cap(), s.max_dim()),
        mean_degree,
        mean: mu.weights,
        gram: g.matrix.to_rows(),
        minors,
    }));
    self_check(cert)
}

/// Ad-invariance of the mean pairing under the coordinate functions, on all
/// basis triples plus `samples` seeded random triples.
pub fn ad_invariance_certificate(
    l: &LieAlgebra,
    s: &PolySpace,
    samples: usize,
    seed: u64,
) -> Result<Certificate, NogoError> {
    let acting = ActingSet::Linear;
    let mean_degree = (2 * s.degree_cap()).max(1);
    let mu = MeanFunctional::new(l, &s.with_degree(mean_degree)?)?;
    let report = check_ad_invariance_with_mean(l, s, acting, samples, seed, &mu)?;
    if !report.holds() {
        return Err(failure(
            "ad-invariance",
            format!("nonzero residual {}", report.max_residual),
        ));
    }
    let cert = Certificate::new(Payload::AdInvariance(AdInvariancePayload {
        setting: Setting::new(l, s.ideal(), s.degree_cap(), s.max_dim()),
        acting,
        mean_degree,
        mean: mu.weights,
        triples: report.triples,
        samples: report.samples,
        seed,
        max_residual: report.max_residual,
    }));
    self_check(cert)
}

/// Steps of the no-go chain, in the order they run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStep {
    Structure,
    Semisimplicity,
    Compactness,
    Center,
    OrbitIdeal,
    DerivedIdeal,
    GramPositivity,
    AdInvariance,
}

impl ReportStep {
    pub const ALL: [ReportStep; 8] = [
        ReportStep::Structure,
        ReportStep::Semisimplicity,
        ReportStep::Compactness,
        ReportStep::Center,
        ReportStep::OrbitIdeal,
        ReportStep::DerivedIdeal,
        ReportStep::GramPositivity,
        ReportStep::AdInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReportStep::Structure => "structure",
            ReportStep::Semisimplicity => "semisimplicity",
            ReportStep::Compactness => "compactness",
            ReportStep::Center => "center",
            ReportStep::OrbitIdeal => "orbit ideal",
            ReportStep::DerivedIdeal => "derived ideal",
            ReportStep::GramPositivity => "Gram positivity",
            ReportStep::AdInvariance => "ad-invariance",
        }
    }

    /// The proof step a check stands for.
    pub fn cites(self) -> &'static str {
        match self {
            ReportStep::Structure => "Lie algebra axioms",
            ReportStep::Semisimplicity => "basic-algebra proposition: semisimplicity",
            ReportStep::Compactness => "basic-algebra proposition: compactness",
            ReportStep::Center => "basic-algebra proposition: zero center",
            ReportStep::OrbitIdeal => "restriction to the orbit",
            ReportStep::DerivedIdeal => "no-go theorem, step (a): {P,P} = P_0",
            ReportStep::GramPositivity => {
                "no-go theorem, step (b): f^2 has zero mean only if f = 0"
            }
            ReportStep::AdInvariance => "basic-algebra proposition: invariant inner product",
        }
    }
}

impl fmt::Display for ReportStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("no-go chain failed at {step} ({}): {detail}", step.cites())]
pub struct ReportFailure {
    pub step: ReportStep,
    pub detail: String,
    /// Records of every step that ran, the failing one last.
    pub steps: Vec<StepRecord>,
}

/// Seed and sample count used for the ad-invariance step of the report.
pub const REPORT_SEED: u64 = 0x6e6f_676f;
pub const REPORT_SAMPLES: usize = 20;

const MACHINE_CHECKED: [&str; 7] = [
    "antisymmetry and Jacobi identity of the structure constants, exactly",
    "Killing form nondegenerate and negative definite",
    "center is zero",
    "orbit ideal closed under the Poisson bracket",
    "Laplacian maps P^k onto the zero-mean polynomials P_0^k",
    "Gram form of the mean pairing positive definite on P^k",
    "ad-invariance of the mean pairing on P^k",
];

const CITED: [&str; 2] = [
    "alternative for Lie ideals of finite codimension (abstract argument, not computed)",
    "passage from the truncations P^k to all of P (not computed)",
];

struct Chain {
    steps: Vec<StepRecord>,
}

impl Chain {
    fn pass(&mut self, step: ReportStep, detail: impl Into<String>) {
        self.record(step, true, detail.into());
    }

    fn record(&mut self, step: ReportStep, passed: bool, detail: String) {
        self.steps.push(StepRecord {
            step: step.name().into(),
            cites: step.cites().into(),
            passed,
            detail,
        });
    }

    fn fail(mut self, step: ReportStep, detail: impl fmt::Display) -> ReportFailure {
        let detail = detail.to_string();
        self.record(step, false, detail.clone());
        ReportFailure {
            step,
            detail,
            steps: self.steps,
        }
    }
}

/// Runs the full chain on raw structure constants and bundles the
/// sub-certificates into a triviality conclusion.
pub fn nogo_report(
    sc: &StructureConstants,
    ideal: Option<&OrbitIdeal>,
    k: u32,
    max_dim: usize,
) -> Result<Certificate, ReportFailure> {
    use ReportStep::*;
    let mut chain = Chain { steps: Vec::new() };
    let l = match LieAlgebra::new(sc.clone()) {
        Ok(l) => l,
        Err(e) => return Err(chain.fail(Structure, e)),
    };
    chain.pass(
        Structure,
        format!("dimension {}, antisymmetry and Jacobi exact", l.dim()),
    );

    let killing = l.killing_form();
    if !l.is_semisimple() {
        let i = killing.inertia();
        return Err(chain.fail(
            Semisimplicity,
            format!("Killing form is degenerate (nullity {})", i.zero),
        ));
    }
    chain.pass(Semisimplicity, "Killing form nondegenerate");
    if !l.is_compact_type() {
        let i = killing.inertia();
        return Err(chain.fail(
            Compactness,
            format!(
                "Killing form is not negative definite (signature +{} -{})",
                i.positive, i.negative
            ),
        ));
    }
    chain.pass(Compactness, "Killing form negative definite");
    let z = l.center();
    if !z.is_zero() {
        return Err(chain.fail(Center, format!("center has dimension {}", z.dim())));
    }
    chain.pass(Center, "center is zero");

    let s = match poly_space(&l, k, ideal.cloned(), max_dim) {
        Ok(s) => s,
        Err(e) => return Err(chain.fail(OrbitIdeal, e)),
    };
    chain.pass(
        OrbitIdeal,
        match ideal {
            Some(i) => format!(
                "{} relation(s), Poisson ideal; dim P^{k} = {}",
                i.relations().len(),
                s.dim()
            ),
            None => format!("no orbit ideal; dim P^{k} = {}", s.dim()),
        },
    );

    let derived = match derived_ideal_certificate(&l, &s) {
        Ok(c) => c,
        Err(e) => return Err(chain.fail(DerivedIdeal, e)),
    };
    chain.pass(
        DerivedIdeal,
        format!("rank {} of {}, kernel = constants", s.dim() - 1, s.dim()),
    );
    let gram = match gram_positivity_certificate(&l, &s) {
        Ok(c) => c,
        Err(e) => return Err(chain.fail(GramPositivity, e)),
    };
    chain.pass(
        GramPositivity,
        format!("{} positive leading minors", s.dim()),
    );
    let adinv = match ad_invariance_certificate(&l, &s, REPORT_SAMPLES, REPORT_SEED) {
        Ok(c) => c,
        Err(e) => return Err(chain.fail(AdInvariance, e)),
    };
    chain.pass(AdInvariance, "all residuals exactly zero");

    let cert = Certificate::new(Payload::TrivialityConclusion(TrivialityPayload {
        setting: Setting::new(&l, ideal, k, max_dim),
        steps: chain.steps.clone(),
        derived_ideal: Box::new(derived),
        gram_positivity: Box::new(gram),
        ad_invariance: Box::new(adinv),
        machine_checked: MACHINE_CHECKED.iter().map(|s| s.to_string()).collect(),
        cited: CITED.iter().map(|s| s.to_string()).collect(),
        conclusion: format!(
            "no nontrivial finite-dimensional Lie representation (hence no nontrivial \
             finite-dimensional prequantization) of the polynomial Poisson algebra; \
             linear algebra machine-checked at truncation k = {k}, remaining steps cited"
        ),
    }));
    verify(&cert).map_err(|e| Chain { steps: chain.steps }.fail(AdInvariance, e))
}

/// `Q(f) = mean(f)` acting on a one-dimensional space.
pub fn trivial_prequantization(
    l: &LieAlgebra,
    s: &PolySpace,
    f: &Polynomial,
) -> Result<Rational, NogoError> {
    Ok(mean(l, f, s)?)
}

/// Outcome of checking the trivial prequantization on all basis pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct TrivialPreqCheck {
    pub q_one: Rational,
    pub pairs: usize,
    /// Basis pairs `(a, b)` whose bracket has nonzero mean.
    pub violations: Vec<(usize, usize)>,
}

impl TrivialPreqCheck {
    pub fn holds(&self) -> bool {
        self.q_one.is_one() && self.violations.is_empty()
    }
}

/// Checks `Q(1) = 1` and `Q({f, g}) = 0 = [Q(f), Q(g)]` on all basis pairs.
pub fn verify_trivial_preq(l: &LieAlgebra, s: &PolySpace) -> Result<TrivialPreqCheck, NogoError> {
    let k = s.degree_cap();
    let mu = MeanFunctional::new(l, &s.with_degree((2 * k).saturating_sub(1).max(k))?)?;
    let el = s.elements();
    let n = el.len();
    let q_one = mu.eval(&Polynomial::one(s.nvars()))?;
    let mut violations = Vec::new();
    let mut pairs = 0;
    for a in 0..n {
        for b in 0..n {
            pairs += 1;
            // Scalars commute, so [Q(f), Q(g)] = 0 and only Q({f,g}) can fail.
            let q = mu.eval(&bracket_mod(&el[a], &el[b], l, s.ideal())?)?;
            if !q.is_zero() {
                violations.push((a, b));
            }
        }
    }
    Ok(TrivialPreqCheck {
        q_one,
        pairs,
        violations,
    })
}
