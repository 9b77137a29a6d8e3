//! Independent re-checking of certificates.
//!
//! Only the raw bracket formula, ideal reduction and plain rational linear
//! algebra are used here. Spaces are re-enumerated from the ideal, Δ is
//! re-expanded bracket by bracket, and determinants come from a local
//! fraction-free elimination.

use super::{
    AdInvariancePayload, BracketDecompositionPayload, Certificate, DerivedIdealPayload,
    GramPositivityPayload, MinimalityPayload, Payload, Setting, StepOrigin, TrivialityPayload,
};
use crate::liealg::{Builtin, LieAlgebra};
use crate::linalg::{GaussianRational, Matrix};
use crate::nogo::spin::weighted_adjoint;
use crate::nogo::{
    image_matrix, pm_add_scaled, pm_commutator, pm_equations, univariate, upoly_rem, ParamMatrix,
};
use crate::nogo::{FeasibilityPayload, ParamValue, Verdict};
use crate::poisson::sample::random_combination;
use crate::poisson::{
    lie_poisson_bracket, reduce_opt, ActingSet, Monomial, OrbitIdeal, Polynomial,
};
use crate::rational::{rat, Rational};
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum VerifyError {
    #[error("certificate setting is invalid: {0}")]
    Setting(String),
    #[error("{check}: {reason}")]
    Failed { check: String, reason: String },
}

fn fail(check: &str, reason: impl Into<String>) -> VerifyError {
    VerifyError::Failed {
        check: check.into(),
        reason: reason.into(),
    }
}

fn ensure(cond: bool, check: &str, reason: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if cond {
        Ok(())
    } else {
        Err(fail(check, reason()))
    }
}

/// Re-checks a certificate from its payload; returns a copy marked checked.
pub fn verify(cert: &Certificate) -> Result<Certificate, VerifyError> {
    if cert.schema != super::SCHEMA || cert.schema_version != super::SCHEMA_VERSION {
        return Err(VerifyError::Setting(format!(
            "unsupported schema {} version {}",
            cert.schema, cert.schema_version
        )));
    }
    match &cert.body {
        Payload::DerivedIdeal(p) => derived_ideal(p)?,
        Payload::BracketDecomposition(p) => bracket_decomposition(p)?,
        Payload::GramPositivity(p) => gram_positivity(p)?,
        Payload::TrivialityConclusion(p) => triviality(p)?,
        Payload::FeasibilityVerdict(p) => feasibility(p)?,
        Payload::AdInvariance(p) => ad_invariance(p)?,
        Payload::Minimality(p) => minimality(p)?,
    }
    let mut out = cert.clone();
    out.checked = true;
    Ok(out)
}

/// Algebra and ideal rebuilt from a setting, with the ideal's closure under
/// the bracket re-checked.
struct Context {
    l: LieAlgebra,
    ideal: Option<OrbitIdeal>,
}

impl Context {
    fn new(s: &Setting) -> Result<Self, VerifyError> {
        let l = s
            .algebra()
            .map_err(|e| VerifyError::Setting(e.to_string()))?;
        let ideal = s
            .orbit_ideal()
            .map_err(|e| VerifyError::Setting(e.to_string()))?;
        let ctx = Context { l, ideal };
        if let Some(i) = &ctx.ideal {
            if i.nvars() != Some(ctx.l.dim()) {
                return Err(VerifyError::Setting(
                    "ideal and algebra disagree on variables".into(),
                ));
            }
            for (r, rel) in i.relations().iter().enumerate() {
                for v in 0..ctx.l.dim() {
                    let b = ctx.bracket(&Polynomial::var(ctx.l.dim(), v), &rel.poly);
                    ensure(b.is_zero(), "orbit ideal", || {
                        format!(
                            "bracket of x{} with relation {} does not reduce to 0",
                            v + 1,
                            r + 1
                        )
                    })?;
                }
            }
        }
        Ok(ctx)
    }

    fn n(&self) -> usize {
        self.l.dim()
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        reduce_opt(self.ideal.as_ref(), f)
    }

    fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&lie_poisson_bracket(f, g, &self.l).expect("variables checked"))
    }

    fn laplacian(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n());
        for i in 0..self.n() {
            let xi = Polynomial::var(self.n(), i);
            out = out.sub(&self.bracket(&xi, &self.bracket(&xi, f)));
        }
        out
    }

    /// Standard monomials of degree at most `k`, by degree.
    /// Standard monomials, degree by degree, descending grlex within a degree.
    fn basis(&self, k: u32) -> Vec<Monomial> {
        (0..=k)
            .flat_map(|d| Monomial::of_degree(self.n(), d).into_iter().rev())
            .filter(|m| self.ideal.as_ref().is_none_or(|i| i.is_standard(m)))
            .collect()
    }
}

struct Coords {
    index: BTreeMap<Monomial, usize>,
}

impl Coords {
    fn new(basis: &[Monomial]) -> Self {
        Coords {
            index: basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect(),
        }
    }

    fn of(&self, f: &Polynomial) -> Result<Vec<Rational>, VerifyError> {
        let mut v = vec![Rational::zero(); self.index.len()];
        for (m, c) in f.terms() {
            let i = self
                .index
                .get(m)
                .ok_or_else(|| fail("coordinates", format!("monomial {m} outside the space")))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Δ on the degree `k` space, columns as coordinate vectors.
fn laplacian_columns(ctx: &Context, basis: &[Monomial]) -> Result<Vec<Vec<Rational>>, VerifyError> {
    let coords = Coords::new(basis);
    basis
        .iter()
        .map(|m| coords.of(&ctx.laplacian(&Polynomial::term(m.clone(), Rational::one()))))
        .collect()
}

/// Checks that `mu` is the mean on the degree `k` space: `mu(1) = 1`,
/// `mu Δ = 0`, and Δ has corank one so `mu` is unique.
fn check_mean(ctx: &Context, k: u32, mu: &[Rational]) -> Result<Vec<Monomial>, VerifyError> {
    let basis = ctx.basis(k);
    ensure(mu.len() == basis.len(), "mean", || {
        format!(
            "{} weights for a space of dimension {}",
            mu.len(),
            basis.len()
        )
    })?;
    ensure(mu[0].is_one(), "mean", || format!("mean(1) = {}", mu[0]))?;
    let cols = laplacian_columns(ctx, &basis)?;
    for (a, col) in cols.iter().enumerate() {
        ensure(dot(mu, col).is_zero(), "mean", || {
            format!("mean of the Laplacian of basis element {a} is not zero")
        })?;
    }
    let rank = Matrix::from_cols(&cols, basis.len()).rank();
    ensure(rank + 1 == basis.len(), "mean", || {
        format!("Laplacian has rank {rank} on dimension {}", basis.len())
    })?;
    Ok(basis)
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn bareiss_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut a = m.to_vec();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn leading_minors(m: &[Vec<Rational>]) -> Vec<Rational> {
    (1..=m.len())
        .map(|d| {
            let sub: Vec<Vec<Rational>> = m[..d].iter().map(|r| r[..d].to_vec()).collect();
            bareiss_det(&sub)
        })
        .collect()
}

fn derived_ideal(p: &DerivedIdealPayload) -> Result<(), VerifyError> {
    let ctx = Context::new(&p.setting)?;
    let basis = ctx.basis(p.setting.k);
    ensure(p.basis == basis, "basis", || {
        "basis differs from the standard monomials".into()
    })?;
    let n = basis.len();
    let cols = laplacian_columns(&ctx, &basis)?;
    ensure(p.laplacian.len() == n, "laplacian", || {
        "wrong number of rows".into()
    })?;
    for r in 0..n {
        for c in 0..n {
            ensure(
                p.laplacian[r].len() == n && p.laplacian[r][c] == cols[c][r],
                "laplacian",
                || {
                    format!(
                        "entry ({}, {}) does not match the recomputed Laplacian",
                        r + 1,
                        c + 1
                    )
                },
            )?;
        }
    }
    ensure(cols[0].iter().all(Zero::is_zero), "laplacian", || {
        "Laplacian of 1 is not 0".into()
    })?;
    ensure(p.mean.len() == n && p.mean[0].is_one(), "mean", || {
        "mean(1) must be 1".into()
    })?;
    for (a, col) in cols.iter().enumerate() {
        ensure(dot(&p.mean, col).is_zero(), "mean", || {
            format!("mean does not annihilate the Laplacian of basis element {a}")
        })?;
    }
    // Preimages of e_a - mean(e_a) for every a give rank >= n - 1; a
    // nonzero left null vector gives rank <= n - 1.
    let mut seen = vec![false; n];
    for pre in &p.preimages {
        ensure(pre.target < n && pre.coords.len() == n, "preimage", || {
            "malformed preimage".into()
        })?;
        let mut img = vec![Rational::zero(); n];
        for (c, x) in cols.iter().zip(&pre.coords) {
            for (r, v) in c.iter().enumerate() {
                img[r] += v * x;
            }
        }
        let mut want = vec![Rational::zero(); n];
        want[pre.target] += Rational::one();
        want[0] -= &p.mean[pre.target];
        ensure(img == want, "preimage", || {
            format!(
                "Laplacian of the preimage of target {} is wrong",
                pre.target
            )
        })?;
        seen[pre.target] = true;
    }
    ensure(seen.iter().skip(1).all(|&s| s), "preimage", || {
        "missing preimages".into()
    })?;
    ensure(p.rank + 1 == n, "rank", || {
        format!("claimed rank {} on dimension {n}", p.rank)
    })
}

fn bracket_decomposition(p: &BracketDecompositionPayload) -> Result<(), VerifyError> {
    let ctx = Context::new(&p.setting)?;
    let n = ctx.n();
    let polys = std::iter::once(&p.f)
        .chain(std::iter::once(&p.g))
        .chain(p.pairs.iter().flat_map(|(u, v)| [u, v]));
    for q in polys {
        ensure(q.nvars() == n, "variables", || {
            "polynomial over the wrong variables".into()
        })?;
    }
    let mut sum = Polynomial::zero(n);
    for (u, v) in &p.pairs {
        sum = sum.add(&ctx.bracket(u, v));
    }
    let diff = ctx.reduce(&sum.sub(&p.f));
    ensure(diff.is_zero(), "decomposition", || {
        format!("sum of brackets minus f is {diff}")
    })
}

fn gram_positivity(p: &GramPositivityPayload) -> Result<(), VerifyError> {
    let ctx = Context::new(&p.setting)?;
    ensure(p.mean_degree >= 2 * p.setting.k, "mean", || {
        "mean degree below 2k".into()
    })?;
    let big = check_mean(&ctx, p.mean_degree, &p.mean)?;
    let coords = Coords::new(&big);
    let basis = ctx.basis(p.setting.k);
    let n = basis.len();
    ensure(p.gram.len() == n, "gram", || "wrong Gram size".into())?;
    let el: Vec<Polynomial> = basis
        .iter()
        .map(|m| Polynomial::term(m.clone(), Rational::one()))
        .collect();
    for a in 0..n {
        ensure(p.gram[a].len() == n, "gram", || "ragged Gram matrix".into())?;
        for b in 0..n {
            let v = dot(&p.mean, &coords.of(&ctx.reduce(&el[a].mul(&el[b])))?);
            ensure(v == p.gram[a][b], "gram", || {
                format!("entry ({}, {}) should be {v}", a + 1, b + 1)
            })?;
        }
    }
    let minors = leading_minors(&p.gram);
    ensure(minors == p.minors, "minors", || {
        "recomputed minors differ".into()
    })?;
    match minors.iter().position(|m| !m.is_positive()) {
        Some(i) => Err(fail("minors", format!("minor {} is {}", i + 1, minors[i]))),
        None => Ok(()),
    }
}

fn ad_invariance(p: &AdInvariancePayload) -> Result<(), VerifyError> {
    let ctx = Context::new(&p.setting)?;
    let k = p.setting.k;
    let need = match p.acting {
        ActingSet::Full => (3 * k).saturating_sub(1).max(1),
        ActingSet::Linear => (2 * k).max(1),
    };
    ensure(p.mean_degree >= need, "mean", || {
        format!("mean degree below {need}")
    })?;
    let big = check_mean(&ctx, p.mean_degree, &p.mean)?;
    let coords = Coords::new(&big);
    let n = ctx.n();
    let gs: Vec<Polynomial> = ctx
        .basis(k)
        .into_iter()
        .map(|m| Polynomial::term(m, Rational::one()))
        .collect();
    let fs: Vec<Polynomial> = match p.acting {
        ActingSet::Full => gs.clone(),
        ActingSet::Linear => std::iter::once(Polynomial::one(n))
            .chain((0..n).map(|i| Polynomial::var(n, i)))
            .collect(),
    };
    let mean = |q: &Polynomial| -> Result<Rational, VerifyError> {
        Ok(dot(&p.mean, &coords.of(&ctx.reduce(q))?))
    };
    let mut max = Rational::zero();
    let mut triples = 0;
    for f in &fs {
        let br: Vec<Polynomial> = gs.iter().map(|g| ctx.bracket(f, g)).collect();
        for (a, g) in gs.iter().enumerate() {
            for (b, h) in gs.iter().enumerate() {
                let r = mean(&br[a].mul(h).add(&g.mul(&br[b])))?;
                max = max.max(r.abs());
                triples += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..p.samples {
        let f = random_combination(&mut rng, &fs, 3);
        let g = random_combination(&mut rng, &gs, 3);
        let h = random_combination(&mut rng, &gs, 3);
        let r = mean(
            &ctx.bracket(&f, &g)
                .mul(&h)
                .add(&g.mul(&ctx.bracket(&f, &h))),
        )?;
        max = max.max(r.abs());
    }
    ensure(triples == p.triples, "triples", || {
        format!("{triples} basis triples, payload says {}", p.triples)
    })?;
    ensure(max == p.max_residual, "residual", || {
        format!("recomputed maximum residual {max}")
    })?;
    ensure(max.is_zero(), "residual", || {
        format!("nonzero residual {max}")
    })
}

fn minimality(p: &MinimalityPayload) -> Result<(), VerifyError> {
    let l = p
        .algebra
        .to_algebra()
        .map_err(|e| VerifyError::Setting(e.to_string()))?;
    let n = l.dim();
    ensure(
        p.h.len() == n && p.h.iter().any(|x| !x.is_zero()),
        "base point",
        || "base point must be a nonzero vector of the algebra".into(),
    )?;
    for (s, step) in p.steps.iter().enumerate() {
        let expect = match step.origin {
            StepOrigin::Tangent(i) => {
                ensure((1..=n).contains(&i), "step", || {
                    format!("step {s}: no basis element {i}")
                })?;
                l.bracket(&l.basis_vector(i - 1), &p.h)
            }
            StepOrigin::Bracket(a, b) => {
                ensure(a < s && b < s, "step", || {
                    format!("step {s} refers forward")
                })?;
                l.bracket(&p.steps[a].vector, &p.steps[b].vector)
            }
        };
        ensure(expect == step.vector, "step", || {
            format!("step {s} has the wrong vector")
        })?;
    }
    let vectors: Vec<Vec<Rational>> = p.steps.iter().map(|s| s.vector.clone()).collect();
    let rank = if vectors.is_empty() {
        0
    } else {
        Matrix::from_rows(vectors).rank()
    };
    ensure(rank == n, "generation", || {
        format!("steps span dimension {rank} of {n}")
    })?;
    ensure(p.chain.last() == Some(&n), "chain", || {
        "chain must end at the full dimension".into()
    })
}

fn triviality(p: &TrivialityPayload) -> Result<(), VerifyError> {
    let ctx = Context::new(&p.setting)?;
    let l = &ctx.l;
    let n = l.dim();
    // Killing form from explicit ad matrices.
    let ads: Vec<Matrix<Rational>> = (0..n).map(|i| l.ad_basis(i)).collect();
    let killing: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let m = ads[i].mul(&ads[j]);
                    (0..n).map(|d| m.get(d, d).clone()).sum()
                })
                .collect()
        })
        .collect();
    let minors = leading_minors(&killing);
    for (i, m) in minors.iter().enumerate() {
        let ok = if i % 2 == 0 {
            m.is_negative()
        } else {
            m.is_positive()
        };
        ensure(ok, "compactness", || {
            format!("Killing minor {} is {m}", i + 1)
        })?;
    }
    let stacked: Vec<Vec<Rational>> = ads.iter().flat_map(|a| a.to_rows()).collect();
    let center_rank = if n == 0 {
        0
    } else {
        Matrix::from_rows(stacked).rank()
    };
    ensure(center_rank == n, "center", || {
        format!("center has dimension {}", n - center_rank)
    })?;
    ensure(p.steps.iter().all(|s| s.passed), "steps", || {
        "a recorded step did not pass".into()
    })?;
    let subs = [
        (&p.derived_ideal, super::CertificateKind::DerivedIdeal),
        (&p.gram_positivity, super::CertificateKind::GramPositivity),
        (&p.ad_invariance, super::CertificateKind::AdInvariance),
    ];
    for (c, kind) in subs {
        ensure(c.kind() == kind, "sub-certificate", || {
            format!("expected {kind}, found {}", c.kind())
        })?;
        let setting = match &c.body {
            Payload::DerivedIdeal(x) => &x.setting,
            Payload::GramPositivity(x) => &x.setting,
            Payload::AdInvariance(x) => &x.setting,
            _ => unreachable!("kind checked"),
        };
        ensure(setting == &p.setting, "sub-certificate", || {
            format!("{kind} refers to another setting")
        })?;
        verify(c).map_err(|e| fail(&format!("{kind} sub-certificate"), e.to_string()))?;
    }
    Ok(())
}

fn feasibility(p: &FeasibilityPayload) -> Result<(), VerifyError> {
    let check = "feasibility";
    let l = Builtin::Su2
        .build()
        .map_err(|e| VerifyError::Setting(e.to_string()))?;
    let ideal = OrbitIdeal::sphere(Rational::one());
    let br = |f: &Polynomial, g: &Polynomial| {
        reduce_opt(
            Some(&ideal),
            &lie_poisson_bracket(f, g, &l).expect("three variables"),
        )
    };
    let k = p.k_domain;
    let n = p.size;
    let np = p.params.len();
    ensure((2..=3).contains(&k), check, || {
        format!("unsupported k_domain {k}")
    })?;
    ensure(
        Rational::from_integer((n as i64).into()) == &p.j * rat(2) + Rational::one(),
        check,
        || "matrix size is not 2j + 1".into(),
    )?;
    ensure(
        p.weights.len() == n && p.weights.iter().all(Signed::is_positive),
        check,
        || "weights must be positive".into(),
    )?;

    // Domain: harmonic of the stated degree, counts 2l + 1, independent.
    let dsize: usize = (0..=k as usize).map(|d| 2 * d + 1).sum();
    ensure(
        p.domain.len() == dsize && p.images.len() == dsize,
        check,
        || "wrong domain size".into(),
    )?;
    let mut expected_degree = Vec::new();
    for d in 0..=k {
        expected_degree.extend(std::iter::repeat_n(d, 2 * d as usize + 1));
    }
    for (e, d) in p.domain.iter().zip(&expected_degree) {
        ensure(e.degree == *d && e.poly.nvars() == 3, check, || {
            format!("{} has the wrong degree", e.label)
        })?;
        let mut lap = Polynomial::zero(3);
        for i in 0..3 {
            let xi = Polynomial::var(3, i);
            lap = lap.sub(&br(&xi, &br(&xi, &e.poly)));
        }
        let ev = rat(i64::from(d * (d + 1)));
        ensure(
            lap == reduce_opt(Some(&ideal), &e.poly).scale(&ev),
            check,
            || format!("{} is not a degree {d} harmonic", e.label),
        )?;
    }
    ensure(p.domain[0].poly == Polynomial::one(3), check, || {
        "first domain element must be 1".into()
    })?;
    for i in 0..3 {
        ensure(p.domain[1 + i].poly == Polynomial::var(3, i), check, || {
            "linear elements must be x1, x2, x3".into()
        })?;
    }
    let top = 2 * k - 1;
    let monos: Vec<Monomial> = (0..=top)
        .flat_map(|d| Monomial::of_degree(3, d))
        .filter(|m| ideal.is_standard(m))
        .collect();
    let coords = Coords::new(&monos);
    let dom_cols: Vec<Vec<Rational>> = p
        .domain
        .iter()
        .map(|e| coords.of(&e.poly))
        .collect::<Result<_, _>>()?;
    let dom_mat = Matrix::from_cols(&dom_cols, monos.len());
    ensure(dom_mat.rank() == dsize, check, || {
        "domain elements are dependent".into()
    })?;
    let in_domain = |f: &Polynomial| -> Result<Vec<Rational>, VerifyError> {
        dom_mat
            .solve(&coords.of(f)?)
            .ok_or_else(|| fail(check, "a constraint bracket leaves the domain"))
    };

    // Fixed images and the parametrized families.
    ensure(
        p.images[0].param.is_none() && p.images[0].matrix == Matrix::identity(n),
        check,
        || "Q(1) must be I".into(),
    )?;
    for img in &p.images {
        ensure(img.matrix.nrows() == n, check, || {
            "image of the wrong size".into()
        })?;
        ensure(
            weighted_adjoint(&img.matrix, &p.weights)
                .plus(&img.matrix)
                .is_zero()
                || img.param.is_none() && img.matrix == Matrix::identity(n),
            check,
            || "an image is not skew-adjoint".into(),
        )?;
        ensure(img.param.is_none_or(|q| q < np), check, || {
            "unknown parameter".into()
        })?;
    }
    for img in &p.images[1..4] {
        ensure(img.param.is_none(), check, || {
            "coordinate images must be fixed".into()
        })?;
    }
    ensure(p.kernel_dims.len() == (k - 1) as usize, check, || {
        "kernel dimensions missing".into()
    })?;
    let mut offset = 4;
    for (t, deg) in (2..=k).enumerate() {
        let d = 2 * deg as usize + 1;
        let nn = n * n;
        let mut rows = Vec::new();
        for i in 0..3 {
            let s = &p.images[1 + i].matrix;
            let xi = Polynomial::var(3, i);
            let mut act = vec![vec![Rational::zero(); d]; d];
            for a in 0..d {
                let c = in_domain(&br(&xi, &p.domain[offset + a].poly))?;
                for b in 0..dsize {
                    let inside = (offset..offset + d).contains(&b);
                    ensure(inside || c[b].is_zero(), check, || {
                        "equivariance leaves the degree".into()
                    })?;
                }
                for b in 0..d {
                    act[b][a] = c[offset + b].clone();
                }
            }
            for a in 0..d {
                for r in 0..n {
                    for c in 0..n {
                        let mut row = vec![GaussianRational::zero(); d * nn];
                        for u in 0..n {
                            row[a * nn + u * n + c] =
                                row[a * nn + u * n + c].clone() + s.get(r, u).clone();
                            row[a * nn + r * n + u] =
                                row[a * nn + r * n + u].clone() - s.get(u, c).clone();
                        }
                        for b in 0..d {
                            row[b * nn + r * n + c] = row[b * nn + r * n + c].clone()
                                - GaussianRational::real(act[b][a].clone());
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let kdim = d * nn - Matrix::from_rows(rows).rank();
        ensure(kdim == p.kernel_dims[t], check, || {
            format!("degree {deg}: equivariant space has dimension {kdim}")
        })?;
        let family = &p.images[offset..offset + d];
        match kdim {
            0 => ensure(
                family
                    .iter()
                    .all(|i| i.param.is_none() && i.matrix.is_zero()),
                check,
                || format!("degree {deg} images must vanish"),
            )?,
            1 => {
                let q = family[0].param;
                ensure(
                    q.is_some_and(|q| p.params[q] == deg)
                        && family.iter().all(|i| i.param == q)
                        && family.iter().any(|i| !i.matrix.is_zero()),
                    check,
                    || format!("degree {deg} images must be one nonzero scaled family"),
                )?;
            }
            _ => ensure(
                matches!(p.verdict, Verdict::Inconclusive { .. }),
                check,
                || "definite verdict with an incomplete ansatz".into(),
            )?,
        }
        offset += d;
    }

    // Combinations: within the higher harmonics, landing in the domain, and
    // as many as the in-domain combinations of those pairs.
    let pairs: Vec<(usize, usize)> = (4..dsize)
        .flat_map(|a| (a + 1..dsize).map(move |b| (a, b)))
        .collect();
    let pair_brackets: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(a, b)| coords.of(&br(&p.domain[a].poly, &p.domain[b].poly)))
        .collect::<Result<_, _>>()?;
    let mut all = dom_cols.clone();
    all.extend(pair_brackets.iter().cloned());
    let escape_rank = Matrix::from_cols(&all, monos.len()).rank() - dsize;
    let expected = pairs.len() - escape_rank;
    ensure(p.combinations.len() == expected, check, || {
        format!(
            "{} combinations listed, {expected} exist",
            p.combinations.len()
        )
    })?;
    let combo_vecs: Vec<Vec<Rational>> = p
        .combinations
        .iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); pairs.len()];
            for t in &c.terms {
                if let Some(i) = pairs.iter().position(|&x| x == (t.a, t.b)) {
                    v[i] += &t.coeff;
                }
            }
            v
        })
        .collect();
    if !combo_vecs.is_empty() {
        ensure(
            Matrix::from_rows(combo_vecs).rank() == expected,
            check,
            || "combinations are dependent".into(),
        )?;
    }

    // Constraints and their equations.
    let q: Vec<ParamMatrix> = p.images.iter().map(|i| image_matrix(i, np)).collect();
    let mut constraints: Vec<Vec<(usize, usize, Rational)>> = Vec::new();
    for a in 0..4 {
        for b in a + 1..dsize {
            constraints.push(vec![(a, b, Rational::one())]);
        }
    }
    for c in &p.combinations {
        for t in &c.terms {
            ensure(t.a >= 4 && t.a < t.b && t.b < dsize, check, || {
                "combination term out of range".into()
            })?;
        }
        constraints.push(
            c.terms
                .iter()
                .map(|t| (t.a, t.b, t.coeff.clone()))
                .collect(),
        );
    }
    ensure(constraints.len() == p.constraint_names.len(), check, || {
        "constraint count differs".into()
    })?;
    let mut residuals = Vec::new();
    let mut equations = Vec::new();
    for terms in &constraints {
        let mut res = ParamMatrix::new();
        let mut b = Polynomial::zero(3);
        for (x, y, c) in terms {
            pm_add_scaled(
                &mut res,
                &pm_commutator(&q[*x], &q[*y]),
                &GaussianRational::real(c.clone()),
            );
            b.add_scaled(&br(&p.domain[*x].poly, &p.domain[*y].poly), c);
        }
        for (e, c) in in_domain(&b)?.iter().enumerate() {
            pm_add_scaled(&mut res, &q[e], &GaussianRational::real(-c));
        }
        equations.extend(pm_equations(&res, n, np));
        residuals.push(res);
    }
    ensure(equations == p.equations, check, || {
        "recomputed equations differ".into()
    })?;

    let combine = |ms: &[crate::nogo::Multiplier]| -> Result<Polynomial, VerifyError> {
        let mut s = Polynomial::zero(np);
        for m in ms {
            ensure(
                m.equation < equations.len() && m.poly.nvars() == np,
                check,
                || "bad multiplier".into(),
            )?;
            s = s.add(&m.poly.mul(&equations[m.equation]));
        }
        Ok(s)
    };
    match &p.verdict {
        Verdict::Feasible { values } => {
            ensure(values.len() == np, check, || {
                "one value per parameter".into()
            })?;
            let roots: Vec<usize> = (0..np)
                .filter(|&v| matches!(values[v], ParamValue::Root(_)))
                .collect();
            ensure(roots.len() <= 1, check, || {
                "at most one algebraic scale".into()
            })?;
            for eq in &equations {
                let mut e = eq.clone();
                for (v, val) in values.iter().enumerate() {
                    if let ParamValue::Rational(x) = val {
                        e = substitute(&e, v, x);
                    }
                }
                match roots.first() {
                    None => ensure(e.is_zero(), check, || {
                        format!("equation {eq} does not vanish")
                    })?,
                    Some(&v) => {
                        let ParamValue::Root(g) = &values[v] else {
                            unreachable!()
                        };
                        ensure(g.len() == 3 && !g[2].is_zero(), check, || {
                            "root must be of a quadratic".into()
                        })?;
                        let disc = &g[1] * &g[1] - rat(4) * &g[0] * &g[2];
                        ensure(!disc.is_negative(), check, || {
                            "quadratic has no real root".into()
                        })?;
                        ensure(upoly_rem(&univariate(&e, v), g).is_empty(), check, || {
                            format!("equation {eq} does not vanish at the root")
                        })?;
                    }
                }
            }
            Ok(())
        }
        Verdict::LinearInfeasible { multipliers } => {
            let s = combine(multipliers)?;
            ensure(s == Polynomial::one(np), check, || {
                format!("multipliers combine to {s}, not 1")
            })
        }
        Verdict::NoRealSolution {
            multipliers,
            param,
            target,
        } => {
            let s = combine(multipliers)?;
            ensure(&s == target && *param < np, check, || {
                "multipliers do not give the target".into()
            })?;
            let g = univariate(target, *param);
            let only = target.terms().all(|(m, _)| {
                m.exps()
                    .iter()
                    .enumerate()
                    .all(|(v, &e)| v == *param || e == 0)
            });
            ensure(only && g.len() == 3, check, || {
                "target must be a quadratic in one scale".into()
            })?;
            let disc = &g[1] * &g[1] - rat(4) * &g[0] * &g[2];
            ensure(disc.is_negative(), check, || {
                "target has a real root".into()
            })
        }
        Verdict::ResidualObstruction {
            constraint,
            name,
            residual,
        } => {
            let r = residuals
                .get(*constraint)
                .ok_or_else(|| fail(check, "no such constraint"))?;
            ensure(&p.constraint_names[*constraint] == name, check, || {
                "constraint name differs".into()
            })?;
            ensure(
                r.keys().all(Monomial::is_one) && r.len() == 1,
                check,
                || "residual depends on the scales".into(),
            )?;
            ensure(r.values().next() == Some(residual), check, || {
                "residual matrix differs".into()
            })
        }
        Verdict::Inconclusive { .. } => Ok(()),
    }
}

/// Substitutes a rational value for variable `v`.
fn substitute(p: &Polynomial, v: usize, x: &Rational) -> Polynomial {
    let mut out = Polynomial::zero(p.nvars());
    for (m, c) in p.terms() {
        let mut exps = m.exps().to_vec();
        let e = std::mem::replace(&mut exps[v], 0);
        let mut c = c.clone();
        for _ in 0..e {
            c *= x;
        }
        out.add_term(Monomial::new(exps), c);
    }
    out
}
