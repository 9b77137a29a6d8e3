//! Quantization-ansatz feasibility on the unit sphere in `su(2)^*`.
//!
//! The domain is `H_0 + H_1 + ... + H_k` (spherical harmonics up to degree
//! `k`). `Q(1) = I` and `Q(x_i)` are the spin-`j` generators; each higher
//! degree image is constrained by equivariance `[Q(x_i), Q(h)] = Q({x_i, h})`,
//! whose solution space is at most one-dimensional. Requiring skew-adjoint
//! images cuts it to real multiples `t_l M` of one matrix family. What is
//! left is a polynomial system in the real scales `t_l`, coming from the
//! bracket relations among higher harmonics whose brackets stay inside the
//! domain. The system is decided by exact linear algebra: Nullstellensatz
//! multipliers for infeasibility, a univariate gcd otherwise.

use super::spin::{spin, weighted_adjoint, Spin};
use super::NogoError;
use crate::liealg::Builtin;
use crate::linalg::{Field, GaussianRational, Matrix};
use crate::poisson::{
    bracket_mod, laplacian, poly_space, Monomial, OrbitIdeal, PolySpace, Polynomial,
};
use crate::rational::{rat, rational_sqrt, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest spin the probe accepts.
pub const MAX_PROBE_SPIN: i64 = 3;

/// Degree bound for Nullstellensatz multipliers.
const MULTIPLIER_DEGREE: u32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainElement {
    pub label: String,
    pub degree: u32,
    pub poly: Polynomial,
}

/// `Q(e) = matrix` for a fixed image, `Q(e) = t_p * matrix` otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzImage {
    pub param: Option<usize>,
    #[serde(with = "gaussian_rows")]
    pub matrix: Matrix<GaussianRational>,
}

/// `sum coeff {e_a, e_b}` over domain elements of degree at least 2, with
/// the sum lying in the domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Combination {
    pub terms: Vec<CombinationTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinationTerm {
    pub a: usize,
    pub b: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ParamValue {
    Rational(#[serde(with = "crate::rational::serde_rational")] Rational),
    /// A real root of `c0 + c1 t + c2 t^2`.
    Root(#[serde(with = "crate::rational::serde_rational_vec")] Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Multiplier {
    pub equation: usize,
    pub poly: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    /// Every equation vanishes at the given scales.
    Feasible {
        values: Vec<ParamValue>,
    },
    /// `sum m_i p_i = 1`.
    LinearInfeasible {
        multipliers: Vec<Multiplier>,
    },
    /// `sum m_i p_i = target`, a quadratic in one scale with negative
    /// discriminant.
    NoRealSolution {
        multipliers: Vec<Multiplier>,
        param: usize,
        target: Polynomial,
    },
    /// A constraint whose residual is a nonzero constant matrix.
    ResidualObstruction {
        constraint: usize,
        name: String,
        #[serde(with = "gaussian_rows")]
        residual: Matrix<GaussianRational>,
    },
    Inconclusive {
        reason: String,
    },
}

impl Verdict {
    pub fn class(&self) -> &'static str {
        match self {
            Verdict::Feasible { .. } => "Feasible",
            Verdict::LinearInfeasible { .. } => "LinearInfeasible",
            Verdict::NoRealSolution { .. } => "NoRealSolution",
            Verdict::ResidualObstruction { .. } => "ResidualObstruction",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, Verdict::Inconclusive { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityPayload {
    #[serde(with = "crate::rational::serde_rational")]
    pub j: Rational,
    pub k_domain: u32,
    /// Matrix size `2j + 1`.
    pub size: usize,
    /// Diagonal of the inner product the images are skew-adjoint for.
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub weights: Vec<Rational>,
    pub domain: Vec<DomainElement>,
    pub images: Vec<AnsatzImage>,
    /// Harmonic degree scaled by each parameter; parameter `p` is the
    /// variable `x{p+1}` in `equations`.
    pub params: Vec<u32>,
    /// Dimension of the equivariant solution space for degrees `2..=k`.
    pub kernel_dims: Vec<usize>,
    pub combinations: Vec<Combination>,
    pub constraint_names: Vec<String>,
    /// Real and imaginary parts of the residual entries, constraint by
    /// constraint, zero polynomials skipped.
    pub equations: Vec<Polynomial>,
    pub verdict: Verdict,
}

pub(crate) mod gaussian_rows {
    use crate::linalg::{GaussianRational, Matrix};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &Matrix<GaussianRational>, s: S) -> Result<S::Ok, S::Error> {
        m.to_rows().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Matrix<GaussianRational>, D::Error> {
        let rows = Vec::<Vec<GaussianRational>>::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("image matrices must be square"));
        }
        Ok(if n == 0 {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows)
        })
    }
}

/// A matrix polynomial in the scales: monomial in the parameters to matrix
/// coefficient.
pub(crate) type ParamMatrix = BTreeMap<Monomial, Matrix<GaussianRational>>;

pub(crate) fn image_matrix(img: &AnsatzImage, nparams: usize) -> ParamMatrix {
    let mon = match img.param {
        None => Monomial::one(nparams),
        Some(p) => Monomial::var(nparams, p),
    };
    let mut out = ParamMatrix::new();
    if !img.matrix.is_zero() {
        out.insert(mon, img.matrix.clone());
    }
    out
}

pub(crate) fn pm_add_scaled(acc: &mut ParamMatrix, x: &ParamMatrix, c: &GaussianRational) {
    for (m, a) in x {
        let term = a.scale(c);
        let sum = match acc.remove(m) {
            Some(prev) => prev.plus(&term),
            None => term,
        };
        if !sum.is_zero() {
            acc.insert(m.clone(), sum);
        }
    }
}

pub(crate) fn pm_commutator(x: &ParamMatrix, y: &ParamMatrix) -> ParamMatrix {
    let mut out = ParamMatrix::new();
    let one = GaussianRational::one();
    for (m1, a) in x {
        for (m2, b) in y {
            let mut single = ParamMatrix::new();
            single.insert(m1.mul(m2), a.commutator(b));
            pm_add_scaled(&mut out, &single, &one);
        }
    }
    out
}

/// Real and imaginary parts of each entry, in row-major order, as
/// polynomials in the scales; zero polynomials are dropped.
pub(crate) fn pm_equations(x: &ParamMatrix, size: usize, nparams: usize) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for r in 0..size {
        for c in 0..size {
            let mut re = Polynomial::zero(nparams);
            let mut im = Polynomial::zero(nparams);
            for (m, a) in x {
                let z = a.get(r, c);
                re.add_term(m.clone(), z.re.clone());
                im.add_term(m.clone(), z.im.clone());
            }
            for p in [re, im] {
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn g(q: Rational) -> GaussianRational {
    GaussianRational::real(q)
}

/// Harmonic bases of the sphere quotient up to degree `top`, as coordinate
/// vectors in `big`.
fn harmonic_bases(
    l: &crate::liealg::LieAlgebra,
    big: &PolySpace,
    top: u32,
) -> Result<Vec<Vec<Vec<Rational>>>, NogoError> {
    let op = laplacian(l, big)?;
    let n = big.dim();
    let mut out = Vec::new();
    for deg in 0..=top {
        let vecs = match deg {
            0 => vec![big.coords(&Polynomial::one(3))?],
            1 => (0..3)
                .map(|i| big.coords(&Polynomial::var(3, i)))
                .collect::<Result<_, _>>()?,
            _ => {
                let ev = rat(i64::from(deg * (deg + 1)));
                op.matrix.minus(&Matrix::identity(n).scale(&ev)).kernel()
            }
        };
        if vecs.len() != 2 * deg as usize + 1 {
            return Err(super::failure(
                "feasibility probe",
                format!("degree {deg} harmonics have dimension {}", vecs.len()),
            ));
        }
        out.push(vecs);
    }
    Ok(out)
}

/// Scales a rational vector to coprime integers with a positive first
/// nonzero entry.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let mut den = num_bigint::BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let mut gcd = num_bigint::BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        gcd = -gcd;
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

type CoordFn = Box<dyn Fn(&Polynomial) -> Result<Vec<Rational>, NogoError>>;

struct Setup {
    spin: Spin,
    domain: Vec<DomainElement>,
    images: Vec<AnsatzImage>,
    params: Vec<u32>,
    kernel_dims: Vec<usize>,
    combinations: Vec<Combination>,
    /// Coordinates of a polynomial in the domain basis.
    domain_coords: CoordFn,
    inconclusive: Option<String>,
}

fn setup(j: &Rational, k: u32) -> Result<Setup, NogoError> {
    if !(2..=3).contains(&k) {
        return Err(NogoError::UnsupportedTruncation(k));
    }
    if j > &rat(MAX_PROBE_SPIN) {
        return Err(NogoError::InvalidSpin(format!(
            "spin {j} exceeds the probe limit {MAX_PROBE_SPIN}"
        )));
    }
    let sp = spin(j)?;
    let n = sp.weights.len();
    let l = Builtin::Su2.build()?;
    let ideal = OrbitIdeal::sphere(Rational::one());
    let top = 2 * k - 1;
    let big = poly_space(&l, top, Some(ideal.clone()), usize::MAX)?;
    let harm = harmonic_bases(&l, &big, top)?;

    // Eigenbasis of the big space, degree by degree; the domain comes first.
    let eig_cols: Vec<Vec<Rational>> = harm.iter().flatten().cloned().collect();
    let eig = Matrix::from_cols(&eig_cols, big.dim());
    let dsize: usize = (0..=k as usize).map(|d| 2 * d + 1).sum();
    let mut domain = Vec::new();
    for (deg, vecs) in harm.iter().enumerate().take(k as usize + 1) {
        for (idx, v) in vecs.iter().enumerate() {
            let label = match deg {
                0 => "1".to_string(),
                1 => format!("x{}", idx + 1),
                _ => format!("Y{deg}_{}", idx + 1),
            };
            domain.push(DomainElement {
                label,
                degree: deg as u32,
                poly: big.to_poly(v),
            });
        }
    }
    let eig_coords = {
        let big = big.clone();
        let eig = eig.clone();
        move |f: &Polynomial| -> Result<Vec<Rational>, NogoError> {
            let x = big.coords(f)?;
            eig.solve(&x)
                .ok_or_else(|| super::failure("feasibility probe", "harmonic basis is singular"))
        }
    };
    let bracket = |f: &Polynomial, h: &Polynomial| bracket_mod(f, h, &l, Some(&ideal));

    // Equivariant images, degree by degree.
    let mut images: Vec<AnsatzImage> = Vec::with_capacity(dsize);
    images.push(AnsatzImage {
        param: None,
        matrix: Matrix::identity(n),
    });
    for s in &sp.s {
        images.push(AnsatzImage {
            param: None,
            matrix: s.clone(),
        });
    }
    let mut params = Vec::new();
    let mut kernel_dims = Vec::new();
    let mut inconclusive = None;
    let mut offset = 4;
    for deg in 2..=k {
        let d = 2 * deg as usize + 1;
        let nn = n * n;
        let mut rows = Vec::new();
        for (i, s) in sp.s.iter().enumerate() {
            let xi = Polynomial::var(3, i);
            // a[b][a] = coefficient of h_b in {x_i, h_a}
            let mut act = vec![vec![Rational::zero(); d]; d];
            for a in 0..d {
                let c = eig_coords(&bracket(&xi, &domain[offset + a].poly)?)?;
                for b in 0..d {
                    act[b][a] = c[offset + b].clone();
                }
            }
            for a in 0..d {
                for r in 0..n {
                    for c in 0..n {
                        let mut row = vec![GaussianRational::zero(); d * nn];
                        for t in 0..n {
                            let idx = a * nn + t * n + c;
                            row[idx] = row[idx].plus(s.get(r, t));
                            let idx = a * nn + r * n + t;
                            row[idx] = row[idx].minus(s.get(t, c));
                        }
                        for (b, coeffs) in act.iter().enumerate() {
                            let idx = b * nn + r * n + c;
                            row[idx] = row[idx].minus(&g(coeffs[a].clone()));
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = Matrix::from_rows(rows).kernel();
        kernel_dims.push(kernel.len());
        let mats: Vec<Matrix<GaussianRational>> = match kernel.len() {
            0 => vec![Matrix::zeros(n, n); d],
            1 => match skew_family(&kernel[0], d, n, &sp.weights) {
                Some(m) => m,
                None => {
                    inconclusive = Some(format!(
                        "degree {deg} equivariant family admits no skew-adjoint normalization"
                    ));
                    vec![Matrix::zeros(n, n); d]
                }
            },
            dim => {
                inconclusive = Some(format!(
                    "degree {deg} equivariant solutions form a space of dimension {dim}"
                ));
                vec![Matrix::zeros(n, n); d]
            }
        };
        let param = (kernel.len() == 1 && inconclusive.is_none()).then(|| {
            params.push(deg);
            params.len() - 1
        });
        for m in mats {
            images.push(AnsatzImage { param, matrix: m });
        }
        offset += d;
    }

    // In-domain combinations of brackets among higher harmonics.
    let pairs: Vec<(usize, usize)> = (4..dsize)
        .flat_map(|a| (a + 1..dsize).map(move |b| (a, b)))
        .collect();
    let outside = big.dim() - dsize;
    let mut cols = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let c = eig_coords(&bracket(&domain[a].poly, &domain[b].poly)?)?;
        cols.push(c[dsize..].to_vec());
    }
    let combos = if outside == 0 || pairs.is_empty() {
        Vec::new()
    } else {
        Matrix::from_cols(&cols, outside).kernel()
    };
    let combinations = combos
        .iter()
        .map(|v| Combination {
            terms: primitive(v)
                .into_iter()
                .zip(&pairs)
                .filter(|(c, _)| !c.is_zero())
                .map(|(coeff, &(a, b))| CombinationTerm { a, b, coeff })
                .collect(),
        })
        .collect();

    let domain_coords = Box::new(move |f: &Polynomial| {
        let c = eig_coords(f)?;
        if c[dsize..].iter().any(|x| !x.is_zero()) {
            return Err(super::failure(
                "feasibility probe",
                "bracket leaves the domain",
            ));
        }
        Ok(c[..dsize].to_vec())
    });
    Ok(Setup {
        spin: sp,
        domain,
        images,
        params,
        kernel_dims,
        combinations,
        domain_coords,
        inconclusive,
    })
}

/// Turns a one-dimensional complex solution into a skew-adjoint family
/// `u V`, rescaled by a positive rational.
fn skew_family(
    v: &[GaussianRational],
    d: usize,
    n: usize,
    w: &[Rational],
) -> Option<Vec<Matrix<GaussianRational>>> {
    let nn = n * n;
    let mats: Vec<Matrix<GaussianRational>> = (0..d)
        .map(|a| {
            Matrix::from_rows(
                (0..n)
                    .map(|r| v[a * nn + r * n..a * nn + r * n + n].to_vec())
                    .collect(),
            )
        })
        .collect();
    let adj: Vec<_> = mats.iter().map(|m| weighted_adjoint(m, w)).collect();
    // The weighted adjoint maps the family to itself: adj = lambda * V.
    let pos = v.iter().position(|z| !z.is_zero())?;
    let (a, r, c) = (pos / nn, (pos % nn) / n, pos % n);
    let lambda = adj[a].get(r, c).divide(mats[a].get(r, c));
    if mats.iter().zip(&adj).any(|(m, x)| m.scale(&lambda) != *x) {
        return None;
    }
    // u + lambda conj(u) = 0 makes u V skew-adjoint.
    let u = if lambda.is_one() {
        GaussianRational::new(Rational::zero(), rat(2))
    } else {
        GaussianRational::one().minus(&lambda)
    };
    let scaled: Vec<_> = mats.iter().map(|m| m.scale(&u)).collect();
    let z = scaled[a].get(r, c);
    let s = if z.re.is_zero() {
        z.im.abs()
    } else {
        z.re.abs()
    };
    let inv = g(s.recip());
    Some(scaled.iter().map(|m| m.scale(&inv)).collect())
}

/// Runs the probe for spin `j` on the degree `k_domain` truncation.
pub fn feasibility_probe(j: &Rational, k_domain: u32) -> Result<FeasibilityPayload, NogoError> {
    let st = setup(j, k_domain)?;
    let n = st.spin.weights.len();
    let np = st.params.len();
    let dsize = st.domain.len();
    let q: Vec<ParamMatrix> = st.images.iter().map(|i| image_matrix(i, np)).collect();
    let l = Builtin::Su2.build()?;
    let ideal = OrbitIdeal::sphere(Rational::one());

    let mut names = Vec::new();
    let mut residuals = Vec::new();
    let residual_of = |terms: &[(usize, usize, Rational)]| -> Result<ParamMatrix, NogoError> {
        let mut res = ParamMatrix::new();
        let mut br = Polynomial::zero(3);
        for (a, b, c) in terms {
            pm_add_scaled(&mut res, &pm_commutator(&q[*a], &q[*b]), &g(c.clone()));
            br.add_scaled(
                &bracket_mod(&st.domain[*a].poly, &st.domain[*b].poly, &l, Some(&ideal))?,
                c,
            );
        }
        let coords = (st.domain_coords)(&br)?;
        for (e, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                pm_add_scaled(&mut res, &q[e], &g(-c));
            }
        }
        Ok(res)
    };
    for a in 0..4 {
        for b in a + 1..dsize {
            names.push(format!(
                "{{{}, {}}}",
                st.domain[a].label, st.domain[b].label
            ));
            residuals.push(residual_of(&[(a, b, Rational::one())])?);
        }
    }
    for (ci, c) in st.combinations.iter().enumerate() {
        names.push(format!("combination {}", ci + 1));
        let terms: Vec<_> = c
            .terms
            .iter()
            .map(|t| (t.a, t.b, t.coeff.clone()))
            .collect();
        residuals.push(residual_of(&terms)?);
    }
    let mut equations = Vec::new();
    let mut origin = Vec::new();
    for (ci, r) in residuals.iter().enumerate() {
        for e in pm_equations(r, n, np) {
            equations.push(e);
            origin.push(ci);
        }
    }

    let verdict = match &st.inconclusive {
        Some(reason) => Verdict::Inconclusive {
            reason: reason.clone(),
        },
        None => decide(&equations, &origin, &residuals, &names, np),
    };
    Ok(FeasibilityPayload {
        j: j.clone(),
        k_domain,
        size: n,
        weights: st.spin.weights.clone(),
        domain: st.domain,
        images: st.images,
        params: st.params,
        kernel_dims: st.kernel_dims,
        combinations: st.combinations,
        constraint_names: names,
        equations,
        verdict,
    })
}

fn decide(
    eqs: &[Polynomial],
    origin: &[usize],
    residuals: &[ParamMatrix],
    names: &[String],
    np: usize,
) -> Verdict {
    if let Some(i) = eqs.iter().position(|p| p.degree() == Some(0)) {
        let ci = origin[i];
        let r = &residuals[ci];
        if r.keys().all(Monomial::is_one) {
            let residual = r.values().next().cloned().expect("nonzero residual");
            return Verdict::ResidualObstruction {
                constraint: ci,
                name: names[ci].clone(),
                residual,
            };
        }
        return Verdict::LinearInfeasible {
            multipliers: vec![Multiplier {
                equation: i,
                poly: Polynomial::constant(np, eqs[i].constant_term().recip()),
            }],
        };
    }
    if eqs.is_empty() {
        return Verdict::Feasible {
            values: vec![ParamValue::Rational(Rational::one()); np],
        };
    }
    let basis = independent_equations(eqs);
    let one = Polynomial::one(np);
    for deg in 0..=MULTIPLIER_DEGREE {
        if let Some(multipliers) = combination_for(eqs, &basis, &one, deg, np) {
            return Verdict::LinearInfeasible { multipliers };
        }
    }
    let used: Vec<usize> = (0..np)
        .filter(|&v| eqs.iter().any(|p| p.terms().any(|(m, _)| m.exps()[v] > 0)))
        .collect();
    if used.len() != 1 {
        return Verdict::Inconclusive {
            reason: format!(
                "no Nullstellensatz certificate up to multiplier degree {MULTIPLIER_DEGREE} and {} scales remain coupled",
                used.len()
            ),
        };
    }
    let v = used[0];
    let gcd = eqs
        .iter()
        .map(|p| univariate(p, v))
        .fold(Vec::new(), |acc, p| upoly_gcd(&acc, &p));
    let mut values = vec![ParamValue::Rational(Rational::one()); np];
    match gcd.len() {
        2 => {
            values[v] = ParamValue::Rational(-&gcd[0] / &gcd[1]);
            Verdict::Feasible { values }
        }
        3 => {
            let disc = &gcd[1] * &gcd[1] - rat(4) * &gcd[0] * &gcd[2];
            if disc.is_negative() {
                let target = Polynomial::from_terms(
                    np,
                    gcd.iter().enumerate().map(|(e, c)| {
                        let mut exps = vec![0; np];
                        exps[v] = e as u32;
                        (Monomial::new(exps), c.clone())
                    }),
                );
                for deg in 0..=MULTIPLIER_DEGREE {
                    if let Some(multipliers) = combination_for(eqs, &basis, &target, deg, np) {
                        return Verdict::NoRealSolution {
                            multipliers,
                            param: v,
                            target,
                        };
                    }
                }
                Verdict::Inconclusive {
                    reason: "no real root, but no multiplier certificate found".into(),
                }
            } else {
                values[v] = match rational_sqrt(&disc) {
                    Some(sq) => ParamValue::Rational((sq - &gcd[1]) / (rat(2) * &gcd[2])),
                    None => ParamValue::Root(gcd),
                };
                Verdict::Feasible { values }
            }
        }
        len => Verdict::Inconclusive {
            reason: format!(
                "common factor of degree {} in the remaining scale",
                len.saturating_sub(1)
            ),
        },
    }
}

/// Indices of a maximal linearly independent subset of the equations.
fn independent_equations(eqs: &[Polynomial]) -> Vec<usize> {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in eqs {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let cols: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|p| {
            let mut v = vec![Rational::zero(); index.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        })
        .collect();
    Matrix::from_cols(&cols, index.len()).echelon().pivot_cols
}

/// Multipliers of degree at most `deg` on the chosen equations with
/// `sum m_i p_i = target`.
fn combination_for(
    eqs: &[Polynomial],
    chosen: &[usize],
    target: &Polynomial,
    deg: u32,
    np: usize,
) -> Option<Vec<Multiplier>> {
    let mons: Vec<Monomial> = (0..=deg).flat_map(|d| Monomial::of_degree(np, d)).collect();
    let mut products = Vec::new();
    for &i in chosen {
        for m in &mons {
            products.push((i, m.clone(), eqs[i].mul_term(m, &Rational::one())));
        }
    }
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in products.iter().map(|x| &x.2).chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let to_vec = |p: &Polynomial| {
        let mut v = vec![Rational::zero(); index.len()];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let cols: Vec<Vec<Rational>> = products.iter().map(|x| to_vec(&x.2)).collect();
    let sol = Matrix::from_cols(&cols, index.len()).solve(&to_vec(target))?;
    let mut by_eq: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for ((i, m, _), c) in products.iter().zip(sol) {
        if !c.is_zero() {
            by_eq
                .entry(*i)
                .or_insert_with(|| Polynomial::zero(np))
                .add_term(m.clone(), c);
        }
    }
    Some(
        by_eq
            .into_iter()
            .map(|(equation, poly)| Multiplier { equation, poly })
            .collect(),
    )
}

/// Coefficients (ascending) of a polynomial that only involves variable `v`.
pub(crate) fn univariate(p: &Polynomial, v: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exps()[v] as usize;
        if out.len() <= e {
            out.resize(e + 1, Rational::zero());
        }
        out[e] += c;
    }
    trim(&mut out);
    out
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Remainder of `a` modulo `b` (ascending coefficients, `b` nonzero).
pub(crate) fn upoly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let q = r.last().expect("nonempty") / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd; the empty vector stands for the zero polynomial.
fn upoly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = upoly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}
