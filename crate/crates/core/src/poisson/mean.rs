use super::sample::random_combination;
use super::{bracket_mod, laplacian, PoissonError, PolySpace, Polynomial};
use crate::liealg::LieAlgebra;
use crate::linalg::{dot, Matrix};
use crate::rational::Rational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// The mean as a row vector on a polynomial space: the left null vector of
/// Δ normalized so that `mean(1) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanFunctional {
    pub space: PolySpace,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub weights: Vec<Rational>,
}

impl MeanFunctional {
    /// Defined when Δ has one-dimensional kernel (the constants) and the
    /// constants are not in its image.
    pub fn new(l: &LieAlgebra, s: &PolySpace) -> Result<Self, PoissonError> {
        let op = laplacian(l, s)?;
        let left = op.matrix.left_kernel();
        if left.len() != 1 {
            return Err(PoissonError::MeanUndefined(format!(
                "kernel of the Laplacian on degree <= {} has dimension {}; kernel contains nonconstant invariants",
                s.degree_cap(),
                left.len()
            )));
        }
        let y = &left[0];
        if y[0].is_zero() {
            return Err(PoissonError::MeanUndefined(
                "constants lie in the image of the Laplacian".into(),
            ));
        }
        let c = y[0].clone();
        Ok(MeanFunctional {
            space: s.clone(),
            weights: y.iter().map(|v| v / &c).collect(),
        })
    }

    pub fn eval(&self, f: &Polynomial) -> Result<Rational, PoissonError> {
        Ok(dot(&self.weights, &self.space.coords(f)?))
    }

    pub fn degree_cap(&self) -> u32 {
        self.space.degree_cap()
    }
}

/// Mean of `f`, computed on `s` or on a larger space if `f` needs one.
pub fn mean(l: &LieAlgebra, f: &Polynomial, s: &PolySpace) -> Result<Rational, PoissonError> {
    let d = s.reduce(f).degree().unwrap_or(0);
    if d <= s.degree_cap() {
        MeanFunctional::new(l, s)?.eval(f)
    } else {
        MeanFunctional::new(l, &s.with_degree(d)?)?.eval(f)
    }
}

/// `G_ab = mean(e_a e_b)` on the basis of a space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramForm {
    pub space: PolySpace,
    #[serde(with = "super::laplacian::matrix_rows")]
    pub matrix: Matrix<Rational>,
}

impl GramForm {
    pub fn leading_minors(&self) -> Vec<Rational> {
        self.matrix.leading_principal_minors()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.leading_minors().iter().all(Signed::is_positive)
    }

    pub fn inner(&self, f: &Polynomial, g: &Polynomial) -> Result<Rational, PoissonError> {
        let x = self.space.coords(f)?;
        let y = self.space.coords(g)?;
        Ok(dot(&x, &self.matrix.mul_vec(&y)))
    }

    /// `V^T G V` for coordinate vectors `V` (one per column).
    pub fn restrict(&self, vectors: &[Vec<Rational>]) -> Matrix<Rational> {
        let v = Matrix::from_cols(vectors, self.space.dim());
        v.transpose().mul(&self.matrix).mul(&v)
    }
}

/// Gram form on `s`, using the mean on degree `2k`.
pub fn gram(l: &LieAlgebra, s: &PolySpace) -> Result<GramForm, PoissonError> {
    let mu = MeanFunctional::new(l, &s.with_degree(2 * s.degree_cap())?)?;
    gram_with(&mu, s)
}

pub(crate) fn gram_with(mu: &MeanFunctional, s: &PolySpace) -> Result<GramForm, PoissonError> {
    let el = s.elements();
    let n = el.len();
    let mut g = Matrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let v = mu.eval(&el[a].mul(&el[b]))?;
            g.set(a, b, v.clone());
            g.set(b, a, v);
        }
    }
    Ok(GramForm {
        space: s.clone(),
        matrix: g,
    })
}

/// Which `f` act in `<{f,g},h> + <g,{f,h}>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActingSet {
    /// Every basis element of the space.
    Full,
    /// The constant and the coordinate functions.
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualWitness {
    pub f: Polynomial,
    pub g: Polynomial,
    pub h: Polynomial,
    #[serde(with = "crate::rational::serde_rational")]
    pub residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdInvarianceReport {
    pub acting: ActingSet,
    pub triples: usize,
    pub samples: usize,
    /// Largest absolute residual seen; zero when the identity holds.
    #[serde(with = "crate::rational::serde_rational")]
    pub max_residual: Rational,
    pub witness: Option<ResidualWitness>,
}

impl AdInvarianceReport {
    pub fn holds(&self) -> bool {
        self.max_residual.is_zero()
    }

    fn record(&mut self, f: &Polynomial, g: &Polynomial, h: &Polynomial, r: Rational) {
        if r.abs() > self.max_residual {
            self.max_residual = r.abs();
            self.witness = Some(ResidualWitness {
                f: f.clone(),
                g: g.clone(),
                h: h.clone(),
                residual: r,
            });
        }
    }
}

fn acting_elements(s: &PolySpace, acting: ActingSet) -> Vec<Polynomial> {
    match acting {
        ActingSet::Full => s.elements(),
        ActingSet::Linear => {
            let n = s.nvars();
            std::iter::once(Polynomial::one(n))
                .chain((0..n).map(|i| Polynomial::var(n, i)))
                .collect()
        }
    }
}

/// Degree needed to evaluate every residual exactly.
pub(crate) fn ad_invariance_degree(k: u32, acting: ActingSet) -> u32 {
    match acting {
        ActingSet::Full => (3 * k).saturating_sub(1).max(1),
        ActingSet::Linear => (2 * k).max(1),
    }
}

/// Checks `mean({f,g} h + g {f,h}) = 0` for all basis triples and for
/// `samples` pseudorandom triples drawn from the same spans.
pub fn check_ad_invariance(
    l: &LieAlgebra,
    s: &PolySpace,
    acting: ActingSet,
    samples: usize,
    seed: u64,
) -> Result<AdInvarianceReport, PoissonError> {
    let mu = MeanFunctional::new(
        l,
        &s.with_degree(ad_invariance_degree(s.degree_cap(), acting))?,
    )?;
    check_ad_invariance_with_mean(l, s, acting, samples, seed, &mu)
}

pub(crate) fn check_ad_invariance_with_mean(
    l: &LieAlgebra,
    s: &PolySpace,
    acting: ActingSet,
    samples: usize,
    seed: u64,
    mu: &MeanFunctional,
) -> Result<AdInvarianceReport, PoissonError> {
    let ideal = s.ideal();
    let fs = acting_elements(s, acting);
    let gs = s.elements();
    let mut report = AdInvarianceReport {
        acting,
        triples: 0,
        samples: 0,
        max_residual: Rational::zero(),
        witness: None,
    };
    for f in &fs {
        let br: Vec<Polynomial> = gs
            .iter()
            .map(|g| bracket_mod(f, g, l, ideal))
            .collect::<Result<_, _>>()?;
        for (a, g) in gs.iter().enumerate() {
            for (b, h) in gs.iter().enumerate() {
                let r = mu.eval(&br[a].mul(h).add(&g.mul(&br[b])))?;
                report.triples += 1;
                report.record(f, g, h, r);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let f = random_combination(&mut rng, &fs, 3);
        let g = random_combination(&mut rng, &gs, 3);
        let h = random_combination(&mut rng, &gs, 3);
        let fg = bracket_mod(&f, &g, l, ideal)?;
        let fh = bracket_mod(&f, &h, l, ideal)?;
        let r = mu.eval(&fg.mul(&h).add(&g.mul(&fh)))?;
        report.samples += 1;
        report.record(&f, &g, &h, r);
    }
    Ok(report)
}

/// The same identity read off a given Gram matrix: for each coordinate
/// function `f`, with `A` the matrix of `{f, .}` on the space, the residual
/// matrix is `A^T G + G A`.
pub fn check_ad_invariance_with_gram(
    l: &LieAlgebra,
    gram: &GramForm,
) -> Result<AdInvarianceReport, PoissonError> {
    let s = &gram.space;
    let el = s.elements();
    let mut report = AdInvarianceReport {
        acting: ActingSet::Linear,
        triples: 0,
        samples: 0,
        max_residual: Rational::zero(),
        witness: None,
    };
    for f in acting_elements(s, ActingSet::Linear) {
        let cols = el
            .iter()
            .map(|g| s.coords(&bracket_mod(&f, g, l, s.ideal())?))
            .collect::<Result<Vec<_>, _>>()?;
        let a = Matrix::from_cols(&cols, s.dim());
        let res = a.transpose().mul(&gram.matrix).plus(&gram.matrix.mul(&a));
        for (i, g) in el.iter().enumerate() {
            for (j, h) in el.iter().enumerate() {
                report.triples += 1;
                report.record(&f, g, h, res.get(i, j).clone());
            }
        }
    }
    Ok(report)
}
