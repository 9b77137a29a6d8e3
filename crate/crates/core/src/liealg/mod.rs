//! Finite-dimensional Lie algebras over the rationals.
//!
//! An algebra is given by structure constants `c^k_ij` with
//! `[e_i, e_j] = sum_k c^k_ij e_k`. Construction validates antisymmetry and
//! the Jacobi identity exactly; everything downstream assumes a validated
//! [`LieAlgebra`].

mod builtin;
mod json;
mod subspace;

pub use builtin::Builtin;
pub use json::{AlgebraJson, BracketEntry, CoeffEntry};
pub use subspace::Subspace;

use crate::linalg::Matrix;
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LieError {
    #[error("structure tensor must have dim^3 = {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("{got} labels given for a {dim}-dimensional algebra")]
    Labels { dim: usize, got: usize },
    #[error("antisymmetry violated at (i,j,k) = ({i},{j},{k}): c^k_ij + c^k_ji = {residual}")]
    AntisymmetryViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Rational,
    },
    #[error("Jacobi identity violated at (i,j,k,l) = ({i},{j},{k},{l}): residual {residual}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: Rational,
    },
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("malformed algebra description: {0}")]
    Malformed(String),
    #[error("vector of length {got} does not live in a {dim}-dimensional algebra")]
    DimensionMismatch { dim: usize, got: usize },
}

/// Unvalidated structure constants, as read from input.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    labels: Vec<String>,
    /// Flat `[i][j][k]` layout: `c^k_ij` at `(i * dim + j) * dim + k`.
    c: Vec<Rational>,
}

impl StructureConstants {
    pub fn new(dim: usize, labels: Vec<String>, c: Vec<Rational>) -> Result<Self, LieError> {
        if c.len() != dim * dim * dim {
            return Err(LieError::Shape {
                expected: dim * dim * dim,
                got: c.len(),
            });
        }
        if labels.len() != dim {
            return Err(LieError::Labels {
                dim,
                got: labels.len(),
            });
        }
        Ok(StructureConstants { dim, labels, c })
    }

    pub fn zeros(dim: usize) -> Self {
        StructureConstants {
            dim,
            labels: default_labels(dim),
            c: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `c^k_ij`, zero-based.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.dim;
        self.c[(i * d + j) * d + k] = v;
    }

    /// Sets `[e_i, e_j] = v e_k` and `[e_j, e_i] = -v e_k`.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.set(j, i, k, -&v);
        self.set(i, j, k, v);
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LieError> {
        if labels.len() != self.dim {
            return Err(LieError::Labels {
                dim: self.dim,
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// First antisymmetry violation in `(i, j, k)` order, 1-based.
    pub fn check_antisymmetry(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let residual = self.get(i, j, k) + self.get(j, i, k);
                    if !residual.is_zero() {
                        return Err(LieError::AntisymmetryViolation {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Jacobi identity on basis triples `i < j < k`; assumes antisymmetry.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut residual = Rational::zero();
                        for m in 0..n {
                            residual += self.get(i, j, m) * self.get(m, k, l)
                                + self.get(j, k, m) * self.get(m, i, l)
                                + self.get(k, i, m) * self.get(m, j, l);
                        }
                        if !residual.is_zero() {
                            return Err(LieError::JacobiViolation {
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                                l: l + 1,
                                residual,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

/// A validated Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    constants: StructureConstants,
}

/// Symmetric bilinear form on an algebra, as a Gram matrix in the structure
/// basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    pub matrix: Matrix<Rational>,
}

/// Number of positive, negative and zero squares of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl BilinearForm {
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        crate::linalg::dot(x, &self.matrix.mul_vec(y))
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    pub fn leading_minors(&self) -> Vec<Rational> {
        self.matrix.leading_principal_minors()
    }

    /// Negative definiteness via the sign pattern of leading principal minors.
    pub fn is_negative_definite(&self) -> bool {
        self.leading_minors().iter().enumerate().all(|(k, m)| {
            if k % 2 == 0 {
                m.is_negative()
            } else {
                m.is_positive()
            }
        })
    }

    /// Sylvester inertia by symmetric (congruence) elimination.
    pub fn inertia(&self) -> Inertia {
        let n = self.matrix.nrows();
        let mut a = self.matrix.clone();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            let pivot = active.iter().copied().find(|&i| !a.get(i, i).is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    let pair = active.iter().find_map(|&i| {
                        active
                            .iter()
                            .find(|&&j| j != i && !a.get(i, j).is_zero())
                            .map(|&j| (i, j))
                    });
                    let Some((i, j)) = pair else { break };
                    // e_i <- e_i + e_j makes the (i,i) entry 2 a_ij.
                    for c in 0..n {
                        let v = a.get(i, c) + a.get(j, c);
                        a.set(i, c, v);
                    }
                    for r in 0..n {
                        let v = a.get(r, i) + a.get(r, j);
                        a.set(r, i, v);
                    }
                    i
                }
            };
            let d = a.get(p, p).clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != p);
            for &r in &active {
                let f = a.get(r, p) / &d;
                if f.is_zero() {
                    continue;
                }
                for &c in &active {
                    let v = a.get(r, c) - &f * a.get(p, c);
                    a.set(r, c, v);
                }
            }
            for &r in &active {
                a.set(r, p, Rational::zero());
                a.set(p, r, Rational::zero());
            }
        }
        Inertia {
            positive: pos,
            negative: neg,
            zero: n - pos - neg,
        }
    }
}

/// Result of closing a set of vectors under the bracket.
#[derive(Debug, Clone)]
pub struct Generated {
    pub subspace: Subspace,
    /// Dimension after each closure round, starting with the seed span.
    pub chain: Vec<usize>,
    pub vectors: Vec<GeneratedVector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedVector {
    pub vector: Vec<Rational>,
    pub origin: Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// The `n`-th seed vector supplied by the caller.
    Seed(usize),
    /// Bracket of two earlier generated vectors, by position.
    Bracket(usize, usize),
}

impl LieAlgebra {
    pub fn new(constants: StructureConstants) -> Result<Self, LieError> {
        constants.check_antisymmetry()?;
        constants.check_jacobi()?;
        Ok(LieAlgebra { constants })
    }

    /// Builds from a full `c[i][j][k]` tensor.
    pub fn from_tensor(c: Vec<Vec<Vec<Rational>>>, labels: Vec<String>) -> Result<Self, LieError> {
        let dim = c.len();
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for (i, plane) in c.into_iter().enumerate() {
            if plane.len() != dim || plane.iter().any(|row| row.len() != dim) {
                return Err(LieError::Shape {
                    expected: dim * dim * dim,
                    got: i,
                });
            }
            flat.extend(plane.into_iter().flatten());
        }
        LieAlgebra::new(StructureConstants::new(dim, labels, flat)?)
    }

    pub fn builtin(b: &Builtin) -> Result<Self, LieError> {
        b.build()
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            constants: StructureConstants::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.constants.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.constants.labels
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.constants.get(i, j, k)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::DimensionMismatch {
                dim: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `[x, y]` in coordinates. Panics on length mismatch.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        assert!(
            x.len() == n && y.len() == n,
            "bracket of vectors outside the algebra"
        );
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x = [x, .]`: column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[Rational]) -> Result<Matrix<Rational>, LieError> {
        self.check_len(x)?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..n {
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        let v = m.get(k, j) + xi * c;
                        m.set(k, j, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<Rational> {
        self.ad(&self.basis_vector(i))
            .expect("basis vector has the right length")
    }

    /// `K_ij = trace(ad_i ad_j)`.
    pub fn killing_form(&self) -> BilinearForm {
        let n = self.dim();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut t = Rational::zero();
                for a in 0..n {
                    for b in 0..n {
                        let x = self.c(i, b, a);
                        if x.is_zero() {
                            continue;
                        }
                        t += x * self.c(j, a, b);
                    }
                }
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        BilinearForm { matrix: k }
    }

    /// Cartan's criterion: nondegenerate Killing form.
    pub fn is_semisimple(&self) -> bool {
        !self.killing_form().matrix.determinant().is_zero()
    }

    /// Negative definite Killing form.
    pub fn is_compact_type(&self) -> bool {
        self.dim() > 0 && self.killing_form().is_negative_definite()
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // Row (j, k), column i: c^k_ij. x is central iff sum_i x_i c^k_ij = 0.
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m.set(j * n + k, i, self.c(i, j, k).clone());
                }
            }
        }
        if n == 0 {
            return Subspace::zero(0);
        }
        Subspace::span(n, &m.kernel())
    }

    pub fn derived_algebra(&self) -> Subspace {
        let n = self.dim();
        let mut vs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                vs.push(self.bracket(&self.basis_vector(i), &self.basis_vector(j)));
            }
        }
        Subspace::span(n, &vs)
    }

    /// Least subalgebra containing `s`.
    pub fn lie_generate(&self, s: &Subspace) -> Generated {
        self.generate_from(s.basis().to_vec())
    }

    /// Bracket closure of the seeds, recording where every kept vector came
    /// from. Dependent seeds are dropped; each round brackets all pairs of
    /// kept vectors and keeps the ones that enlarge the span.
    pub fn generate_from(&self, seeds: Vec<Vec<Rational>>) -> Generated {
        let n = self.dim();
        let mut kept: Vec<GeneratedVector> = Vec::new();
        let mut span = Subspace::zero(n);
        for (idx, v) in seeds.into_iter().enumerate() {
            if !span.contains(&v) {
                span = span.sum(&Subspace::span(n, std::slice::from_ref(&v)));
                kept.push(GeneratedVector {
                    vector: v,
                    origin: Origin::Seed(idx),
                });
            }
        }
        let mut chain = vec![span.dim()];
        loop {
            let before = kept.len();
            let mut fresh = Vec::new();
            for a in 0..before {
                for b in a + 1..before {
                    let w = self.bracket(&kept[a].vector, &kept[b].vector);
                    if !span.contains(&w) {
                        span = span.sum(&Subspace::span(n, std::slice::from_ref(&w)));
                        fresh.push(GeneratedVector {
                            vector: w,
                            origin: Origin::Bracket(a, b),
                        });
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            kept.extend(fresh);
            chain.push(span.dim());
        }
        Generated {
            subspace: span,
            chain,
            vectors: kept,
        }
    }

    /// Dimension of the centroid `{ X : X ad_i = ad_i X for all i }`.
    pub fn centroid_dim(&self) -> usize {
        let n = self.dim();
        if n == 0 {
            return 0;
        }
        let ads: Vec<Matrix<Rational>> = (0..n).map(|i| self.ad_basis(i)).collect();
        // Unknown X_{rs} at column r * n + s; equation (X A - A X)_{pq} = 0.
        let mut rows = Vec::with_capacity(n * n * n);
        for a in &ads {
            for p in 0..n {
                for q in 0..n {
                    let mut row = vec![Rational::zero(); n * n];
                    for t in 0..n {
                        // (X A)_{pq} = sum_t X_{pt} A_{tq}
                        let v = a.get(t, q);
                        if !v.is_zero() {
                            row[p * n + t] += v;
                        }
                        // (A X)_{pq} = sum_t A_{pt} X_{tq}
                        let w = a.get(p, t);
                        if !w.is_zero() {
                            row[t * n + q] -= w;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return n * n;
        }
        n * n - Matrix::from_rows(rows).rank()
    }

    /// Absolutely simple: semisimple with a one-dimensional centroid. For
    /// compact algebras this coincides with simplicity.
    pub fn is_simple(&self) -> bool {
        self.dim() > 0 && self.is_semisimple() && self.centroid_dim() == 1
    }

    /// Block direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (a, b) = (self.dim(), other.dim());
        let mut sc = StructureConstants::zeros(a + b);
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    sc.set(i, j, k, self.c(i, j, k).clone());
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    sc.set(a + i, a + j, a + k, other.c(i, j, k).clone());
                }
            }
        }
        let mut labels: Vec<String> = self.labels().to_vec();
        labels.extend(other.labels().iter().cloned());
        if labels
            .iter()
            .collect::<std::collections::HashSet<_>>()
            .len()
            != labels.len()
        {
            labels = self
                .labels()
                .iter()
                .map(|l| format!("{l}_1"))
                .chain(other.labels().iter().map(|l| format!("{l}_2")))
                .collect();
        }
        sc.labels = labels;
        LieAlgebra { constants: sc }
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson::from_constants(&self.constants)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn su2() -> LieAlgebra {
        LieAlgebra::builtin(&Builtin::Su2).unwrap()
    }

    fn eps_tensor() -> Vec<Vec<Vec<Rational>>> {
        let mut c = vec![vec![vec![rat(0); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = rat(1);
            c[j][i][k] = rat(-1);
        }
        c
    }

    #[test]
    fn epsilon_tensor_is_valid() {
        let l = LieAlgebra::from_tensor(eps_tensor(), default_labels(3)).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(l, su2());
    }

    #[test]
    fn abelian_tensor_is_valid() {
        let c = vec![vec![vec![rat(0); 2]; 2]; 2];
        assert!(LieAlgebra::from_tensor(c, default_labels(2)).is_ok());
    }

    #[test]
    fn flipped_constant_breaks_antisymmetry() {
        let mut c = eps_tensor();
        c[0][1][2] = rat(-1);
        let err = LieAlgebra::from_tensor(c, default_labels(3)).unwrap_err();
        assert_eq!(
            err,
            LieError::AntisymmetryViolation {
                i: 1,
                j: 2,
                k: 3,
                residual: rat(-2)
            }
        );
    }

    #[test]
    fn jacobi_violation_is_located() {
        let mut sc = StructureConstants::zeros(3);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            sc.set_antisymmetric(i, j, k, rat(1));
        }
        // [e1, e2] = e3 + e1 is antisymmetric but not a Lie bracket.
        sc.set_antisymmetric(0, 1, 0, rat(1));
        match LieAlgebra::new(sc).unwrap_err() {
            LieError::JacobiViolation { i, j, k, .. } => assert_eq!((i, j, k), (1, 2, 3)),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn killing_form_of_su2() {
        // Oracle: explicit ad matrices, trace of products.
        let l = su2();
        let ads: Vec<_> = (0..3).map(|i| l.ad_basis(i)).collect();
        let k = l.killing_form();
        for i in 0..3 {
            for j in 0..3 {
                let prod = ads[i].mul(&ads[j]);
                let tr = (0..3).fold(rat(0), |s, d| s + prod.get(d, d));
                assert_eq!(k.matrix.get(i, j), &tr);
                assert_eq!(k.matrix.get(i, j), &if i == j { rat(-2) } else { rat(0) });
            }
        }
        assert_eq!(k.leading_minors(), vec![rat(-2), rat(4), rat(-8)]);
        assert!(l.is_semisimple());
        assert!(l.is_compact_type());
        assert!(l.center().is_zero());
    }

    #[test]
    fn abelian_and_reductive_cases() {
        let a = LieAlgebra::abelian(2);
        assert!(a.killing_form().matrix.is_zero());
        assert!(!a.is_semisimple());
        assert!(!a.is_compact_type());
        assert_eq!(a.center(), Subspace::full(2));

        let r = su2().direct_sum(&LieAlgebra::abelian(1));
        assert!(!r.is_semisimple());
        let line = Subspace::span(4, &[r.basis_vector(3)]);
        assert_eq!(r.center(), line);
    }

    #[test]
    fn sl2_is_semisimple_but_not_compact() {
        let l = LieAlgebra::builtin(&Builtin::Sl2R).unwrap();
        assert!(l.is_semisimple());
        assert!(!l.is_compact_type());
        let inertia = l.killing_form().inertia();
        assert_eq!(
            (inertia.positive, inertia.negative, inertia.zero),
            (2, 1, 0)
        );
        assert!(l.is_simple());
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        let f = BilinearForm {
            matrix: Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]),
        };
        let i = f.inertia();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        let g = BilinearForm {
            matrix: Matrix::from_rows(vec![vec![ratio(1, 2), rat(0)], vec![rat(0), rat(0)]]),
        };
        assert_eq!(g.inertia().zero, 1);
    }

    #[test]
    fn generation_in_su2() {
        let l = su2();
        assert_eq!(l.derived_algebra(), Subspace::full(3));
        let line = Subspace::span(3, &[l.basis_vector(0)]);
        let g = l.lie_generate(&line);
        assert_eq!(g.subspace, line);
        assert_eq!(g.chain, vec![1]);
        let plane = Subspace::span(3, &[l.basis_vector(0), l.basis_vector(1)]);
        let g = l.lie_generate(&plane);
        assert_eq!(g.subspace, Subspace::full(3));
        assert_eq!(g.chain, vec![2, 3]);
        assert_eq!(g.vectors[2].origin, Origin::Bracket(0, 1));
    }

    #[test]
    fn simplicity() {
        assert!(su2().is_simple());
        assert!(!LieAlgebra::builtin(&Builtin::So4).unwrap().is_simple());
        assert!(!LieAlgebra::abelian(1).is_simple());
        assert!(LieAlgebra::builtin(&Builtin::SuN(3)).unwrap().is_simple());
    }
}
