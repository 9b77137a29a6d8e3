use crate::linalg::{is_zero_vec, Matrix};
use crate::rational::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A linear subspace of `Q^n`, stored as a reduced row-echelon basis so that
/// equality is a plain comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    #[serde(with = "crate::rational::serde_rational_rows")]
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let id = Matrix::<Rational>::identity(ambient_dim);
        Subspace {
            ambient_dim,
            basis: id.to_rows(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let vs: Vec<Vec<Rational>> = vectors
            .iter()
            .filter(|v| !is_zero_vec(v))
            .cloned()
            .collect();
        if vs.is_empty() {
            return Self::zero(ambient_dim);
        }
        assert!(
            vs.iter().all(|v| v.len() == ambient_dim),
            "vector length does not match ambient dimension"
        );
        let e = Matrix::from_rows(vs).echelon();
        let basis = (0..e.rank()).map(|r| e.reduced.row(r).to_vec()).collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        // Solve sum a_i u_i = sum b_j w_j; the a-part of each kernel vector
        // gives an element of the intersection.
        let n = self.ambient_dim;
        let cols: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()))
            .collect();
        let m = Matrix::from_cols(&cols, n);
        let vectors: Vec<Vec<Rational>> = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![Rational::zero(); n];
                for (a, u) in k.iter().take(self.dim()).zip(&self.basis) {
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi += a * ui;
                    }
                }
                v
            })
            .collect();
        Subspace::span(n, &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[1, 0, 0]), v(&[2, 3, 0]), v(&[0, 0, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[5, -7, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert!(a.intersection(&Subspace::zero(3)).is_zero());
    }
}
