//! Exact dense linear algebra over a field.
//!
//! Everything here is plain Gaussian elimination over an exact field; the
//! matrices that show up in this crate are at most a few hundred rows, so
//! dense storage and partial pivoting on the first nonzero entry are enough.

mod charpoly;
mod gaussian;

pub use charpoly::{charpoly, rational_eigenvalues, UniPoly};
pub use gaussian::GaussianRational;

use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;

/// An exact field. Identities come from `num_traits`; the arithmetic
/// methods take references so generic code avoids needless clones.
pub trait Field: Clone + PartialEq + fmt::Debug + Zero + One {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn recip(&self) -> Self;

    fn divide(&self, other: &Self) -> Self {
        self.times(&other.recip())
    }
}

impl Field for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        num_traits::Inv::inv(self.clone())
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Result of reducing a matrix to reduced row-echelon form.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    /// Pivot column of each nonzero row of `reduced`.
    pub pivot_cols: Vec<usize>,
    /// Original row index that supplied each pivot; these rows are
    /// linearly independent and `A[pivot_rows, pivot_cols]` is nonsingular.
    pub pivot_rows: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds from rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<F>], height: usize) -> Self {
        let mut m = Self::zeros(height, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), height, "column length mismatch");
            for (r, x) in v.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(
            self.cols,
            v.len(),
            "shape mismatch in matrix-vector product"
        );
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(
            self.rows,
            v.len(),
            "shape mismatch in vector-matrix product"
        );
        let mut out = vec![F::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o = o.plus(&x.times(a));
                }
            }
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.zip_with(other, F::plus)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.zip_with(other, F::minus)
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.times(s)).collect(),
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).minus(&other.mul(self))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row-echelon form, tracking which original rows became pivots.
    pub fn echelon(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut order: Vec<usize> = (0..self.rows).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            order.swap(r, p);
            let inv = m.get(r, c).recip();
            for j in c..self.cols {
                let v = m.get(r, j).times(&inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pj = m.get(r, j);
                    if pj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).minus(&f.times(pj));
                    m.set(i, j, v);
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let pivot_rows = order[..pivot_cols.len()].to_vec();
        Echelon {
            reduced: m,
            pivot_cols,
            pivot_rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the right null space; one vector per free column, with that
    /// free coordinate set to one.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let e = self.echelon();
        kernel_from_echelon(&e, self.cols)
    }

    /// Basis of `{ y : y^T A = 0 }`.
    pub fn left_kernel(&self) -> Vec<Vec<F>> {
        self.transpose().kernel()
    }

    /// A particular solution of `A x = b` (free variables zero), if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let e = aug.echelon();
        if e.pivot_cols.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &c) in e.pivot_cols.iter().enumerate() {
            x[c] = e.reduced.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Column space basis: the pivot columns of the original matrix.
    pub fn image(&self) -> Vec<Vec<F>> {
        let e = self.echelon();
        e.pivot_cols.iter().map(|&c| self.col(c)).collect()
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = det.negate();
            }
            let piv = m.get(c, c).clone();
            det = det.times(&piv);
            let inv = piv.recip();
            for i in c + 1..n {
                let f = m.get(i, c).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).minus(&f.times(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Leading principal minors `det A[..k, ..k]` for `k = 1..=n`.
    ///
    /// Uses elimination without pivoting while pivots stay nonzero, so each
    /// minor is the running product of pivots; falls back to direct
    /// determinants once a zero pivot appears.
    pub fn leading_principal_minors(&self) -> Vec<F> {
        assert!(self.is_square(), "minors of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut minors = Vec::with_capacity(n);
        let mut running = F::one();
        for c in 0..n {
            let piv = m.get(c, c).clone();
            if piv.is_zero() {
                for k in c + 1..=n {
                    let idx: Vec<usize> = (0..k).collect();
                    minors.push(self.submatrix(&idx, &idx).determinant());
                }
                return minors;
            }
            running = running.times(&piv);
            minors.push(running.clone());
            let inv = piv.recip();
            for i in c + 1..n {
                let f = m.get(i, c).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).minus(&f.times(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        minors
    }
}

pub fn kernel_from_echelon<F: Field>(e: &Echelon<F>, ncols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; ncols];
    for &c in &e.pivot_cols {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (i, &pc) in e.pivot_cols.iter().enumerate() {
            v[pc] = e.reduced.get(i, free).negate();
        }
        basis.push(v);
    }
    basis
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc.plus(&x.times(y))
        }
    })
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

/// Rank of a set of vectors of equal length.
pub fn rank_of<F: Field>(vectors: &[Vec<F>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<F>> = vectors.to_vec();
    debug_assert!(rows.iter().all(|r| r.len() == len));
    Matrix::from_rows(rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_kernel_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&a.mul_vec(&k[0])));
        let x = a.solve(&[rat(6), rat(12), rat(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat(6), rat(12), rat(2)]);
        assert!(a.solve(&[rat(1), rat(0), rat(0)]).is_none());
    }

    #[test]
    fn pivot_rows_give_nonsingular_minor() {
        let a = m(&[&[0, 0, 0], &[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let e = a.echelon();
        assert_eq!(e.rank(), 2);
        let minor = a.submatrix(&e.pivot_rows, &e.pivot_cols);
        assert!(!minor.determinant().is_zero());
    }

    #[test]
    fn determinant_and_minors() {
        let a = m(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        assert_eq!(a.determinant(), rat(4));
        assert_eq!(a.leading_principal_minors(), vec![rat(2), rat(3), rat(4)]);
        let z = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(z.leading_principal_minors(), vec![rat(0), rat(-1)]);
        assert_eq!(z.determinant(), rat(-1));
    }

    #[test]
    fn left_kernel_annihilates_from_the_left() {
        let a = m(&[&[1, 1], &[2, 2], &[0, 1]]);
        let lk = a.left_kernel();
        assert_eq!(lk.len(), 1);
        assert!(is_zero_vec(&a.vec_mul(&lk[0])));
    }
}
