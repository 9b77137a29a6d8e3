//! Characteristic polynomials and exact rational eigenvalues.

use super::Matrix;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense univariate polynomial over the rationals, coefficients low to high.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![Rational::one()])
    }

    /// `x - root`.
    pub fn linear(root: &Rational) -> Self {
        UniPoly::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder of division by `x - root`.
    pub fn divide_by_linear(&self, root: &Rational) -> (UniPoly, Rational) {
        if self.is_zero() {
            return (UniPoly::zero(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (UniPoly::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Multiplicity of `root` as a zero of a nonzero polynomial.
    pub fn root_multiplicity(&self, root: &Rational) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.divide_by_linear(root);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { " " } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(x I - A)` via reduction to upper
/// Hessenberg form followed by the standard three-term recurrence.
pub fn charpoly(a: &Matrix<Rational>) -> UniPoly {
    assert!(
        a.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = a.nrows();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
            continue;
        };
        if i != m {
            for c in 0..n {
                let (x, y) = (h.get(i, c).clone(), h.get(m, c).clone());
                h.set(i, c, y);
                h.set(m, c, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, i).clone(), h.get(r, m).clone());
                h.set(r, i, y);
                h.set(r, m, x);
            }
        }
        let piv = h.get(m, m - 1).clone();
        for i in m + 1..n {
            let u = h.get(i, m - 1) / &piv;
            if u.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = h.get(i, c) - &u * h.get(m, c);
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = h.get(r, m) + &u * h.get(r, i);
                h.set(r, m, v);
            }
        }
    }
    // p[m] is the characteristic polynomial of the leading m x m block.
    let mut p: Vec<UniPoly> = vec![UniPoly::one()];
    for m in 0..n {
        let mut next = UniPoly::linear(h.get(m, m)).mul(&p[m]);
        let mut t = Rational::one();
        for i in (0..m).rev() {
            t *= h.get(i + 1, i);
            if t.is_zero() {
                break;
            }
            let coef = &t * h.get(i, m);
            if coef.is_zero() {
                continue;
            }
            next = sub(&next, &scale(&p[i], &coef));
        }
        p.push(next);
    }
    p.pop().unwrap()
}

fn scale(p: &UniPoly, s: &Rational) -> UniPoly {
    UniPoly::new(p.coeffs.iter().map(|c| c * s).collect())
}

fn sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let z = Rational::zero();
    UniPoly::new(
        (0..n)
            .map(|i| a.coeffs.get(i).unwrap_or(&z) - b.coeffs.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Rational eigenvalues of `a` with algebraic multiplicities, plus the degree
/// of the remaining factor that has no rational roots.
///
/// Scaling by the common denominator `d` gives an integer matrix whose
/// rational eigenvalues are integers bounded by its maximum absolute row sum,
/// so the search is a finite scan.
pub fn rational_eigenvalues(a: &Matrix<Rational>) -> (Vec<(Rational, usize)>, usize) {
    let n = a.nrows();
    let mut d = BigInt::one();
    for r in 0..n {
        for x in a.row(r) {
            d = d.lcm(x.denom());
        }
    }
    let dq = Rational::from_integer(d.clone());
    let b = a.scale(&dq);
    let bound: BigInt = (0..n)
        .map(|r| {
            b.row(r)
                .iter()
                .map(|x| x.numer().abs())
                .fold(BigInt::zero(), |s, x| s + x)
        })
        .max()
        .unwrap_or_else(BigInt::zero);
    let mut p = charpoly(&b);
    let mut found = Vec::new();
    let zero = Rational::zero();
    let m0 = p.root_multiplicity(&zero);
    if m0 > 0 {
        for _ in 0..m0 {
            p = p.divide_by_linear(&zero).0;
        }
        found.push((zero, m0));
    }
    // p is now monic with integer coefficients and a nonzero constant term,
    // so every integer root divides that constant.
    let mut k = BigInt::one();
    while k <= bound && p.degree().is_some_and(|d| d > 0) {
        let c0 = p.coeffs()[0].numer().clone();
        if (&c0 % &k).is_zero() {
            for cand in [-k.clone(), k.clone()] {
                let root = Rational::from_integer(cand);
                let m = p.root_multiplicity(&root);
                if m > 0 {
                    for _ in 0..m {
                        p = p.divide_by_linear(&root).0;
                    }
                    found.push((root / &dq, m));
                }
            }
        }
        k += 1;
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    (found, p.degree().unwrap_or(0))
}
