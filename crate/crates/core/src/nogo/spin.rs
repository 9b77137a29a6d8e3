//! Spin-`j` generators over `Q(i)`.
//!
//! The standard ladder coefficients are square roots, so the weight basis is
//! rescaled until `J_-` has unit entries and `J_+` carries the squared
//! coefficients `(j - m)(j + m + 1)`. The price is a non-standard inner
//! product: the generators are skew-adjoint for `<u, v> = u^* W v` with a
//! positive diagonal `W` instead of the identity.

use super::NogoError;
use crate::linalg::{GaussianRational, Matrix};
use crate::rational::{ratio, Rational};
use num_traits::{One, Signed, Zero};

/// Spin representation data: `S_k = -i J_k` and the weight diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Spin {
    pub j: Rational,
    pub s: [Matrix<GaussianRational>; 3],
    pub weights: Vec<Rational>,
}

/// Checks that `j` is a nonnegative half-integer and returns `2j + 1`.
pub fn spin_size(j: &Rational) -> Result<usize, NogoError> {
    let two_j = j * Rational::from_integer(2.into());
    if j.is_negative() || !two_j.is_integer() {
        return Err(NogoError::InvalidSpin(format!(
            "{j} is not a nonnegative half-integer"
        )));
    }
    let n: usize = two_j
        .to_integer()
        .try_into()
        .map_err(|_| NogoError::InvalidSpin(format!("{j} is too large")))?;
    Ok(n + 1)
}

pub fn spin(j: &Rational) -> Result<Spin, NogoError> {
    let n = spin_size(j)?;
    // Row/column a holds the weight m = j - a.
    let m = |a: usize| j - Rational::from_integer((a as i64).into());
    let mut jz = Matrix::zeros(n, n);
    let mut jp = Matrix::zeros(n, n);
    let mut jm = Matrix::zeros(n, n);
    for a in 0..n {
        jz.set(a, a, GaussianRational::real(m(a)));
        if a + 1 < n {
            // J_+ sends weight m(a+1) up to m(a); J_- sends m(a) down.
            let mb = m(a + 1);
            jp.set(
                a,
                a + 1,
                GaussianRational::real((j - &mb) * (j + &mb + Rational::one())),
            );
            jm.set(a + 1, a, GaussianRational::one());
        }
    }
    let half = GaussianRational::real(ratio(1, 2));
    let jx = jp.plus(&jm).scale(&half);
    // J_y = (J_+ - J_-) / 2i = -i/2 (J_+ - J_-)
    let jy = jp
        .minus(&jm)
        .scale(&GaussianRational::new(Rational::zero(), ratio(-1, 2)));
    let minus_i = GaussianRational::new(Rational::zero(), -Rational::one());
    let s = [jx.scale(&minus_i), jy.scale(&minus_i), jz.scale(&minus_i)];

    // w(m + 1) = w(m) / ((j - m)(j + m + 1)), starting from w(-j) = 1.
    let mut weights = vec![Rational::one(); n];
    for a in (0..n.saturating_sub(1)).rev() {
        let mb = m(a + 1);
        weights[a] = &weights[a + 1] / ((j - &mb) * (j + &mb + Rational::one()));
    }
    Ok(Spin {
        j: j.clone(),
        s,
        weights,
    })
}

/// `W^{-1} A^* W` for diagonal `W`: the adjoint of `A` for the weighted
/// inner product.
pub fn weighted_adjoint(a: &Matrix<GaussianRational>, w: &[Rational]) -> Matrix<GaussianRational> {
    let n = a.nrows();
    let mut out = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let v = a.get(c, r).conj();
            let s = &w[c] / &w[r];
            out.set(r, c, GaussianRational::new(&v.re * &s, &v.im * &s));
        }
    }
    out
}

pub fn is_skew_adjoint(a: &Matrix<GaussianRational>, w: &[Rational]) -> bool {
    weighted_adjoint(a, w).plus(a).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::real(rat(n))
    }

    #[test]
    fn commutation_relations_and_casimir() {
        for twice in 0..=6 {
            let j = ratio(twice, 2);
            let sp = spin(&j).unwrap();
            let n = sp.s[0].nrows();
            assert_eq!(n as i64, twice + 1);
            for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                assert_eq!(sp.s[a].commutator(&sp.s[b]), sp.s[c], "j = {j}");
            }
            let cas =
                sp.s.iter()
                    .fold(Matrix::zeros(n, n), |acc, x| acc.plus(&x.mul(x)));
            let jj = -(&j * (&j + rat(1)));
            assert_eq!(cas, Matrix::identity(n).scale(&GaussianRational::real(jj)));
            assert!(sp.s.iter().all(|x| is_skew_adjoint(x, &sp.weights)));
            assert!(sp.weights.iter().all(Signed::is_positive));
        }
    }

    #[test]
    fn spin_one_half() {
        let sp = spin(&ratio(1, 2)).unwrap();
        assert_eq!(sp.weights, vec![rat(1), rat(1)]);
        let i_half = GaussianRational::new(rat(0), ratio(-1, 2));
        assert_eq!(sp.s[2].get(0, 0), &i_half);
        assert_eq!(sp.s[0].get(0, 1), &i_half);
        assert!(!is_skew_adjoint(
            &Matrix::identity(2).scale(&gr(1)),
            &sp.weights
        ));
    }

    #[test]
    fn rejects_bad_spins() {
        assert!(spin(&ratio(-1, 2)).is_err());
        assert!(spin(&ratio(1, 3)).is_err());
        assert_eq!(spin(&rat(0)).unwrap().s[0], Matrix::zeros(1, 1));
    }
}
