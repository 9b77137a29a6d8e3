//! Oracles shared by the integration tests. Everything here is computed
//! from first principles and never calls the library's own elimination,
//! mean or spectrum code.
#![allow(dead_code)]

use nogo_core::poisson::{Monomial, Polynomial};
use nogo_core::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Normalized surface average of `x^a y^b z^c` over the unit sphere:
/// `(a-1)!! (b-1)!! (c-1)!! / (a+b+c+1)!!` when all exponents are even.
pub fn sphere_average(m: &Monomial) -> Rational {
    let e = m.exps();
    assert_eq!(e.len(), 3, "sphere oracle is for three coordinates");
    if e.iter().any(|x| x % 2 == 1) {
        return Rational::zero();
    }
    let num: BigInt = e.iter().map(|&x| double_factorial(x as i64 - 1)).product();
    let total: i64 = e.iter().map(|&x| x as i64).sum();
    Rational::new(num, double_factorial(total + 1))
}

/// Surface average of an unreduced polynomial on the unit sphere.
pub fn sphere_mean(p: &Polynomial) -> Rational {
    p.terms().map(|(m, c)| c * sphere_average(m)).sum()
}

/// Fraction-free determinant (Bareiss) over the rationals.
pub fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
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

pub fn leading_minors(a: &[Vec<Rational>]) -> Vec<Rational> {
    (1..=a.len())
        .map(|d| det(a[..d].iter().map(|r| r[..d].to_vec()).collect()))
        .collect()
}

/// Rank by plain Gaussian elimination on a copy.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..ncols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Levi-Civita symbol on `0..3`.
pub fn eps(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `x1^2 + x2^2 + x3^2`.
pub fn casimir() -> Polynomial {
    (0..3).fold(Polynomial::zero(3), |acc, i| {
        acc.add(&Polynomial::var(3, i).pow(2))
    })
}

/// JSON for su(2) with `[e1,e2] = c e3` and the other brackets standard.
pub fn su2_json_with_c312(c: &str) -> String {
    format!(
        r#"{{"dim":3,"brackets":[{{"i":1,"j":2,"coeffs":[{{"k":3,"v":"{c}"}}]}},{{"i":1,"j":3,"coeffs":[{{"k":2,"v":"-1"}}]}},{{"i":2,"j":3,"coeffs":[{{"k":1,"v":"1"}}]}}]}}"#
    )
}

/// `{f, g} = sum eps_ijk x_k df/dx_i dg/dx_j` for su(2), written out
/// independently of the library's structure-constant loop.
pub fn su2_bracket(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(3);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    let t = f
                        .derivative(i)
                        .mul(&g.derivative(j))
                        .mul(&Polynomial::var(3, k));
                    out.add_scaled(&t, &q(e));
                }
            }
        }
    }
    out
}

/// Scattered rational points on the unit sphere, from the inverse
/// stereographic map applied to an irregular sequence of parameters.
pub fn sphere_points(count: usize) -> Vec<[Rational; 3]> {
    (0..count as i64)
        .map(|i| {
            let a = qq((i * 7) % 23 - 11, i % 5 + 2);
            let b = qq((i * 11) % 19 - 9, i % 7 + 3);
            let d = q(1) + &a * &a + &b * &b;
            [
                q(2) * &a / &d,
                q(2) * &b / &d,
                (&a * &a + &b * &b - q(1)) / &d,
            ]
        })
        .collect()
}

/// Evaluation matrix of `basis` at `pts`, one row per point.
pub fn evaluation_rows(basis: &[Polynomial], pts: &[[Rational; 3]]) -> Vec<Vec<Rational>> {
    pts.iter()
        .map(|x| basis.iter().map(|p| p.eval(x)).collect())
        .collect()
}

/// Whether `p` vanishes at every sample point of the unit sphere.
pub fn vanishes_on_sphere(p: &Polynomial, pts: &[[Rational; 3]]) -> bool {
    pts.iter().all(|x| p.eval(x).is_zero())
}

/// Integer Bareiss determinant.
pub fn int_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `det(t I - m)` for an integer matrix.
pub fn char_poly_at(m: &[Vec<BigInt>], t: i64) -> BigInt {
    let n = m.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j {
                        BigInt::from(t)
                    } else {
                        BigInt::zero()
                    };
                    d - &m[i][j]
                })
                .collect()
        })
        .collect();
    int_det(rows)
}
