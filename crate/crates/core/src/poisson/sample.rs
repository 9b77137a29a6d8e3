//! Deterministic pseudorandom polynomials for property checks.

use super::{Monomial, Polynomial};
use crate::rational::{ratio, Rational};
use rand::Rng;

/// Small nonzero rational `p/q` with `|p| <= 6`, `1 <= q <= 4`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-6..=6);
        if p != 0 {
            return ratio(p, rng.gen_range(1..=4));
        }
    }
}

/// Up to `nterms` random terms of degree at most `max_degree`.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    nvars: usize,
    max_degree: u32,
    nterms: usize,
) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..nterms {
        let d = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; nvars];
        for _ in 0..d {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(Monomial::new(exps), random_rational(rng));
    }
    p
}

/// Random rational combination of up to `nterms` of the given polynomials.
pub fn random_combination<R: Rng>(
    rng: &mut R,
    elements: &[Polynomial],
    nterms: usize,
) -> Polynomial {
    let nvars = elements.first().map_or(0, Polynomial::nvars);
    let mut p = Polynomial::zero(nvars);
    for _ in 0..nterms {
        let e = &elements[rng.gen_range(0..elements.len())];
        p.add_scaled(e, &random_rational(rng));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_polynomial(&mut ChaCha8Rng::seed_from_u64(7), 3, 4, 5);
        let b = random_polynomial(&mut ChaCha8Rng::seed_from_u64(7), 3, 4, 5);
        assert_eq!(a, b);
        assert!(a.degree().unwrap_or(0) <= 4);
    }
}
