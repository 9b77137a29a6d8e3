mod common;

use common::*;
use nogo_core::certificate::{Certificate, Payload};
use nogo_core::liealg::{Builtin, LieAlgebra};
use nogo_core::nogo::feasibility_probe;
use nogo_core::orbit::{orbit_dimension, OrbitPoint};
use nogo_core::poisson::{
    bracket_mod, lie_poisson_bracket, mean, poly_space, Monomial, OrbitIdeal, Polynomial,
};
use nogo_core::rational::{parse_rational, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::OnceLock;

fn su2() -> &'static LieAlgebra {
    static L: OnceLock<LieAlgebra> = OnceLock::new();
    L.get_or_init(|| Builtin::Su2.build().unwrap())
}

fn so4() -> &'static LieAlgebra {
    static L: OnceLock<LieAlgebra> = OnceLock::new();
    L.get_or_init(|| Builtin::So4.build().unwrap())
}

fn su3() -> &'static LieAlgebra {
    static L: OnceLock<LieAlgebra> = OnceLock::new();
    L.get_or_init(|| Builtin::SuN(3).build().unwrap())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| qq(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

/// Up to `terms` monomials in `nvars` variables of degree at most `deg`.
fn polynomial(nvars: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=deg, nvars), rational()),
        0..=terms,
    )
    .prop_map(move |ts| {
        let mut p = Polynomial::zero(nvars);
        for (mut e, c) in ts {
            while e.iter().sum::<u32>() > deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            p.add_term(Monomial::new(e), c);
        }
        p
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric(f in polynomial(3, 3, 4), g in polynomial(3, 3, 4)) {
        let l = su2();
        let fg = lie_poisson_bracket(&f, &g, l).unwrap();
        let gf = lie_poisson_bracket(&g, &f, l).unwrap();
        prop_assert!(fg.add(&gf).is_zero());
        prop_assert_eq!(fg, su2_bracket(&f, &g));
    }

    #[test]
    fn bracket_satisfies_jacobi_and_leibniz_on_so4(
        f in polynomial(6, 2, 3),
        g in polynomial(6, 2, 3),
        h in polynomial(6, 2, 3),
    ) {
        let l = so4();
        let br = |a: &Polynomial, b: &Polynomial| lie_poisson_bracket(a, b, l).unwrap();
        let jacobi = br(&f, &br(&g, &h)).add(&br(&g, &br(&h, &f))).add(&br(&h, &br(&f, &g)));
        prop_assert!(jacobi.is_zero());
        let leibniz = br(&f, &g.mul(&h)).sub(&br(&f, &g).mul(&h)).sub(&g.mul(&br(&f, &h)));
        prop_assert!(leibniz.is_zero());
    }

    #[test]
    fn casimir_is_central(f in polynomial(3, 4, 5)) {
        prop_assert!(lie_poisson_bracket(&casimir(), &f, su2()).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_values(f in polynomial(3, 6, 6), r in nonzero_rational()) {
        let ideal = OrbitIdeal::sphere(r.clone() * r.clone());
        let once = ideal.reduce(&f);
        prop_assert_eq!(ideal.reduce(&once), once.clone());
        prop_assert!(once.terms().all(|(m, _)| ideal.is_standard(m)));
        if r == q(1) || r == q(-1) {
            prop_assert!(vanishes_on_sphere(&f.sub(&once), &sphere_points(12)));
        }
    }

    #[test]
    fn killing_form_is_ad_invariant(x in vector(8), y in vector(8), z in vector(8)) {
        let l = su3();
        let k = l.killing_form();
        let lhs = k.eval(&l.bracket(&x, &y), &z) + k.eval(&y, &l.bracket(&x, &z));
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn orbits_are_even_dimensional(h3 in vector(3), h6 in vector(6), h8 in vector(8)) {
        for (l, h) in [(su2(), h3), (so4(), h6), (su3(), h8)] {
            let p = OrbitPoint::new(l.clone(), h).unwrap();
            prop_assert_eq!(orbit_dimension(&p) % 2, 0);
        }
    }

    #[test]
    fn brackets_have_zero_mean(f in polynomial(3, 3, 4), g in polynomial(3, 3, 4)) {
        let l = su2();
        let s = poly_space(l, 6, Some(OrbitIdeal::sphere(q(1))), 100).unwrap();
        let b = bracket_mod(&f, &g, l, s.ideal()).unwrap();
        prop_assert!(mean(l, &b, &s).unwrap().is_zero());
    }

    #[test]
    fn mean_matches_the_sphere_integral(f in polynomial(3, 5, 5)) {
        let l = su2();
        let s = poly_space(l, 5, Some(OrbitIdeal::sphere(q(1))), 100).unwrap();
        prop_assert_eq!(mean(l, &f, &s).unwrap(), sphere_mean(&f));
    }

    #[test]
    fn rationals_round_trip_through_text(x in rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn polynomials_round_trip_through_text(f in polynomial(3, 4, 5)) {
        prop_assert_eq!(Polynomial::parse(&f.to_string(), 3).unwrap(), f);
    }
}

#[test]
fn probe_certificates_round_trip() {
    for (n, d) in [(1, 2), (1, 1)] {
        let p = feasibility_probe(&qq(n, d), 2).unwrap();
        let cert = Certificate::new(Payload::FeasibilityVerdict(p));
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
    }
}
