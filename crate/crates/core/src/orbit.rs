//! Orbit data at a base point `h`: isotropy and tangent spaces, orbit
//! dimension, a regularity probe, and the generation witness showing that
//! `[b, h]` generates a simple algebra.

use crate::certificate::{Certificate, GenerationStep, MinimalityPayload, Payload, StepOrigin};
use crate::liealg::{LieAlgebra, LieError, Origin, Subspace};
use crate::linalg::{is_zero_vec, Matrix};
use crate::rational::{ratio, Rational};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OrbitError {
    #[error("isotropy and tangent space meet in a subspace of dimension {intersection}; the algebra is probably not compact")]
    DecompositionFailure { intersection: usize },
    #[error("algebra is not simple")]
    NotSimple,
    #[error("base point is zero")]
    ZeroPoint,
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitPoint {
    pub algebra: LieAlgebra,
    pub h: Vec<Rational>,
}

impl OrbitPoint {
    pub fn new(algebra: LieAlgebra, h: Vec<Rational>) -> Result<Self, OrbitError> {
        if h.len() != algebra.dim() {
            return Err(LieError::DimensionMismatch {
                dim: algebra.dim(),
                got: h.len(),
            }
            .into());
        }
        Ok(OrbitPoint { algebra, h })
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.h)
    }

    pub fn ad_h(&self) -> Matrix<Rational> {
        self.algebra
            .ad(&self.h)
            .expect("length checked at construction")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotropyDecomposition {
    /// `ker ad_h`.
    pub isotropy: Subspace,
    /// `im ad_h = [b, h]`.
    pub tangent: Subspace,
    /// Dimensions add up and the intersection is zero.
    pub direct: bool,
    /// `[isotropy, tangent] ⊆ tangent`.
    pub containment: bool,
}

pub fn isotropy_decomposition(p: &OrbitPoint) -> Result<IsotropyDecomposition, OrbitError> {
    let n = p.algebra.dim();
    let ad = p.ad_h();
    let isotropy = Subspace::span(n, &ad.kernel());
    let tangent = Subspace::span(n, &ad.image());
    let inter = isotropy.intersection(&tangent);
    if !inter.is_zero() {
        return Err(OrbitError::DecompositionFailure {
            intersection: inter.dim(),
        });
    }
    let direct = isotropy.dim() + tangent.dim() == n;
    let containment = isotropy.basis().iter().all(|u| {
        tangent
            .basis()
            .iter()
            .all(|w| tangent.contains(&p.algebra.bracket(u, w)))
    });
    Ok(IsotropyDecomposition {
        isotropy,
        tangent,
        direct,
        containment,
    })
}

/// Rank of `ad_h`.
pub fn orbit_dimension(p: &OrbitPoint) -> usize {
    p.ad_h().rank()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularity {
    pub orbit_dim: usize,
    /// Largest rank of `ad` over the sampled points.
    pub max_sampled_dim: usize,
    pub maximal: bool,
    pub isotropy_abelian: bool,
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        self.maximal && self.isotropy_abelian
    }
}

/// Deterministic probe points: `h ± e_i`, `h + e_i / 7`, and two generic
/// combinations with prime coefficients.
fn probe_points(h: &[Rational]) -> Vec<Vec<Rational>> {
    let n = h.len();
    let mut pts = Vec::new();
    for i in 0..n {
        for eps in [ratio(1, 1), ratio(-1, 1), ratio(1, 7)] {
            let mut v = h.to_vec();
            v[i] += eps;
            pts.push(v);
        }
    }
    const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for shift in [0usize, 5] {
        pts.push(
            (0..n)
                .map(|i| &h[i] + ratio(PRIMES[(i + shift) % PRIMES.len()], 1 + i as i64))
                .collect(),
        );
    }
    pts
}

/// Rank comparison against sampled points plus an abelian-isotropy check.
/// Sound but possibly incomplete: a point can only be misreported as
/// maximal if every probe point happens to be singular too.
pub fn is_regular(p: &OrbitPoint) -> Regularity {
    let orbit_dim = orbit_dimension(p);
    let max_sampled_dim = probe_points(&p.h)
        .iter()
        .map(|v| p.algebra.ad(v).expect("same length").rank())
        .max()
        .unwrap_or(0)
        .max(orbit_dim);
    let iso = Subspace::span(p.algebra.dim(), &p.ad_h().kernel());
    let b = iso.basis();
    let isotropy_abelian = (0..b.len())
        .all(|i| (i + 1..b.len()).all(|j| is_zero_vec(&p.algebra.bracket(&b[i], &b[j]))));
    Regularity {
        orbit_dim,
        max_sampled_dim,
        maximal: orbit_dim == max_sampled_dim,
        isotropy_abelian,
    }
}

/// Witness that the Lie algebra generated by `[b, h]` is all of `b`.
pub fn minimality_witness(p: &OrbitPoint) -> Result<Certificate, OrbitError> {
    if p.is_zero() {
        return Err(OrbitError::ZeroPoint);
    }
    let l = &p.algebra;
    if !l.is_simple() {
        return Err(OrbitError::NotSimple);
    }
    let seeds: Vec<Vec<Rational>> = (0..l.dim())
        .map(|i| l.bracket(&l.basis_vector(i), &p.h))
        .collect();
    let gen = l.generate_from(seeds);
    debug_assert_eq!(gen.subspace.dim(), l.dim());
    let steps = gen
        .vectors
        .iter()
        .map(|v| GenerationStep {
            vector: v.vector.clone(),
            origin: match v.origin {
                Origin::Seed(i) => StepOrigin::Tangent(i + 1),
                Origin::Bracket(a, b) => StepOrigin::Bracket(a, b),
            },
        })
        .collect();
    Ok(Certificate::new(Payload::Minimality(MinimalityPayload {
        algebra: l.to_json(),
        h: p.h.clone(),
        steps,
        chain: gen.chain,
    })))
}

/// Number of closure rounds after the seed span in a minimality witness.
pub fn closure_steps(cert: &Certificate) -> Option<usize> {
    match &cert.body {
        Payload::Minimality(m) => Some(m.chain.len().saturating_sub(1)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Builtin;
    use crate::rational::rat;

    fn point(b: Builtin, h: &[i64]) -> OrbitPoint {
        OrbitPoint::new(b.build().unwrap(), h.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn su2_at_e3() {
        let p = point(Builtin::Su2, &[0, 0, 1]);
        let d = isotropy_decomposition(&p).unwrap();
        let l = &p.algebra;
        assert_eq!(d.isotropy, Subspace::span(3, &[l.basis_vector(2)]));
        assert_eq!(
            d.tangent,
            Subspace::span(3, &[l.basis_vector(0), l.basis_vector(1)])
        );
        assert!(d.direct && d.containment);
        assert_eq!(orbit_dimension(&p), 2);
        let r = is_regular(&p);
        assert!(r.is_regular());
        let w = minimality_witness(&p).unwrap();
        assert_eq!(closure_steps(&w), Some(1));
    }

    #[test]
    fn su2_generic_and_scaled_points() {
        let p = point(Builtin::Su2, &[1, 1, 1]);
        let d = isotropy_decomposition(&p).unwrap();
        assert_eq!(d.isotropy.dim(), 1);
        assert!(d.isotropy.contains(&p.h));
        assert!(minimality_witness(&point(Builtin::Su2, &[7, 0, 0])).is_ok());
    }

    #[test]
    fn zero_point() {
        let p = point(Builtin::Su2, &[0, 0, 0]);
        assert_eq!(orbit_dimension(&p), 0);
        assert!(!is_regular(&p).is_regular());
        assert_eq!(minimality_witness(&p).unwrap_err(), OrbitError::ZeroPoint);
    }

    #[test]
    fn so4_in_one_factor() {
        let p = point(Builtin::So4, &[0, 0, 1, 0, 0, 0]);
        let d = isotropy_decomposition(&p).unwrap();
        assert_eq!(d.isotropy.dim(), 4);
        assert_eq!(orbit_dimension(&p), 2);
        let r = is_regular(&p);
        assert!(!r.isotropy_abelian);
        assert!(!r.maximal);
        assert!(!r.is_regular());
        assert_eq!(minimality_witness(&p).unwrap_err(), OrbitError::NotSimple);
    }

    #[test]
    fn sl2_breaks_directness() {
        // e is nilpotent: ad_e e = 0 and e = -1/2 [h, e] lies in the image.
        let p = point(Builtin::Sl2R, &[0, 1, 0]);
        assert!(matches!(
            isotropy_decomposition(&p),
            Err(OrbitError::DecompositionFailure { intersection: 1 })
        ));
    }
}
