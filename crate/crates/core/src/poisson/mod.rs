//! Lie–Poisson polynomial algebra on the dual of a Lie algebra.
//!
//! Polynomials in coordinates `x1..xn` dual to the structure basis carry the
//! bracket `{f,g} = sum c^k_ij x_k (df/dx_i)(dg/dx_j)`. An optional
//! [`OrbitIdeal`] cuts this down to an orbit, and the symplectic Laplacian
//! `Δf = -sum_i {x_i,{x_i,f}}` together with its left null vector gives the
//! mean functional and the Gram form.

mod ideal;
mod laplacian;
mod mean;
mod poly;
pub mod sample;
mod space;

pub use ideal::{reduce_opt, OrbitIdeal, Relation};
pub use laplacian::{laplacian, laplacian_analysis, laplacian_of, LaplacianAnalysis, LinOp};
pub use mean::{
    check_ad_invariance, check_ad_invariance_with_gram, gram, mean, ActingSet, AdInvarianceReport,
    GramForm, MeanFunctional, ResidualWitness,
};
pub(crate) use mean::{check_ad_invariance_with_mean, gram_with};
pub use poly::{Monomial, ParsePolyError, Polynomial};
pub use space::{poly_space, PolySpace, DEFAULT_MAX_DIM};

use crate::liealg::LieAlgebra;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PoissonError {
    #[error("polynomial has {got} variables but the algebra has dimension {expected}")]
    VariableMismatch { expected: usize, got: usize },
    #[error("relation {index} cannot be used for reduction: {reason}")]
    NonReducibleRelation { index: usize, reason: String },
    #[error("unsupported orbit ideal: {0}")]
    UnsupportedIdeal(String),
    #[error("ideal is not closed under the bracket: {{x{generator}, relation {relation}}} reduces to {remainder}")]
    NotPoissonIdeal {
        relation: usize,
        generator: usize,
        remainder: String,
    },
    #[error("{image} leaves the degree-{cap} space")]
    DegreeEscape { image: String, cap: u32 },
    #[error("mean undefined: {0}")]
    MeanUndefined(String),
    #[error("polynomial space of dimension {dim} exceeds the limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },
    #[error(transparent)]
    Parse(#[from] ParsePolyError),
}

/// `{f, g} = sum_{i,j,k} c^k_ij x_k (df/dx_i)(dg/dx_j)`, without reduction.
pub fn lie_poisson_bracket(
    f: &Polynomial,
    g: &Polynomial,
    l: &LieAlgebra,
) -> Result<Polynomial, PoissonError> {
    let n = l.dim();
    for p in [f, g] {
        if p.nvars() != n {
            return Err(PoissonError::VariableMismatch {
                expected: n,
                got: p.nvars(),
            });
        }
    }
    let mut out = Polynomial::zero(n);
    if f.degree().unwrap_or(0) == 0 || g.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let df: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
    let dg: Vec<Polynomial> = (0..n).map(|j| g.derivative(j)).collect();
    for (i, dfi) in df.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
        for (j, dgj) in dg.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            let lin: Vec<usize> = (0..n).filter(|&k| !l.c(i, j, k).is_zero()).collect();
            if lin.is_empty() {
                continue;
            }
            let prod = dfi.mul(dgj);
            for k in lin {
                let xk = Monomial::var(n, k);
                let c = l.c(i, j, k);
                for (m, v) in prod.terms() {
                    out.add_term(m.mul(&xk), v * c);
                }
            }
        }
    }
    Ok(out)
}

/// Checks `{x_i, relation}` reduces to zero for every generator and relation.
pub fn check_poisson_ideal(l: &LieAlgebra, ideal: &OrbitIdeal) -> Result<(), PoissonError> {
    let n = l.dim();
    if let Some(m) = ideal.nvars() {
        if m != n {
            return Err(PoissonError::VariableMismatch {
                expected: n,
                got: m,
            });
        }
    }
    for (r, rel) in ideal.relations().iter().enumerate() {
        for i in 0..n {
            let b = lie_poisson_bracket(&Polynomial::var(n, i), &rel.poly, l)?;
            let rem = ideal.reduce(&b);
            if !rem.is_zero() {
                return Err(PoissonError::NotPoissonIdeal {
                    relation: r + 1,
                    generator: i + 1,
                    remainder: rem.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Bracket followed by reduction modulo the space's ideal.
pub fn bracket_mod(
    f: &Polynomial,
    g: &Polynomial,
    l: &LieAlgebra,
    ideal: Option<&OrbitIdeal>,
) -> Result<Polynomial, PoissonError> {
    Ok(reduce_opt(ideal, &lie_poisson_bracket(f, g, l)?))
}
