use super::{check_poisson_ideal, Monomial, OrbitIdeal, PoissonError, Polynomial};
use crate::liealg::LieAlgebra;
use crate::rational::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Basis-size limit used when none is configured.
pub const DEFAULT_MAX_DIM: usize = 100;

/// Normal-form monomials of degree at most `k`, by increasing degree and
/// with `x1` first inside a degree; the constant `1` is basis element 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(from = "SpaceRepr")]
pub struct PolySpace {
    nvars: usize,
    k: u32,
    ideal: Option<OrbitIdeal>,
    basis: Vec<Monomial>,
    max_dim: usize,
    #[serde(skip)]
    index: HashMap<Monomial, usize>,
}

#[derive(Deserialize)]
struct SpaceRepr {
    nvars: usize,
    k: u32,
    ideal: Option<OrbitIdeal>,
    basis: Vec<Monomial>,
    max_dim: usize,
}

impl From<SpaceRepr> for PolySpace {
    fn from(r: SpaceRepr) -> Self {
        PolySpace::from_parts(r.nvars, r.k, r.ideal, r.basis, r.max_dim)
    }
}

impl PartialEq for PolySpace {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.k == other.k
            && self.ideal == other.ideal
            && self.basis == other.basis
    }
}

/// Builds `P^k` for `l`, checking that the ideal (if any) is closed under the
/// bracket.
pub fn poly_space(
    l: &LieAlgebra,
    k: u32,
    ideal: Option<OrbitIdeal>,
    max_dim: usize,
) -> Result<PolySpace, PoissonError> {
    if let Some(i) = &ideal {
        check_poisson_ideal(l, i)?;
    }
    PolySpace::new(l.dim(), k, ideal, max_dim)
}

impl PolySpace {
    /// Builds the space without the bracket-closure check on the ideal.
    pub fn new(
        nvars: usize,
        k: u32,
        ideal: Option<OrbitIdeal>,
        max_dim: usize,
    ) -> Result<Self, PoissonError> {
        if let Some(m) = ideal.as_ref().and_then(OrbitIdeal::nvars) {
            if m != nvars {
                return Err(PoissonError::VariableMismatch {
                    expected: nvars,
                    got: m,
                });
            }
        }
        let mut basis = Vec::new();
        for d in 0..=k {
            for m in Monomial::of_degree(nvars, d).into_iter().rev() {
                if ideal.as_ref().is_none_or(|i| i.is_standard(&m)) {
                    basis.push(m);
                    if basis.len() > max_dim {
                        return Err(PoissonError::DimensionLimit {
                            dim: count_upper_bound(nvars, k, basis.len()),
                            limit: max_dim,
                        });
                    }
                }
            }
        }
        Ok(Self::from_parts(nvars, k, ideal, basis, max_dim))
    }

    fn from_parts(
        nvars: usize,
        k: u32,
        ideal: Option<OrbitIdeal>,
        basis: Vec<Monomial>,
        max_dim: usize,
    ) -> Self {
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        PolySpace {
            nvars,
            k,
            ideal,
            basis,
            max_dim,
            index,
        }
    }

    /// Same variables, ideal and limit at another degree cap.
    pub fn with_degree(&self, k: u32) -> Result<PolySpace, PoissonError> {
        PolySpace::new(self.nvars, k, self.ideal.clone(), self.max_dim)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_cap(&self) -> u32 {
        self.k
    }

    pub fn ideal(&self) -> Option<&OrbitIdeal> {
        self.ideal.as_ref()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn element(&self, a: usize) -> Polynomial {
        Polynomial::term(self.basis[a].clone(), Rational::from_integer(1.into()))
    }

    pub fn elements(&self) -> Vec<Polynomial> {
        (0..self.dim()).map(|a| self.element(a)).collect()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        super::reduce_opt(self.ideal.as_ref(), f)
    }

    /// Coordinates of `f` after reduction.
    pub fn coords(&self, f: &Polynomial) -> Result<Vec<Rational>, PoissonError> {
        let r = self.reduce(f);
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in r.terms() {
            match self.index_of(m) {
                Some(a) => v[a] = c.clone(),
                None => {
                    return Err(PoissonError::DegreeEscape {
                        image: r.to_string(),
                        cap: self.k,
                    })
                }
            }
        }
        Ok(v)
    }

    pub fn to_poly(&self, coeffs: &[Rational]) -> Polynomial {
        assert_eq!(
            coeffs.len(),
            self.dim(),
            "coordinate vector length mismatch"
        );
        Polynomial::from_terms(
            self.nvars,
            self.basis
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

fn count_upper_bound(nvars: usize, k: u32, seen: usize) -> usize {
    // Free monomial count C(n+k, k); the quotient never exceeds it.
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = c * (nvars as u128 + i) / i;
        if c > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    (c as usize).max(seen)
}
