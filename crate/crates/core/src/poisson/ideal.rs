use super::{Monomial, PoissonError, Polynomial};
use crate::rational::Rational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

/// One generator of an orbit ideal together with its grlex leading term,
/// used as the substitution rule `lead -> lead - relation / lc`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub poly: Polynomial,
}

impl Relation {
    pub fn leading_monomial(&self) -> &Monomial {
        self.poly.leading().expect("relations are nonzero").0
    }

    pub fn leading_coeff(&self) -> &Rational {
        self.poly.leading().expect("relations are nonzero").1
    }
}

/// Ideal of polynomials vanishing on an orbit, in substitution form.
///
/// Relations must have pairwise coprime leading monomials; they then form a
/// Gröbner basis and normal forms are unique.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[derive(Default)]
pub struct OrbitIdeal {
    relations: Vec<Relation>,
}

impl OrbitIdeal {
    pub fn new(relations: Vec<Polynomial>) -> Result<Self, PoissonError> {
        let nvars = relations.first().map(Polynomial::nvars);
        let mut rels: Vec<Relation> = Vec::with_capacity(relations.len());
        for (idx, p) in relations.into_iter().enumerate() {
            if Some(p.nvars()) != nvars {
                return Err(PoissonError::VariableMismatch {
                    expected: nvars.unwrap_or(0),
                    got: p.nvars(),
                });
            }
            let Some((lead, _)) = p.leading() else {
                return Err(PoissonError::NonReducibleRelation {
                    index: idx + 1,
                    reason: "relation is zero".into(),
                });
            };
            if lead.is_one() {
                return Err(PoissonError::NonReducibleRelation {
                    index: idx + 1,
                    reason: "relation is a nonzero constant, the quotient is trivial".into(),
                });
            }
            if let Some(other) = rels
                .iter()
                .position(|r| !r.leading_monomial().coprime(lead))
            {
                return Err(PoissonError::NonReducibleRelation {
                    index: idx + 1,
                    reason: format!(
                        "leading monomial {lead} shares a variable with relation {}",
                        other + 1
                    ),
                });
            }
            rels.push(Relation { poly: p });
        }
        Ok(OrbitIdeal { relations: rels })
    }

    /// `x_{o+1}^2 + x_{o+2}^2 + x_{o+3}^2 - r^2` for each listed offset `o`.
    pub fn spheres(nvars: usize, blocks: &[(usize, Rational)]) -> Result<Self, PoissonError> {
        let mut rels = Vec::new();
        for (offset, r) in blocks {
            if offset + 3 > nvars {
                return Err(PoissonError::UnsupportedIdeal(format!(
                    "sphere block at x{} exceeds {nvars} variables",
                    offset + 1
                )));
            }
            let mut p = Polynomial::constant(nvars, -(r * r));
            for i in 0..3 {
                let mut e = vec![0; nvars];
                e[offset + i] = 2;
                p.add_term(Monomial::new(e), Rational::one());
            }
            rels.push(p);
        }
        OrbitIdeal::new(rels)
    }

    /// One sphere of radius `r` on every consecutive triple of variables,
    /// for a direct sum of su(2) copies.
    pub fn block_spheres(nvars: usize, r: &Rational) -> Result<Self, PoissonError> {
        if !r.is_positive() {
            return Err(PoissonError::UnsupportedIdeal(format!(
                "sphere radius must be positive, got {r}"
            )));
        }
        if nvars == 0 || !nvars.is_multiple_of(3) {
            return Err(PoissonError::UnsupportedIdeal(format!(
                "sphere blocks need a multiple of 3 variables, got {nvars}"
            )));
        }
        let blocks: Vec<(usize, Rational)> = (0..nvars / 3).map(|b| (3 * b, r.clone())).collect();
        OrbitIdeal::spheres(nvars, &blocks)
    }

    /// The sphere `x1^2 + x2^2 + x3^2 = r^2`.
    pub fn sphere(r: Rational) -> Self {
        OrbitIdeal::spheres(3, &[(0, r)]).expect("single sphere block is valid")
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn nvars(&self) -> Option<usize> {
        self.relations.first().map(|r| r.poly.nvars())
    }

    /// Whether `m` is a normal-form monomial (divisible by no leading term).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.relations
            .iter()
            .all(|r| !r.leading_monomial().divides(m))
    }

    /// Normal form: repeatedly replaces the largest reducible term.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.relations.is_empty() {
            return f.clone();
        }
        let mut work = f.clone();
        let mut out = Polynomial::zero(f.nvars());
        while let Some((m, c)) = work.pop_leading() {
            match self
                .relations
                .iter()
                .find(|r| r.leading_monomial().divides(&m))
            {
                None => out.add_term(m, c),
                Some(r) => {
                    let q = r.leading_monomial().quotient_of(&m);
                    let s = -(&c / r.leading_coeff());
                    // Adding s * q * relation cancels the popped term exactly.
                    for (rm, rc) in r.poly.terms().rev().skip(1) {
                        work.add_term(rm.mul(&q), rc * &s);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero_mod(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }
}

/// Reduction that tolerates a missing ideal.
pub fn reduce_opt(ideal: Option<&OrbitIdeal>, f: &Polynomial) -> Polynomial {
    match ideal {
        Some(i) => i.reduce(f),
        None => f.clone(),
    }
}
