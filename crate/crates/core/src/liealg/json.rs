use super::{default_labels, LieAlgebra, LieError, StructureConstants};
use crate::rational::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// On-disk algebra description. Only pairs `i < j` (1-based) are listed;
/// missing pairs are zero and the rest follows by antisymmetry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub k: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub v: Rational,
}

impl AlgebraJson {
    pub fn from_constants(sc: &StructureConstants) -> Self {
        let n = sc.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: Vec<CoeffEntry> = (0..n)
                    .filter(|&k| !sc.get(i, j, k).is_zero())
                    .map(|k| CoeffEntry {
                        k: k + 1,
                        v: sc.get(i, j, k).clone(),
                    })
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        coeffs,
                    });
                }
            }
        }
        AlgebraJson {
            dim: n,
            labels: Some(sc.labels().to_vec()),
            brackets,
        }
    }

    /// Expands to a full tensor without running the Lie-algebra checks.
    pub fn to_constants(&self) -> Result<StructureConstants, LieError> {
        let n = self.dim;
        if n == 0 {
            return Err(LieError::Malformed("dim must be positive".into()));
        }
        let labels = self.labels.clone().unwrap_or_else(|| default_labels(n));
        let mut sc = StructureConstants::zeros(n).with_labels(labels)?;
        let mut seen = std::collections::HashSet::new();
        for b in &self.brackets {
            if b.i == 0 || b.j == 0 || b.i > n || b.j > n {
                return Err(LieError::Malformed(format!(
                    "bracket index ({}, {}) outside 1..={n}",
                    b.i, b.j
                )));
            }
            if b.i >= b.j {
                return Err(LieError::Malformed(format!(
                    "bracket ({}, {}) must have i < j",
                    b.i, b.j
                )));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(LieError::Malformed(format!(
                    "bracket ({}, {}) listed twice",
                    b.i, b.j
                )));
            }
            for c in &b.coeffs {
                if c.k == 0 || c.k > n {
                    return Err(LieError::Malformed(format!(
                        "coefficient index {} outside 1..={n}",
                        c.k
                    )));
                }
                sc.set_antisymmetric(b.i - 1, b.j - 1, c.k - 1, c.v.clone());
            }
        }
        Ok(sc)
    }

    pub fn parse(text: &str) -> Result<Self, LieError> {
        serde_json::from_str(text).map_err(|e| LieError::Malformed(e.to_string()))
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, LieError> {
        LieAlgebra::new(self.to_constants()?)
    }
}
