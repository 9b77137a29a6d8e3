use super::{bracket_mod, PoissonError, PolySpace, Polynomial};
use crate::liealg::LieAlgebra;
use crate::linalg::{charpoly, rational_eigenvalues, Matrix, UniPoly};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};

/// Matrix of a linear map between polynomial spaces; column `a` holds the
/// coordinates of the image of basis element `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinOp {
    pub domain: PolySpace,
    pub codomain: PolySpace,
    #[serde(with = "matrix_rows")]
    pub matrix: Matrix<Rational>,
}

pub(crate) mod matrix_rows {
    use crate::linalg::Matrix;
    use crate::rational::Rational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Matrix<Rational>, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::serde_rational_rows::serialize(&m.to_rows(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix<Rational>, D::Error> {
        let rows = crate::rational::serde_rational_rows::deserialize(d)?;
        if rows
            .iter()
            .any(|r| r.len() != rows.first().map_or(0, Vec::len))
        {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        Ok(Matrix::from_rows(rows))
    }
}

impl LinOp {
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PoissonError> {
        let x = self.domain.coords(f)?;
        Ok(self.codomain.to_poly(&self.matrix.mul_vec(&x)))
    }
}

/// `Δf = -sum_i {x_i, {x_i, f}}`, reduced modulo the ideal.
pub fn laplacian_of(
    l: &LieAlgebra,
    f: &Polynomial,
    ideal: Option<&super::OrbitIdeal>,
) -> Result<Polynomial, PoissonError> {
    let n = l.dim();
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        let xi = Polynomial::var(n, i);
        let inner = bracket_mod(&xi, f, l, ideal)?;
        let outer = bracket_mod(&xi, &inner, l, ideal)?;
        out = out.sub(&outer);
    }
    Ok(out)
}

/// Matrix of Δ on `s`; fails with `DegreeEscape` if an image leaves `s`.
pub fn laplacian(l: &LieAlgebra, s: &PolySpace) -> Result<LinOp, PoissonError> {
    if s.nvars() != l.dim() {
        return Err(PoissonError::VariableMismatch {
            expected: l.dim(),
            got: s.nvars(),
        });
    }
    let cols = s
        .elements()
        .iter()
        .map(|e| s.coords(&laplacian_of(l, e, s.ideal())?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinOp {
        domain: s.clone(),
        codomain: s.clone(),
        matrix: Matrix::from_cols(&cols, s.dim()),
    })
}

#[derive(Debug, Clone)]
pub struct LaplacianAnalysis {
    pub rank: usize,
    pub kernel: Vec<Polynomial>,
    pub image: Vec<Polynomial>,
    pub char_poly: UniPoly,
    /// Rational eigenvalues with algebraic multiplicity, ascending.
    pub eigenvalues: Vec<(Rational, usize)>,
    /// Degree of the factor of the characteristic polynomial without
    /// rational roots.
    pub irrational_degree: usize,
}

impl LaplacianAnalysis {
    /// Whether the kernel is exactly the constants.
    pub fn kernel_is_constants(&self) -> bool {
        self.kernel.len() == 1 && self.kernel[0].degree() == Some(0)
    }
}

pub fn laplacian_analysis(op: &LinOp) -> LaplacianAnalysis {
    let m = &op.matrix;
    let e = m.echelon();
    let kernel = crate::linalg::kernel_from_echelon(&e, m.ncols())
        .iter()
        .map(|v| op.domain.to_poly(v))
        .collect();
    let image = e
        .pivot_cols
        .iter()
        .map(|&c| op.codomain.to_poly(&m.col(c)))
        .collect();
    let (eigenvalues, irrational_degree) = rational_eigenvalues(m);
    LaplacianAnalysis {
        rank: e.rank(),
        kernel,
        image,
        char_poly: charpoly(m),
        eigenvalues,
        irrational_degree,
    }
}
