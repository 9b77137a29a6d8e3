use super::{LieAlgebra, LieError, StructureConstants};
use crate::linalg::{GaussianRational, Matrix};
use crate::rational::{rat, Rational};
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Named algebras with rational structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    /// `[e_i, e_j] = eps_ijk e_k`.
    Su2,
    /// Same constants as `Su2`, with rotation-generator labels.
    So3,
    /// `su(2) ⊕ su(2)`.
    So4,
    /// Compact basis of `su(n)` built from matrix units.
    SuN(usize),
    /// Split basis `h, e, f`.
    Sl2R,
    Abelian(usize),
    DirectSum(Box<Builtin>, Box<Builtin>),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Su2 => write!(f, "su2"),
            Builtin::So3 => write!(f, "so3"),
            Builtin::So4 => write!(f, "so4"),
            Builtin::SuN(n) => write!(f, "su({n})"),
            Builtin::Sl2R => write!(f, "sl2r"),
            Builtin::Abelian(n) => write!(f, "abelian{n}"),
            Builtin::DirectSum(a, b) => write!(f, "{a}+{b}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = LieError;

    /// Accepts `su2`, `so3`, `so4`, `sl2r`, `su3`, `su(4)`, `su_n(3)`,
    /// `abelian2`, `abelian(2)`, `u1`, and `+`-separated direct sums.
    fn from_str(s: &str) -> Result<Self, LieError> {
        let name = s.trim().to_ascii_lowercase();
        if let Some((a, b)) = name.split_once('+') {
            return Ok(Builtin::DirectSum(
                Box::new(a.parse()?),
                Box::new(b.parse()?),
            ));
        }
        let unsupported = || LieError::UnsupportedAlgebra(s.trim().to_string());
        let number = |t: &str| -> Result<usize, LieError> {
            t.trim_start_matches(['(', '<'])
                .trim_end_matches([')', '>'])
                .parse::<usize>()
                .map_err(|_| unsupported())
        };
        match name.as_str() {
            "su2" => return Ok(Builtin::Su2),
            "so3" => return Ok(Builtin::So3),
            "so4" => return Ok(Builtin::So4),
            "sl2r" | "sl2" | "sl(2,r)" => return Ok(Builtin::Sl2R),
            "u1" => return Ok(Builtin::Abelian(1)),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("abelian") {
            let n = number(rest)?;
            return if n == 0 {
                Err(unsupported())
            } else {
                Ok(Builtin::Abelian(n))
            };
        }
        let rest = name
            .strip_prefix("su_n")
            .or_else(|| name.strip_prefix("su"))
            .ok_or_else(unsupported)?;
        let n = number(rest)?;
        if n < 2 {
            return Err(unsupported());
        }
        Ok(Builtin::SuN(n))
    }
}

impl Builtin {
    pub fn build(&self) -> Result<LieAlgebra, LieError> {
        match self {
            Builtin::Su2 => Ok(epsilon(["e1", "e2", "e3"])),
            Builtin::So3 => Ok(epsilon(["L1", "L2", "L3"])),
            Builtin::So4 => {
                let a = epsilon(["a1", "a2", "a3"]);
                let b = epsilon(["b1", "b2", "b3"]);
                Ok(a.direct_sum(&b))
            }
            Builtin::SuN(n) if *n < 2 => Err(LieError::UnsupportedAlgebra(format!("su({n})"))),
            Builtin::SuN(n) => su_n(*n),
            Builtin::Sl2R => {
                let mut sc = StructureConstants::zeros(3);
                // [h,e] = 2e, [h,f] = -2f, [e,f] = h
                sc.set_antisymmetric(0, 1, 1, rat(2));
                sc.set_antisymmetric(0, 2, 2, rat(-2));
                sc.set_antisymmetric(1, 2, 0, rat(1));
                LieAlgebra::new(sc.with_labels(vec!["h".into(), "e".into(), "f".into()])?)
            }
            Builtin::Abelian(n) => Ok(LieAlgebra::abelian(*n)),
            Builtin::DirectSum(a, b) => Ok(a.build()?.direct_sum(&b.build()?)),
        }
    }
}

fn epsilon(labels: [&str; 3]) -> LieAlgebra {
    let mut sc = StructureConstants::zeros(3);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        sc.set_antisymmetric(i, j, k, rat(1));
    }
    let sc = sc
        .with_labels(labels.iter().map(|s| s.to_string()).collect())
        .expect("three labels");
    LieAlgebra::new(sc).expect("epsilon tensor is a Lie bracket")
}

/// Anti-hermitian traceless matrices `E_jk - E_kj`, `i(E_jk + E_kj)` for
/// `j < k`, and `i(E_jj - E_{j+1,j+1})`; constants come from exact matrix
/// commutators solved back into this basis.
fn su_n(n: usize) -> Result<LieAlgebra, LieError> {
    let one = GaussianRational::one();
    let i = GaussianRational::i();
    let unit = |r: usize, c: usize, v: &GaussianRational| {
        let mut m = Matrix::zeros(n, n);
        m.set(r, c, v.clone());
        m
    };
    let mut basis: Vec<Matrix<GaussianRational>> = Vec::new();
    let mut labels = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            basis.push(unit(j, k, &one).minus(&unit(k, j, &one)));
            labels.push(format!("A{}{}", j + 1, k + 1));
            basis.push(unit(j, k, &i).plus(&unit(k, j, &i)));
            labels.push(format!("B{}{}", j + 1, k + 1));
        }
    }
    for j in 0..n - 1 {
        basis.push(unit(j, j, &i).minus(&unit(j + 1, j + 1, &i)));
        labels.push(format!("H{}", j + 1));
    }
    let flatten = |m: &Matrix<GaussianRational>| -> Vec<Rational> {
        let mut v = Vec::with_capacity(2 * n * n);
        for r in 0..n {
            for c in 0..n {
                let z = m.get(r, c);
                v.push(z.re.clone());
                v.push(z.im.clone());
            }
        }
        v
    };
    let dim = basis.len();
    let coords = Matrix::from_cols(&basis.iter().map(flatten).collect::<Vec<_>>(), 2 * n * n);
    let mut sc = StructureConstants::zeros(dim);
    for a in 0..dim {
        for b in a + 1..dim {
            let comm = basis[a].commutator(&basis[b]);
            if comm.is_zero() {
                continue;
            }
            let x = coords
                .solve(&flatten(&comm))
                .ok_or_else(|| LieError::UnsupportedAlgebra(format!("su({n})")))?;
            for (k, v) in x.into_iter().enumerate() {
                if !v.is_zero() {
                    sc.set_antisymmetric(a, b, k, v);
                }
            }
        }
    }
    LieAlgebra::new(sc.with_labels(labels)?)
}
