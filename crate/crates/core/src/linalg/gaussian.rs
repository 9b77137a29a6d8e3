//! Gaussian rationals `a + b i` with `a, b` rational.

use super::Field;
use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::real(Rational::one())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.plus(&o)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.minus(&o)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.times(&o)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        self.negate()
    }
}

impl Field for GaussianRational {
    fn plus(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn minus(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn times(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn negate(&self) -> Self {
        GaussianRational::new(-&self.re, -&self.im)
    }
    fn recip(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        GaussianRational::new(&self.re / &n, -&self.im / &n)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im < Rational::zero() {
                    write!(f, "{}-{}i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

/// Encoded as `["re", "im"]`.
impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.re), format_rational(&self.im)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        Ok(GaussianRational::new(
            parse_rational(&re).map_err(serde::de::Error::custom)?,
            parse_rational(&im).map_err(serde::de::Error::custom)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn field_laws_on_samples() {
        let a = GaussianRational::new(ratio(1, 2), ratio(-3, 4));
        let b = GaussianRational::new(ratio(2, 1), ratio(5, 3));
        assert_eq!(a.times(&a.recip()), GaussianRational::one());
        assert_eq!(a.times(&b), b.times(&a));
        assert_eq!(
            GaussianRational::i().times(&GaussianRational::i()),
            GaussianRational::one().negate()
        );
        assert_eq!(a.plus(&b).minus(&b), a);
    }

    #[test]
    fn json_round_trip() {
        let a = GaussianRational::new(ratio(1, 2), ratio(-3, 4));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1/2","-3/4"]"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
