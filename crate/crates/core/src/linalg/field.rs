//! Exact scalar fields: prime fields F_p and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// The coefficient field of every linear object in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Prime(u32),
    Rational,
}

/// An element of a [`Field`]. Elements of different fields never mix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod { v: u32, p: u32 },
    Rat(Box<BigRational>),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, LinalgError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn f2() -> Field {
        Field::Prime(2)
    }

    /// Parses `0` as the rationals and any prime as F_p.
    pub fn from_characteristic(c: u32) -> Result<Field, LinalgError> {
        if c == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(c)
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod { v: x.rem_euclid(*p as i64) as u32, p: *p },
            Field::Rational => Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(x)))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        if den == 0 {
            return Err(LinalgError::DivisionByZero);
        }
        match self {
            Field::Prime(_) => {
                let d = self.from_i64(den);
                if d.is_zero() {
                    return Err(LinalgError::DivisionByZero);
                }
                Ok(self.from_i64(num).mul(&d.inv()))
            }
            Field::Rational => Ok(Scalar::Rat(Box::new(BigRational::new(num.into(), den.into())))),
        }
    }

    /// All elements of a finite field in the order 0, 1, ..., p-1.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(|v| Scalar::Mod { v, p: *p }).collect()),
            Field::Rational => None,
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (Field::Prime(p), Scalar::Mod { p: q, .. }) => p == q,
            (Field::Rational, Scalar::Rat(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn mod_inv(v: u32, p: u32) -> u32 {
    // extended Euclid on i64 to stay exact for any u32 prime
    let (mut a, mut b) = (v as i64, p as i64);
    let (mut x0, mut x1) = (1i64, 0i64);
    while b != 0 {
        let q = a / b;
        (a, b) = (b, a - q * b);
        (x0, x1) = (x1, x0 - q * x1);
    }
    x0.rem_euclid(p as i64) as u32
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { v, .. } => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { v, .. } => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Mod { v, p }, Scalar::Mod { v: w, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Mod { v: ((*v as u64 + *w as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Box::new(a.as_ref() + b.as_ref())),
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Mod { v, p } => Scalar::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
            Scalar::Rat(a) => Scalar::Rat(Box::new(-a.as_ref())),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Mod { v, p }, Scalar::Mod { v: w, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Mod { v: ((*v as u64 * *w as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Box::new(a.as_ref() * b.as_ref())),
            _ => panic!("scalars from different fields"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Mod { v, p } => Scalar::Mod { v: mod_inv(*v, *p), p: *p },
            Scalar::Rat(a) => Scalar::Rat(Box::new(a.recip())),
        }
    }

    /// Integer representative used by fixture dumps: residues for F_p,
    /// and the numerator for integral rationals.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Mod { v, .. } => Some(*v as i64),
            Scalar::Rat(a) if a.is_integer() => i64::try_from(a.numer().clone()).ok(),
            Scalar::Rat(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { v, .. } => write!(f, "{v}"),
            Scalar::Rat(a) => {
                if a.is_integer() {
                    write!(f, "{}", a.numer())
                } else if a.is_negative() {
                    write!(f, "-{}/{}", a.numer().abs(), a.denom())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_is_checked() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::from_characteristic(0).unwrap() == Field::Rational);
    }

    #[test]
    fn inverses_in_f7() {
        let f = Field::prime(7).unwrap();
        for x in 1..7 {
            let a = f.from_i64(x);
            assert!(a.mul(&a.inv()).is_one());
        }
    }

    #[test]
    fn rationals_are_exact() {
        let q = Field::Rational;
        let third = q.from_ratio(1, 3).unwrap();
        let sum = third.add(&third).add(&third);
        assert!(sum.is_one());
        assert_eq!(q.from_ratio(-2, 4).unwrap().to_string(), "-1/2");
    }
}
