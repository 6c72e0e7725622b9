//! Exact field elements over the rationals or a prime field.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// The ground field every scalar of a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Builds `GF(p)`, refusing composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if !(2..(1 << 62)).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: (n as i128).rem_euclid(*p as i128) as u64,
                modulus: *p,
            },
        }
    }

    /// Embeds `num/den` into this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, LinalgError> {
        if den.is_zero() {
            return Err(LinalgError::ZeroDenominator);
        }
        match self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> u64 {
                    x.mod_floor(&BigInt::from(*p)).to_u64().expect("residue fits in u64")
                };
                let n = Scalar::Residue { value: reduce(num), modulus: *p };
                let d = Scalar::Residue { value: reduce(den), modulus: *p };
                let d_inv = d.inv().ok_or(LinalgError::ZeroDenominator)?;
                Ok(&n * &d_inv)
            }
        }
    }

    /// Parses `"n"` or `"num/den"` (optionally signed) into this field.
    pub fn parse(&self, text: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::BadScalar(text.to_string());
        let trimmed = text.trim();
        let (num, den) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (trimmed, "1"),
        };
        if num.is_empty() || den.is_empty() || den.starts_with(['-', '+']) {
            return Err(bad());
        }
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        self.from_ratio(&num, &den).map_err(|e| match e {
            LinalgError::ZeroDenominator => LinalgError::BadScalar(text.to_string()),
            other => other,
        })
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    /// Accepts `q` or `gf:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rationals);
        }
        match s.strip_prefix("gf:") {
            Some(p) => {
                let p: u64 = p.parse().map_err(|_| LinalgError::BadField(s.to_string()))?;
                Field::prime(p)
            }
            None => Err(LinalgError::BadField(s.to_string())),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator; residues
/// live in `[0, modulus)`. Mixing elements of different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalars from different fields: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Scalar::Residue {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Scalar::Residue {
                value: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Scalar::Residue {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    /// `n` for integers and residues, `num/den` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        let q = Field::Rationals;
        let a = q.parse("6/-4");
        assert!(a.is_err(), "negative denominators are rejected in text");
        let a = q.parse("-6/4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(q.parse("4/2").unwrap().to_string(), "2");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(Field::Rationals.parse("1/0"), Err(LinalgError::BadScalar(_))));
        let gf = Field::prime(7).unwrap();
        assert!(gf.parse("1/14").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let gf = Field::prime(101).unwrap();
        let a = gf.parse("1/2").unwrap();
        assert_eq!(&a + &a, gf.one());
        assert_eq!(gf.from_i64(-1).to_string(), "100");
        let x = gf.from_i64(37);
        assert_eq!(&x * &x.inv().unwrap(), gf.one());
        assert!(gf.zero().inv().is_none());
        assert_eq!(-gf.zero(), gf.zero());
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("gf:101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("gf:100".parse::<Field>().is_err());
        assert!("gf:1".parse::<Field>().is_err());
        assert!("reals".parse::<Field>().is_err());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixing_fields_panics() {
        let _ = Field::Rationals.one() + Field::Prime(5).one();
    }
}
