//! Ground fields and their elements.
//!
//! Two fields are supported: the rationals, with arbitrary-precision
//! numerators and denominators, and prime fields `F_p` for `p < 2^32`.
//! Every [`Scalar`] carries its field so that mixing elements from different
//! fields is caught rather than silently producing garbage.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible characteristic; keeps `a * b` inside `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field of characteristic `p`. Rejects composites and `p > 2^32 - 1`.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME {
            return Err(Error::InvalidArgument(format!(
                "characteristic {p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
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
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Maps a rational into this field. Fails when the denominator is not
    /// invertible modulo the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let modulus = BigInt::from(p);
                let num = q.numer().mod_floor(&modulus).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&modulus).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::NotRepresentable(format!(
                        "{q} has a denominator divisible by {p}"
                    )));
                }
                let inv = pow_mod(den, p - 2, p);
                Ok(Scalar::Modular {
                    value: num * inv % p,
                    modulus: p,
                })
            }
        }
    }

    /// Parses an integer, a fraction `a/b`, or (for prime fields) any
    /// integer literal reduced modulo `p`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("malformed scalar literal `{text}`"));
        let q = match text.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{text}`")));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(BigInt::from_str(text).map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

/// An element of [`Field`]. Rationals are kept in lowest terms with a
/// positive denominator; residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// True for rationals with denominator 1 and for every residue.
    pub fn is_integral(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_integer(),
            Scalar::Modular { .. } => true,
        }
    }

    /// Re-expresses this scalar in another field (rationals reduce mod p;
    /// residues only map to their own field).
    pub fn to_field(&self, field: Field) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => field.from_rational(q),
            Scalar::Modular { .. } if self.field() == field => Ok(self.clone()),
            Scalar::Modular { .. } => Err(Error::FieldMismatch {
                expected: field,
                found: self.field(),
            }),
        }
    }

    fn modular(value: u64, modulus: u64) -> Scalar {
        Scalar::Modular { value, modulus }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! same_field {
    ($a:expr, $b:expr) => {
        panic!("scalar arithmetic across fields: {} vs {}", $a.field(), $b.field())
    };
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::modular((a + b) % p, *p)
            }
            _ => same_field!(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::modular((a + p - b) % p, *p)
            }
            _ => same_field!(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::modular(a * b % p, *p)
            }
            _ => same_field!(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::modular((modulus - value) % modulus, *modulus),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Absolute value of the numerator/denominator pair; used for pivot
/// heuristics only.
pub(crate) fn rational_height(q: &BigRational) -> u64 {
    q.numer().abs().bits() + q.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(101).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(u64::MAX).is_err());
    }

    #[test]
    fn residues_are_canonical() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.from_i64(-1), Scalar::Modular { value: 6, modulus: 7 });
        assert_eq!(f7.from_i64(15), f7.from_i64(1));
        let half = f7.parse_scalar("1/2").unwrap();
        assert_eq!(&half * &f7.from_i64(2), f7.one());
        assert!(f7.parse_scalar("1/7").is_err());
    }

    #[test]
    fn rationals_print_in_lowest_terms() {
        let q = Field::Rationals.parse_scalar("6/-4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Field::Rationals.parse_scalar("10/5").unwrap().to_string(), "2");
        assert!(Field::Rationals.parse_scalar("1/0").is_err());
        assert!(Field::Rationals.parse_scalar("x").is_err());
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Field::Rationals.zero().inv().is_none());
        assert!(Field::Prime(5).zero().inv().is_none());
    }

    #[test]
    #[should_panic]
    fn mixed_field_arithmetic_panics() {
        let _ = &Field::Rationals.one() + &Field::Prime(5).one();
    }

    proptest! {
        #[test]
        fn rational_addition_is_exact(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let q = Field::Rationals;
            let x = q.parse_scalar(&format!("{a}/{b}")).unwrap();
            let y = q.parse_scalar(&format!("{c}/{d}")).unwrap();
            prop_assert_eq!(&(&x + &y) - &y, x);
        }

        #[test]
        fn modular_inverse_roundtrips(v in 1u64..101) {
            let f = Field::prime(101).unwrap();
            let x = f.from_i64(v as i64);
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}
