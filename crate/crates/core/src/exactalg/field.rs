use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field elements are always stored as big rationals. Over a prime field the
/// stored value is the integer representative in `0..p`.
pub type Scalar = BigRational;

/// Coefficient field: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
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
    pub fn prime(p: u32) -> Result<Field> {
        if p >= (1u32 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::from_integer(v.clone()),
            Field::Prime(p) => Scalar::from_integer(v.mod_floor(&BigInt::from(*p))),
        }
    }

    /// Maps a rational into this field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(q.clone()),
            Field::Prime(p) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(Error::InvalidField(format!(
                        "{q} has a denominator divisible by {p}"
                    )));
                }
                Ok(self.mul(&num, &self.inv(&den)))
            }
        }
    }

    fn modp(p: u32, v: &Scalar) -> u64 {
        debug_assert!(v.is_integer());
        v.numer().to_u64().expect("prime field element out of range") % p as u64
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => {
                Scalar::from_integer(((Self::modp(*p, a) + Self::modp(*p, b)) % *p as u64).into())
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => {
                let v = Self::modp(*p, a);
                Scalar::from_integer(((*p as u64 - v) % *p as u64).into())
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => {
                Scalar::from_integer(((Self::modp(*p, a) * Self::modp(*p, b)) % *p as u64).into())
            }
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let p = *p as u64;
                let mut base = Self::modp(p as u32, a);
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::from_integer(acc.into())
            }
        }
    }

    /// Display representative: prime-field elements are shown in the
    /// symmetric range so that `p - 1` prints as `-1`.
    pub fn signed_repr(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a.clone(),
            Field::Prime(p) => {
                let v = Self::modp(*p, a) as i64;
                let p = *p as i64;
                if v > p / 2 {
                    Scalar::from_integer((v - p).into())
                } else {
                    Scalar::from_integer(v.into())
                }
            }
        }
    }

    pub fn is_negative_repr(&self, a: &Scalar) -> bool {
        self.signed_repr(a).is_negative()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "f{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q` (or `Q`, `QQ`) for the rationals and `f<p>` / `F<p>` / `GF<p>`
    /// for prime fields.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        match t {
            "q" | "Q" | "QQ" => return Ok(Field::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix('f'))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::InvalidField(format!("unknown field `{s}`")))?;
        let p: u32 = digits
            .trim_matches(|c| c == '(' || c == ')')
            .parse()
            .map_err(|_| Error::InvalidField(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Field, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let two = f5.from_int(2);
        let three = f5.from_int(3);
        assert!(f5.add(&two, &three).is_zero());
        assert_eq!(f5.mul(&two, &f5.inv(&two)), f5.one());
        assert_eq!(f5.from_int(-1), f5.from_int(4));
        assert_eq!(f5.signed_repr(&f5.from_int(4)), Scalar::from_integer((-1).into()));
    }

    #[test]
    fn rejects_composites_and_large_primes() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2_147_483_647).is_ok());
        assert!(Field::prime(2_147_483_649).is_err());
        let big = Field::Prime(2_147_483_647);
        let m = big.from_int(-2);
        assert_eq!(big.mul(&m, &m), big.from_int(4));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["q", "f2", "f5", "f101"] {
            let f: Field = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("GF(7)".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("f9".parse::<Field>().is_err());
        assert!("z".parse::<Field>().is_err());
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f3 = Field::Prime(3);
        let half = BigRational::new(1.into(), 2.into());
        // 2 * 2 = 4 = 1 mod 3
        assert_eq!(f3.from_rational(&half).unwrap(), f3.from_int(2));
        let third = BigRational::new(1.into(), 3.into());
        assert!(f3.from_rational(&third).is_err());
    }
}
