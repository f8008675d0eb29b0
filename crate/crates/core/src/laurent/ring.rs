use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar storage shared by every coefficient ring.
///
/// Over the integers the denominator is always 1, over `Z/p` the value is an
/// integer residue in `0..p`.
pub type Scalar = BigRational;

/// The coefficient ring `R` of `Λ = R[H]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Zp")]
    PrimeField(u64),
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::Rationals => f.write_str("Q"),
            CoefficientRing::PrimeField(p) => write!(f, "Z/{p}"),
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

impl std::str::FromStr for CoefficientRing {
    type Err = Error;

    /// `Z`, `Q`, or `Z/p` (also written `Zp` or `Fp`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" => return Ok(CoefficientRing::Integers),
            "Q" => return Ok(CoefficientRing::Rationals),
            _ => {}
        }
        let p = s
            .strip_prefix("Z/")
            .or_else(|| s.strip_prefix("Zp"))
            .or_else(|| s.strip_prefix('F'))
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Invalid(format!("unknown coefficient ring `{s}` (use Z, Q or Z/p)")))?;
        CoefficientRing::prime_field(p)
    }
}

impl CoefficientRing {
    /// Builds `Z/p`, rejecting composite moduli.
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(Error::Invalid(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    fn modulus(&self) -> Option<BigInt> {
        match self {
            CoefficientRing::PrimeField(p) => Some(BigInt::from(*p)),
            _ => None,
        }
    }

    /// Maps an arbitrary rational into the ring, failing for non-integral
    /// values over `Z` or denominators divisible by `p`.
    pub fn element(&self, value: Scalar) -> Result<Scalar> {
        match self {
            CoefficientRing::Integers => {
                if value.is_integer() {
                    Ok(value)
                } else {
                    Err(Error::Invalid(format!("{value} is not an integer")))
                }
            }
            CoefficientRing::Rationals => Ok(value),
            CoefficientRing::PrimeField(_) => {
                let p = self.modulus().unwrap();
                let den = value.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::Invalid(format!("{value} has denominator divisible by {self}")));
                }
                let inv = mod_inverse(&den, &p);
                Ok(Scalar::from_integer((value.numer() * inv).mod_floor(&p)))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    /// Reduces a value already known to lie in the ring's image of `Q`.
    pub(crate) fn reduce(&self, value: Scalar) -> Scalar {
        match self {
            CoefficientRing::PrimeField(_) => self.element(value).expect("value lies in the ring"),
            _ => value,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            CoefficientRing::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// `a / b` when the quotient lies in the ring.
    pub fn exact_div(&self, a: &Scalar, b: &Scalar) -> Result<Option<Scalar>> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            CoefficientRing::Integers => {
                let (q, r) = a.numer().div_rem(b.numer());
                r.is_zero().then(|| Scalar::from_integer(q))
            }
            CoefficientRing::Rationals => Some(a / b),
            CoefficientRing::PrimeField(_) => {
                let p = self.modulus().unwrap();
                let inv = mod_inverse(b.numer(), &p);
                Some(Scalar::from_integer((a.numer() * inv).mod_floor(&p)))
            }
        })
    }

    /// Non-negative gcd over `Z`; 1 for nonzero inputs over a field.
    pub fn gcd(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoefficientRing::Integers => Scalar::from_integer(a.numer().gcd(b.numer())),
            _ => {
                if a.is_zero() && b.is_zero() {
                    Scalar::zero()
                } else {
                    Scalar::one()
                }
            }
        }
    }

    /// The unit `u` such that `u * a` is the normalized representative of
    /// the associate class of `a` (positive over `Z`, one over a field).
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        match self {
            CoefficientRing::Integers => {
                if a.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            CoefficientRing::Rationals => a.recip(),
            CoefficientRing::PrimeField(_) => self.exact_div(&Scalar::one(), a).expect("nonzero").expect("field"),
        }
    }

    /// Whether the rendered form of `a` should carry a minus sign.
    pub(crate) fn is_negative(&self, a: &Scalar) -> bool {
        match self {
            CoefficientRing::PrimeField(_) => false,
            _ => a.is_negative(),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}
