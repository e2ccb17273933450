//! Exact coefficient rings and the linear algebra every cohomology
//! computation reduces to.
//!
//! Elements of every supported ring are carried as [`Scalar`] (a reduced
//! `BigRational`). Over `Z`, `Z/n` and `GF(p)` the denominator is always one
//! and residues are kept in `0..n`. The kernels in [`snf`], [`howell`] and
//! [`homology`] convert to native representations internally.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub mod homology;
pub mod howell;
pub mod matrix;
pub mod snf;

pub use homology::{cohomology_at, in_column_span, kernel_basis, rank, ModuleInvariants};
pub use howell::howell_form;
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};

pub type Scalar = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Rationals,
    Integers,
    IntegersModN(u64),
    PrimeField(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffRing {
    pub fn modular(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("Z/{n}: modulus must be at least 2")));
        }
        Ok(CoeffRing::IntegersModN(n))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("GF({p}): {p} is not prime")));
        }
        Ok(CoeffRing::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoeffRing::Rationals | CoeffRing::PrimeField(_))
    }

    /// The modulus for `Z/n` and `GF(p)`.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoeffRing::IntegersModN(n) | CoeffRing::PrimeField(n) => Some(*n),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.modulus() {
            Some(n) => Scalar::from_integer(v.mod_floor(&BigInt::from(n))),
            None => Scalar::from_integer(v.clone()),
        }
    }

    /// Maps a rational into the ring. Fails when a denominator is not invertible.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar> {
        match self {
            CoeffRing::Rationals => Ok(v.clone()),
            CoeffRing::Integers => {
                if v.is_integer() {
                    Ok(v.clone())
                } else {
                    Err(Error::Domain(format!("{v} is not an integer")))
                }
            }
            CoeffRing::IntegersModN(_) | CoeffRing::PrimeField(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                let inv = self
                    .inv(&den)
                    .ok_or_else(|| Error::Domain(format!("{} is not invertible in {self}", v.denom())))?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    /// Canonical representative of an arbitrary rational already known to lie in the ring.
    pub fn normalize(&self, v: &Scalar) -> Scalar {
        match self.modulus() {
            Some(_) => self
                .from_rational(v)
                .expect("value not representable in modular ring"),
            None => v.clone(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce_int(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce_int(a - b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce_int(-a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce_int(a * b)
    }

    fn reduce_int(&self, v: Scalar) -> Scalar {
        match self.modulus() {
            Some(n) => Scalar::from_integer(v.to_integer().mod_floor(&BigInt::from(n))),
            None => v,
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.inv(a).is_some()
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoeffRing::Rationals => Some(a.recip()),
            CoeffRing::Integers => {
                if a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            CoeffRing::IntegersModN(n) | CoeffRing::PrimeField(n) => {
                let r = a.to_integer().to_u64()?;
                inv_mod(r, *n).map(|u| Scalar::from_integer(BigInt::from(u)))
            }
        }
    }

    /// Exact division `a / b` when `b` is a unit.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    /// Residue as `u64`; only meaningful for `Z/n` and `GF(p)`.
    pub(crate) fn residue(&self, a: &Scalar) -> u64 {
        a.to_integer().to_u64().expect("modular residue out of range")
    }

    pub fn fmt_scalar(&self, a: &Scalar) -> String {
        if a.is_integer() {
            a.to_integer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::IntegersModN(n) => write!(f, "Z/{n}"),
            CoeffRing::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("unrecognised coefficient ring `{s}`"));
        match s {
            "Q" => return Ok(CoeffRing::Rationals),
            "Z" => return Ok(CoeffRing::Integers),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Z/") {
            let n: u64 = rest.trim().parse().map_err(|_| bad())?;
            return CoeffRing::modular(n);
        }
        if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = rest.trim().parse().map_err(|_| bad())?;
            return CoeffRing::prime_field(p);
        }
        Err(bad())
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd on non-negative integers: returns `(g, s, t)` with `s*a + t*b = g`.
pub(crate) fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub(crate) fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = xgcd((a % n) as i128, n as i128);
    if g != 1 {
        return None;
    }
    Some(s.rem_euclid(n as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["Q", "Z", "Z/4", "Z/30", "GF(2)", "GF(101)"] {
            let r: CoeffRing = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("GF(4)".parse::<CoeffRing>().is_err());
        assert!("Z/1".parse::<CoeffRing>().is_err());
        assert!("R".parse::<CoeffRing>().is_err());
    }

    #[test]
    fn modular_arithmetic_stays_canonical() {
        let r = CoeffRing::IntegersModN(30);
        let a = r.from_i64(-1);
        assert_eq!(a, Scalar::from_integer(29.into()));
        assert_eq!(r.mul(&a, &a), r.one());
        assert!(r.inv(&r.from_i64(15)).is_none());
        assert_eq!(r.inv(&r.from_i64(7)), Some(r.from_i64(13)));
    }

    #[test]
    fn rationals_map_into_prime_fields() {
        let r = CoeffRing::PrimeField(5);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(r.from_rational(&half).unwrap(), r.from_i64(3));
        assert!(CoeffRing::Integers.from_rational(&half).is_err());
    }

    #[test]
    fn units_over_integers() {
        let z = CoeffRing::Integers;
        assert!(z.is_unit(&z.from_i64(-1)));
        assert!(!z.is_unit(&z.from_i64(2)));
    }
}
