//! Exact fields: GF(2), GF(p) for small primes p, and arbitrary precision
//! rationals.

use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::echelon::{Echelon, Gf2Echelon, GenericEchelon};
use crate::error::{Error, Result};

/// Runtime tag naming one of the supported fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Gf2,
    Gfp(u32),
    Rational,
}

impl FieldTag {
    /// Validates the tag; `Gfp(2)` is normalised to `Gf2`.
    pub fn checked(self) -> Result<FieldTag> {
        match self {
            FieldTag::Gfp(2) => Ok(FieldTag::Gf2),
            FieldTag::Gfp(p) if !is_prime(p as u64) => Err(Error::NotPrime(p as u64)),
            t => Ok(t),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldTag::Gf2 => 2,
            FieldTag::Gfp(p) => p as u64,
            FieldTag::Rational => 0,
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Gf2 => write!(f, "gf2"),
            FieldTag::Gfp(p) => write!(f, "gf{p}"),
            FieldTag::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "q" | "qq" | "rational" | "rationals" => return Ok(FieldTag::Rational),
            _ => {}
        }
        let digits = t
            .strip_prefix("gf")
            .map(|d| d.trim_start_matches(['(', ':']).trim_end_matches(')'))
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        FieldTag::Gfp(p).checked()
    }
}

impl Serialize for FieldTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field with exact arithmetic. The field value carries any runtime
/// parameters (the modulus for GF(p)); elements are plain values.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of a rational number; `None` when the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    /// Canonical rational representative (residues in `0..p` for GF(p)).
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every field")
    }

    fn characteristic(&self) -> u64 {
        self.tag().characteristic()
    }

    fn format(&self, a: &Self::Elem) -> String {
        format_rational(&self.to_rational(a))
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
            .ok_or_else(|| Error::Parse(format!("`{s}` has no image in {}", self.tag())))
    }

    /// Fresh incremental row-echelon structure with `ncols` columns.
    fn new_echelon(&self, ncols: usize) -> Box<dyn Echelon<Self>> {
        Box::new(GenericEchelon::new(self.clone(), ncols))
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("bad number `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(&s).map_err(|_| bad())?,
        )),
    }
}

/// The two-element field.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Gf2;

impl Field for Gf2 {
    type Elem = bool;

    fn tag(&self) -> FieldTag {
        FieldTag::Gf2
    }
    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn neg(&self, a: &bool) -> bool {
        *a
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        a & b
    }
    fn inv(&self, a: &bool) -> Option<bool> {
        a.then_some(true)
    }
    fn from_rational(&self, q: &BigRational) -> Option<bool> {
        let two = BigInt::from(2);
        if q.denom().is_multiple_of(&two) {
            return None;
        }
        Some(q.numer().is_odd())
    }
    fn to_rational(&self, a: &bool) -> BigRational {
        BigRational::from_integer(BigInt::from(*a as u8))
    }
    fn new_echelon(&self, ncols: usize) -> Box<dyn Echelon<Self>> {
        Box::new(Gf2Echelon::new(ncols))
    }
}

/// GF(p) for a prime p below 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p >= (1 << 31) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_bigint(&self, v: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u32().expect("residue fits")
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let p = self.p as u64;
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn tag(&self) -> FieldTag {
        if self.p == 2 {
            FieldTag::Gf2
        } else {
            FieldTag::Gfp(self.p)
        }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a as u64, self.p as u64 - 2) as u32)
        }
    }
    fn from_rational(&self, q: &BigRational) -> Option<u32> {
        let d = self.reduce_bigint(q.denom());
        let n = self.reduce_bigint(q.numer());
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn to_rational(&self, a: &u32) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Integer value of a rational if it is a small integer.
pub(crate) fn small_integer(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Runs `$body` with `$f` bound to the concrete field named by `$tag`.
#[macro_export]
macro_rules! with_field {
    ($tag:expr, |$f:ident| $body:expr) => {{
        match $crate::linalg::FieldTag::checked($tag)? {
            $crate::linalg::FieldTag::Gf2 => {
                let $f = $crate::linalg::Gf2;
                $body
            }
            $crate::linalg::FieldTag::Gfp(p) => {
                let $f = $crate::linalg::PrimeField::new(p)?;
                $body
            }
            $crate::linalg::FieldTag::Rational => {
                let $f = $crate::linalg::Rationals;
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_parse_and_print() {
        for (s, t) in [
            ("gf2", FieldTag::Gf2),
            ("GF(3)", FieldTag::Gfp(3)),
            ("gf5", FieldTag::Gfp(5)),
            ("q", FieldTag::Rational),
            ("rational", FieldTag::Rational),
        ] {
            assert_eq!(s.parse::<FieldTag>().unwrap(), t);
        }
        assert_eq!("gf4".parse::<FieldTag>(), Err(Error::NotPrime(4)));
        assert_eq!(FieldTag::Gfp(2).checked().unwrap(), FieldTag::Gf2);
        assert_eq!(FieldTag::Gfp(7).to_string(), "gf7");
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let ia = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ia), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_rational(&parse_rational("-1/2").unwrap()), Some(3));
        assert_eq!(f.from_rational(&parse_rational("1/7").unwrap()), None);
    }

    #[test]
    fn gf2_reduces_rationals() {
        let q = parse_rational("3/5").unwrap();
        assert_eq!(Gf2.from_rational(&q), Some(true));
        assert_eq!(Gf2.from_rational(&parse_rational("-4").unwrap()), Some(false));
        assert_eq!(Gf2.from_rational(&parse_rational("1/2").unwrap()), None);
    }

    #[test]
    fn rational_text() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
