//! Prime-field scalars, exact rational exponents and rational identification.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponents, thresholds and jumping numbers. Never a float.
pub type ExactRational = BigRational;

/// Largest characteristic accepted; keeps products of residues inside `u64`.
pub const MAX_CHAR: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeChar(u32);

impl PrimeChar {
    /// Validates `p` by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_CHAR).contains(&p) {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeChar(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub(crate) fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub(crate) fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    #[inline]
    pub(crate) fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub(crate) fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub(crate) fn pow(self, mut a: u32, mut n: u64) -> u32 {
        let mut acc = 1 % self.0;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            n >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; `a` must be a nonzero residue.
    pub(crate) fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.0) {
            return Err(Error::DivisionByZero(self.0));
        }
        Ok(self.pow(a, self.0 as u64 - 2))
    }

    /// Residue of a rational with denominator prime to `p`.
    pub(crate) fn residue_of(self, r: &ExactRational) -> Result<u32> {
        let p = BigInt::from(self.0);
        let num = r.numer().mod_floor(&p).to_u32().expect("residue fits");
        let den = r.denom().mod_floor(&p).to_u32().expect("residue fits");
        Ok(self.mul(num, self.inv(den)?))
    }
}

impl fmt::Display for PrimeChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    char: PrimeChar,
}

impl FpScalar {
    pub fn new(value: i64, char: PrimeChar) -> Self {
        FpScalar {
            value: char.reduce_i64(value),
            char,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn char(self) -> PrimeChar {
        self.char
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        fp_inv(self)
    }
}

pub fn fp_inv(a: FpScalar) -> Result<FpScalar> {
    Ok(FpScalar {
        value: a.char.inv(a.value)?,
        char: a.char,
    })
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        assert_eq!(self.char, rhs.char, "mixed characteristics");
        FpScalar {
            value: self.char.add(self.value, rhs.value),
            char: self.char,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        assert_eq!(self.char, rhs.char, "mixed characteristics");
        FpScalar {
            value: self.char.sub(self.value, rhs.value),
            char: self.char,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        assert_eq!(self.char, rhs.char, "mixed characteristics");
        FpScalar {
            value: self.char.mul(self.value, rhs.value),
            char: self.char,
        }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: self.char.neg(self.value),
            char: self.char,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn rational(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// Renders as `a/b`, or `a` when integral.
pub fn format_rational(r: &ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a/b` or an integer.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(ExactRational::new(n, d))
        }
        None => Ok(ExactRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// ⌈t·q⌉ for t ≥ 0, exactly.
pub fn rat_ceil_scale(t: &ExactRational, q: u64) -> Result<u64> {
    if t.is_negative() {
        return Err(Error::NegativeExponent(format_rational(t)));
    }
    ceil_scaled(t, &BigInt::from(q))
        .to_u64()
        .filter(|&v| v < 1 << 63)
        .ok_or(Error::ExponentOverflow)
}

/// ⌈t·q⌉ on big integers.
pub(crate) fn ceil_scaled(t: &ExactRational, q: &BigInt) -> BigInt {
    (t * ExactRational::from_integer(q.clone())).ceil().to_integer()
}

/// `(v, m)` with `n = p^v · m` and `p ∤ m`; `n` must be nonzero.
pub(crate) fn split_p_part(n: &BigInt, p: u32) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    while m.is_multiple_of(&p) {
        m /= &p;
        v += 1;
    }
    (v, m)
}

/// Multiplicative order of `p` modulo `d` (`gcd(p, d) = 1`); 1 when `d = 1`.
pub(crate) fn multiplicative_order(p: u32, d: &BigUint) -> u64 {
    if d.is_one() {
        return 1;
    }
    let p = BigUint::from(p);
    let mut acc = &p % d;
    let mut k = 1u64;
    while !acc.is_one() {
        acc = (&acc * &p) % d;
        k += 1;
    }
    k
}

/// Smallest-denominator rational strictly inside `(lo, hi)`; ties broken by
/// smallest numerator. `None` when that denominator exceeds `max_denominator`.
pub fn simplest_rational_in(
    lo: &ExactRational,
    hi: &ExactRational,
    max_denominator: u64,
) -> Result<Option<ExactRational>> {
    if lo >= hi {
        return Err(Error::InvalidInterval(format!(
            "({}, {})",
            format_rational(lo),
            format_rational(hi)
        )));
    }
    if max_denominator == 0 {
        return Err(Error::InvalidArgument("denominator bound must be positive".into()));
    }
    let found = simplest_between(lo, Some(hi));
    Ok((found.denom() <= &BigInt::from(max_denominator)).then_some(found))
}

// Continued-fraction descent of the Stern–Brocot tree; `None` is +∞.
fn simplest_between(lo: &ExactRational, hi: Option<&ExactRational>) -> ExactRational {
    let next_int = lo.floor() + ExactRational::one();
    match hi {
        None => return next_int,
        Some(hi) if &next_int < hi => return next_int,
        Some(_) => {}
    }
    let hi = hi.unwrap();
    // lo and hi share the unit interval [n, n+1].
    let n = lo.floor();
    let lo_frac = lo - &n;
    let hi_frac = hi - &n;
    let inner_lo = hi_frac.recip();
    let inner_hi = if lo_frac.is_zero() {
        None
    } else {
        Some(lo_frac.recip())
    };
    n + simplest_between(&inner_lo, inner_hi.as_ref()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(v: i64, p: u64) -> FpScalar {
        FpScalar::new(v, PrimeChar::new(p).unwrap())
    }

    #[test]
    fn char_validation() {
        assert!(PrimeChar::new(2).is_ok());
        assert!(PrimeChar::new(97).is_ok());
        assert_eq!(PrimeChar::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeChar::new(91), Err(Error::NotPrime(91)));
        assert_eq!(PrimeChar::new(0), Err(Error::NotPrime(0)));
    }

    #[test]
    fn inverses() {
        assert_eq!(fp_inv(fp(2, 5)).unwrap().value(), 3);
        assert_eq!(fp_inv(fp(1, 2)).unwrap().value(), 1);
        assert_eq!(fp_inv(fp(3, 7)).unwrap().value(), 5);
        assert_eq!(fp_inv(fp(0, 7)), Err(Error::DivisionByZero(7)));
        assert_eq!(fp_inv(fp(14, 7)), Err(Error::DivisionByZero(7)));
    }

    #[test]
    fn ceil_scale_examples() {
        assert_eq!(rat_ceil_scale(&rational(3, 4), 5).unwrap(), 4);
        assert_eq!(rat_ceil_scale(&rational(1, 5), 4).unwrap(), 1);
        assert_eq!(rat_ceil_scale(&integer(2), 9).unwrap(), 18);
        assert_eq!(rat_ceil_scale(&integer(0), 9).unwrap(), 0);
        assert!(matches!(
            rat_ceil_scale(&rational(-1, 2), 3),
            Err(Error::NegativeExponent(_))
        ));
    }

    #[test]
    fn simplest_examples() {
        let got = simplest_rational_in(&rational(9, 20), &rational(11, 20), 100).unwrap();
        assert_eq!(got, Some(rational(1, 2)));
        let got = simplest_rational_in(&rational(73, 200), &rational(77, 200), 100).unwrap();
        assert_eq!(got, Some(rational(3, 8)));
        assert_eq!(
            simplest_rational_in(&rational(1, 3), &rational(1, 2), 2).unwrap(),
            None
        );
        assert_eq!(
            simplest_rational_in(&rational(1, 3), &rational(1, 2), 5).unwrap(),
            Some(rational(2, 5))
        );
        // several integers inside: smallest numerator wins
        assert_eq!(
            simplest_rational_in(&rational(1, 2), &rational(7, 2), 5).unwrap(),
            Some(integer(1))
        );
        assert_eq!(
            simplest_rational_in(&integer(2), &rational(5, 2), 10).unwrap(),
            Some(rational(7, 3))
        );
        assert!(simplest_rational_in(&integer(1), &integer(1), 10).is_err());
    }

    #[test]
    fn order_and_valuation() {
        assert_eq!(multiplicative_order(5, &BigUint::from(6u32)), 2);
        assert_eq!(multiplicative_order(7, &BigUint::from(6u32)), 1);
        assert_eq!(multiplicative_order(2, &BigUint::from(1u32)), 1);
        assert_eq!(multiplicative_order(2, &BigUint::from(25u32)), 20);
        assert_eq!(split_p_part(&BigInt::from(200), 2), (3, BigInt::from(25)));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("4/5").unwrap(), rational(4, 5));
        assert_eq!(parse_rational(" 3 ").unwrap(), integer(3));
        assert_eq!(parse_rational("-1").unwrap(), integer(-1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rational(10, 4)), "5/2");
        assert_eq!(format_rational(&integer(7)), "7");
    }
}
