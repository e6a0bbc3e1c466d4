//! Ring-object traits: a ring is a handle with explicit element operations,
//! so that contexts (finite fields with a modulus, polynomial rings) can be
//! passed around without every element dragging the context along.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub trait Ring: Clone + PartialEq + Debug {
    type El: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    // takes &self by design: elements are constructed through a ring handle
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::El;

    fn is_zero(&self, a: &Self::El) -> bool {
        *a == self.zero()
    }
    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    /// Characteristic, 0 for rings containing the rationals.
    fn characteristic(&self) -> u64;

    fn pow_u(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::El) -> Self::El;

    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct QQ;

impl Ring for QQ {
    type El = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
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
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

impl Field for QQ {
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut acc: u128 = 1;
        let m = n as u128;
        let mut bb = b as u128 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * bb % m;
            }
            bb = bb * bb % m;
            e >>= 1;
        }
        b = acc as u64;
        b
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if r.is_zero() {
            n = q;
            v += 1;
        } else {
            return v;
        }
    }
}

/// v_p(r) for a rational r, or None (interpreted as +infinity) for r = 0.
pub fn valuation_p(r: &BigRational, p: u64) -> crate::error::Result<Option<i64>> {
    if !is_prime(p) {
        return Err(crate::error::Error::InvalidPrime(p));
    }
    if r.is_zero() {
        return Ok(None);
    }
    let vn = valuation_int(r.numer(), p) as i64;
    let vd = valuation_int(r.denom(), p) as i64;
    Ok(Some(vn - vd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation_p(&rat(50, 3), 5).unwrap(), Some(2));
        assert_eq!(valuation_p(&rat_i(0), 7).unwrap(), None);
        assert_eq!(valuation_p(&rat_i(48), 2).unwrap(), Some(4));
        assert_eq!(valuation_p(&rat(1, 125), 5).unwrap(), Some(-3));
        assert!(valuation_p(&rat_i(1), 6).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }
}
