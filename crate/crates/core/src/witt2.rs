//! Length-2 Witt vectors W_2(A) over a coefficient ring A of characteristic p,
//! with the explicit componentwise addition and multiplication formulas and
//! the Frobenius endomorphism.

use crate::error::{Error, Result};
use crate::fq::FqCtx;
use crate::ring::Ring;

/// A length-2 Witt vector (a0, a1) over the ring handle's element type.
#[derive(Clone, PartialEq, Debug)]
pub struct W2<E: Clone + PartialEq + std::fmt::Debug> {
    pub a0: E,
    pub a1: E,
}

/// The ring W_2(A) as a ring object over a coefficient ring handle.
#[derive(Clone, PartialEq, Debug)]
pub struct W2Ring<R: Ring> {
    pub coeff: R,
    /// binom(p,i)/p mod p for i = 1..p-1, precomputed in Z before reduction.
    half_binomials: Vec<i64>,
}

impl<R: Ring> W2Ring<R> {
    pub fn new(coeff: R) -> Self {
        let p = coeff.characteristic();
        assert!(p >= 2, "coefficient ring must have positive characteristic");
        // binom(p,i)/p = (p-1)!/(i!(p-i)!) computed exactly in Z
        let mut half_binomials = vec![];
        let mut binom: u128 = 1; // binom(p, i) as i runs
        for i in 1..p {
            binom = binom * (p as u128 - i as u128 + 1) / i as u128;
            let div = binom / p as u128;
            debug_assert_eq!(div * p as u128, binom);
            half_binomials.push((div % p as u128) as i64);
        }
        W2Ring {
            coeff,
            half_binomials,
        }
    }

    pub fn p(&self) -> u64 {
        self.coeff.characteristic()
    }

    pub fn el(&self, a0: R::El, a1: R::El) -> W2<R::El> {
        W2 { a0, a1 }
    }

    /// Witness of the addition carry: sum_{i=1}^{p-1} (binom(p,i)/p) x^i y^(p-i).
    fn carry(&self, x: &R::El, y: &R::El) -> R::El {
        let p = self.p();
        let mut acc = self.coeff.zero();
        for i in 1..p {
            let coeff = self.coeff.from_i64(self.half_binomials[(i - 1) as usize]);
            let term = self.coeff.mul(
                &self.coeff.mul(&coeff, &self.coeff.pow_u(x, i)),
                &self.coeff.pow_u(y, p - i),
            );
            acc = self.coeff.add(&acc, &term);
        }
        acc
    }
}

impl<R: Ring> Ring for W2Ring<R> {
    type El = W2<R::El>;

    fn zero(&self) -> Self::El {
        W2 {
            a0: self.coeff.zero(),
            a1: self.coeff.zero(),
        }
    }
    fn one(&self) -> Self::El {
        W2 {
            a0: self.coeff.one(),
            a1: self.coeff.zero(),
        }
    }
    fn add(&self, x: &Self::El, y: &Self::El) -> Self::El {
        W2 {
            a0: self.coeff.add(&x.a0, &y.a0),
            a1: self
                .coeff
                .sub(&self.coeff.add(&x.a1, &y.a1), &self.carry(&x.a0, &y.a0)),
        }
    }
    fn neg(&self, x: &Self::El) -> Self::El {
        // -(x0,x1) = (-x0, -x1 - carry(x0, -x0))  since (x)+(that) must be 0
        let n0 = self.coeff.neg(&x.a0);
        let carry = self.carry(&x.a0, &n0);
        W2 {
            a0: n0,
            a1: self.coeff.add(&self.coeff.neg(&x.a1), &carry),
        }
    }
    fn sub(&self, x: &Self::El, y: &Self::El) -> Self::El {
        self.add(x, &self.neg(y))
    }
    fn mul(&self, x: &Self::El, y: &Self::El) -> Self::El {
        let p = self.p();
        W2 {
            a0: self.coeff.mul(&x.a0, &y.a0),
            a1: self.coeff.add(
                &self.coeff.mul(&self.coeff.pow_u(&x.a0, p), &y.a1),
                &self.coeff.mul(&self.coeff.pow_u(&y.a0, p), &x.a1),
            ),
        }
    }
    fn from_i64(&self, n: i64) -> Self::El {
        // n * 1 by repeated addition, so p maps to (0,1) etc.
        let neg = n < 0;
        let mut k = n.unsigned_abs();
        let mut acc = self.zero();
        let mut base = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if neg {
            self.neg(&acc)
        } else {
            acc
        }
    }
    fn characteristic(&self) -> u64 {
        let p = self.p();
        p * p
    }
}

impl W2Ring<FqCtx> {
    /// Coordinatewise p-th power; a ring endomorphism over a perfect field.
    pub fn frobenius(&self, x: &W2<crate::fq::FqEl>) -> W2<crate::fq::FqEl> {
        let p = self.p();
        W2 {
            a0: self.coeff.pow_u(&x.a0, p),
            a1: self.coeff.pow_u(&x.a1, p),
        }
    }
}

/// Scalar multiple n*x by repeated Witt addition.
pub fn w2_scalar_mul<R: Ring>(ring: &W2Ring<R>, n: u64, x: &W2<R::El>) -> W2<R::El> {
    let mut acc = ring.zero();
    for _ in 0..n {
        acc = ring.add(&acc, x);
    }
    acc
}

/// Guard for mixing coefficient rings (meaningful when R carries a context).
pub fn check_same_ring<R: Ring>(r1: &R, r2: &R) -> Result<()> {
    if r1 == r2 {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;

    #[test]
    fn addition_p3() {
        let f3 = FqCtx::prime_field(3);
        let w = W2Ring::new(f3.clone());
        let one = w.one();
        let two = w.add(&one, &one);
        // (1,0)+(1,0) = (2,1): (2^3-1-1)/3 = 2, second coord 0-2 = 1 mod 3
        assert_eq!(two, w.el(f3.from_residue(2), f3.from_residue(1)));
        // additive identity
        let x = w.el(f3.from_residue(2), f3.from_residue(1));
        assert_eq!(w.add(&w.zero(), &x), x);
        // (a0,0)+(0,a1) = (a0,a1)
        let a = w.el(f3.from_residue(2), f3.zero());
        let b = w.el(f3.zero(), f3.from_residue(1));
        assert_eq!(w.add(&a, &b), w.el(f3.from_residue(2), f3.from_residue(1)));
    }

    #[test]
    fn multiplication() {
        let f3 = FqCtx::prime_field(3);
        let w = W2Ring::new(f3.clone());
        // (0,1)*(0,1) = (0,0)
        let v = w.el(f3.zero(), f3.one());
        assert_eq!(w.mul(&v, &v), w.zero());
        // (x0,x1)*(1,0) = (x0,x1)
        let x = w.el(f3.from_residue(2), f3.from_residue(1));
        assert_eq!(w.mul(&x, &w.one()), x);
        // p=3: (2,1)*(2,0) = (1,2)
        let a = w.el(f3.from_residue(2), f3.from_residue(1));
        let b = w.el(f3.from_residue(2), f3.zero());
        assert_eq!(w.mul(&a, &b), w.el(f3.from_residue(1), f3.from_residue(2)));
    }

    #[test]
    fn p_times_one_is_zero_one() {
        for p in [3u64, 5, 7, 11] {
            let f = FqCtx::prime_field(p);
            let w = W2Ring::new(f.clone());
            let p1 = w2_scalar_mul(&w, p, &w.one());
            assert_eq!(p1, w.el(f.zero(), f.one()), "p*(1,0) = (0,1) at p={p}");
            // p^2 = 0
            let p2 = w2_scalar_mul(&w, p, &p1);
            assert_eq!(p2, w.zero());
            // 1*x = x
            let x = w.el(f.from_residue(p - 1), f.from_residue(2 % p));
            assert_eq!(w2_scalar_mul(&w, 1, &x), x);
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f3 = FqCtx::prime_field(3);
        let w = W2Ring::new(f3.clone());
        let x = w.el(f3.from_residue(2), f3.from_residue(1));
        assert_eq!(w.frobenius(&x), x);
        let f9 = FqCtx::extension(3, 2);
        let w9 = W2Ring::new(f9.clone());
        let g = f9.el_from_coords(vec![0, 1]);
        let fr = w9.frobenius(&w9.el(g.clone(), f9.zero()));
        assert_eq!(fr.a0, f9.pow_u(&g, 3));
        assert!(f9.is_zero(&fr.a1));
        assert_eq!(w9.frobenius(&w9.zero()), w9.zero());
    }

    #[test]
    fn neg_is_additive_inverse() {
        let f5 = FqCtx::prime_field(5);
        let w = W2Ring::new(f5.clone());
        for i in 0..5 {
            for j in 0..5 {
                let x = w.el(f5.from_residue(i), f5.from_residue(j));
                assert_eq!(w.add(&x, &w.neg(&x)), w.zero());
            }
        }
        let _ = f5.inv(&f5.one());
    }
}
