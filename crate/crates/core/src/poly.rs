//! Dense univariate polynomials over a ring handle, lowest degree first.

use crate::error::{Error, Result};
use crate::fq::FqCtx;
use crate::ring::{Field, Ring, QQ};
use std::fmt::Debug;

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<E: Clone + PartialEq + Debug> {
    /// Coefficients, lowest degree first; no trailing zeros (zero poly = empty).
    pub coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + Debug> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }
    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

pub fn poly_from<R: Ring>(ring: &R, coeffs: Vec<R::El>) -> Poly<R::El> {
    let mut c = coeffs;
    while c.last().map(|e| ring.is_zero(e)).unwrap_or(false) {
        c.pop();
    }
    Poly { coeffs: c }
}

pub fn poly_const<R: Ring>(ring: &R, e: R::El) -> Poly<R::El> {
    poly_from(ring, vec![e])
}

pub fn poly_x<R: Ring>(ring: &R) -> Poly<R::El> {
    poly_from(ring, vec![ring.zero(), ring.one()])
}

/// Monomial c * x^k.
pub fn poly_monomial<R: Ring>(ring: &R, c: R::El, k: usize) -> Poly<R::El> {
    let mut v = vec![ring.zero(); k + 1];
    v[k] = c;
    poly_from(ring, v)
}

pub fn poly_add<R: Ring>(ring: &R, a: &Poly<R::El>, b: &Poly<R::El>) -> Poly<R::El> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero());
        let y = b.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero());
        out.push(ring.add(&x, &y));
    }
    poly_from(ring, out)
}

pub fn poly_sub<R: Ring>(ring: &R, a: &Poly<R::El>, b: &Poly<R::El>) -> Poly<R::El> {
    poly_add(ring, a, &poly_neg(ring, b))
}

pub fn poly_neg<R: Ring>(ring: &R, a: &Poly<R::El>) -> Poly<R::El> {
    Poly {
        coeffs: a.coeffs.iter().map(|c| ring.neg(c)).collect(),
    }
}

pub fn poly_mul<R: Ring>(ring: &R, a: &Poly<R::El>, b: &Poly<R::El>) -> Poly<R::El> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![ring.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    poly_from(ring, out)
}

pub fn poly_scale<R: Ring>(ring: &R, a: &Poly<R::El>, c: &R::El) -> Poly<R::El> {
    poly_from(ring, a.coeffs.iter().map(|x| ring.mul(x, c)).collect())
}

pub fn poly_pow<R: Ring>(ring: &R, a: &Poly<R::El>, e: u32) -> Poly<R::El> {
    let mut acc = poly_const(ring, ring.one());
    for _ in 0..e {
        acc = poly_mul(ring, &acc, a);
    }
    acc
}

pub fn poly_eval<R: Ring>(ring: &R, a: &Poly<R::El>, x: &R::El) -> R::El {
    let mut acc = ring.zero();
    for c in a.coeffs.iter().rev() {
        acc = ring.add(&ring.mul(&acc, x), c);
    }
    acc
}

pub fn poly_derivative<R: Ring>(ring: &R, a: &Poly<R::El>) -> Poly<R::El> {
    if a.coeffs.len() <= 1 {
        return Poly::zero();
    }
    let out = a.coeffs[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| ring.mul(c, &ring.from_i64(i as i64 + 1)))
        .collect();
    poly_from(ring, out)
}

/// Quotient and remainder over a field; b must be nonzero.
pub fn poly_divrem<F: Field>(
    ring: &F,
    a: &Poly<F::El>,
    b: &Poly<F::El>,
) -> (Poly<F::El>, Poly<F::El>) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let db = b.degree().unwrap();
    let lc_inv = ring.inv(b.leading().unwrap());
    let mut rem = a.coeffs.clone();
    let mut quot = vec![ring.zero(); a.coeffs.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = ring.mul(rem.last().unwrap(), &lc_inv);
        if !ring.is_zero(&c) {
            quot[dr - db] = c.clone();
            for i in 0..=db {
                let t = ring.mul(&c, &b.coeffs[i]);
                rem[dr - db + i] = ring.sub(&rem[dr - db + i], &t);
            }
        }
        rem.pop();
        while rem.last().map(|e| ring.is_zero(e)).unwrap_or(false) {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
    }
    (poly_from(ring, quot), poly_from(ring, rem))
}

pub fn poly_monic<F: Field>(ring: &F, a: &Poly<F::El>) -> Poly<F::El> {
    match a.leading() {
        None => Poly::zero(),
        Some(lc) => {
            let inv = ring.inv(lc);
            poly_scale(ring, a, &inv)
        }
    }
}

/// Monic gcd over a field; both zero is an error.
pub fn poly_gcd<F: Field>(ring: &F, a: &Poly<F::El>, b: &Poly<F::El>) -> Result<Poly<F::El>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = poly_divrem(ring, &a, &b);
        a = b;
        b = r;
    }
    Ok(poly_monic(ring, &a))
}

/// Monic squarefree part: same root set, all roots simple.
///
/// Over a field of characteristic p the p-th-power branch (f with zero
/// derivative is g(x)^p over a perfect field) is handled for F_q by taking
/// p-th roots of coefficients.
pub fn squarefree_part_fq(
    ring: &FqCtx,
    f: &Poly<crate::fq::FqEl>,
) -> Result<Poly<crate::fq::FqEl>> {
    if f.is_zero() {
        return Err(Error::UndefinedInput);
    }
    if f.degree() == Some(0) {
        return Ok(poly_const(ring, ring.one()));
    }
    let d = poly_derivative(ring, f);
    if d.is_zero() {
        // f = g(x^p); p-th root of coefficients (q/p-th power), recurse
        let p = ring.p as usize;
        let root_exp = ring.size() / ring.p;
        let mut g = vec![];
        for (i, c) in f.coeffs.iter().enumerate() {
            if i % p == 0 {
                g.push(ring.pow_u(c, root_exp));
            } else {
                assert!(ring.is_zero(c));
            }
        }
        return squarefree_part_fq(ring, &poly_from(ring, g));
    }
    let g = poly_gcd(ring, f, &d)?;
    let (q, r) = poly_divrem(ring, f, &g);
    debug_assert!(r.is_zero());
    // q may still have non-simple content when gcd(f, f') hid a p-th power;
    // iterate once more through the squarefree part of g's p-power kernel.
    let base = poly_monic(ring, &q);
    if g.degree() == Some(0) {
        return Ok(base);
    }
    let rest = squarefree_part_fq(ring, &g)?;
    let merged = poly_mul(ring, &base, &rest);
    let d2 = poly_derivative(ring, &merged);
    if d2.is_zero() {
        return squarefree_part_fq(ring, &merged);
    }
    let g2 = poly_gcd(ring, &merged, &d2)?;
    let (q2, _) = poly_divrem(ring, &merged, &g2);
    Ok(poly_monic(ring, &q2))
}

/// Squarefree part over Q (via the integer subresultant gcd in `zpoly`).
pub fn squarefree_part_qq(
    f: &Poly<num_rational::BigRational>,
) -> Result<Poly<num_rational::BigRational>> {
    if f.is_zero() {
        return Err(Error::UndefinedInput);
    }
    let qq = QQ;
    if f.degree() == Some(0) {
        return Ok(poly_const(&qq, qq.one()));
    }
    let d = poly_derivative(&qq, f);
    let g = crate::zpoly::qpoly_gcd(f, &d)?;
    let (q, r) = poly_divrem(&qq, f, &g);
    debug_assert!(r.is_zero());
    Ok(poly_monic(&qq, &q))
}

/// gcd over Q, routed through the primitive integer subresultant sequence.
pub fn poly_gcd_qq(
    a: &Poly<num_rational::BigRational>,
    b: &Poly<num_rational::BigRational>,
) -> Result<Poly<num_rational::BigRational>> {
    crate::zpoly::qpoly_gcd(a, b)
}

/// Polynomial ring over R as a ring object, used as a Witt coefficient ring
/// in symbolic tests.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyRing<R: Ring>(pub R);

impl<R: Ring> Ring for PolyRing<R> {
    type El = Poly<R::El>;

    fn zero(&self) -> Self::El {
        Poly::zero()
    }
    fn one(&self) -> Self::El {
        poly_const(&self.0, self.0.one())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        poly_add(&self.0, a, b)
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        poly_sub(&self.0, a, b)
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        poly_neg(&self.0, a)
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        poly_mul(&self.0, a, b)
    }
    fn from_i64(&self, n: i64) -> Self::El {
        poly_const(&self.0, self.0.from_i64(n))
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.0.characteristic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_i, QQ};

    fn qp(v: &[i64]) -> Poly<num_rational::BigRational> {
        poly_from(&QQ, v.iter().map(|&n| rat_i(n)).collect())
    }

    #[test]
    fn gcd_examples() {
        // (x^3 - x, x^3 - 4x) -> x
        let g = poly_gcd(&QQ, &qp(&[0, -1, 0, 1]), &qp(&[0, -4, 0, 1])).unwrap();
        assert_eq!(g, qp(&[0, 1]));
        // (f, 1) -> 1
        let g = poly_gcd(&QQ, &qp(&[3, 1, 4]), &qp(&[1])).unwrap();
        assert_eq!(g, qp(&[1]));
        // (f, f) -> f monic
        let f = qp(&[2, 0, 4]);
        let g = poly_gcd(&QQ, &f, &f).unwrap();
        // monic: (4x^2 + 2)/4 = x^2 + 1/2
        assert_eq!(
            g.coeffs[0],
            num_rational::BigRational::new(1.into(), 2.into())
        );
        assert_eq!(g.coeffs[2], rat_i(1));
        assert!(poly_gcd(&QQ, &Poly::zero(), &Poly::zero()).is_err());
    }

    #[test]
    fn squarefree_examples() {
        // x^2(x-1) -> x(x-1)
        let f = qp(&[0, 0, -1, 1]); // x^3 - x^2 = x^2(x-1)
        let s = squarefree_part_qq(&f).unwrap();
        assert_eq!(s, qp(&[0, -1, 1]));
        // x^3 - x already squarefree
        let f = qp(&[0, -1, 0, 1]);
        assert_eq!(squarefree_part_qq(&f).unwrap(), f);
        // (x^2+1)^2 -> x^2+1
        let f = qp(&[1, 0, 2, 0, 1]);
        assert_eq!(squarefree_part_qq(&f).unwrap(), qp(&[1, 0, 1]));
    }

    #[test]
    fn squarefree_fq_ppower_branch() {
        let f5 = crate::fq::FqCtx::prime_field(5);
        // (x-1)^5 = x^5 - 1 over F_5, zero derivative
        let mut c = vec![f5.from_i64(-1)];
        c.extend(std::iter::repeat_n(f5.zero(), 4));
        c.push(f5.one());
        let f = poly_from(&f5, c);
        let s = squarefree_part_fq(&f5, &f).unwrap();
        assert_eq!(s, poly_from(&f5, vec![f5.from_i64(-1), f5.one()]));
    }

    #[test]
    fn divrem_roundtrip() {
        let a = qp(&[1, 2, 3, 4, 5]);
        let b = qp(&[7, 0, 2]);
        let (q, r) = poly_divrem(&QQ, &a, &b);
        let back = poly_add(&QQ, &poly_mul(&QQ, &q, &b), &r);
        assert_eq!(back, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
