//! Integer polynomial utilities: content, primitive parts, and the
//! subresultant remainder sequence used for gcds of rational polynomials
//! without coefficient blowup.

use crate::error::{Error, Result};
use crate::poly::{poly_from, poly_monic, Poly};
use crate::ring::QQ;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn ztrim(v: &mut ZPoly) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

pub fn zcontent(f: &ZPoly) -> BigInt {
    let mut c = BigInt::zero();
    for co in f {
        c = c.gcd(co);
    }
    c
}

pub fn zprimitive(f: &ZPoly) -> ZPoly {
    let c = zcontent(f);
    if c.is_zero() {
        return vec![];
    }
    let mut out: ZPoly = f.iter().map(|co| co / &c).collect();
    // normalize sign so the leading coefficient is positive
    if out.last().map(|l| l.is_negative()).unwrap_or(false) {
        for co in out.iter_mut() {
            *co = -co.clone();
        }
    }
    out
}

pub fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(&mut out);
    out
}

pub fn zscale(a: &ZPoly, c: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|x| x * c).collect();
    ztrim(&mut out);
    out
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
pub fn zpseudo_rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.len() - 1;
    let lc = b.last().unwrap().clone();
    let mut r = a.clone();
    ztrim(&mut r);
    let mut steps = if r.len() >= b.len() {
        r.len() - b.len() + 1
    } else {
        0
    };
    while r.len() > db && steps > 0 {
        let dr = r.len() - 1;
        let top = r.last().unwrap().clone();
        for co in r.iter_mut() {
            *co *= &lc;
        }
        for i in 0..=db {
            r[dr - db + i] -= &top * &b[i];
        }
        ztrim(&mut r);
        steps -= 1;
    }
    // remaining multiplications so the defining identity holds exactly
    for _ in 0..steps {
        for co in r.iter_mut() {
            *co *= &lc;
        }
    }
    ztrim(&mut r);
    r
}

/// Exact division by an integer scalar (panics if not exact).
fn zdiv_scalar(a: &ZPoly, c: &BigInt) -> ZPoly {
    a.iter()
        .map(|x| {
            let (q, r) = x.div_rem(c);
            assert!(
                r.is_zero(),
                "inexact scalar division in subresultant sequence"
            );
            q
        })
        .collect()
}

/// Primitive gcd of integer polynomials via the subresultant PRS.
pub fn zgcd(a: &ZPoly, b: &ZPoly) -> Result<ZPoly> {
    let mut a = a.clone();
    let mut b = b.clone();
    ztrim(&mut a);
    ztrim(&mut b);
    if a.is_empty() && b.is_empty() {
        return Err(Error::UndefinedGcd);
    }
    if a.is_empty() {
        return Ok(zprimitive(&b));
    }
    if b.is_empty() {
        return Ok(zprimitive(&a));
    }
    let mut f = zprimitive(&a);
    let mut g = zprimitive(&b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    let mut h = BigInt::one();
    let mut s = BigInt::one();
    loop {
        let delta = f.len() - g.len();
        let r = zpseudo_rem(&f, &g);
        if r.is_empty() {
            return Ok(zprimitive(&g));
        }
        if r.len() == 1 {
            return Ok(vec![BigInt::one()]);
        }
        f = g;
        let divisor = &s * num_traits::pow(h.clone(), delta);
        g = zdiv_scalar(&r, &divisor);
        s = f.last().unwrap().clone();
        // h = s^delta / h^(delta-1)
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(s.clone(), delta);
            let den = num_traits::pow(h.clone(), delta - 1);
            let (q, rr) = num.div_rem(&den);
            assert!(rr.is_zero());
            q
        };
    }
}

/// Clear denominators: returns the primitive integer polynomial with the
/// same roots.
pub fn qpoly_to_primitive_z(f: &Poly<BigRational>) -> ZPoly {
    if f.is_zero() {
        return vec![];
    }
    let mut lcm = BigInt::one();
    for c in &f.coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: ZPoly = f
        .coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    zprimitive(&ints)
}

pub fn zpoly_to_q(f: &ZPoly) -> Poly<BigRational> {
    poly_from(
        &QQ,
        f.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

/// Monic gcd of rational polynomials via the subresultant route.
pub fn qpoly_gcd(a: &Poly<BigRational>, b: &Poly<BigRational>) -> Result<Poly<BigRational>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    if a.is_zero() {
        return Ok(poly_monic(&QQ, b));
    }
    if b.is_zero() {
        return Ok(poly_monic(&QQ, a));
    }
    let za = qpoly_to_primitive_z(a);
    let zb = qpoly_to_primitive_z(b);
    let g = zgcd(&za, &zb)?;
    Ok(poly_monic(&QQ, &zpoly_to_q(&g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_i;

    fn zp(v: &[i64]) -> ZPoly {
        let mut out: ZPoly = v.iter().map(|&n| BigInt::from(n)).collect();
        ztrim(&mut out);
        out
    }

    #[test]
    fn subresultant_gcd() {
        // (x^3-x)(x+2) and (x^3-x)(x-5)
        let common = zp(&[0, -1, 0, 1]);
        let a = zmul(&common, &zp(&[2, 1]));
        let b = zmul(&common, &zp(&[-5, 1]));
        assert_eq!(zgcd(&a, &b).unwrap(), common);
        // coprime
        assert_eq!(zgcd(&zp(&[1, 1]), &zp(&[2, 1])).unwrap(), zp(&[1]));
    }

    #[test]
    fn pseudo_rem_identity() {
        let a = zp(&[3, 1, 4, 1, 5]);
        let b = zp(&[2, 7, 3]);
        let r = zpseudo_rem(&a, &b);
        // lc(b)^(4-2+1) * a = q*b + r for some q: check r = lc^3*a mod b over Q
        let qq = QQ;
        let aq = crate::zpoly::zpoly_to_q(&zscale(&a, &BigInt::from(27)));
        let bq = crate::zpoly::zpoly_to_q(&b);
        let (_, rem) = crate::poly::poly_divrem(&qq, &aq, &bq);
        assert_eq!(crate::zpoly::zpoly_to_q(&r), rem);
        let _ = rat_i(0);
    }
}
