//! Weierstrass models: invariants, minimality at p >= 5, reduction types,
//! the short-form group law, division polynomials, and brute-force torsion
//! enumeration over small finite fields.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fq::{FqCtx, FqEl};
use crate::poly::{
    poly_derivative, poly_eval, poly_from, poly_gcd, poly_mul, poly_pow, poly_scale, poly_sub, Poly,
};
use crate::ring::{valuation_p, Field, Ring, QQ};

/// A curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a field given
/// by a ring handle. The handle is stored so that finite-field curves carry
/// their modulus with them.
#[derive(Clone, Debug)]
pub struct Curve<F: Field> {
    pub ring: F,
    pub a1: F::El,
    pub a2: F::El,
    pub a3: F::El,
    pub a4: F::El,
    pub a6: F::El,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Invariants<E> {
    pub b2: E,
    pub b4: E,
    pub b6: E,
    pub b8: E,
    pub c4: E,
    pub c6: E,
    pub disc: E,
    /// None when the curve is singular (disc = 0).
    pub j: Option<E>,
}

impl<F: Field> Curve<F> {
    pub fn new(ring: F, a1: F::El, a2: F::El, a3: F::El, a4: F::El, a6: F::El) -> Self {
        Curve {
            ring,
            a1,
            a2,
            a3,
            a4,
            a6,
        }
    }

    /// Short form y^2 = x^3 + a x + b.
    pub fn short(ring: F, a: F::El, b: F::El) -> Self {
        let z = ring.zero();
        Curve {
            a1: z.clone(),
            a2: z.clone(),
            a3: z.clone(),
            a4: a,
            a6: b,
            ring,
        }
    }

    pub fn invariants(&self) -> Invariants<F::El> {
        let r = &self.ring;
        let n = |k: i64| r.from_i64(k);
        let b2 = r.add(&r.mul(&self.a1, &self.a1), &r.mul(&n(4), &self.a2));
        let b4 = r.add(&r.mul(&n(2), &self.a4), &r.mul(&self.a1, &self.a3));
        let b6 = r.add(&r.mul(&self.a3, &self.a3), &r.mul(&n(4), &self.a6));
        let b8 = {
            // a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
            let t1 = r.mul(&r.mul(&self.a1, &self.a1), &self.a6);
            let t2 = r.mul(&n(4), &r.mul(&self.a2, &self.a6));
            let t3 = r.mul(&self.a1, &r.mul(&self.a3, &self.a4));
            let t4 = r.mul(&self.a2, &r.mul(&self.a3, &self.a3));
            let t5 = r.mul(&self.a4, &self.a4);
            r.sub(&r.add(&r.sub(&r.add(&t1, &t2), &t3), &t4), &t5)
        };
        let c4 = r.sub(&r.mul(&b2, &b2), &r.mul(&n(24), &b4));
        let c6 = {
            // -b2^3 + 36 b2 b4 - 216 b6
            let t1 = r.mul(&b2, &r.mul(&b2, &b2));
            let t2 = r.mul(&n(36), &r.mul(&b2, &b4));
            let t3 = r.mul(&n(216), &b6);
            r.sub(&r.sub(&t2, &t1), &t3)
        };
        let disc = {
            // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
            let t1 = r.mul(&r.mul(&b2, &b2), &b8);
            let t2 = r.mul(&n(8), &r.mul(&b4, &r.mul(&b4, &b4)));
            let t3 = r.mul(&n(27), &r.mul(&b6, &b6));
            let t4 = r.mul(&n(9), &r.mul(&b2, &r.mul(&b4, &b6)));
            r.sub(&t4, &r.add(&t1, &r.add(&t2, &t3)))
        };
        let j = if r.is_zero(&disc) {
            None
        } else {
            Some(r.div(&r.mul(&c4, &r.mul(&c4, &c4)), &disc))
        };
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.ring.is_zero(&self.invariants().disc)
    }

    /// The isomorphic short model y^2 = x^3 + a x + b with the same c4, c6,
    /// disc (valid away from characteristic 2 and 3): a = -c4/48, b = -c6/864.
    pub fn short_form(&self) -> Result<(F::El, F::El)> {
        let ch = self.ring.characteristic();
        if ch == 2 || ch == 3 {
            return Err(Error::UnsupportedPrime(ch));
        }
        let inv = self.invariants();
        let r = &self.ring;
        let a = r.neg(&r.div(&inv.c4, &r.from_i64(48)));
        let b = r.neg(&r.div(&inv.c6, &r.from_i64(864)));
        Ok((a, b))
    }
}

/// The right-hand cubic x^3 + a x + b of a short model, as a polynomial.
pub fn rhs_cubic<F: Field>(ring: &F, a: &F::El, b: &F::El) -> Poly<F::El> {
    poly_from(ring, vec![b.clone(), a.clone(), ring.zero(), ring.one()])
}

// ---------------------------------------------------------------------------
// Reduction theory over Q at p >= 5
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionTag {
    GoodOrdinary,
    GoodSupersingular,
    Multiplicative,
    Additive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionInfo {
    pub tag: ReductionTag,
    /// Valuations on the minimal model; None encodes +infinity.
    pub v_disc: Option<i64>,
    pub v_c4: Option<i64>,
    pub v_j: Option<i64>,
    /// Minimal short model coefficients.
    pub min_a: BigRational,
    pub min_b: BigRational,
}

fn val_geq(v: Option<i64>, bound: i64) -> bool {
    v.is_none_or(|x| x >= bound)
}

/// A p-minimal short model y^2 = x^3 + a x + b, obtained from the short form
/// by u = p^e rescalings until v_p(a) < 4 or v_p(b) < 6 (equivalently
/// v_p(c4) < 4 or v_p(disc) < 12).
pub fn minimal_at_p(curve: &Curve<QQ>, p: u64) -> Result<Curve<QQ>> {
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    if curve.is_singular() {
        return Err(Error::SingularCurve);
    }
    let (mut a, mut b) = curve.short_form()?;
    let p4 = rat_pow_p(p, 4);
    let p6 = rat_pow_p(p, 6);
    // make p-integral
    while valuation_p(&a, p)?.is_some_and(|v| v < 0) || valuation_p(&b, p)?.is_some_and(|v| v < 0) {
        a *= &p4;
        b *= &p6;
    }
    // reduce while non-minimal
    while val_geq(valuation_p(&a, p)?, 4) && val_geq(valuation_p(&b, p)?, 6) {
        a /= &p4;
        b /= &p6;
    }
    Ok(Curve::short(QQ, a, b))
}

fn rat_pow_p(p: u64, e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(p).pow(e))
}

/// Classify the reduction of a nonsingular curve over Q at a prime p >= 5.
pub fn reduction_type(curve: &Curve<QQ>, p: u64) -> Result<ReductionInfo> {
    let min = minimal_at_p(curve, p)?;
    let inv = min.invariants();
    let v_disc = valuation_p(&inv.disc, p)?;
    let v_c4 = valuation_p(&inv.c4, p)?;
    let v_j = match &inv.j {
        Some(j) if !j.is_zero() => valuation_p(j, p)?,
        Some(_) => None,
        None => return Err(Error::SingularCurve),
    };
    let tag = if v_disc == Some(0) {
        let (fp, a, b) = reduce_short_mod_p(&min, p)?;
        if is_supersingular(&fp, &a, &b)? {
            ReductionTag::GoodSupersingular
        } else {
            ReductionTag::GoodOrdinary
        }
    } else if v_c4 == Some(0) {
        ReductionTag::Multiplicative
    } else {
        ReductionTag::Additive
    };
    Ok(ReductionInfo {
        tag,
        v_disc,
        v_c4,
        v_j,
        min_a: min.a4.clone(),
        min_b: min.a6.clone(),
    })
}

/// Reduce a p-integral rational to F_p.
pub fn fp_reduce(fp: &FqCtx, r: &BigRational) -> Result<FqEl> {
    let p = BigInt::from(fp.p);
    let den = r.denom();
    if (den % &p).is_zero() {
        return Err(Error::PreconditionViolated(
            "rational is not p-integral".into(),
        ));
    }
    let num_res = mod_residue(r.numer(), fp.p);
    let den_res = mod_residue(den, fp.p);
    Ok(fp.div(&fp.from_residue(num_res), &fp.from_residue(den_res)))
}

fn mod_residue(n: &BigInt, p: u64) -> u64 {
    n.mod_floor_u64(p)
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

/// Reduce a short model over Q (assumed p-minimal and p-integral) mod p.
pub fn reduce_short_mod_p(curve: &Curve<QQ>, p: u64) -> Result<(FqCtx, FqEl, FqEl)> {
    let fp = FqCtx::prime_field(p);
    let a = fp_reduce(&fp, &curve.a4)?;
    let b = fp_reduce(&fp, &curve.a6)?;
    Ok((fp, a, b))
}

/// Hasse-invariant test: y^2 = x^3 + a x + b over F_p (p >= 5) is
/// supersingular iff the coefficient of x^(p-1) in (x^3+ax+b)^((p-1)/2)
/// vanishes.
pub fn is_supersingular(fp: &FqCtx, a: &FqEl, b: &FqEl) -> Result<bool> {
    if fp.m != 1 || fp.p < 5 {
        return Err(Error::UnsupportedPrime(fp.p));
    }
    let f = rhs_cubic(fp, a, b);
    let d = poly_gcd(fp, &f, &poly_derivative(fp, &f))?;
    if d.degree() != Some(0) {
        return Err(Error::SingularCurve);
    }
    let e = (fp.p - 1) / 2;
    let g = poly_pow(fp, &f, e as u32);
    let coeff = g
        .coeffs
        .get((fp.p - 1) as usize)
        .cloned()
        .unwrap_or_default();
    Ok(fp.is_zero(&coeff))
}

// ---------------------------------------------------------------------------
// Group law on short models
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

pub fn is_on_curve<F: Field>(ring: &F, a: &F::El, b: &F::El, pt: &Point<F::El>) -> bool {
    match pt {
        Point::Infinity => true,
        Point::Affine(x, y) => {
            let lhs = ring.mul(y, y);
            let rhs = poly_eval(ring, &rhs_cubic(ring, a, b), x);
            lhs == rhs
        }
    }
}

pub fn point_neg<F: Field>(ring: &F, pt: &Point<F::El>) -> Point<F::El> {
    match pt {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(x.clone(), ring.neg(y)),
    }
}

pub fn point_add<F: Field>(
    ring: &F,
    a: &F::El,
    b: &F::El,
    p1: &Point<F::El>,
    p2: &Point<F::El>,
) -> Result<Point<F::El>> {
    if !is_on_curve(ring, a, b, p1) || !is_on_curve(ring, a, b, p2) {
        return Err(Error::PointNotOnCurve);
    }
    Ok(point_add_unchecked(ring, a, p1, p2))
}

fn point_add_unchecked<F: Field>(
    ring: &F,
    a: &F::El,
    p1: &Point<F::El>,
    p2: &Point<F::El>,
) -> Point<F::El> {
    let (x1, y1) = match p1 {
        Point::Infinity => return p2.clone(),
        Point::Affine(x, y) => (x, y),
    };
    let (x2, y2) = match p2 {
        Point::Infinity => return p1.clone(),
        Point::Affine(x, y) => (x, y),
    };
    let lambda = if x1 == x2 {
        if *y1 == ring.neg(y2) {
            return Point::Infinity;
        }
        // tangent slope (3 x1^2 + a) / (2 y1)
        let num = ring.add(&ring.mul(&ring.from_i64(3), &ring.mul(x1, x1)), a);
        ring.div(&num, &ring.mul(&ring.from_i64(2), y1))
    } else {
        ring.div(&ring.sub(y2, y1), &ring.sub(x2, x1))
    };
    let x3 = ring.sub(&ring.sub(&ring.mul(&lambda, &lambda), x1), x2);
    let y3 = ring.sub(&ring.mul(&lambda, &ring.sub(x1, &x3)), y1);
    Point::Affine(x3, y3)
}

pub fn point_mul_n<F: Field>(
    ring: &F,
    a: &F::El,
    b: &F::El,
    n: u64,
    pt: &Point<F::El>,
) -> Result<Point<F::El>> {
    if !is_on_curve(ring, a, b, pt) {
        return Err(Error::PointNotOnCurve);
    }
    let mut acc = Point::Infinity;
    let mut base = pt.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = point_add_unchecked(ring, a, &acc, &base);
        }
        base = point_add_unchecked(ring, a, &base, &base);
        k >>= 1;
    }
    Ok(acc)
}

/// Order of a point if it is at most `bound`, by repeated addition.
pub fn point_order_leq<F: Field>(
    ring: &F,
    a: &F::El,
    pt: &Point<F::El>,
    bound: u64,
) -> Option<u64> {
    if *pt == Point::Infinity {
        return Some(1);
    }
    let mut acc = pt.clone();
    let mut k = 1;
    while k < bound {
        acc = point_add_unchecked(ring, a, &acc, pt);
        k += 1;
        if acc == Point::Infinity {
            return Some(k);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Division polynomials
// ---------------------------------------------------------------------------

/// The x-polynomials P_n with psi_n = P_n for n odd and psi_n = y P_n for
/// n even, on y^2 = x^3 + a x + b. Returns P_0 .. P_nmax.
pub fn division_poly_table<F: Field>(
    ring: &F,
    a: &F::El,
    b: &F::El,
    nmax: usize,
) -> Vec<Poly<F::El>> {
    let f = rhs_cubic(ring, a, b);
    let f2 = poly_mul(ring, &f, &f);
    let mut table: Vec<Poly<F::El>> = Vec::with_capacity(nmax + 1);
    let c = |k: i64| poly_from(ring, vec![ring.from_i64(k)]);
    table.push(Poly::zero()); // P_0
    if nmax >= 1 {
        table.push(c(1));
    }
    if nmax >= 2 {
        table.push(c(2));
    }
    if nmax >= 3 {
        // 3x^4 + 6a x^2 + 12b x - a^2
        let p3 = poly_from(
            ring,
            vec![
                ring.neg(&ring.mul(a, a)),
                ring.mul(&ring.from_i64(12), b),
                ring.mul(&ring.from_i64(6), a),
                ring.zero(),
                ring.from_i64(3),
            ],
        );
        table.push(p3);
    }
    if nmax >= 4 {
        // 4(x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
        let a2 = ring.mul(a, a);
        let p4 = poly_from(
            ring,
            vec![
                ring.neg(&ring.add(
                    &ring.mul(&ring.from_i64(8), &ring.mul(b, b)),
                    &ring.mul(&a2, a),
                )),
                ring.neg(&ring.mul(&ring.from_i64(4), &ring.mul(a, b))),
                ring.neg(&ring.mul(&ring.from_i64(5), &a2)),
                ring.mul(&ring.from_i64(20), b),
                ring.mul(&ring.from_i64(5), a),
                ring.zero(),
                ring.one(),
            ],
        );
        table.push(poly_scale(ring, &p4, &ring.from_i64(4)));
    }
    let half = // 1/2 exists away from characteristic 2
        inv_from_i64(ring, 2);
    for n in 5..=nmax {
        let m = n / 2;
        let next = if n % 2 == 1 {
            // P_{2m+1} = f^2 P_{m+2} P_m^3 - P_{m-1} P_{m+1}^3 (m even)
            //          = P_{m+2} P_m^3 - f^2 P_{m-1} P_{m+1}^3 (m odd)
            let t1 = poly_mul(ring, &table[m + 2], &poly_pow(ring, &table[m], 3));
            let t2 = poly_mul(ring, &table[m - 1], &poly_pow(ring, &table[m + 1], 3));
            if m % 2 == 0 {
                poly_sub(ring, &poly_mul(ring, &f2, &t1), &t2)
            } else {
                poly_sub(ring, &t1, &poly_mul(ring, &f2, &t2))
            }
        } else {
            // P_{2m} = P_m (P_{m+2} P_{m-1}^2 - P_{m-2} P_{m+1}^2) / 2
            let t1 = poly_mul(ring, &table[m + 2], &poly_pow(ring, &table[m - 1], 2));
            let t2 = poly_mul(ring, &table[m - 2], &poly_pow(ring, &table[m + 1], 2));
            let inner = poly_sub(ring, &t1, &t2);
            poly_scale(ring, &poly_mul(ring, &table[m], &inner), &half)
        };
        table.push(next);
    }
    table
}

fn inv_from_i64<F: Field>(ring: &F, n: i64) -> F::El {
    ring.inv(&ring.from_i64(n))
}

/// A polynomial in x whose roots over the algebraic closure are exactly the
/// x-coordinates of the affine points of order dividing n. For odd n this is
/// psi_n itself; for even n the 2-torsion cubic appears as a factor.
pub fn division_poly_x<F: Field>(ring: &F, a: &F::El, b: &F::El, n: usize) -> Poly<F::El> {
    assert!(n >= 2, "division_poly_x needs n >= 2");
    let table = division_poly_table(ring, a, b, n);
    if n % 2 == 1 {
        table[n].clone()
    } else {
        poly_mul(ring, &rhs_cubic(ring, a, b), &table[n])
    }
}

// ---------------------------------------------------------------------------
// Brute-force torsion enumeration over prime fields and their extensions
// ---------------------------------------------------------------------------

/// An x-coordinate in the algebraic closure of F_p, keyed by its monic
/// minimal polynomial over F_p (coefficients lowest first).
pub type XKey = Vec<u64>;

#[derive(Clone, Debug)]
pub struct TorsionTable {
    pub p: u64,
    /// exact order -> sorted minimal polynomials of x-coordinates.
    pub by_order: BTreeMap<u64, Vec<XKey>>,
    /// Orders n (coprime to p) for which the x-coordinate count matches the
    /// full n-torsion; enumeration depth may truncate higher-degree points.
    pub complete_orders: Vec<u64>,
    pub complete: bool,
    pub max_field_degree: usize,
}

/// Default cap on enumerated field sizes; extensions with p^m beyond this
/// are skipped and coverage is reported as partial.
pub const ENUM_FIELD_CAP: u64 = 200_000;

/// Projective point (X : Y : Z); Z = 0 encodes the origin. Used for
/// inversion-free order checks during enumeration.
type ProjPt = (FqEl, FqEl, FqEl);

fn proj_infinity(ext: &FqCtx) -> ProjPt {
    (ext.zero(), ext.one(), ext.zero())
}

fn proj_double(ext: &FqCtx, a: &FqEl, p1: &ProjPt) -> ProjPt {
    let (x1, y1, z1) = p1;
    if ext.is_zero(z1) || ext.is_zero(y1) {
        return proj_infinity(ext);
    }
    let w = ext.add(
        &ext.mul(a, &ext.mul(z1, z1)),
        &ext.mul(&ext.from_i64(3), &ext.mul(x1, x1)),
    );
    let s = ext.mul(y1, z1);
    let b = ext.mul(&ext.mul(x1, y1), &s);
    let h = ext.sub(&ext.mul(&w, &w), &ext.mul(&ext.from_i64(8), &b));
    let x3 = ext.mul(&ext.from_i64(2), &ext.mul(&h, &s));
    let ss = ext.mul(&s, &s);
    let y3 = ext.sub(
        &ext.mul(&w, &ext.sub(&ext.mul(&ext.from_i64(4), &b), &h)),
        &ext.mul(&ext.from_i64(8), &ext.mul(&ext.mul(y1, y1), &ss)),
    );
    let z3 = ext.mul(&ext.from_i64(8), &ext.mul(&ss, &s));
    (x3, y3, z3)
}

fn proj_add(ext: &FqCtx, a: &FqEl, p1: &ProjPt, p2: &ProjPt) -> ProjPt {
    let (x1, y1, z1) = p1;
    let (x2, y2, z2) = p2;
    if ext.is_zero(z1) {
        return p2.clone();
    }
    if ext.is_zero(z2) {
        return p1.clone();
    }
    let u = ext.sub(&ext.mul(y2, z1), &ext.mul(y1, z2));
    let v = ext.sub(&ext.mul(x2, z1), &ext.mul(x1, z2));
    if ext.is_zero(&v) {
        return if ext.is_zero(&u) {
            proj_double(ext, a, p1)
        } else {
            proj_infinity(ext)
        };
    }
    let vv = ext.mul(&v, &v);
    let vvv = ext.mul(&vv, &v);
    let z1z2 = ext.mul(z1, z2);
    let r = ext.mul(&vv, &ext.mul(x1, z2));
    let aa = ext.sub(
        &ext.sub(&ext.mul(&ext.mul(&u, &u), &z1z2), &vvv),
        &ext.mul(&ext.from_i64(2), &r),
    );
    let x3 = ext.mul(&v, &aa);
    let y3 = ext.sub(
        &ext.mul(&u, &ext.sub(&r, &aa)),
        &ext.mul(&vvv, &ext.mul(y1, z2)),
    );
    let z3 = ext.mul(&vvv, &z1z2);
    (x3, y3, z3)
}

/// Exact order of (x, y) when it is at most `bound`, computed projectively.
fn order_leq_proj(ext: &FqCtx, a: &FqEl, x: &FqEl, y: &FqEl, bound: u64) -> Option<u64> {
    let base = (x.clone(), y.clone(), ext.one());
    let mut acc = base.clone();
    for k in 2..=bound {
        acc = proj_add(ext, a, &acc, &base);
        if ext.is_zero(&acc.2) {
            return Some(k);
        }
    }
    None
}

/// table[el_index(v)] = el_index(sqrt(v)) for every square v, u32::MAX
/// otherwise; one pass of squarings over the field.
fn sqrt_index_table(ext: &FqCtx) -> Vec<u32> {
    let size = ext.size() as usize;
    let mut table = vec![u32::MAX; size];
    for i in 0..size {
        let z = ext.el_by_index(i as u64);
        let sq = ext.el_index(&ext.mul(&z, &z)) as usize;
        if table[sq] == u32::MAX {
            table[sq] = i as u32;
        }
    }
    table
}

/// Enumerate E(F_{p^m}) for m up to `degree_cap` (subject to the field-size
/// cap) on y^2 = x^3 + a x + b over F_p, recording the exact order of every
/// point of order <= n_bound and grouping x-coordinates (as minimal
/// polynomials over F_p) by exact order.
pub fn torsion_enumerate_ff(
    fp: &FqCtx,
    a: &FqEl,
    b: &FqEl,
    n_bound: u64,
    degree_cap: usize,
) -> Result<TorsionTable> {
    if fp.m != 1 {
        return Err(Error::UnsupportedPrime(fp.p));
    }
    let p = fp.p;
    let mut by_order: BTreeMap<u64, Vec<XKey>> = BTreeMap::new();
    let mut max_deg = 0usize;
    for m in 1..=degree_cap {
        if pow_exceeds(p, m, ENUM_FIELD_CAP) {
            break;
        }
        max_deg = m;
        let ext = if m == 1 {
            fp.clone()
        } else {
            FqCtx::extension(p, m)
        };
        let ea = embed_base(&ext, a);
        let eb = embed_base(&ext, b);
        let f = rhs_cubic(&ext, &ea, &eb);
        let sqrts = sqrt_index_table(&ext);
        let size = ext.size();
        for i in 0..size {
            let x = ext.el_by_index(i);
            let fx = poly_eval(&ext, &f, &x);
            let yi = sqrts[ext.el_index(&fx) as usize];
            if yi == u32::MAX {
                continue;
            }
            let y = ext.el_by_index(yi as u64);
            let order = if ext.is_zero(&y) {
                Some(2)
            } else {
                order_leq_proj(&ext, &ea, &x, &y, n_bound)
            };
            if let Some(order) = order {
                if order >= 2 && order <= n_bound {
                    let key = ext.min_poly(&x);
                    let entry = by_order.entry(order).or_default();
                    if !entry.contains(&key) {
                        entry.push(key);
                    }
                }
            }
        }
    }
    for v in by_order.values_mut() {
        v.sort();
    }
    // completeness per order (coprime to p): compare against the exact
    // x-coordinate count of the full n-torsion.
    let mut complete_orders = Vec::new();
    let mut complete = true;
    for n in 2..=n_bound {
        if n % p == 0 {
            complete = false;
            continue;
        }
        let found: u64 = (2..=n)
            .filter(|d| n % d == 0)
            .flat_map(|d| by_order.get(&d))
            .flatten()
            .map(|k| (k.len() - 1) as u64)
            .sum();
        let expected = if n % 2 == 1 {
            (n * n - 1) / 2
        } else {
            (n * n + 2) / 2
        };
        if found == expected {
            complete_orders.push(n);
        } else {
            complete = false;
        }
    }
    Ok(TorsionTable {
        p,
        by_order,
        complete_orders,
        complete,
        max_field_degree: max_deg,
    })
}

fn pow_exceeds(p: u64, m: usize, cap: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..m {
        match acc.checked_mul(p) {
            Some(v) if v <= cap => acc = v,
            _ => return true,
        }
    }
    false
}

/// Embed an element of F_p into an extension of F_p (constant coordinate).
pub fn embed_base(ext: &FqCtx, a: &FqEl) -> FqEl {
    ext.from_residue(a.first().copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_i;

    fn qcurve(a: i64, b: i64) -> Curve<QQ> {
        Curve::short(QQ, rat_i(a), rat_i(b))
    }

    #[test]
    fn invariant_examples() {
        let inv = qcurve(-1, 0).invariants();
        assert_eq!(inv.c4, rat_i(48));
        assert_eq!(inv.c6, rat_i(0));
        assert_eq!(inv.disc, rat_i(64));
        assert_eq!(inv.j, Some(rat_i(1728)));

        let inv = qcurve(0, 1).invariants();
        assert_eq!(inv.c4, rat_i(0));
        assert_eq!(inv.disc, rat_i(-432));
        assert_eq!(inv.j, Some(rat_i(0)));
    }

    #[test]
    fn invariant_identity() {
        for (a1, a2, a3, a4, a6) in [(1, 0, 0, 0, 3), (0, 1, 1, -2, 5), (1, 1, 1, 1, 1)] {
            let c = Curve::new(QQ, rat_i(a1), rat_i(a2), rat_i(a3), rat_i(a4), rat_i(a6));
            let inv = c.invariants();
            let lhs = &inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6;
            assert_eq!(lhs, rat_i(1728) * &inv.disc);
        }
    }

    #[test]
    fn long_model_invariants() {
        // y^2 + xy = x^3 + 11^11: c4 = 1, disc = -a6(1 + 432 a6)
        let a6 = BigRational::from_integer(BigInt::from(11).pow(11));
        let c = Curve::new(QQ, rat_i(1), rat_i(0), rat_i(0), rat_i(0), a6.clone());
        let inv = c.invariants();
        assert_eq!(inv.c4, rat_i(1));
        assert_eq!(inv.disc, -&a6 * (rat_i(1) + rat_i(432) * &a6));
    }

    #[test]
    fn minimal_model_examples() {
        let m = minimal_at_p(&qcurve(-625, 0), 5).unwrap();
        assert_eq!((m.a4, m.a6), (rat_i(-1), rat_i(0)));
        let m = minimal_at_p(&qcurve(-1, 0), 7).unwrap();
        assert_eq!((m.a4, m.a6), (rat_i(-1), rat_i(0)));
        // non-minimal b: v_11(b) = 11 >= 6 with a = 0 drops to 5
        let b = BigRational::from_integer(BigInt::from(11).pow(11));
        let m = minimal_at_p(&Curve::short(QQ, rat_i(0), b), 11).unwrap();
        assert_eq!(m.a6, BigRational::from_integer(BigInt::from(11).pow(5)));
    }

    #[test]
    fn reduction_types() {
        assert_eq!(
            reduction_type(&qcurve(-1, 0), 5).unwrap().tag,
            ReductionTag::GoodOrdinary
        );
        assert_eq!(
            reduction_type(&qcurve(0, 1), 5).unwrap().tag,
            ReductionTag::GoodSupersingular
        );
        let a6 = BigRational::from_integer(BigInt::from(11).pow(11));
        let c = Curve::new(QQ, rat_i(1), rat_i(0), rat_i(0), rat_i(0), a6);
        let info = reduction_type(&c, 11).unwrap();
        assert_eq!(info.tag, ReductionTag::Multiplicative);
        assert_eq!(info.v_disc, Some(11));
        assert_eq!(info.v_c4, Some(0));
        // additive: y^2 = x^3 + 5
        assert_eq!(
            reduction_type(&qcurve(0, 5), 5).unwrap().tag,
            ReductionTag::Additive
        );
    }

    #[test]
    fn hasse_examples() {
        let f5 = FqCtx::prime_field(5);
        let one = f5.one();
        let zero = f5.zero();
        assert!(is_supersingular(&f5, &zero, &one).unwrap());
        assert!(!is_supersingular(&f5, &one, &zero).unwrap());
        let f7 = FqCtx::prime_field(7);
        assert!(!is_supersingular(&f7, &f7.zero(), &f7.one()).unwrap());
    }

    #[test]
    fn group_law_examples() {
        // (0,1) on y^2 = x^3 + 1 has order 3
        let a = rat_i(0);
        let b = rat_i(1);
        let p = Point::Affine(rat_i(0), rat_i(1));
        let r = point_mul_n(&QQ, &a, &b, 3, &p).unwrap();
        assert_eq!(r, Point::Infinity);
        assert_ne!(point_mul_n(&QQ, &a, &b, 2, &p).unwrap(), Point::Infinity);
        // 2-torsion
        let a = rat_i(-1);
        let b = rat_i(0);
        let t = Point::Affine(rat_i(1), rat_i(0));
        assert_eq!(point_mul_n(&QQ, &a, &b, 2, &t).unwrap(), Point::Infinity);
        // identity
        let s = point_add(&QQ, &a, &b, &t, &Point::Infinity).unwrap();
        assert_eq!(s, t);
        // off-curve rejected
        assert!(point_add(&QQ, &a, &b, &Point::Affine(rat_i(2), rat_i(2)), &t).is_err());
    }

    #[test]
    fn division_poly_examples() {
        // n = 3 on y^2 = x^3 + a x + b: 3x^4 + 6a x^2 + 12b x - a^2
        let d = division_poly_x(&QQ, &rat_i(0), &rat_i(1), 3);
        assert_eq!(
            d.coeffs,
            vec![rat_i(0), rat_i(12), rat_i(0), rat_i(0), rat_i(3)]
        );
        // n = 2 on y^2 = x^3 - x: roots are the 2-torsion cubic
        let d = division_poly_x(&QQ, &rat_i(-1), &rat_i(0), 2);
        assert_eq!(d.degree(), Some(3));
        for r in [0i64, 1, -1] {
            assert!(poly_eval(&QQ, &d, &rat_i(r)).is_zero());
        }
    }

    #[test]
    fn enumerate_two_torsion_mod_5() {
        let f5 = FqCtx::prime_field(5);
        // y^2 = x^3 + 1: x^3+1 = (x+1)(x^2-x+1) mod 5
        let t = torsion_enumerate_ff(&f5, &f5.zero(), &f5.one(), 2, 4).unwrap();
        let xs = t.by_order.get(&2).unwrap();
        assert_eq!(xs.len(), 2);
        assert!(xs.contains(&vec![1, 1])); // x + 1, i.e. x = 4
        assert!(xs.iter().any(|k| k.len() == 3));
        assert!(t.complete_orders.contains(&2));

        // y^2 = x^3 + x: x(x-2)(x-3) mod 5 -> three rational roots
        let t = torsion_enumerate_ff(&f5, &f5.one(), &f5.zero(), 2, 4).unwrap();
        let xs = t.by_order.get(&2).unwrap();
        assert_eq!(xs.len(), 3);
        assert!(xs.iter().all(|k| k.len() == 2));
    }

    #[test]
    fn projective_order_matches_affine() {
        for ext in [FqCtx::prime_field(7), FqCtx::extension(5, 2)] {
            let a = ext.from_i64(2);
            let b = ext.from_i64(3);
            let f = rhs_cubic(&ext, &a, &b);
            for i in 0..ext.size() {
                let x = ext.el_by_index(i);
                let fx = poly_eval(&ext, &f, &x);
                let Some(y) = ext.sqrt(&fx) else { continue };
                let pt = Point::Affine(x.clone(), y.clone());
                let affine = point_order_leq(&ext, &a, &pt, 12);
                let proj = if ext.is_zero(&y) {
                    Some(2)
                } else {
                    order_leq_proj(&ext, &a, &x, &y, 12)
                };
                assert_eq!(affine, proj, "order mismatch at x index {i}");
            }
        }
    }
}
