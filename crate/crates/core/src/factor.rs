//! Polynomial factorization: distinct/equal-degree splitting over F_q,
//! root enumeration in small extensions, and Zassenhaus factorization over Z
//! (modular factorization, Hensel lifting, subset recombination).

use crate::error::{Error, Result};
use crate::fq::{FqCtx, FqEl};
use crate::poly::{
    poly_const, poly_divrem, poly_from, poly_gcd, poly_monic, poly_mul, poly_sub, poly_x, Poly,
};
use crate::ring::{Field, Ring, QQ};
use crate::zpoly::{qpoly_to_primitive_z, zpoly_to_q, ztrim, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type FqPoly = Poly<FqEl>;

/// a^e mod f over F_q.
fn pow_mod(ring: &FqCtx, a: &FqPoly, mut e: u64, f: &FqPoly) -> FqPoly {
    let mut base = poly_divrem(ring, a, f).1;
    let mut acc = poly_const(ring, ring.one());
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_divrem(ring, &poly_mul(ring, &acc, &base), f).1;
        }
        base = poly_divrem(ring, &poly_mul(ring, &base, &base), f).1;
        e >>= 1;
    }
    acc
}

/// Distinct-degree decomposition of a squarefree monic f: list of
/// (degree d, product of all irreducible factors of degree d).
pub fn distinct_degree(ring: &FqCtx, f: &FqPoly) -> Vec<(usize, FqPoly)> {
    let q = ring.size();
    let mut out = vec![];
    let mut rest = f.clone();
    let mut h = poly_x(ring);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 1 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            // remainder is irreducible
            out.push((rest.degree().unwrap(), rest.clone()));
            break;
        }
        h = pow_mod(ring, &h, q, &rest);
        let g = poly_gcd(ring, &poly_sub(ring, &h, &poly_x(ring)), &rest).unwrap();
        if g.degree().unwrap_or(0) >= 1 {
            out.push((d, g.clone()));
            let (qt, r) = poly_divrem(ring, &rest, &g);
            debug_assert!(r.is_zero());
            rest = qt;
            h = poly_divrem(ring, &h, &rest).1;
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: f is a squarefree monic product
/// of irreducibles all of degree d. Deterministic shift sequence keeps runs
/// reproducible.
pub fn equal_degree(ring: &FqCtx, f: &FqPoly, d: usize) -> Vec<FqPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let q = ring.size();
    let e = (q
        .checked_pow(d as u32)
        .expect("field too large for splitting")
        - 1)
        / 2;
    let mut trial: u64 = 1;
    loop {
        // trial polynomial of degree < n built from the counter, base q digits
        let mut idx = trial;
        trial += 1;
        let mut coeffs = vec![];
        while idx > 0 && coeffs.len() < n {
            coeffs.push(ring.el_by_index(idx % q));
            idx /= q;
        }
        let t = poly_from(ring, coeffs);
        if t.degree().is_none() {
            continue;
        }
        let te = pow_mod(ring, &t, e, f);
        let g = poly_gcd(ring, &poly_sub(ring, &te, &poly_const(ring, ring.one())), f).unwrap();
        let dg = g.degree().unwrap_or(0);
        if dg >= 1 && dg < n {
            let (co, r) = poly_divrem(ring, f, &g);
            debug_assert!(r.is_zero());
            let mut out = equal_degree(ring, &g, d);
            out.extend(equal_degree(ring, &poly_monic(ring, &co), d));
            return out;
        }
    }
}

/// Monic irreducible factors of f with multiplicities.
pub fn factor_fq(ring: &FqCtx, f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::UndefinedInput);
    }
    let sqf = crate::poly::squarefree_part_fq(ring, f)?;
    let mut irreducibles = vec![];
    for (d, prod) in distinct_degree(ring, &sqf) {
        irreducibles.extend(equal_degree(ring, &prod, d));
    }
    let mut out = vec![];
    for h in irreducibles {
        let mut mult = 0;
        let mut rest = poly_monic(ring, f);
        loop {
            let (q, r) = poly_divrem(ring, &rest, &h);
            if r.is_zero() {
                mult += 1;
                rest = q;
            } else {
                break;
            }
        }
        out.push((h, mult));
    }
    out.sort_by_key(|(h, _)| (h.degree(), h.coeffs.clone()));
    Ok(out)
}

/// All roots of the monic irreducible h (over F_p, degree d) inside the fixed
/// model of F_{p^d}, by deterministic Cantor-Zassenhaus splitting within the
/// extension; the d roots are Frobenius conjugates.
pub fn roots_of_irreducible(base: &FqCtx, h: &FqPoly, ext: &FqCtx) -> Vec<FqEl> {
    assert_eq!(
        base.m, 1,
        "irreducible factor must live over the prime field"
    );
    assert_eq!(ext.p, base.p);
    let d = h.degree().unwrap();
    assert!(d.is_multiple_of(ext.m) || ext.m.is_multiple_of(d));
    // embed coefficients and split off one root
    let he: FqPoly = poly_from(
        ext,
        h.coeffs.iter().map(|c| ext.from_residue(c[0])).collect(),
    );
    let root = find_root_split_field(ext, &he);
    let mut roots = vec![root.clone()];
    let mut cur = root;
    for _ in 1..d {
        cur = ext.frobenius(&cur);
        if !roots.contains(&cur) {
            roots.push(cur.clone());
        }
    }
    roots
}

/// One root of a polynomial that splits completely over `ring`.
fn find_root_split_field(ring: &FqCtx, f: &FqPoly) -> FqEl {
    let mut f = poly_monic(ring, f);
    let q = ring.size();
    let mut shift: u64 = 0;
    while f.degree().unwrap() > 1 {
        shift += 1;
        let delta = ring.el_by_index(shift % q);
        // gcd(f(x), (x+delta)^((q-1)/2) - 1)
        let xs = poly_from(ring, vec![delta, ring.one()]);
        let te = pow_mod(ring, &xs, (q - 1) / 2, &f);
        let g = poly_gcd(
            ring,
            &poly_sub(ring, &te, &poly_const(ring, ring.one())),
            &f,
        )
        .unwrap();
        let dg = g.degree().unwrap_or(0);
        if dg >= 1 && dg < f.degree().unwrap() {
            f = if 2 * dg <= f.degree().unwrap() {
                g
            } else {
                let (qt, _) = poly_divrem(ring, &f, &g);
                poly_monic(ring, &qt)
            };
        }
    }
    ring.neg(&f.coeffs[0])
}

/// All roots of f (over F_p) in extensions F_{p^j}, j <= max_degree, with
/// multiplicities. Each root is returned with the context of the smallest
/// field containing it.
pub fn roots_in_extension(
    base: &FqCtx,
    f: &FqPoly,
    max_degree: usize,
) -> Result<Vec<(FqCtx, FqEl, usize)>> {
    if f.is_zero() {
        return Err(Error::UndefinedInput);
    }
    let mut out = vec![];
    for (h, mult) in factor_fq(base, f)? {
        let d = h.degree().unwrap();
        if d == 0 || d > max_degree {
            continue;
        }
        let ext = if d == 1 {
            base.clone()
        } else {
            FqCtx::extension(base.p, d)
        };
        for r in roots_of_irreducible(base, &h, &ext) {
            out.push((ext.clone(), r, mult));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Factorization over Z / Q (Zassenhaus)
// ---------------------------------------------------------------------------

fn zsym(a: &BigInt, modulus: &BigInt) -> BigInt {
    let mut r = a.mod_floor(modulus);
    if &r * 2 > *modulus {
        r -= modulus;
    }
    r
}

fn zpoly_mod(f: &ZPoly, modulus: &BigInt) -> ZPoly {
    let mut out: ZPoly = f.iter().map(|c| zsym(c, modulus)).collect();
    ztrim(&mut out);
    out
}

fn zpoly_mul_mod(a: &ZPoly, b: &ZPoly, modulus: &BigInt) -> ZPoly {
    zpoly_mod(&crate::zpoly::zmul(a, b), modulus)
}

fn zpoly_sub_mod(a: &ZPoly, b: &ZPoly, modulus: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out[i] = zsym(&(x - y), modulus);
    }
    ztrim(&mut out);
    out
}

fn zpoly_add_mod(a: &ZPoly, b: &ZPoly, modulus: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out[i] = zsym(&(x + y), modulus);
    }
    ztrim(&mut out);
    out
}

/// divrem by a monic polynomial mod m.
fn zpoly_divrem_monic_mod(a: &ZPoly, b: &ZPoly, modulus: &BigInt) -> (ZPoly, ZPoly) {
    assert!(
        b.last().map(|l| l.is_one()).unwrap_or(false),
        "divisor must be monic"
    );
    let db = b.len() - 1;
    let mut r = zpoly_mod(a, modulus);
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        q[dr - db] = c.clone();
        for i in 0..=db {
            r[dr - db + i] = zsym(&(&r[dr - db + i] - &c * &b[i]), modulus);
        }
        ztrim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    ztrim(&mut q);
    (q, r)
}

/// Hensel lift: given f = g*h mod m with s*g + t*h = 1 mod m (g monic),
/// produce (g', h', s', t') satisfying the same relations mod m^2.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zpoly_sub_mod(f, &zpoly_mul_mod(g, h, &m2), &m2);
    // t*e = q*g + r; the remainder corrects the monic factor, keeping its
    // degree fixed, and q*h + s*e corrects the cofactor.
    let te = zpoly_mul_mod(t, &e, &m2);
    let (q, r) = zpoly_divrem_monic_mod(&te, g, &m2);
    let g1 = zpoly_add_mod(g, &r, &m2);
    let se = zpoly_mul_mod(s, &e, &m2);
    let qh = zpoly_mul_mod(&q, h, &m2);
    let h1 = zpoly_add_mod(&zpoly_add_mod(h, &se, &m2), &qh, &m2);
    // Bezout defect b = s*g1 + t*h1 - 1, then the analogous correction.
    let b = {
        let mut v = zpoly_add_mod(
            &zpoly_mul_mod(s, &g1, &m2),
            &zpoly_mul_mod(t, &h1, &m2),
            &m2,
        );
        if v.is_empty() {
            v.push(BigInt::zero());
        }
        v[0] -= BigInt::one();
        zpoly_mod(&v, &m2)
    };
    let tb = zpoly_mul_mod(t, &b, &m2);
    let (c, d) = zpoly_divrem_monic_mod(&tb, &g1, &m2);
    let t1 = zpoly_sub_mod(t, &d, &m2);
    let s1 = zpoly_sub_mod(
        &zpoly_sub_mod(s, &zpoly_mul_mod(s, &b, &m2), &m2),
        &zpoly_mul_mod(&c, &h1, &m2),
        &m2,
    );
    (g1, h1, s1, t1)
}

fn fq_poly_to_z(ring: &FqCtx, f: &FqPoly) -> ZPoly {
    let p = BigInt::from(ring.p);
    let mut out: ZPoly = f
        .coeffs
        .iter()
        .map(|c| zsym(&BigInt::from(c[0]), &p))
        .collect();
    ztrim(&mut out);
    out
}

fn z_poly_to_fq(ring: &FqCtx, f: &ZPoly) -> FqPoly {
    poly_from(
        ring,
        f.iter()
            .map(|c| {
                let r = c.mod_floor(&BigInt::from(ring.p));
                ring.from_residue(r.to_u64_digits().1.first().copied().unwrap_or(0))
            })
            .collect(),
    )
}

/// Lift the factorization f = prod(factors) mod p (f monic mod p) to mod
/// p^(2^iters) by a binary tree of Hensel steps.
fn hensel_lift_tree(f: &ZPoly, factors: &[FqPoly], ring: &FqCtx, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zpoly_mod(f, target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let mut gp = poly_const(ring, ring.one());
    for x in left {
        gp = poly_mul(ring, &gp, x);
    }
    let mut hp = poly_const(ring, ring.one());
    for x in right {
        hp = poly_mul(ring, &hp, x);
    }
    // Bezout over F_p
    let (s0, t0) = bezout_fq(ring, &gp, &hp);
    let mut m = BigInt::from(ring.p);
    let mut g = fq_poly_to_z(ring, &gp);
    let mut h = fq_poly_to_z(ring, &hp);
    let mut s = fq_poly_to_z(ring, &s0);
    let mut t = fq_poly_to_z(ring, &t0);
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(&zpoly_mod(f, &(&m * &m)), &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let mut out = hensel_lift_tree(&g, left, ring, target);
    out.extend(hensel_lift_tree(&h, right, ring, target));
    out
}

/// Extended Euclid over F_q: s*a + t*b = 1 for coprime a, b.
fn bezout_fq(ring: &FqCtx, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = poly_const(ring, ring.one());
    let mut s1: FqPoly = Poly::zero();
    let mut t0: FqPoly = Poly::zero();
    let mut t1 = poly_const(ring, ring.one());
    while !r1.is_zero() {
        let (q, r) = poly_divrem(ring, &r0, &r1);
        let ns = poly_sub(ring, &s0, &poly_mul(ring, &q, &s1));
        let nt = poly_sub(ring, &t0, &poly_mul(ring, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    assert_eq!(r0.degree(), Some(0), "bezout inputs not coprime");
    let inv = ring.inv(&r0.coeffs[0]);
    (
        poly_from(ring, s0.coeffs.iter().map(|c| ring.mul(c, &inv)).collect()),
        poly_from(ring, t0.coeffs.iter().map(|c| ring.mul(c, &inv)).collect()),
    )
}

/// Irreducible factors over Q of a nonzero rational polynomial, with
/// multiplicities. Factors are returned as primitive integer polynomials
/// with positive leading coefficient; the rational content is dropped.
pub fn factor_qq(f: &Poly<BigRational>) -> Result<Vec<(ZPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::UndefinedInput);
    }
    if f.degree() == Some(0) {
        return Ok(vec![]);
    }
    // squarefree split: repeatedly peel the squarefree part
    let mut out: Vec<(ZPoly, usize)> = vec![];
    let mut rest = f.clone();
    let mut level = 0usize;
    while rest.degree().unwrap_or(0) >= 1 {
        level += 1;
        let sq = crate::poly::squarefree_part_qq(&rest)?;
        for z in zassenhaus(&qpoly_to_primitive_z(&sq))? {
            // multiplicity of this factor in f
            let zq = zpoly_to_q(&z);
            let mut mult = 0usize;
            let mut g = f.clone();
            loop {
                let (q, r) = poly_divrem(&QQ, &g, &zq);
                if r.is_zero() {
                    mult += 1;
                    g = q;
                } else {
                    break;
                }
            }
            if mult >= level && !out.iter().any(|(w, _)| *w == z) {
                out.push((z, mult));
            }
        }
        let (q, r) = poly_divrem(&QQ, &rest, &sq);
        debug_assert!(r.is_zero());
        rest = q;
    }
    out.sort_by_key(|(z, m)| (z.len(), z.clone(), *m));
    Ok(out)
}

/// Zassenhaus factorization of a primitive squarefree integer polynomial.
pub fn zassenhaus(f: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    // pick a prime where f stays squarefree and the leading coefficient is a unit
    let lc = f.last().unwrap().clone();
    let mut chosen = None;
    for &p in &[
        3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    ] {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let ring = FqCtx::prime_field(p);
        let fp = z_poly_to_fq(&ring, f);
        if fp.degree() != Some(n) {
            continue;
        }
        let d = crate::poly::poly_derivative(&ring, &fp);
        if d.is_zero() {
            continue;
        }
        let g = poly_gcd(&ring, &fp, &d)?;
        if g.degree() == Some(0) {
            chosen = Some((p, ring, fp));
            break;
        }
    }
    let (p, ring, fp) = chosen.ok_or_else(|| {
        Error::InvalidArgument("no good prime found for modular factorization".into())
    })?;

    let modular: Vec<FqPoly> = factor_fq(&ring, &fp)?.into_iter().map(|(h, _)| h).collect();
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }

    // Mignotte-style bound on coefficients of factors of lc*f
    let norm: BigInt = {
        let s: BigInt = f.iter().map(|c| c * c).sum();
        s.sqrt() + 1
    };
    let bound: BigInt = (BigInt::one() << (n as u32 + 1)) * &norm * lc.abs();
    let mut target = BigInt::from(p);
    while target <= &bound * 2 {
        target = &target * &target;
    }

    // monic copy of f modulo target: scale by lc^-1 is not available, so lift
    // the monic-ized fp instead and track lc separately (standard trick:
    // factor lc * f with each lifted factor's leading coeff = 1).
    let lc_inv_p = ring.inv(&ring.from_i64(lc_to_i64(&lc, p)));
    let fp_monic = poly_from(
        &ring,
        fp.coeffs.iter().map(|c| ring.mul(c, &lc_inv_p)).collect(),
    );
    // lift of monic f means we lift against f_monic_z = f * lc^(n-1) adjusted;
    // work instead with f scaled to be monic mod target:
    let lc_inv_mod = mod_inverse(&lc, &target);
    let f_monic_mod: ZPoly = zpoly_mod(
        &f.iter().map(|c| c * &lc_inv_mod).collect::<Vec<_>>(),
        &target,
    );
    let modular_monic: Vec<FqPoly> = factor_fq(&ring, &fp_monic)?
        .into_iter()
        .map(|(h, _)| h)
        .collect();
    let lifted = hensel_lift_tree(&f_monic_mod, &modular_monic, &ring, &target);

    // subset recombination
    let r = lifted.len();
    let mut used = vec![false; r];
    let mut result = vec![];
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while size <= r - used.iter().filter(|&&u| u).count() {
        let free: Vec<usize> = (0..r).filter(|&i| !used[i]).collect();
        for subset in subsets(&free, size) {
            let mut prod: ZPoly = vec![rest.last().unwrap().clone()];
            for &i in &subset {
                prod = zpoly_mul_mod(&prod, &lifted[i], &target);
            }
            let cand = crate::zpoly::zprimitive(&prod);
            if cand.len() <= 1 {
                continue;
            }
            if divides_exactly(&rest, &cand) {
                let q = exact_div(&rest, &cand);
                for &i in &subset {
                    used[i] = true;
                }
                result.push(cand);
                rest = q;
                if rest.len() <= 1 {
                    break 'outer;
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.len() > 1 {
        result.push(crate::zpoly::zprimitive(&rest));
    }
    Ok(result)
}

fn lc_to_i64(lc: &BigInt, p: u64) -> i64 {
    lc.mod_floor(&BigInt::from(p))
        .to_u64_digits()
        .1
        .first()
        .copied()
        .unwrap_or(0) as i64
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = vec![];
    for sub in subsets(&items[1..], k - 1) {
        let mut s = vec![items[0]];
        s.extend(sub);
        out.push(s);
    }
    out.extend(subsets(&items[1..], k));
    out
}

fn divides_exactly(a: &ZPoly, b: &ZPoly) -> bool {
    let (_, r) = poly_divrem(&QQ, &zpoly_to_q(a), &zpoly_to_q(b));
    r.is_zero()
}

fn exact_div(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (q, r) = poly_divrem(&QQ, &zpoly_to_q(a), &zpoly_to_q(b));
    assert!(r.is_zero());
    qpoly_to_primitive_z(&q)
}
