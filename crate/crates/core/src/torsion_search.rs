//! Common projective torsion of a pair of projections: exact computation
//! over Q via the gcd of transported torsion loci, with an independent
//! brute-force oracle over auxiliary finite fields.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factor::{factor_qq, roots_of_irreducible};
use crate::fq::{FqCtx, FqEl};
use crate::poly::{poly_divrem, poly_eval, poly_from, poly_monic, poly_mul, Poly};
use crate::projection::{branch_disjoint_generic, Mobius, StandardProjection};
use crate::ring::{Field, Ring, QQ};
use crate::weierstrass::{
    division_poly_x, embed_base, fp_reduce, reduction_type, torsion_enumerate_ff, Curve,
    ReductionTag,
};
use crate::zpoly::{qpoly_gcd, ZPoly};

/// Monic polynomials over Q whose roots are the x-coordinates of exact
/// order n, for 2 <= n <= nmax; index n=1 is reserved (the origin has no
/// affine x).
fn exact_order_polys(
    a: &BigRational,
    b: &BigRational,
    nmax: u64,
) -> BTreeMap<u64, Poly<BigRational>> {
    let mut exact: BTreeMap<u64, Poly<BigRational>> = BTreeMap::new();
    for n in 2..=nmax {
        let mut u = poly_monic(&QQ, &division_poly_x(&QQ, a, b, n as usize));
        for (&d, ed) in exact.iter() {
            if n % d == 0 {
                let (q, r) = poly_divrem(&QQ, &u, ed);
                debug_assert!(r.is_zero(), "exact-order locus must divide the n-locus");
                u = q;
            }
        }
        exact.insert(n, u);
    }
    exact
}

/// Pull the root set of a degree-D polynomial through a Moebius map: the
/// result vanishes at m(x) for every root x with m(x) finite.
fn mobius_push_roots(l: &Poly<BigRational>, m: &Mobius) -> Poly<BigRational> {
    let d = match l.degree() {
        Some(d) => d,
        None => return Poly::zero(),
    };
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    // substitute the adjugate: x = (d X - b) / (-c X + a)
    let lin1 = poly_from(&QQ, vec![-q(&m.b), q(&m.d)]);
    let lin2 = poly_from(&QQ, vec![q(&m.a), -q(&m.c)]);
    let mut out = Poly::zero();
    let mut p1 = poly_from(&QQ, vec![BigRational::from_integer(BigInt::from(1))]);
    let mut pows1 = vec![p1.clone()];
    for _ in 0..d {
        p1 = poly_mul(&QQ, &p1, &lin1);
        pows1.push(p1.clone());
    }
    let mut p2 = poly_from(&QQ, vec![BigRational::from_integer(BigInt::from(1))]);
    let mut pows2 = vec![p2.clone()];
    for _ in 0..d {
        p2 = poly_mul(&QQ, &p2, &lin2);
        pows2.push(p2.clone());
    }
    for (i, c) in l.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = poly_mul(&QQ, &pows1[i], &pows2[d - i]);
        let scaled = crate::poly::poly_scale(&QQ, &term, c);
        out = crate::poly::poly_add(&QQ, &out, &scaled);
    }
    out
}

#[derive(Clone, Debug)]
pub struct TorsionXPoly {
    /// Monic squarefree polynomial over Q; roots are the transported images
    /// of all torsion x-coordinates of exact order 2..N plus, when finite,
    /// the image of the origin.
    pub poly: Poly<BigRational>,
    /// True iff some torsion point (always the origin) maps to infinity.
    pub infinity: bool,
    /// Transported exact-order loci, monic; key 1 is the origin's image.
    pub exact: BTreeMap<u64, Poly<BigRational>>,
}

/// The transported torsion locus of a projection up to order N.
pub fn torsion_x_poly(proj: &StandardProjection, n_bound: u64) -> Result<TorsionXPoly> {
    if n_bound < 2 {
        return Err(Error::InvalidArgument(
            "order bound must be at least 2".into(),
        ));
    }
    let m = &proj.twist;
    let exact_raw = exact_order_polys(&proj.a, &proj.b, n_bound);
    let mut exact: BTreeMap<u64, Poly<BigRational>> = BTreeMap::new();
    let mut infinity = m.c.is_zero();
    // a torsion x-coordinate maps to infinity iff it equals -d/c
    let pole = if m.c.is_zero() {
        None
    } else {
        Some(BigRational::new(-m.d.clone(), m.c.clone()))
    };
    for (n, u) in &exact_raw {
        if let Some(x) = &pole {
            if poly_eval(&QQ, u, x).is_zero() {
                infinity = true;
            }
        }
        let t = mobius_push_roots(u, m);
        if !t.is_zero() && t.degree() != Some(0) {
            exact.insert(*n, poly_monic(&QQ, &t));
        } else {
            exact.insert(*n, poly_from(&QQ, vec![QQ.one()]));
        }
    }
    // image of the origin
    if !m.c.is_zero() {
        let o_image = BigRational::new(m.a.clone(), m.c.clone());
        exact.insert(1, poly_from(&QQ, vec![-o_image, QQ.one()]));
    }
    let mut total = poly_from(&QQ, vec![QQ.one()]);
    for t in exact.values() {
        total = poly_mul(&QQ, &total, t);
    }
    Ok(TorsionXPoly {
        poly: poly_monic(&QQ, &total),
        infinity,
        exact,
    })
}

#[derive(Clone, Debug)]
pub struct TorsionFactor {
    /// Primitive integer form of the irreducible factor.
    pub poly: ZPoly,
    pub degree: usize,
    /// Torsion orders on each curve whose locus this factor divides
    /// (order 1 marks the image of the origin).
    pub orders: [Vec<u64>; 2],
}

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub n_bound: u64,
    pub factors: Vec<TorsionFactor>,
    pub infinity_is_common: bool,
    /// Number of common projective images over the algebraic closure.
    pub total_count: u64,
}

/// The common projective torsion images of two projections, truncated at
/// order N, computed by a gcd over Q[x].
pub fn common_projective_torsion(
    p1: &StandardProjection,
    p2: &StandardProjection,
    n_bound: u64,
) -> Result<TorsionReport> {
    let gen = branch_disjoint_generic(p1, p2);
    if gen.equal_as_sets {
        return Err(Error::BranchLociCoincide);
    }
    let t1 = torsion_x_poly(p1, n_bound)?;
    let t2 = torsion_x_poly(p2, n_bound)?;
    let g = qpoly_gcd(&t1.poly, &t2.poly)?;
    let infinity_is_common = t1.infinity && t2.infinity;
    let mut factors = Vec::new();
    let mut total: u64 = if infinity_is_common { 1 } else { 0 };
    if g.degree().is_some_and(|d| d >= 1) {
        for (zf, _mult) in factor_qq(&g)? {
            let qf = poly_monic(&QQ, &crate::zpoly::zpoly_to_q(&zf));
            let degree = qf.degree().unwrap_or(0);
            let mut orders = [Vec::new(), Vec::new()];
            for (side, t) in [&t1, &t2].iter().enumerate() {
                for (n, en) in &t.exact {
                    let (_, r) = poly_divrem(&QQ, en, &qf);
                    if r.is_zero() && en.degree().is_some_and(|d| d >= 1) {
                        orders[side].push(*n);
                    }
                }
            }
            total += degree as u64;
            factors.push(TorsionFactor {
                poly: zf,
                degree,
                orders,
            });
        }
    }
    Ok(TorsionReport {
        n_bound,
        factors,
        infinity_is_common,
        total_count: total,
    })
}

// ---------------------------------------------------------------------------
// Finite-field oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct FfOracleReport {
    pub ell: u64,
    pub count: u64,
    /// True when the brute-force enumeration provably covered all torsion of
    /// order <= N on both curves; only then is the count certified equal to
    /// the characteristic-zero count.
    pub complete: bool,
}

/// Projective images over the algebraic closure of F_ell, represented by
/// minimal polynomials over F_ell, with infinity as a separate marker.
#[derive(Clone, Debug, Default)]
struct ImageSet {
    finite: BTreeSet<Vec<u64>>,
    has_infinity: bool,
    complete: bool,
}

fn image_set(proj: &StandardProjection, n_bound: u64, ell: u64) -> Result<ImageSet> {
    let fl = FqCtx::prime_field(ell);
    // effective twist on the minimal model (same rebasing as the assumption
    // checkers)
    let (ma, mb, twist) = rebase_public(proj, ell)?;
    let a = fp_reduce(&fl, &ma)?;
    let b = fp_reduce(&fl, &mb)?;
    let table = torsion_enumerate_ff(&fl, &a, &b, n_bound, 6)?;
    let mut out = ImageSet {
        complete: table.complete,
        ..Default::default()
    };
    // image of the origin
    push_mobius_image_inf(&fl, &twist, &mut out);
    for keys in table.by_order.values() {
        for key in keys {
            let d = key.len() - 1;
            let ext = if d == 1 {
                fl.clone()
            } else {
                FqCtx::extension(ell, d)
            };
            let kp = poly_from(&fl, key.iter().map(|&c| fl.from_residue(c)).collect());
            let roots = roots_of_irreducible(&fl, &kp, &ext);
            let x = roots
                .first()
                .cloned()
                .ok_or_else(|| Error::InvalidArgument("minimal polynomial lost its root".into()))?;
            push_mobius_image(&ext, &twist, &x, &mut out);
        }
    }
    Ok(out)
}

fn rebase_public(proj: &StandardProjection, p: u64) -> Result<(BigRational, BigRational, Mobius)> {
    crate::projection::rebase_at_p(proj, p)
}

/// Number of common projective roots over the algebraic closure of the two
/// branch quartics, over Q.
fn common_branch_count_generic(p1: &StandardProjection, p2: &StandardProjection) -> Result<usize> {
    let f1 = crate::projection::branch_form(p1);
    let f2 = crate::projection::branch_form(p2);
    let q1 = crate::zpoly::zpoly_to_q(&f1.coeffs);
    let q2 = crate::zpoly::zpoly_to_q(&f2.coeffs);
    let g = qpoly_gcd(&q1, &q2)?;
    let mut count = g.degree().unwrap_or(0);
    if f1.coeffs[f1.deg].is_zero() && f2.coeffs[f2.deg].is_zero() {
        count += 1; // shared root at infinity
    }
    Ok(count)
}

/// The same count on the special fibre at ell, from the rebased minimal
/// models.
fn common_branch_count_mod(
    p1: &StandardProjection,
    p2: &StandardProjection,
    ell: u64,
) -> Result<usize> {
    let fl = FqCtx::prime_field(ell);
    let mut forms = Vec::new();
    for proj in [p1, p2] {
        let (a, b, twist) = rebase_public(proj, ell)?;
        let base = crate::projection::StandardProjection::new(Curve::short(QQ, a, b), twist)?;
        forms.push(crate::projection::branch_form(&base).mod_p(ell));
    }
    let to_poly = |c: &Vec<u64>| poly_from(&fl, c.iter().map(|&v| fl.from_residue(v)).collect());
    let g = crate::poly::poly_gcd(&fl, &to_poly(&forms[0]), &to_poly(&forms[1]))?;
    let mut count = g.degree().unwrap_or(0);
    if forms[0][4] == 0 && forms[1][4] == 0 {
        count += 1;
    }
    Ok(count)
}

fn mobius_coeff(ext: &FqCtx, v: &BigInt) -> FqEl {
    use num_integer::Integer;
    let r = v.mod_floor(&BigInt::from(ext.p));
    embed_base(
        ext,
        &vec![r.to_u64_digits().1.first().copied().unwrap_or(0)],
    )
}

fn push_mobius_image(ext: &FqCtx, m: &Mobius, x: &FqEl, out: &mut ImageSet) {
    let a = mobius_coeff(ext, &m.a);
    let b = mobius_coeff(ext, &m.b);
    let c = mobius_coeff(ext, &m.c);
    let d = mobius_coeff(ext, &m.d);
    let den = ext.add(&ext.mul(&c, x), &d);
    if ext.is_zero(&den) {
        out.has_infinity = true;
        return;
    }
    let num = ext.add(&ext.mul(&a, x), &b);
    let y = ext.div(&num, &den);
    out.finite.insert(ext.min_poly(&y));
}

fn push_mobius_image_inf(fl: &FqCtx, m: &Mobius, out: &mut ImageSet) {
    use num_integer::Integer;
    let red = |v: &BigInt| -> u64 {
        let r = v.mod_floor(&BigInt::from(fl.p));
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    };
    if red(&m.c) == 0 {
        out.has_infinity = true;
    } else {
        let c = fl.from_residue(red(&m.c));
        let a = fl.from_residue(red(&m.a));
        let y = fl.div(&a, &c);
        out.finite.insert(fl.min_poly(&y));
    }
}

/// Count common projective torsion images over the closure of F_ell by
/// brute force, for an admissible auxiliary prime ell.
pub fn ff_oracle_common(
    p1: &StandardProjection,
    p2: &StandardProjection,
    n_bound: u64,
    ell: u64,
) -> Result<FfOracleReport> {
    if ell < 5 || !crate::ring::is_prime(ell) {
        return Err(Error::InadmissibleAuxiliaryPrime(
            ell,
            "not a prime >= 5".into(),
        ));
    }
    if ell <= n_bound {
        return Err(Error::InadmissibleAuxiliaryPrime(
            ell,
            "divides one of the considered torsion orders".into(),
        ));
    }
    for proj in [p1, p2] {
        let info = reduction_type(&proj.curve, ell)?;
        if !matches!(
            info.tag,
            ReductionTag::GoodOrdinary | ReductionTag::GoodSupersingular
        ) {
            return Err(Error::InadmissibleAuxiliaryPrime(
                ell,
                "bad reduction for one of the curves".into(),
            ));
        }
    }
    // Specialization must not create new branch coincidences: the number of
    // common branch points has to match between the generic and special
    // fibres. (When the generic count is zero this is exactly disjointness
    // of the branch loci mod ell.)
    if common_branch_count_generic(p1, p2)? != common_branch_count_mod(p1, p2, ell)? {
        return Err(Error::InadmissibleAuxiliaryPrime(
            ell,
            "branch coincidences change modulo this prime".into(),
        ));
    }
    let s1 = image_set(p1, n_bound, ell)?;
    let s2 = image_set(p2, n_bound, ell)?;
    let mut count = 0u64;
    for k in s1.finite.intersection(&s2.finite) {
        count += (k.len() - 1) as u64;
    }
    if s1.has_infinity && s2.has_infinity {
        count += 1;
    }
    Ok(FfOracleReport {
        ell,
        count,
        complete: s1.complete && s2.complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_i;
    use crate::weierstrass::Curve;

    fn proj(a: i64, b: i64, twist: Mobius) -> StandardProjection {
        StandardProjection::new(Curve::short(QQ, rat_i(a), rat_i(b)), twist).unwrap()
    }

    #[test]
    fn torsion_x_poly_examples() {
        let t = torsion_x_poly(&proj(-1, 0, Mobius::identity()), 2).unwrap();
        assert!(t.infinity);
        assert_eq!(t.poly.degree(), Some(3));
        for r in [0i64, 1, -1] {
            assert!(poly_eval(&QQ, &t.poly, &rat_i(r)).is_zero());
        }

        // N = 3 on y^2 = x^3 + 1: psi2 roots plus 3x(x^3+4)
        let t = torsion_x_poly(&proj(0, 1, Mobius::identity()), 3).unwrap();
        assert!(t.infinity);
        assert_eq!(t.poly.degree(), Some(3 + 4));

        // twist with m(inf) finite
        let m = Mobius::from_i64(0, 1, 1, 0).unwrap(); // x -> 1/x
        let t = torsion_x_poly(&proj(-1, 0, m), 2).unwrap();
        // x = 0 maps to infinity, so a 2-torsion point hits infinity
        assert!(t.infinity);
        // origin maps to 0
        assert!(poly_eval(&QQ, &t.poly, &rat_i(0)).is_zero());
    }

    #[test]
    fn common_torsion_demo_pair() {
        let p1 = proj(-1, 0, Mobius::identity());
        let p2 = proj(-4, 0, Mobius::identity());
        let rep = common_projective_torsion(&p1, &p2, 2).unwrap();
        assert!(rep.infinity_is_common);
        assert_eq!(rep.total_count, 2);
        assert_eq!(rep.factors.len(), 1);
        assert_eq!(rep.factors[0].poly, vec![BigInt::from(0), BigInt::from(1)]);
        assert!(rep.factors[0].orders[0].contains(&2));
        assert!(rep.factors[0].orders[1].contains(&2));
    }

    #[test]
    fn coinciding_branch_loci_rejected() {
        let p1 = proj(-1, 0, Mobius::identity());
        let p2 = proj(-1, 0, Mobius::identity());
        assert!(matches!(
            common_projective_torsion(&p1, &p2, 3),
            Err(Error::BranchLociCoincide)
        ));
    }

    #[test]
    fn oracle_demo_pair() {
        let p1 = proj(-1, 0, Mobius::identity());
        let p2 = proj(-4, 0, Mobius::identity());
        let rep = ff_oracle_common(&p1, &p2, 2, 7).unwrap();
        assert!(rep.complete);
        assert_eq!(rep.count, 2);
        // inadmissible: ell <= N
        assert!(matches!(
            ff_oracle_common(&p1, &p2, 5, 5),
            Err(Error::InadmissibleAuxiliaryPrime(..))
        ));
    }
}
