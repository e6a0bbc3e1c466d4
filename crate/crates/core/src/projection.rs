//! Standard projections E -> P^1 (Moebius twist composed with the short-form
//! x-coordinate), their branch quartics as integral binary forms, and the
//! mechanical disjointness checkers used as theorem hypotheses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fq::FqCtx;
use crate::ring::{valuation_int, valuation_p, Field, Ring, QQ};
use crate::weierstrass::{minimal_at_p, reduction_type, Curve, ReductionInfo, ReductionTag};
use crate::zpoly::{zcontent, zprimitive};

/// An invertible fractional-linear map of P^1, stored as a primitive integer
/// matrix (a b; c d) with nonzero determinant, acting by
/// x -> (a x + b) / (c x + d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mobius {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::InvalidArgument("Moebius matrix is singular".into()));
        }
        Ok(m.primitive())
    }

    pub fn identity() -> Self {
        Mobius {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mobius::new(
            BigInt::from(a),
            BigInt::from(b),
            BigInt::from(c),
            BigInt::from(d),
        )
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    fn primitive(self) -> Self {
        let v = vec![
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ];
        let g = zcontent(&v);
        if g.is_zero() || g.is_one() {
            return self;
        }
        Mobius {
            a: self.a / &g,
            b: self.b / &g,
            c: self.c / &g,
            d: self.d / &g,
        }
    }

    /// adj(m) with m * adj(m) = det * id; as a Moebius map this is the
    /// inverse.
    pub fn adjugate(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
        .primitive()
    }

    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
        .primitive()
    }

    /// Apply to a point of P^1(Q); None encodes infinity.
    pub fn apply(&self, x: Option<&BigRational>) -> Option<BigRational> {
        match x {
            None => {
                if self.c.is_zero() {
                    None
                } else {
                    Some(BigRational::new(self.a.clone(), self.c.clone()))
                }
            }
            Some(x) => {
                let num = BigRational::from(self.a.clone()) * x + BigRational::from(self.b.clone());
                let den = BigRational::from(self.c.clone()) * x + BigRational::from(self.d.clone());
                if den.is_zero() {
                    None
                } else {
                    Some(num / den)
                }
            }
        }
    }
}

/// A binary form of declared degree d: coeffs[i] is the coefficient of
/// X^i Z^(d-i). The declared degree matters for resultants (it keeps roots
/// at infinity honest when the top coefficient vanishes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub deg: usize,
    pub coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(deg: usize, mut coeffs: Vec<BigInt>) -> Self {
        coeffs.resize(deg + 1, BigInt::zero());
        BinaryForm { deg, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Content-stripped with positive leading (highest nonzero) coefficient.
    pub fn primitive(&self) -> BinaryForm {
        let prim = zprimitive(&self.coeffs);
        // zprimitive trims and sign-normalizes by the top coefficient
        BinaryForm::new(self.deg, prim)
    }

    /// Substitute X -> q11 X + q12 Z, Z -> q21 X + q22 Z.
    pub fn substitute(&self, q11: &BigInt, q12: &BigInt, q21: &BigInt, q22: &BigInt) -> BinaryForm {
        let d = self.deg;
        // powers of the two linear forms, as vectors of X-coefficients
        let lin1 = [q12.clone(), q11.clone()]; // q11 X + q12 Z, lowest X-degree first
        let lin2 = [q22.clone(), q21.clone()];
        let mut pows1: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        let mut pows2: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for k in 1..=d {
            pows1.push(poly_mul_z(&pows1[k - 1], &lin1));
            pows2.push(poly_mul_z(&pows2[k - 1], &lin2));
        }
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = poly_mul_z(&pows1[i], &pows2[d - i]);
            for (k, t) in term.iter().enumerate() {
                out[k] += c * t;
            }
        }
        BinaryForm::new(d, out)
    }

    /// Transport by a Moebius map of the root set: the result vanishes at
    /// m(x) whenever self vanishes at x.
    pub fn transport(&self, m: &Mobius) -> BinaryForm {
        let adj = m.adjugate();
        self.substitute(&adj.a, &adj.b, &adj.c, &adj.d).primitive()
    }

    /// Proportionality over Q; for primitive forms this is equality up to
    /// sign.
    pub fn proportional(&self, other: &BinaryForm) -> bool {
        if self.deg != other.deg {
            return false;
        }
        let a = self.primitive();
        let b = other.primitive();
        a.coeffs == b.coeffs || a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| *x == -y)
    }

    /// Coefficients reduced modulo p.
    pub fn mod_p(&self, p: u64) -> Vec<u64> {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .map(|c| {
                let m = c.mod_floor(&BigInt::from(p));
                m.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect()
    }
}

fn poly_mul_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Resultant of two binary forms of their declared degrees, by a
/// fraction-free determinant of the Sylvester matrix.
pub fn binary_resultant(f: &BinaryForm, g: &BinaryForm) -> BigInt {
    let m = f.deg;
    let n = g.deg;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for i in 0..=m {
            mat[row][row + i] = f.coeffs[m - i].clone();
        }
    }
    for row in 0..m {
        for i in 0..=n {
            mat[n + row][row + i] = g.coeffs[n - i].clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

// ---------------------------------------------------------------------------
// Projections and branch loci
// ---------------------------------------------------------------------------

/// A degree-2 map E -> P^1: the x-coordinate of the short model followed by
/// a Moebius twist.
#[derive(Clone, Debug)]
pub struct StandardProjection {
    pub curve: Curve<QQ>,
    pub twist: Mobius,
    /// short-form coefficients of the curve, cached
    pub a: BigRational,
    pub b: BigRational,
}

impl StandardProjection {
    pub fn new(curve: Curve<QQ>, twist: Mobius) -> Result<Self> {
        if curve.is_singular() {
            return Err(Error::SingularCurve);
        }
        let (a, b) = curve.short_form()?;
        Ok(StandardProjection { curve, twist, a, b })
    }
}

/// The branch quartic: Z * f_hom(X, Z) (roots of the 2-torsion cubic plus
/// the image of O at infinity), transported by the twist; returned as a
/// primitive integral binary quartic.
pub fn branch_form(proj: &StandardProjection) -> BinaryForm {
    branch_form_of(&proj.a, &proj.b, &proj.twist)
}

fn branch_form_of(a: &BigRational, b: &BigRational, twist: &Mobius) -> BinaryForm {
    // Z * (X^3 + a X Z^2 + b Z^3) with denominators cleared
    let da = a.denom();
    let db = b.denom();
    let scale = da * db / num_integer::Integer::gcd(da, db);
    let ca = (a * BigRational::from(scale.clone())).to_integer();
    let cb = (b * BigRational::from(scale.clone())).to_integer();
    let base = BinaryForm::new(4, vec![cb, ca, BigInt::zero(), scale, BigInt::zero()]);
    base.transport(twist).primitive()
}

#[derive(Clone, Debug)]
pub struct DisjointReport {
    pub disjoint: bool,
    pub equal_as_sets: bool,
    pub resultant: BigInt,
}

/// Generic (characteristic-0) disjointness of the two branch loci, plus the
/// weaker "not equal as sets" verdict.
pub fn branch_disjoint_generic(p1: &StandardProjection, p2: &StandardProjection) -> DisjointReport {
    let f1 = branch_form(p1);
    let f2 = branch_form(p2);
    let res = binary_resultant(&f1, &f2);
    DisjointReport {
        disjoint: !res.is_zero(),
        equal_as_sets: f1.proportional(&f2),
        resultant: res,
    }
}

#[derive(Clone, Debug)]
pub struct SimplestAssumptionReport {
    pub pass: bool,
    pub resultant: BigInt,
    pub v_p: u64,
}

/// The projection re-based on the p-minimal short model: the twist absorbs
/// the u = p^e rescaling x -> u^2 x relating the two short models, so the
/// map on the generic fibre is unchanged.
pub fn rebase_at_p(
    proj: &StandardProjection,
    p: u64,
) -> Result<(BigRational, BigRational, Mobius)> {
    let min = minimal_at_p(&proj.curve, p)?;
    let (ma, mb) = (min.a4.clone(), min.a6.clone());
    let e = if !proj.a.is_zero() {
        let va = valuation_p(&proj.a, p)?.expect("nonzero");
        let vma = valuation_p(&ma, p)?.expect("nonzero");
        (va - vma) / 4
    } else if !proj.b.is_zero() {
        let vb = valuation_p(&proj.b, p)?.expect("nonzero");
        let vmb = valuation_p(&mb, p)?.expect("nonzero");
        (vb - vmb) / 6
    } else {
        return Err(Error::SingularCurve);
    };
    // x_orig = p^(2e) x_min, so the effective twist is twist * diag(p^(2e), 1)
    let pb = BigInt::from(p);
    let scale = if e >= 0 {
        Mobius::new(
            pb.pow(2 * e as u32),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
        )?
    } else {
        Mobius::new(
            BigInt::one(),
            BigInt::zero(),
            BigInt::zero(),
            pb.pow(2 * (-e) as u32),
        )?
    };
    Ok((ma, mb, proj.twist.compose(&scale)))
}

/// Good-good disjointness mod p: v_p of the resultant of the two integral
/// primitive branch quartics (built on p-minimal models) must vanish.
pub fn check_assumption_simplest(
    p1: &StandardProjection,
    p2: &StandardProjection,
    p: u64,
) -> Result<SimplestAssumptionReport> {
    for proj in [p1, p2] {
        let info = reduction_type(&proj.curve, p)?;
        if !matches!(
            info.tag,
            ReductionTag::GoodOrdinary | ReductionTag::GoodSupersingular
        ) {
            return Err(Error::PreconditionViolated(format!(
                "curve does not have good reduction at {p}"
            )));
        }
    }
    let (a1, b1, t1) = rebase_at_p(p1, p)?;
    let (a2, b2, t2) = rebase_at_p(p2, p)?;
    let f1 = branch_form_of(&a1, &b1, &t1);
    let f2 = branch_form_of(&a2, &b2, &t2);
    let res = binary_resultant(&f1, &f2);
    if res.is_zero() {
        return Ok(SimplestAssumptionReport {
            pass: false,
            resultant: res,
            v_p: u64::MAX,
        });
    }
    let v = valuation_int(&res, p);
    Ok(SimplestAssumptionReport {
        pass: v == 0,
        resultant: res,
        v_p: v,
    })
}

// ---------------------------------------------------------------------------
// Mixed (multiplicative) assumption checker
// ---------------------------------------------------------------------------

/// A point of P^1(F_p) in normalized projective coordinates (x : z) with
/// z in {0, 1}.
pub type FpProjPoint = (u64, u64);

#[derive(Clone, Debug)]
pub struct MixedAssumptionReport {
    pub p: u64,
    pub tags: [ReductionTag; 2],
    /// Node images in P^1(F_p), one per multiplicative curve, with the index
    /// of the curve they belong to.
    pub node_images: Vec<(usize, FpProjPoint)>,
    /// Special-fibre branch forms over F_p (normalization branch points for
    /// multiplicative curves, full quartic for good curves); coefficient of
    /// X^i Z^(deg-i) at index i.
    pub special_forms: [Vec<u64>; 2],
    pub generic_distinct: bool,
    pub special_disjoint: bool,
    pub nodes_ok: bool,
    pub pass: bool,
}

fn fp_apply_mobius(p: u64, m: &Mobius, x: u64) -> FpProjPoint {
    use num_integer::Integer;
    let red = |v: &BigInt| -> u64 {
        let r = v.mod_floor(&BigInt::from(p));
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    };
    let (a, b, c, d) = (red(&m.a), red(&m.b), red(&m.c), red(&m.d));
    let num = (a as u128 * x as u128 + b as u128) % p as u128;
    let den = (c as u128 * x as u128 + d as u128) % p as u128;
    normalize_proj(p, num as u64, den as u64)
}

pub fn fp_apply_mobius_inf(p: u64, m: &Mobius) -> FpProjPoint {
    use num_integer::Integer;
    let red = |v: &BigInt| -> u64 {
        let r = v.mod_floor(&BigInt::from(p));
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    };
    normalize_proj(p, red(&m.a), red(&m.c))
}

fn normalize_proj(p: u64, x: u64, z: u64) -> FpProjPoint {
    if z.is_multiple_of(p) {
        (1, 0)
    } else {
        let fp = FqCtx::prime_field(p);
        let zi = fp.inv(&fp.from_residue(z));
        let xi = fp.mul(&fp.from_residue(x), &zi);
        (xi.first().copied().unwrap_or(0), 1)
    }
}

/// Evaluate a mod-p binary form at a projective point.
fn fp_form_eval(p: u64, coeffs: &[u64], pt: FpProjPoint) -> u64 {
    let d = coeffs.len() - 1;
    let (x, z) = pt;
    let mut acc: u128 = 0;
    let mut xp: Vec<u128> = vec![1];
    let mut zp: Vec<u128> = vec![1];
    for i in 1..=d {
        xp.push(xp[i - 1] * x as u128 % p as u128);
        zp.push(zp[i - 1] * z as u128 % p as u128);
    }
    for (i, c) in coeffs.iter().enumerate() {
        acc = (acc + *c as u128 * xp[i] % p as u128 * zp[d - i]) % p as u128;
    }
    (acc % p as u128) as u64
}

/// Resultant of two mod-p binary forms via the Sylvester determinant
/// over F_p.
pub fn fp_binary_resultant(p: u64, f: &[u64], g: &[u64]) -> u64 {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return 1;
    }
    let mut mat = vec![vec![0u64; size]; size];
    for row in 0..n {
        for i in 0..=m {
            mat[row][row + i] = f[m - i];
        }
    }
    for row in 0..m {
        for i in 0..=n {
            mat[n + row][row + i] = g[n - i];
        }
    }
    fp_det(p, mat)
}

fn fp_det(p: u64, mut m: Vec<Vec<u64>>) -> u64 {
    let fp = FqCtx::prime_field(p);
    let n = m.len();
    let mut det: u64 = 1;
    let mut neg = false;
    for k in 0..n {
        let pivot = match (k..n).find(|&r| !m[r][k].is_multiple_of(p)) {
            Some(r) => r,
            None => return 0,
        };
        if pivot != k {
            m.swap(k, pivot);
            neg = !neg;
        }
        let piv = m[k][k] % p;
        det = (det as u128 * piv as u128 % p as u128) as u64;
        let inv = fp.inv(&fp.from_residue(piv)).first().copied().unwrap_or(0);
        for i in k + 1..n {
            let factor = (m[i][k] as u128 * inv as u128 % p as u128) as u64;
            if factor == 0 {
                continue;
            }
            for j in k..n {
                let sub = factor as u128 * m[k][j] as u128 % p as u128;
                m[i][j] = ((m[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
    }
    if neg {
        (p - det % p) % p
    } else {
        det
    }
}

/// The mixed assumption checker: at least one curve multiplicative at p, the
/// other good or multiplicative. Verifies (i) generic branch loci distinct
/// as sets, (ii) special-fibre normalization branch sets disjoint, and
/// (iii) node images distinct from all special branch points and from each
/// other.
pub fn check_assumption_mixed(
    p1: &StandardProjection,
    p2: &StandardProjection,
    p: u64,
) -> Result<MixedAssumptionReport> {
    let infos: Vec<ReductionInfo> = [p1, p2]
        .iter()
        .map(|proj| reduction_type(&proj.curve, p))
        .collect::<Result<_>>()?;
    let tags = [infos[0].tag, infos[1].tag];
    if tags.contains(&ReductionTag::Additive) {
        return Err(Error::PreconditionViolated(format!(
            "additive reduction at {p} is not covered by the mixed checker"
        )));
    }
    if !tags.contains(&ReductionTag::Multiplicative) {
        return Err(Error::PreconditionViolated(
            "mixed checker needs at least one multiplicative curve".into(),
        ));
    }

    let fp = FqCtx::prime_field(p);
    let mut node_images: Vec<(usize, FpProjPoint)> = Vec::new();
    let mut special_forms: Vec<Vec<u64>> = Vec::new();

    for (idx, proj) in [p1, p2].iter().enumerate() {
        let (ma, mb, twist) = rebase_at_p(proj, p)?;
        if tags[idx] == ReductionTag::Multiplicative {
            // f mod p = (x - x0)^2 (x - x1): node at x0, smooth branch at
            // x1 and at the image of O.
            let a = crate::weierstrass::fp_reduce(&fp, &ma)?;
            let b = crate::weierstrass::fp_reduce(&fp, &mb)?;
            let f = crate::weierstrass::rhs_cubic(&fp, &a, &b);
            let fd = crate::poly::poly_derivative(&fp, &f);
            let g = crate::poly::poly_gcd(&fp, &f, &fd)?;
            if g.degree() != Some(1) {
                return Err(Error::PreconditionViolated(
                    "multiplicative fibre does not have a unique node".into(),
                ));
            }
            // root of the monic linear gcd x + g0
            let x0 = fp.neg(&g.coeffs[0]).first().copied().unwrap_or(0);
            // remaining root: f / (x - x0)^2, linear
            let lin = crate::poly::poly_from(&fp, vec![fp.neg(&fp.from_residue(x0)), fp.one()]);
            let sq = crate::poly::poly_mul(&fp, &lin, &lin);
            let (q, r) = crate::poly::poly_divrem(&fp, &f, &sq);
            debug_assert!(r.is_zero());
            let x1 = fp.neg(&q.coeffs[0]).first().copied().unwrap_or(0);
            node_images.push((idx, fp_apply_mobius(p, &twist, x0)));
            // normalization branch form (X - x1 Z) Z, declared degree 2 so
            // the vanishing top coefficient keeps the root at infinity
            let with_inf =
                BinaryForm::new(2, vec![-BigInt::from(x1), BigInt::one(), BigInt::zero()]);
            let transported = with_inf.transport(&twist);
            special_forms.push(transported.mod_p(p));
        } else {
            let quartic = branch_form_of(&ma, &mb, &twist);
            special_forms.push(quartic.mod_p(p));
        }
    }

    let generic_distinct = !branch_disjoint_generic(p1, p2).equal_as_sets;
    let special_disjoint = fp_binary_resultant(p, &special_forms[0], &special_forms[1]) != 0;
    let mut nodes_ok = true;
    for (_, node) in &node_images {
        for form in &special_forms {
            if fp_form_eval(p, form, *node) == 0 {
                nodes_ok = false;
            }
        }
    }
    for i in 0..node_images.len() {
        for j in i + 1..node_images.len() {
            if node_images[i].1 == node_images[j].1 {
                nodes_ok = false;
            }
        }
    }
    let pass = generic_distinct && special_disjoint && nodes_ok;
    Ok(MixedAssumptionReport {
        p,
        tags,
        node_images,
        special_forms: [special_forms[0].clone(), special_forms[1].clone()],
        generic_distinct,
        special_disjoint,
        nodes_ok,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_i;

    fn proj(a: i64, b: i64, twist: Mobius) -> StandardProjection {
        StandardProjection::new(Curve::short(QQ, rat_i(a), rat_i(b)), twist).unwrap()
    }

    fn form_roots_match(f: &BinaryForm, expected: &BinaryForm) -> bool {
        f.proportional(expected)
    }

    #[test]
    fn branch_form_examples() {
        // y^2 = x^3 - x, identity: X Z (X - Z)(X + Z) = X^3 Z - X Z^3
        let f = branch_form(&proj(-1, 0, Mobius::identity()));
        let expected = BinaryForm::new(
            4,
            vec![
                BigInt::zero(),
                BigInt::from(-1),
                BigInt::zero(),
                BigInt::one(),
                BigInt::zero(),
            ],
        );
        assert!(form_roots_match(&f, &expected));

        // shifted by x -> x + 1: roots {1, 2, 0, inf}
        let m = Mobius::from_i64(1, 1, 0, 1).unwrap();
        let f = branch_form(&proj(-1, 0, m));
        // X(X - Z)(X - 2Z)Z = (X^3 - 3X^2 Z + 2X Z^2) Z
        let expected = BinaryForm::new(
            4,
            vec![
                BigInt::zero(),
                BigInt::from(2),
                BigInt::from(-3),
                BigInt::one(),
                BigInt::zero(),
            ],
        );
        assert!(form_roots_match(&f, &expected));
    }

    #[test]
    fn disjointness_examples() {
        let p1 = proj(-1, 0, Mobius::identity());
        let p2 = proj(-4, 0, Mobius::identity());
        let rep = branch_disjoint_generic(&p1, &p2);
        assert!(!rep.disjoint); // shared {0, inf}
        assert!(!rep.equal_as_sets);

        let rep = branch_disjoint_generic(&p1, &p1);
        assert!(!rep.disjoint);
        assert!(rep.equal_as_sets);

        let m = Mobius::from_i64(2, 3, 1, -5).unwrap();
        let p2t = proj(-4, 0, m);
        let rep = branch_disjoint_generic(&p1, &p2t);
        assert!(rep.disjoint);
    }

    #[test]
    fn simplest_assumption() {
        let p1 = proj(-1, 0, Mobius::identity());
        let m = Mobius::from_i64(2, 3, 1, -5).unwrap();
        let p2 = proj(-4, 0, m);
        // pick a prime of good reduction for both where the resultant is a
        // unit
        let rep = check_assumption_simplest(&p1, &p2, 11).unwrap();
        assert_eq!(rep.pass, rep.v_p == 0);
        // shared infinity fails at every good prime
        let p2same = proj(-4, 0, Mobius::identity());
        let rep = check_assumption_simplest(&p1, &p2same, 11).unwrap();
        assert!(!rep.pass);
        // bad reduction rejected
        assert!(check_assumption_simplest(&p1, &p2, 2).is_err());
    }

    #[test]
    fn resultant_and_transport_consistency() {
        // transported form vanishes at images of roots: take m(x) = 2x + 3
        let m = Mobius::from_i64(2, 3, 0, 1).unwrap();
        let f = BinaryForm::new(2, vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]); // X^2 - Z^2, roots {1, -1}
        let t = f.transport(&m);
        // roots should be {5, 1}
        let eval = |form: &BinaryForm, x: i64| -> BigInt {
            form.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(x).pow(i as u32))
                .sum()
        };
        assert!(eval(&t, 5).is_zero());
        assert!(eval(&t, 1).is_zero());
        assert!(!eval(&t, 2).is_zero());
    }

    #[test]
    fn mixed_assumption_node_extraction() {
        // y^2 + xy = x^3 + 11^11 is multiplicative at 11; partner good
        // ordinary.
        let a6 = BigRational::from_integer(BigInt::from(11).pow(11));
        let mult = Curve::new(QQ, rat_i(1), rat_i(0), rat_i(0), rat_i(0), a6);
        let pm = StandardProjection::new(mult, Mobius::identity()).unwrap();
        let good = proj(-1, 0, Mobius::identity());
        let rep = check_assumption_mixed(&pm, &good, 11).unwrap();
        assert_eq!(rep.tags[0], ReductionTag::Multiplicative);
        assert_eq!(rep.node_images.len(), 1);
        // two good curves rejected
        let g2 = proj(-4, 0, Mobius::from_i64(2, 3, 1, -5).unwrap());
        assert!(check_assumption_mixed(&good, &g2, 11).is_err());
    }
}
