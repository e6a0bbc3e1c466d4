//! Frobenius liftability mod p^2 for smooth plane cubics: the defect of the
//! coordinatewise p-th power lift, the linear system for correcting it, the
//! all-lifts canonical solver, the splitting verdict for ordinary curves
//! over Q, and the Tate-parameter valuation check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fq::FqCtx;
use crate::linalg::{AffineSolution, LinearSystem};
use crate::ring::{Field, Ring, QQ};
use crate::weierstrass::{reduction_type, Curve, ReductionTag};

/// A dense homogeneous form in x, y, z over Z/q, coefficients indexed by the
/// graded-lex monomial order (x^i y^j z^k, i descending, then j descending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernForm {
    pub q: u64,
    pub deg: usize,
    pub coeffs: Vec<u64>,
}

/// Monomial exponents of a given degree in graded-lex order.
pub fn monomials(deg: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(monomial_count(deg));
    for i in (0..=deg).rev() {
        for j in (0..=deg - i).rev() {
            out.push((i, j, deg - i - j));
        }
    }
    out
}

pub fn monomial_count(deg: usize) -> usize {
    (deg + 1) * (deg + 2) / 2
}

/// Index of x^i y^j z^k within the degree-(i+j+k) monomial list.
pub fn monomial_index(deg: usize, i: usize, j: usize) -> usize {
    let t = deg - i;
    t * (t + 1) / 2 + (t - j)
}

impl TernForm {
    pub fn zero(q: u64, deg: usize) -> Self {
        TernForm {
            q,
            deg,
            coeffs: vec![0; monomial_count(deg)],
        }
    }

    pub fn from_coeffs(q: u64, deg: usize, coeffs: Vec<u64>) -> Self {
        assert_eq!(coeffs.len(), monomial_count(deg));
        TernForm {
            q,
            deg,
            coeffs: coeffs.into_iter().map(|c| c % q).collect(),
        }
    }

    pub fn from_bigints(q: u64, deg: usize, coeffs: &[BigInt]) -> Self {
        assert_eq!(coeffs.len(), monomial_count(deg));
        let qb = BigInt::from(q);
        TernForm {
            q,
            deg,
            coeffs: coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(&qb);
                    r.to_u64_digits().1.first().copied().unwrap_or(0)
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        let idx = monomial_index(self.deg, i, j);
        self.coeffs[idx] = v % self.q;
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.coeffs[monomial_index(self.deg, i, j)]
    }

    pub fn add(&self, other: &TernForm) -> TernForm {
        assert_eq!((self.q, self.deg), (other.q, other.deg));
        TernForm {
            q: self.q,
            deg: self.deg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| (a + b) % self.q)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TernForm) -> TernForm {
        assert_eq!((self.q, self.deg), (other.q, other.deg));
        TernForm {
            q: self.q,
            deg: self.deg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| (a + self.q - b) % self.q)
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> TernForm {
        TernForm {
            q: self.q,
            deg: self.deg,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| (a as u128 * c as u128 % self.q as u128) as u64)
                .collect(),
        }
    }

    pub fn mul(&self, other: &TernForm) -> TernForm {
        assert_eq!(self.q, other.q);
        let deg = self.deg + other.deg;
        let mons1 = monomials(self.deg);
        let mons2 = monomials(other.deg);
        let mut out = TernForm::zero(self.q, deg);
        for (idx1, &(i1, j1, _)) in mons1.iter().enumerate() {
            let c1 = self.coeffs[idx1];
            if c1 == 0 {
                continue;
            }
            for (idx2, &(i2, j2, _)) in mons2.iter().enumerate() {
                let c2 = other.coeffs[idx2];
                if c2 == 0 {
                    continue;
                }
                let t = monomial_index(deg, i1 + i2, j1 + j2);
                out.coeffs[t] =
                    ((out.coeffs[t] as u128 + c1 as u128 * c2 as u128) % self.q as u128) as u64;
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> TernForm {
        let mut out = {
            let mut o = TernForm::zero(self.q, 0);
            o.coeffs[0] = 1 % self.q;
            o
        };
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Reduce mod p (from a Z/p^2 form).
    pub fn mod_p(&self, p: u64) -> TernForm {
        TernForm {
            q: p,
            deg: self.deg,
            coeffs: self.coeffs.iter().map(|&c| c % p).collect(),
        }
    }

    /// Lift coefficients verbatim into Z/q2.
    pub fn lift_to(&self, q2: u64) -> TernForm {
        TernForm {
            q: q2,
            deg: self.deg,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitute x -> x^p, y -> y^p, z -> z^p.
    pub fn frobenius_substitute(&self, p: usize) -> TernForm {
        let mut out = TernForm::zero(self.q, self.deg * p);
        for (idx, &(i, j, _)) in monomials(self.deg).iter().enumerate() {
            let c = self.coeffs[idx];
            if c != 0 {
                let t = monomial_index(self.deg * p, i * p, j * p);
                out.coeffs[t] = c;
            }
        }
        out
    }

    /// Partial derivative along variable 0, 1 or 2.
    pub fn derivative(&self, var: usize) -> TernForm {
        assert!(self.deg >= 1);
        let mut out = TernForm::zero(self.q, self.deg - 1);
        for (idx, &(i, j, k)) in monomials(self.deg).iter().enumerate() {
            let c = self.coeffs[idx];
            if c == 0 {
                continue;
            }
            let (e, ni, nj) = match var {
                0 => (i, i.wrapping_sub(1), j),
                1 => (j, i, j - if j > 0 { 1 } else { 0 }),
                _ => (k, i, j),
            };
            if e == 0 {
                continue;
            }
            let t = monomial_index(self.deg - 1, ni, nj);
            out.coeffs[t] =
                ((out.coeffs[t] as u128 + c as u128 * e as u128) % self.q as u128) as u64;
        }
        out
    }

    /// Evaluate on a triple of forms of equal degree; the result has degree
    /// deg(self) * deg(args).
    pub fn eval_forms(&self, args: &[TernForm; 3]) -> TernForm {
        let d = args[0].deg;
        assert!(args.iter().all(|a| a.deg == d && a.q == self.q));
        let out_deg = self.deg * d;
        let mut out = TernForm::zero(self.q, out_deg);
        for (idx, &(i, j, k)) in monomials(self.deg).iter().enumerate() {
            let c = self.coeffs[idx];
            if c == 0 {
                continue;
            }
            let term = args[0]
                .pow(i)
                .mul(&args[1].pow(j))
                .mul(&args[2].pow(k))
                .scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a point with coordinates in an extension field.
    pub fn eval_point(&self, ext: &FqCtx, pt: &[crate::fq::FqEl; 3]) -> crate::fq::FqEl {
        let mut acc = ext.zero();
        for (idx, &(i, j, k)) in monomials(self.deg).iter().enumerate() {
            let c = self.coeffs[idx] % ext.p;
            if c == 0 {
                continue;
            }
            let mut term = ext.from_residue(c);
            term = ext.mul(&term, &ext.pow_u(&pt[0], i as u64));
            term = ext.mul(&term, &ext.pow_u(&pt[1], j as u64));
            term = ext.mul(&term, &ext.pow_u(&pt[2], k as u64));
            acc = ext.add(&acc, &term);
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Smoothness and ordinarity of plane cubics over F_p
// ---------------------------------------------------------------------------

/// Search for a singular point of the cubic over F_{p^d}, d <= 3. A singular
/// cubic always has a singular point of degree at most 3 (an irreducible
/// cubic has at most one node or cusp, necessarily rational; a reducible one
/// degenerates into a conic and a line or three lines, whose intersection
/// points have degree at most 3).
pub fn cubic_is_smooth(e: &TernForm) -> bool {
    assert_eq!(e.deg, 3);
    let p = e.q;
    if e.is_zero() {
        return false;
    }
    let parts = [e.derivative(0), e.derivative(1), e.derivative(2)];
    for d in 1..=3usize {
        let ext = if d == 1 {
            FqCtx::prime_field(p)
        } else {
            FqCtx::extension(p, d)
        };
        if singular_point_in(&parts, &ext) {
            return false;
        }
    }
    true
}

fn singular_point_in(parts: &[TernForm; 3], ext: &FqCtx) -> bool {
    // affine chart z = 1: solve the first not-identically-zero partial as a
    // polynomial in y for each x, then check the remaining partials; then
    // the line z = 0.
    let size = ext.size();
    for ix in 0..size {
        let x = ext.el_by_index(ix);
        for y in candidate_ys(parts, ext, &x) {
            let pt = [x.clone(), y, ext.one()];
            if parts.iter().all(|f| ext.is_zero(&f.eval_point(ext, &pt))) {
                return true;
            }
        }
    }
    // z = 0, y = 1
    for ix in 0..size {
        let x = ext.el_by_index(ix);
        let pt = [x, ext.one(), ext.zero()];
        if parts.iter().all(|f| ext.is_zero(&f.eval_point(ext, &pt))) {
            return true;
        }
    }
    // (1 : 0 : 0)
    let pt = [ext.one(), ext.zero(), ext.zero()];
    parts.iter().all(|f| ext.is_zero(&f.eval_point(ext, &pt)))
}

/// Roots y of the first partial that depends on y at the given x (z = 1);
/// falls back to scanning if every partial is y-free.
fn candidate_ys(parts: &[TernForm; 3], ext: &FqCtx, x: &crate::fq::FqEl) -> Vec<crate::fq::FqEl> {
    for f in parts {
        // coefficients of f(x, y, 1) as a polynomial in y (degree <= 2)
        let mut cs = vec![ext.zero(); f.deg + 1];
        for (idx, &(i, j, _)) in monomials(f.deg).iter().enumerate() {
            let c = f.coeffs[idx] % ext.p;
            if c == 0 {
                continue;
            }
            let term = ext.mul(&ext.from_residue(c), &ext.pow_u(x, i as u64));
            cs[j] = ext.add(&cs[j], &term);
        }
        while cs.last().is_some_and(|c| ext.is_zero(c)) {
            cs.pop();
        }
        match cs.len() {
            0 => continue, // identically zero in y at this x; try next partial
            1 => {
                if ext.is_zero(&cs[0]) {
                    continue;
                }
                return vec![]; // nonzero constant: no roots at this x
            }
            2 => {
                return vec![ext.neg(&ext.div(&cs[0], &cs[1]))];
            }
            _ => {
                // quadratic a y^2 + b y + c
                let (a, b, c) = (&cs[2], &cs[1], &cs[0]);
                let four = ext.from_i64(4);
                let disc = ext.sub(&ext.mul(b, b), &ext.mul(&four, &ext.mul(a, c)));
                return match ext.sqrt(&disc) {
                    None => vec![],
                    Some(s) => {
                        let inv2a = ext.inv(&ext.mul(&ext.from_i64(2), a));
                        let r1 = ext.mul(&ext.sub(&ext.neg(b), &s), &inv2a);
                        let r2 = ext.mul(&ext.add(&ext.neg(b), &s), &inv2a);
                        if r1 == r2 {
                            vec![r1]
                        } else {
                            vec![r1, r2]
                        }
                    }
                };
            }
        }
    }
    // all partials y-free and vanishing identically in y: scan
    (0..ext.size()).map(|i| ext.el_by_index(i)).collect()
}

/// Hasse invariant of a smooth plane cubic over F_p: the coefficient of
/// (xyz)^(p-1) in e^(p-1). Nonzero iff the cubic is ordinary.
pub fn cubic_is_ordinary(e: &TernForm) -> Result<bool> {
    assert_eq!(e.deg, 3);
    if !cubic_is_smooth(e) {
        return Err(Error::SingularReduction);
    }
    let p = e.q as usize;
    let power = e.pow(p - 1);
    let coeff = power.coeffs[monomial_index(3 * (p - 1), p - 1, p - 1)];
    Ok(coeff != 0)
}

// ---------------------------------------------------------------------------
// The lift problem
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct LiftProblem {
    pub p: u64,
    /// The cubic over Z/p^2.
    pub e: TernForm,
    /// Its reduction mod p.
    pub ep: TernForm,
    /// Defect d with e(x^p, y^p, z^p) - e^p = p d, over F_p, degree 3p.
    pub defect: TernForm,
}

/// Expand e(x^p,y^p,z^p) - e^p over Z/p^2 and divide the provably divisible
/// result by p.
pub fn assemble_defect(e_int: &[BigInt], p: u64) -> Result<LiftProblem> {
    let p2 = p * p;
    let e = TernForm::from_bigints(p2, 3, e_int);
    let ep = e.mod_p(p);
    if !cubic_is_smooth(&ep) {
        return Err(Error::SingularReduction);
    }
    let ef = e.frobenius_substitute(p as usize);
    let epow = e.pow(p as usize);
    let diff = ef.sub(&epow);
    let mut defect = TernForm::zero(p, 3 * p as usize);
    for (t, &c) in diff.coeffs.iter().enumerate() {
        debug_assert_eq!(c % p, 0, "e(f) - e^p must vanish mod p");
        defect.coeffs[t] = (c / p) % p;
    }
    Ok(LiftProblem { p, e, ep, defect })
}

#[derive(Clone, Debug)]
pub struct LiftSolution {
    pub solvable: bool,
    /// Correction forms (f'_x, f'_y, f'_z) of degree p over F_p.
    pub fprime: Option<[TernForm; 3]>,
    /// Cofactor form of degree 3p - 3 over F_p.
    pub c: Option<TernForm>,
    pub kernel_dim: usize,
    /// Witness re-verified by expanding e(f + p f') - e^p = p c e mod p^2.
    pub verified: bool,
}

struct SystemLayout {
    rows: usize,
    fprime_count: usize,
    c_count: usize,
}

impl SystemLayout {
    fn new(p: u64) -> Self {
        let pu = p as usize;
        SystemLayout {
            rows: monomial_count(3 * pu),
            fprime_count: monomial_count(pu),
            c_count: monomial_count(3 * pu - 3),
        }
    }
}

/// Columns of the linear condition d + (grad e)(f) f' - c e = 0 mod p, in
/// the unknown order [f'_x | f'_y | f'_z | c | extra].
fn build_system(problem: &LiftProblem, extra_e1: bool) -> (LinearSystem, SystemLayout) {
    let p = problem.p;
    let pu = p as usize;
    let layout = SystemLayout::new(p);
    let cols = 3 * layout.fprime_count + layout.c_count + if extra_e1 { 10 } else { 0 };
    let mut sys = LinearSystem::new(p, layout.rows, cols);
    // gradient columns
    let grads: Vec<TernForm> = (0..3)
        .map(|v| problem.ep.derivative(v).frobenius_substitute(pu))
        .collect();
    let fp_mons = monomials(pu);
    for (var, grad) in grads.iter().enumerate() {
        let grad_mons = monomials(grad.deg);
        for (mi, &(i, j, _)) in fp_mons.iter().enumerate() {
            let col = var * layout.fprime_count + mi;
            for (gi, &(gi_i, gi_j, _)) in grad_mons.iter().enumerate() {
                let c = grad.coeffs[gi];
                if c != 0 {
                    let row = monomial_index(3 * pu, gi_i + i, gi_j + j);
                    sys.add_to(row, col, c);
                }
            }
        }
    }
    // -c e columns
    let c_mons = monomials(3 * pu - 3);
    let e_mons = monomials(3);
    for (mi, &(i, j, _)) in c_mons.iter().enumerate() {
        let col = 3 * layout.fprime_count + mi;
        for (ei, &(e_i, e_j, _)) in e_mons.iter().enumerate() {
            let c = problem.ep.coeffs[ei];
            if c != 0 {
                let row = monomial_index(3 * pu, e_i + i, e_j + j);
                sys.add_to(row, col, p - c);
            }
        }
    }
    if extra_e1 {
        // a degree-3 perturbation e -> e + p e1 shifts the defect by
        // e1(x^p, y^p, z^p)
        for (mi, &(i, j, _)) in e_mons.iter().enumerate() {
            let col = 3 * layout.fprime_count + layout.c_count + mi;
            let row = monomial_index(3 * pu, i * pu, j * pu);
            sys.add_to(row, col, 1);
        }
    }
    // rhs = -d
    for (t, &c) in problem.defect.coeffs.iter().enumerate() {
        sys.set_rhs(t, (p - c % p) % p);
    }
    (sys, layout)
}

fn extract_forms(layout: &SystemLayout, p: u64, sol: &[u64]) -> ([TernForm; 3], TernForm) {
    let pu = p as usize;
    let n = layout.fprime_count;
    let mk = |range: &[u64], deg: usize| TernForm::from_coeffs(p, deg, range.to_vec());
    let f0 = mk(&sol[0..n], pu);
    let f1 = mk(&sol[n..2 * n], pu);
    let f2 = mk(&sol[2 * n..3 * n], pu);
    let c = mk(&sol[3 * n..3 * n + layout.c_count], 3 * pu - 3);
    ([f0, f1, f2], c)
}

/// Independent witness check: e(f + p f') - e^p = p c e over Z/p^2.
pub fn verify_witness(problem: &LiftProblem, fprime: &[TernForm; 3], c: &TernForm) -> bool {
    let p = problem.p;
    let p2 = p * p;
    let pu = p as usize;
    let mut args: Vec<TernForm> = Vec::with_capacity(3);
    for (var, f) in fprime.iter().enumerate() {
        let mut base = TernForm::zero(p2, pu);
        let (i, j) = match var {
            0 => (pu, 0),
            1 => (0, pu),
            _ => (0, 0),
        };
        base.coeffs[monomial_index(pu, i, j)] = 1;
        let lifted = f.lift_to(p2).scale(p);
        args.push(base.add(&lifted));
    }
    let args: [TernForm; 3] = [args[0].clone(), args[1].clone(), args[2].clone()];
    let lhs = problem.e.eval_forms(&args).sub(&problem.e.pow(pu));
    let rhs = c.lift_to(p2).mul(&problem.e).scale(p);
    lhs == rhs
}

/// Solve the Frobenius-lift condition for a fixed cubic over Z/p^2.
pub fn frobenius_lift_test(problem: &LiftProblem) -> LiftSolution {
    let (sys, layout) = build_system(problem, false);
    match sys.solve_affine() {
        AffineSolution::Unsolvable => LiftSolution {
            solvable: false,
            fprime: None,
            c: None,
            kernel_dim: 0,
            verified: false,
        },
        AffineSolution::Solved {
            particular,
            kernel_basis,
        } => {
            let (fprime, c) = extract_forms(&layout, problem.p, &particular);
            let verified = verify_witness(problem, &fprime, &c);
            LiftSolution {
                solvable: true,
                fprime: Some(fprime),
                c: Some(c),
                kernel_dim: kernel_basis.len(),
                verified,
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalLiftSpace {
    /// A particular perturbation e1 (10 graded-lex cubic coefficients) such
    /// that e + p e1 admits a Frobenius lift.
    pub e1: Vec<u64>,
    /// Dimension of the full solution kernel (f', c, e1 jointly).
    pub kernel_dim: usize,
    pub solvable: bool,
}

/// Work with all lifts of a smooth ordinary cubic e0 over F_p at once:
/// solve for a perturbation e1 together with f' and c.
pub fn canonical_lift_space(e0: &TernForm, p: u64) -> Result<CanonicalLiftSpace> {
    if !cubic_is_ordinary(e0)? {
        return Err(Error::NotOrdinary);
    }
    let e_int: Vec<BigInt> = e0.coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let problem = assemble_defect(&e_int, p)?;
    let (sys, layout) = build_system(&problem, true);
    match sys.solve_affine() {
        AffineSolution::Unsolvable => Ok(CanonicalLiftSpace {
            e1: vec![],
            kernel_dim: 0,
            solvable: false,
        }),
        AffineSolution::Solved {
            particular,
            kernel_basis,
        } => {
            let off = 3 * layout.fprime_count + layout.c_count;
            Ok(CanonicalLiftSpace {
                e1: particular[off..off + 10].to_vec(),
                kernel_dim: kernel_basis.len(),
                solvable: true,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Splitting verdict and Tate parameter for curves over Q
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplittingTag {
    /// Frobenius does not lift mod p^2: Serre-Tate valuation w = 1.
    NonSplitModP2,
    /// Frobenius lifts mod p^2: w >= 2 (possibly canonical).
    SplitsModP2,
}

#[derive(Clone, Debug)]
pub struct SplittingVerdict {
    pub tag: SplittingTag,
    pub witness: Option<LiftSolution>,
}

/// The homogenized p-minimal Weierstrass cubic x^3 + a x z^2 + b z^3 - y^2 z
/// with p^2-reduced coefficients.
pub fn weierstrass_cubic_mod(curve: &Curve<QQ>, p: u64) -> Result<Vec<BigInt>> {
    let min = crate::weierstrass::minimal_at_p(curve, p)?;
    let p2 = BigInt::from(p * p);
    let red = |r: &num_rational::BigRational| -> Result<BigInt> {
        if (r.denom() % BigInt::from(p)).is_zero() {
            return Err(Error::PreconditionViolated(
                "coefficient not p-integral".into(),
            ));
        }
        let den_inv = mod_inverse_big(&r.denom().mod_floor(&p2), &p2)
            .ok_or_else(|| Error::PreconditionViolated("denominator not invertible".into()))?;
        Ok((r.numer() * den_inv).mod_floor(&p2))
    };
    let a = red(&min.a4)?;
    let b = red(&min.a6)?;
    // graded-lex coefficients of degree 3 in (x, y, z):
    // x^3, x^2 y, x^2 z, x y^2, x y z, x z^2, y^3, y^2 z, y z^2, z^3
    Ok(vec![
        BigInt::from(1),
        BigInt::from(0),
        BigInt::from(0),
        BigInt::from(0),
        BigInt::from(0),
        a,
        BigInt::from(0),
        BigInt::from(-1),
        BigInt::from(0),
        b,
    ])
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Decide whether the connected-etale sequence splits mod p^2 for a curve
/// with good ordinary reduction at p, via the Frobenius-lift test on the
/// homogenized minimal Weierstrass cubic.
pub fn splitting_verdict(curve: &Curve<QQ>, p: u64) -> Result<SplittingVerdict> {
    let info = reduction_type(curve, p)?;
    if info.tag != ReductionTag::GoodOrdinary {
        return Err(Error::PreconditionViolated(format!(
            "reduction at {p} is {:?}, not good ordinary",
            info.tag
        )));
    }
    let e_int = weierstrass_cubic_mod(curve, p)?;
    let problem = assemble_defect(&e_int, p)?;
    let sol = frobenius_lift_test(&problem);
    let tag = if sol.solvable {
        SplittingTag::SplitsModP2
    } else {
        SplittingTag::NonSplitModP2
    };
    Ok(SplittingVerdict {
        tag,
        witness: if sol.solvable { Some(sol) } else { None },
    })
}

/// Tate-parameter valuation for multiplicative reduction: v(q) = -v_p(j)
/// = v_p(disc_min), plus the valuation-level necessary condition v(q) = p
/// for q to be a p-th power of a uniformizer.
pub fn tate_parameter_valuation(curve: &Curve<QQ>, p: u64) -> Result<(i64, bool)> {
    let info = reduction_type(curve, p)?;
    if info.tag != ReductionTag::Multiplicative {
        return Err(Error::PreconditionViolated(format!(
            "reduction at {p} is {:?}, not multiplicative",
            info.tag
        )));
    }
    let vq = info
        .v_disc
        .expect("multiplicative reduction has finite v(disc)");
    Ok((vq, vq == p as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_i;

    /// y^2 z = x^3 + z^3 as integer graded-lex coefficients.
    fn fermat_like_cubic() -> Vec<BigInt> {
        vec![
            BigInt::from(1),
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(-1),
            BigInt::from(0),
            BigInt::from(1),
        ]
    }

    #[test]
    fn monomial_indexing_roundtrip() {
        for deg in [1usize, 2, 3, 7, 15] {
            for (idx, (i, j, _)) in monomials(deg).iter().enumerate() {
                assert_eq!(monomial_index(deg, *i, *j), idx);
            }
        }
    }

    #[test]
    fn defect_identity() {
        let problem = assemble_defect(&fermat_like_cubic(), 7).unwrap();
        // p * d = e(f) - e^p mod p^2 by construction; recheck directly
        let ef = problem.e.frobenius_substitute(7);
        let epow = problem.e.pow(7);
        let diff = ef.sub(&epow);
        let pd = problem.defect.lift_to(49).scale(7);
        assert_eq!(diff, pd);
    }

    #[test]
    fn degenerate_cubic_rejected() {
        // e = x^3 is singular
        let mut e = vec![BigInt::from(0); 10];
        e[0] = BigInt::from(1);
        assert!(matches!(
            assemble_defect(&e, 7),
            Err(Error::SingularReduction)
        ));
    }

    #[test]
    fn cm_cubic_splits_at_7() {
        let problem = assemble_defect(&fermat_like_cubic(), 7).unwrap();
        let sol = frobenius_lift_test(&problem);
        assert!(sol.solvable);
        assert!(sol.verified);
    }

    #[test]
    fn splitting_verdict_examples() {
        let curve = Curve::short(QQ, rat_i(0), rat_i(1));
        let v = splitting_verdict(&curve, 7).unwrap();
        assert_eq!(v.tag, SplittingTag::SplitsModP2);
        assert!(v.witness.unwrap().verified);
        // supersingular at 5 rejected
        assert!(splitting_verdict(&curve, 5).is_err());
    }

    #[test]
    fn canonical_space_contains_cm_point() {
        let p2 = TernForm::from_bigints(49, 3, &fermat_like_cubic());
        let e0 = p2.mod_p(7);
        let space = canonical_lift_space(&e0, 7).unwrap();
        assert!(space.solvable);
        // supersingular rejected: y^2 z = x^3 + z^3 at p = 5
        let e5 = TernForm::from_bigints(25, 3, &fermat_like_cubic()).mod_p(5);
        assert!(matches!(
            canonical_lift_space(&e5, 5),
            Err(Error::NotOrdinary)
        ));
    }

    #[test]
    fn tate_valuation_examples() {
        let a6 = num_rational::BigRational::from_integer(BigInt::from(11).pow(11));
        let c = Curve::new(QQ, rat_i(1), rat_i(0), rat_i(0), rat_i(0), a6);
        assert_eq!(tate_parameter_valuation(&c, 11).unwrap(), (11, true));
        // classical conductor-11 curve y^2 + y = x^3 - x^2 - 10x - 20
        let c = Curve::new(QQ, rat_i(0), rat_i(-1), rat_i(1), rat_i(-10), rat_i(-20));
        assert_eq!(tate_parameter_valuation(&c, 11).unwrap(), (5, false));
        // good reduction rejected
        let g = Curve::short(QQ, rat_i(-1), rat_i(0));
        assert!(tate_parameter_valuation(&g, 11).is_err());
    }

    #[test]
    fn ordinarity_matches_weierstrass_hasse() {
        // y^2 z = x^3 + x z^2 over F_5 is ordinary; x^3 + z^3 is not
        let mut e = TernForm::zero(5, 3);
        e.set(3, 0, 1); // x^3
        e.set(1, 0, 1); // x z^2
        e.set(0, 2, 5 - 1); // -y^2 z
        assert!(cubic_is_ordinary(&e).unwrap());
    }
}
