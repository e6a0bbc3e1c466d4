//! Randomized and exhaustive property suites for the algebra, curve and
//! projection layers. All randomness is seeded for reproducibility.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsion_bounds::bound::{
    coarse_bound, split_bound, supersingular_bound, total_bound, OrbitModel,
};
use torsion_bounds::fq::FqCtx;
use torsion_bounds::poly::{poly_divrem, poly_eval, poly_from, squarefree_part_fq};
use torsion_bounds::projection::{branch_form, BinaryForm, Mobius, StandardProjection};
use torsion_bounds::ring::{is_prime, rat_i, Field, Ring, QQ};
use torsion_bounds::weierstrass::Curve;
use torsion_bounds::zpoly::{zgcd, zmul, zpoly_to_q};

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

fn random_curve(rng: &mut ChaCha8Rng) -> Curve<QQ> {
    loop {
        let c = Curve::new(
            QQ,
            rat_i(rng.gen_range(-3..=3)),
            rat_i(rng.gen_range(-3..=3)),
            rat_i(rng.gen_range(-3..=3)),
            rat_i(rng.gen_range(-9..=9)),
            rat_i(rng.gen_range(-9..=9)),
        );
        if !c.is_singular() {
            return c;
        }
    }
}

/// Coordinate change (u, r, s, t) acting on Weierstrass coefficients.
fn transform(
    c: &Curve<QQ>,
    u: &BigRational,
    r: &BigRational,
    s: &BigRational,
    t: &BigRational,
) -> Curve<QQ> {
    let q = QQ;
    let u2 = q.mul(u, u);
    let u3 = q.mul(&u2, u);
    let a1 = q.div(&q.add(&c.a1, &q.mul(&rat_i(2), s)), u);
    let a2 = q.div(
        &q.sub(
            &q.add(&c.a2, &q.mul(&rat_i(3), r)),
            &q.add(&q.mul(s, &c.a1), &q.mul(s, s)),
        ),
        &u2,
    );
    let a3 = q.div(
        &q.add(&q.add(&c.a3, &q.mul(r, &c.a1)), &q.mul(&rat_i(2), t)),
        &u3,
    );
    let a4 = q.div(
        &q.sub(
            &q.add(
                &q.sub(&c.a4, &q.mul(s, &c.a3)),
                &q.mul(&q.mul(&rat_i(2), r), &c.a2),
            ),
            &q.add(
                &q.mul(&q.add(t, &q.mul(r, s)), &c.a1),
                &q.sub(
                    &q.mul(&q.mul(&rat_i(2), s), t),
                    &q.mul(&rat_i(3), &q.mul(r, r)),
                ),
            ),
        ),
        &q.mul(&u2, &u2),
    );
    let a6 = q.div(
        &q.sub(
            &q.add(
                &q.add(&c.a6, &q.mul(r, &c.a4)),
                &q.add(&q.mul(&q.mul(r, r), &c.a2), &q.mul(&q.mul(r, r), r)),
            ),
            &q.add(
                &q.add(&q.mul(t, &c.a3), &q.mul(t, t)),
                &q.mul(&q.mul(r, t), &c.a1),
            ),
        ),
        &q.mul(&u3, &u3),
    );
    Curve::new(QQ, a1, a2, a3, a4, a6)
}

#[test]
fn j_invariant_under_coordinate_changes() {
    let mut rng = rng();
    let q = QQ;
    for _ in 0..50 {
        let c = random_curve(&mut rng);
        let inv = c.invariants();
        let u = rat_i(*[1, -1, 2, 3].get(rng.gen_range(0..4)).unwrap());
        let r = rat_i(rng.gen_range(-4..=4));
        let s = rat_i(rng.gen_range(-4..=4));
        let t = rat_i(rng.gen_range(-4..=4));
        let c2 = transform(&c, &u, &r, &s, &t);
        let inv2 = c2.invariants();
        assert_eq!(inv.j, inv2.j, "j must be invariant");
        let u12 = q.pow_u(&u, 12);
        assert_eq!(inv.disc, q.mul(&inv2.disc, &u12), "disc scales by u^12");
    }
}

fn count_points(p: u64, a: i64, b: i64) -> u64 {
    let fp = FqCtx::prime_field(p);
    let av = fp.from_i64(a);
    let bv = fp.from_i64(b);
    let f = poly_from(&fp, vec![bv.clone(), av.clone(), fp.zero(), fp.one()]);
    let mut count = 1u64; // infinity
    for x in 0..p {
        let v = poly_eval(&fp, &f, &fp.from_residue(x));
        if fp.is_zero(&v) {
            count += 1;
        } else if fp.sqrt(&v).is_some() {
            count += 2;
        }
    }
    count
}

#[test]
fn hasse_bound_on_random_curves() {
    let mut rng = rng();
    for &p in &[5u64, 7, 11, 13] {
        for _ in 0..25 {
            let a = rng.gen_range(0..p as i64);
            let b = rng.gen_range(0..p as i64);
            let disc = (4 * a.pow(3) + 27 * b.pow(2)).rem_euclid(p as i64);
            if disc == 0 {
                continue;
            }
            let n = count_points(p, a, b) as i64;
            let dev = (n - (p as i64 + 1)).abs();
            assert!(
                (dev * dev) as u64 <= 4 * p,
                "Hasse bound violated: p={p} a={a} b={b} N={n}"
            );
        }
    }
}

fn random_mobius(rng: &mut ChaCha8Rng) -> Mobius {
    loop {
        let m = Mobius::new(
            BigInt::from(rng.gen_range(-5i64..=5)),
            BigInt::from(rng.gen_range(-5i64..=5)),
            BigInt::from(rng.gen_range(-5i64..=5)),
            BigInt::from(rng.gen_range(-5i64..=5)),
        );
        if let Ok(m) = m {
            return m;
        }
    }
}

#[test]
fn branch_form_transport_is_functorial() {
    let mut rng = rng();
    let base = BinaryForm::new(
        4,
        vec![
            BigInt::from(1),
            BigInt::from(-2),
            BigInt::from(0),
            BigInt::from(3),
            BigInt::from(1),
        ],
    );
    for _ in 0..50 {
        let m = random_mobius(&mut rng);
        let n = random_mobius(&mut rng);
        let two_step = base.transport(&m).transport(&n);
        let one_step = base.transport(&n.compose(&m));
        assert!(
            two_step.proportional(&one_step),
            "transport must compose contravariantly: m={m:?} n={n:?}"
        );
    }
}

#[test]
fn branch_form_matches_twisted_projection() {
    // the branch form of a twisted projection is the transported branch
    // form of the untwisted one
    let mut rng = rng();
    for _ in 0..20 {
        let c = random_curve(&mut rng);
        let m = random_mobius(&mut rng);
        let plain = StandardProjection::new(c.clone(), Mobius::identity()).unwrap();
        let twisted = StandardProjection::new(c, m.clone()).unwrap();
        assert!(branch_form(&plain)
            .transport(&m)
            .proportional(&branch_form(&twisted)));
    }
}

#[test]
fn branch_quartic_squarefree_iff_nonsingular_over_f5() {
    let fp = FqCtx::prime_field(5);
    for a in 0..5i64 {
        for b in 0..5i64 {
            let disc = (4 * a.pow(3) + 27 * b.pow(2)).rem_euclid(5);
            // affine part x^3 + a x + b of the branch quartic (the fourth
            // branch point at infinity is always simple)
            let f = poly_from(
                &fp,
                vec![fp.from_i64(b), fp.from_i64(a), fp.zero(), fp.one()],
            );
            let sqfree = squarefree_part_fq(&fp, &f).unwrap().degree() == f.degree();
            assert_eq!(
                sqfree,
                disc != 0,
                "squarefree branch cubic iff nonsingular: a={a} b={b}"
            );
        }
    }
}

#[test]
fn bound_monotonicity_and_ordering() {
    let primes: Vec<u64> = (5..=97).filter(|&n| is_prime(n)).collect();
    for w in primes.windows(2) {
        assert!(coarse_bound(w[0]) < coarse_bound(w[1]));
        assert!(supersingular_bound(w[0]) < supersingular_bound(w[1]));
    }
    for &p in &primes {
        assert!(split_bound(p, 2).unwrap() < split_bound(p, 1).unwrap());
        assert!(split_bound(p, 1).unwrap() < coarse_bound(p));
        // the total bound covers all torsion, so it dominates the coarse one
        for q in [5u64, 7] {
            let m = OrbitModel::OrdinaryNonSplit { w: 1 };
            let (_, t) = total_bound(p, q, &[m.clone(), m]).unwrap();
            assert!(t >= coarse_bound(p));
        }
    }
}

#[test]
fn zgcd_detects_common_factors() {
    let mut rng = rng();
    for _ in 0..30 {
        let rand_poly = |rng: &mut ChaCha8Rng, d: usize| -> Vec<BigInt> {
            let mut v: Vec<BigInt> = (0..d)
                .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                .collect();
            v.push(BigInt::from(rng.gen_range(1i64..=3)));
            v
        };
        let h = rand_poly(&mut rng, 2);
        let f = zmul(&rand_poly(&mut rng, 3), &h);
        let g = zmul(&rand_poly(&mut rng, 3), &h);
        let d = zgcd(&f, &g).unwrap();
        // h divides gcd(f h', g h'): check by exact division over Q
        let (_, rem) = poly_divrem(&QQ, &zpoly_to_q(&d), &zpoly_to_q(&h));
        assert!(rem.is_zero(), "gcd must be divisible by the common factor");
    }
}
