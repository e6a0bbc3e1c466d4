//! Finite fields F_{p^m} for small p and m, with a fixed irreducible modulus
//! chosen deterministically per (p, m) so that runs are reproducible.

use crate::ring::{is_prime, Field, Ring};

/// Elements are coordinate vectors of length m relative to the power basis of
/// the fixed modulus, lowest degree first, each entry reduced mod p.
pub type FqEl = Vec<u64>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqCtx {
    pub p: u64,
    pub m: usize,
    /// Monic irreducible modulus, coefficients lowest first, length m+1.
    pub modulus: Vec<u64>,
}

// -- arithmetic on raw F_p[x] coefficient vectors (lowest degree first) --

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pmul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    trim(&mut out);
    out
}

fn psub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn inv_mod(p: u64, a: u64) -> u64 {
    // Fermat
    let mut e = p - 2;
    let mut base = a as u128;
    let mut acc: u128 = 1;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Remainder of a modulo the monic polynomial f.
fn prem(p: u64, a: &[u64], f: &[u64]) -> Vec<u64> {
    let df = f.len() - 1;
    let lc_inv = inv_mod(p, f[df]);
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    while r.len() > df {
        let dr = r.len() - 1;
        let c = (r[dr] as u128 * lc_inv as u128 % p as u128) as u64;
        for i in 0..=df {
            let t = (c as u128 * f[i] as u128 % p as u128) as u64;
            r[dr - df + i] = (r[dr - df + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn pgcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lc_inv = inv_mod(p, *b.last().unwrap());
        let bm: Vec<u64> = b
            .iter()
            .map(|&c| (c as u128 * lc_inv as u128 % p as u128) as u64)
            .collect();
        let r = prem(p, &a, &bm);
        a = bm;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let li = inv_mod(p, lc);
        a = a
            .iter()
            .map(|&c| (c as u128 * li as u128 % p as u128) as u64)
            .collect();
    }
    a
}

/// x^(p^k) mod f, by repeated Frobenius of x.
fn xq_pow_mod(p: u64, k: u32, f: &[u64]) -> Vec<u64> {
    let mut cur = vec![0, 1]; // x
    for _ in 0..k {
        cur = ppow_mod(p, &cur, p, f);
    }
    cur
}

fn ppow_mod(p: u64, a: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
    let mut base = prem(p, a, f);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = prem(p, &pmul(p, &acc, &base), f);
        }
        base = prem(p, &pmul(p, &base, &base), f);
        e >>= 1;
    }
    acc
}

fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let m = f.len() - 1;
    // x^(p^m) == x mod f
    let xm = xq_pow_mod(p, m as u32, f);
    let x: Vec<u64> = vec![0, 1];
    if psub(p, &xm, &prem(p, &x, f)) != Vec::<u64>::new() {
        return false;
    }
    // for each prime l | m: gcd(x^(p^(m/l)) - x, f) = 1
    let mut mm = m;
    let mut l = 2;
    let mut prime_divs = vec![];
    while l * l <= mm {
        if mm.is_multiple_of(l) {
            prime_divs.push(l);
            while mm.is_multiple_of(l) {
                mm /= l;
            }
        }
        l += 1;
    }
    if mm > 1 {
        prime_divs.push(mm);
    }
    for l in prime_divs {
        let xe = xq_pow_mod(p, (m / l) as u32, f);
        let g = pgcd(p, &psub(p, &xe, &prem(p, &x, f)), f);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FqCtx {
    /// Prime field F_p.
    pub fn prime_field(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        FqCtx {
            p,
            m: 1,
            modulus: vec![0, 1],
        }
    }

    /// F_{p^m} with the lexicographically first monic irreducible modulus of
    /// degree m (coefficients compared lowest first).
    pub fn extension(p: u64, m: usize) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        assert!(m >= 1);
        if m == 1 {
            return Self::prime_field(p);
        }
        let mut coeffs = vec![0u64; m];
        loop {
            let mut f = coeffs.clone();
            f.push(1);
            if is_irreducible(p, &f) {
                return FqCtx { p, m, modulus: f };
            }
            // increment the length-m counter base p
            let mut i = 0;
            loop {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
                assert!(i < m, "no irreducible of degree {m} over F_{p} found");
            }
        }
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn el_from_coords(&self, mut v: Vec<u64>) -> FqEl {
        for c in v.iter_mut() {
            *c %= self.p;
        }
        v.resize(self.m, 0);
        v
    }

    /// Embed a prime-field residue.
    pub fn from_residue(&self, r: u64) -> FqEl {
        let mut v = vec![0; self.m];
        v[0] = r % self.p;
        v
    }

    /// The element with index i under base-p digit enumeration; iterating
    /// i in 0..size() visits every field element exactly once.
    pub fn el_by_index(&self, mut i: u64) -> FqEl {
        let mut v = vec![0u64; self.m];
        for c in v.iter_mut() {
            *c = i % self.p;
            i /= self.p;
        }
        v
    }

    /// Inverse of el_by_index.
    pub fn el_index(&self, a: &FqEl) -> u64 {
        a.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    pub fn frobenius(&self, a: &FqEl) -> FqEl {
        self.pow_u(a, self.p)
    }

    /// Minimal polynomial over F_p, monic, coefficients as residues.
    pub fn min_poly(&self, a: &FqEl) -> Vec<u64> {
        let mut conj = a.clone();
        let mut conjs = vec![];
        loop {
            conjs.push(conj.clone());
            conj = self.frobenius(&conj);
            if conj == *a {
                break;
            }
        }
        // product of (x - c) over F_{p^m}[x], then drop to F_p coefficients
        let mut poly: Vec<FqEl> = vec![self.one()];
        for c in &conjs {
            let mut next: Vec<FqEl> = vec![self.zero(); poly.len() + 1];
            for (i, co) in poly.iter().enumerate() {
                next[i + 1] = self.add(&next[i + 1], co);
                next[i] = self.sub(&next[i], &self.mul(co, c));
            }
            poly = next;
        }
        poly.iter()
            .map(|c| {
                assert!(
                    c[1..].iter().all(|&x| x == 0),
                    "min poly coefficient not in F_p"
                );
                c[0]
            })
            .collect()
    }

    /// Euler criterion; the zero element counts as a square.
    pub fn is_square(&self, a: &FqEl) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (self.size() - 1) / 2;
        self.is_one(&self.pow_u(a, e))
    }

    /// One square root if it exists (Tonelli-Shanks in the cyclic group,
    /// done by brute-force-free exponentiation for q = 3 mod 4 and a
    /// deterministic search otherwise; fields here are tiny).
    pub fn sqrt(&self, a: &FqEl) -> Option<FqEl> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let q = self.size();
        if q % 4 == 3 {
            return Some(self.pow_u(a, (q + 1) / 4));
        }
        // Tonelli-Shanks with a deterministic non-residue search
        let mut t = q - 1;
        let mut s = 0u32;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = (1..q)
            .map(|i| self.el_by_index(i))
            .find(|z| !self.is_square(z))
            .expect("finite field of odd size has a non-residue");
        let mut m = s;
        let mut c = self.pow_u(&z, t);
        let mut u = self.pow_u(a, t);
        let mut r = self.pow_u(a, t.div_ceil(2));
        while !self.is_one(&u) {
            let mut i = 0u32;
            let mut probe = u.clone();
            while !self.is_one(&probe) {
                probe = self.mul(&probe, &probe);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..m - i - 1 {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            u = self.mul(&u, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Ring for FqCtx {
    type El = FqEl;

    fn zero(&self) -> FqEl {
        vec![0; self.m]
    }
    fn one(&self) -> FqEl {
        self.from_residue(1)
    }
    fn add(&self, a: &FqEl, b: &FqEl) -> FqEl {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }
    fn sub(&self, a: &FqEl, b: &FqEl) -> FqEl {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }
    fn neg(&self, a: &FqEl) -> FqEl {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }
    fn mul(&self, a: &FqEl, b: &FqEl) -> FqEl {
        let prod = pmul(self.p, a, b);
        let mut r = prem(self.p, &prod, &self.modulus);
        r.resize(self.m, 0);
        r
    }
    fn from_i64(&self, n: i64) -> FqEl {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.from_residue(r)
    }
    fn is_zero(&self, a: &FqEl) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Field for FqCtx {
    fn inv(&self, a: &FqEl) -> FqEl {
        assert!(
            !Ring::is_zero(self, a),
            "inverse of zero in F_{{{}^{}}}",
            self.p,
            self.m
        );
        // a^(q-2)
        self.pow_u(a, self.size() - 2)
    }
}
