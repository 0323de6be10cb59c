//! Finite fields GF(p^f).
//!
//! Elements are stored as integers in `[0, q)`: the polynomial
//! `c_0 + c_1 x + ... + c_{f-1} x^{f-1}` is encoded as `sum c_i p^i`.
//! Multiplication and addition go through discrete-log and Zech-log tables,
//! so every operation is O(1) after construction.

use crate::arith::{factorize, is_prime};
use crate::error::{bound, Error, Result};

pub type Elem = u32;

/// Default cap on the field order.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

/// Conway polynomials, coefficients low to high (monic leading term included).
static CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 8, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
    (19, 2, &[2, 18, 1]),
    (29, 2, &[2, 24, 1]),
    (31, 2, &[3, 29, 1]),
];

/// Looks up the hard-coded Conway polynomial for `p^f`, if any.
#[must_use]
pub fn conway_polynomial(p: u32, f: u32) -> Option<&'static [u32]> {
    CONWAY
        .iter()
        .find(|(pp, ff, _)| *pp == p && *ff == f)
        .map(|(_, _, c)| *c)
}

/// GF(p^f) with an explicit monic irreducible modulus.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    gen: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds GF(p^f) with the default order bound of 2^20.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        Self::with_bound(p, f, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u64, f: u32, max_q: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::Parse("field exponent must be positive".into()));
        }
        let q = p.checked_pow(f).filter(|&q| q <= max_q);
        let Some(q) = q else {
            return Err(bound(format!("field order {p}^{f}"), max_q));
        };
        let p32 = p as u32;
        let modulus = match conway_polynomial(p32, f) {
            Some(c) => c.to_vec(),
            None => least_irreducible(p32, f),
        };
        Ok(Self::from_modulus(p32, f, q as u32, modulus))
    }

    /// GF(q) for a prime power q.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, f) = crate::arith::prime_power(q).ok_or(Error::UnsupportedQ(q))?;
        Self::new(p, f)
    }

    fn from_modulus(p: u32, f: u32, q: u32, modulus: Vec<u32>) -> Self {
        let n = (q - 1) as usize;
        let gen = (1..q)
            .find(|&g| {
                let g = digits(g, p, f);
                factorize(u64::from(q - 1))
                    .iter()
                    .all(|&(r, _)| !is_one(&poly_pow_mod(&g, u64::from(q - 1) / r, &modulus, p)))
            })
            .expect("multiplicative group of a field is cyclic");
        let gd = digits(gen, p, f);
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![NONE; q as usize];
        let mut cur = digits(1, p, f);
        for i in 0..n {
            let e = undigits(&cur, p);
            exp.push(e);
            log[e as usize] = i as u32;
            cur = poly_mul_mod(&cur, &gd, &modulus, p);
        }
        // zech[i] = log(1 + g^i)
        let mut zech = vec![NONE; n];
        for (i, &e) in exp.iter().enumerate() {
            let mut d = digits(e, p, f);
            d[0] = (d[0] + 1) % p;
            let s = undigits(&d, p);
            zech[i] = log[s as usize];
        }
        FieldSpec {
            p,
            f,
            q,
            modulus,
            gen,
            exp,
            log,
            zech,
        }
    }

    #[must_use]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[must_use]
    pub fn f(&self) -> u32 {
        self.f
    }
    #[must_use]
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Monic modulus, coefficients low to high.
    #[must_use]
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The primitive element used for the log tables (least encoding).
    #[must_use]
    pub fn primitive(&self) -> Elem {
        self.gen
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    #[must_use]
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a, self.p, self.f)
    }

    #[must_use]
    pub fn from_coeffs(&self, c: &[u32]) -> Elem {
        undigits(c, self.p)
    }

    /// The image of the integer `n` in the prime subfield.
    #[must_use]
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(i64::from(self.p)) as Elem
    }

    #[must_use]
    pub fn log(&self, a: Elem) -> Option<u32> {
        let l = self.log[a as usize];
        (l != NONE).then_some(l)
    }

    #[must_use]
    pub fn exp(&self, i: u64) -> Elem {
        self.exp[(i % u64::from(self.q - 1)) as usize]
    }

    #[must_use]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let n = self.q - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = (lb + n - la) % n;
        match self.zech[d as usize] {
            NONE => 0,
            z => self.exp[((la + z) % n) as usize],
        }
    }

    #[must_use]
    pub fn neg(&self, a: Elem) -> Elem {
        if a == 0 || self.p == 2 {
            return a;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + n / 2) % n) as usize]
    }

    #[must_use]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[must_use]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    #[must_use]
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = u64::from(self.q - 1);
        self.exp[((u64::from(self.log[a as usize]) * (e % n)) % n) as usize]
    }

    /// `a^(p^e)`.
    #[must_use]
    pub fn frob(&self, a: Elem, e: u32) -> Elem {
        if a == 0 || e % self.f == 0 {
            return a;
        }
        let n = u64::from(self.q - 1);
        let pe = u64::from(self.p).pow(e % self.f) % n;
        self.exp[((u64::from(self.log[a as usize]) * pe) % n) as usize]
    }

    #[must_use]
    pub fn is_square(&self, a: Elem) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }

    /// Multiplicative order of a nonzero element.
    #[must_use]
    pub fn order(&self, a: Elem) -> u64 {
        let n = u64::from(self.q - 1);
        n / crate::arith::gcd(n, u64::from(self.log[a as usize]))
    }

    /// The subfield GF(p^s) together with the embedding table `sub element -> self element`.
    ///
    /// The embedding sends the subfield's `x` to `g^((q-1)/(q0-1))` when that is a root of
    /// the subfield modulus (always the case for compatible Conway polynomials), and to the
    /// least-encoded root otherwise.
    pub fn subfield(&self, s: u32) -> Result<(FieldSpec, Vec<Elem>)> {
        if s == 0 || self.f % s != 0 {
            return Err(Error::UnsupportedQ(u64::from(self.p).pow(s)));
        }
        let sub = FieldSpec::new(u64::from(self.p), s)?;
        let m = sub.modulus();
        let eval = |r: Elem| {
            let mut acc = 0;
            for &c in m.iter().rev() {
                acc = self.add(self.mul(acc, r), c);
            }
            acc
        };
        let preferred = self.exp(u64::from(self.q - 1) / u64::from(sub.q - 1));
        let root = if eval(preferred) == 0 {
            preferred
        } else {
            (0..self.q)
                .find(|&r| eval(r) == 0)
                .ok_or_else(|| Error::ConstructionFailed("no root of subfield modulus".into()))?
        };
        let table = (0..sub.q)
            .map(|a| {
                let mut acc = 0;
                for &c in sub.coeffs(a).iter().rev() {
                    acc = self.add(self.mul(acc, root), c);
                }
                acc
            })
            .collect();
        Ok((sub, table))
    }
}

/// Operations of [`element_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
    Pow,
}

/// Dispatching wrapper: `b` is the second operand for add/mul and the exponent for pow.
pub fn element_arith(spec: &FieldSpec, op: ArithOp, a: Elem, b: u64) -> Result<Elem> {
    Ok(match op {
        ArithOp::Add => spec.add(a, b as Elem),
        ArithOp::Mul => spec.mul(a, b as Elem),
        ArithOp::Inv => spec.inv(a)?,
        ArithOp::Neg => spec.neg(a),
        ArithOp::Pow => spec.pow(a, b),
    })
}

fn digits(mut a: u32, p: u32, f: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(f as usize);
    for _ in 0..f {
        d.push(a % p);
        a /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_one(a: &[u32]) -> bool {
    a.first() == Some(&1) && a[1..].iter().all(|&c| c == 0)
}

fn trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r, mut e, mut b) = (1u64, u64::from(p - 2), u64::from(a));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % u64::from(p);
        }
        b = b * b % u64::from(p);
        e >>= 1;
    }
    r as u32
}

/// `a mod m` for a monic or non-monic `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (u64::from(r[dr]) * u64::from(lead_inv) % u64::from(p)) as u32;
        for (i, &mc) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - (u64::from(c) * u64::from(mc) % u64::from(p)) as u32) % p;
        }
        trim(&mut r);
        if dm == 0 {
            return vec![0];
        }
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += u64::from(x) * u64::from(y);
        }
    }
    out.into_iter().map(|c| (c % u64::from(p)) as u32).collect()
}

/// Product reduced modulo `m`, padded to `deg m` coefficients.
fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let f = m.len() - 1;
    let mut r = poly_rem(&poly_mul(a, b, p), m, p);
    r.resize(f.max(1), 0);
    r
}

fn poly_pow_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let f = m.len() - 1;
    let mut result = vec![0u32; f.max(1)];
    result[0] = 1;
    let mut base = poly_rem(a, m, p);
    base.resize(f.max(1), 0);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &base, m, p);
        }
        base = poly_mul_mod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style test: `m` (monic, degree f) is irreducible iff
/// `gcd(x^(p^i) - x, m) = 1` for every `1 <= i <= f/2`.
#[must_use]
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let f = m.len() - 1;
    if f == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    let mut xp = vec![0u32, 1];
    for _ in 0..f / 2 {
        xp = poly_pow_mod(&xp, u64::from(p), m, p);
        let mut h = xp.clone();
        h.resize(f.max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        let g = poly_gcd(m, &h, p);
        if g.len() > 1 || g[0] == 0 {
            return false;
        }
    }
    true
}

/// Whether `x` generates the multiplicative group modulo the irreducible `m`.
#[must_use]
pub fn is_primitive_modulus(m: &[u32], p: u32) -> bool {
    let f = m.len() - 1;
    let n = u64::from(p).pow(f as u32) - 1;
    let x = if f == 1 {
        // GF(p) with modulus x - c: the class of x is c.
        vec![(p - m[0]) % p]
    } else {
        vec![0, 1]
    };
    factorize(n)
        .iter()
        .all(|&(r, _)| !is_one(&poly_pow_mod(&x, n / r, m, p)))
        && n > 0
}

/// The lexicographically least monic irreducible of degree f, comparing
/// `(c_0, c_1, ..., c_{f-1})` from the constant term upwards.
fn least_irreducible(p: u32, f: u32) -> Vec<u32> {
    let total = p.pow(f);
    for n in 0..total {
        let mut c = vec![0u32; f as usize + 1];
        let mut t = n;
        for i in (0..f as usize).rev() {
            c[i] = t % p;
            t /= p;
        }
        c[f as usize] = 1;
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_table_is_primitive_and_compatible() {
        for &(p, f, c) in CONWAY {
            assert!(is_irreducible(c, p), "{p}^{f}");
            assert!(is_primitive_modulus(c, p), "{p}^{f}");
            let k = FieldSpec::new(u64::from(p), f).unwrap();
            assert_eq!(k.primitive(), p, "x should be the least primitive element");
            let q = u64::from(k.q());
            for d in (1..f).filter(|d| f % d == 0) {
                let q0 = u64::from(p).pow(d);
                let y = k.exp((q - 1) / (q0 - 1));
                let (sub, emb) = k.subfield(d).unwrap();
                // the norm of x must be the subfield's x (d > 1) or the least primitive root
                let expected = if d == 1 { sub.primitive() } else { p };
                assert_eq!(y, emb[expected as usize], "{p}^{f} over {p}^{d}");
            }
        }
    }

    #[test]
    fn gf2_has_modulus_x() {
        let k = FieldSpec::new(2, 1).unwrap();
        assert_eq!(k.modulus(), &[0, 1]);
        assert_eq!(k.q(), 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldSpec::new(4, 1), Err(Error::NotPrime(4)));
        assert!(matches!(FieldSpec::new(2, 21), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn gf25_inverse_of_two_lies_in_prime_subfield() {
        let k = FieldSpec::new(5, 2).unwrap();
        assert_eq!(k.inv(2).unwrap(), 3);
        assert_eq!(k.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf25_frobenius_fixes_prime_subfield() {
        let k = FieldSpec::new(5, 2).unwrap();
        let fixed: Vec<_> = k.elements().filter(|&a| k.frob(a, 1) == a).collect();
        assert_eq!(fixed, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn gf81_generator_scan() {
        let k = FieldSpec::new(3, 4).unwrap();
        let g = (1..81)
            .find(|&g| k.pow(g, 80) == 1 && k.pow(g, 16) != 1 && k.pow(g, 40) != 1)
            .unwrap();
        assert_eq!(k.order(g), 80);
        for a in k.elements() {
            assert_eq!(k.pow(a, 81), a);
        }
    }

    #[test]
    fn gf4_characteristic_two() {
        let k = FieldSpec::new(2, 2).unwrap();
        for a in k.elements() {
            assert_eq!(k.add(a, a), 0);
        }
    }

    #[test]
    fn arithmetic_agrees_with_polynomial_definition() {
        let k = FieldSpec::new(3, 3).unwrap();
        for a in k.elements() {
            for b in k.elements() {
                let ca = k.coeffs(a);
                let cb = k.coeffs(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(k.add(a, b), k.from_coeffs(&sum));
                let prod = poly_mul_mod(&ca, &cb, k.modulus(), 3);
                assert_eq!(k.mul(a, b), k.from_coeffs(&prod));
            }
        }
    }

    #[test]
    fn least_irreducible_scan_order() {
        // Degree 2 over GF(3): x^2 + 1 has constant term 1 and beats x^2 + x + 2.
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 1), vec![0, 1]);
    }

    #[test]
    fn subfield_embedding_is_a_ring_map() {
        let k = FieldSpec::new(3, 4).unwrap();
        let (sub, emb) = k.subfield(2).unwrap();
        for a in sub.elements() {
            for b in sub.elements() {
                assert_eq!(emb[sub.add(a, b) as usize], k.add(emb[a as usize], emb[b as usize]));
                assert_eq!(emb[sub.mul(a, b) as usize], k.mul(emb[a as usize], emb[b as usize]));
            }
        }
    }
}
