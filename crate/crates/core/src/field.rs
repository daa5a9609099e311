//! Finite fields: the base field F_q and residue fields A/(p).

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::poly::Poly;

/// Arithmetic over a finite field whose elements are plain values.
///
/// Operations take the field as context so elements stay small and `Copy`-like.
pub trait FiniteField: Clone + fmt::Debug + PartialEq + Send + Sync {
    type El: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Panics on zero.
    fn inv(&self, a: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn characteristic(&self) -> u64;
    fn size(&self) -> u64;
    /// All elements, zero first, in a fixed order.
    fn elements(&self) -> Vec<Self::El>;
    /// Element with index `i` in the order of `elements`.
    fn element(&self, i: u64) -> Self::El;
    /// Seed for randomized splitting.
    fn seed(&self) -> u64;
    /// Write `a` for use inside polynomial printing.
    fn fmt_el(&self, a: &Self::El) -> String;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    fn from_int(&self, n: i64) -> Self::El {
        let p = self.characteristic() as i64;
        let k = n.rem_euclid(p);
        let mut acc = self.zero();
        let one = self.one();
        for _ in 0..k {
            acc = self.add(&acc, &one);
        }
        acc
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The unique p-th root (Frobenius is bijective on a finite field).
    fn pth_root(&self, a: &Self::El) -> Self::El {
        let p = self.characteristic();
        let q = self.size();
        // a^(q/p) is the inverse of Frobenius.
        self.pow(a, q / p)
    }
}

struct FqInner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over F_p, low degree first, length e+1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a primitive element g (only for e > 1).
    exp: Vec<u32>,
    log: Vec<u32>,
    seed: u64,
}

/// The field F_q with q = p^e. Elements are integer codes whose base-p digits
/// are the coefficients of a polynomial in the generator `a`.
#[derive(Clone)]
pub struct Fq(Arc<FqInner>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.e == other.0.e)
    }
}

impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.0.p, self.0.e).hash(state);
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Split q into (p, e) if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let mut e = 0;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

// Small helpers for polynomials over F_p as Vec<u32>, low first.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
    fp_rem(&mut out, m, p);
    out
}

fn fp_rem(a: &mut Vec<u32>, m: &[u32], p: u32) {
    fp_trim(a);
    let dm = m.len() - 1;
    let pm = p as u64;
    // m is monic
    while a.len() > dm {
        let top = a.len() - 1;
        let c = a[top] as u64;
        if c != 0 {
            for k in 0..=dm {
                let idx = top - dm + k;
                a[idx] = ((a[idx] as u64 + pm * pm - c * m[k] as u64) % pm) as u32;
            }
        }
        a.pop();
        fp_trim(a);
    }
}

fn fp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        // make b monic
        let inv = modinv(*b.last().unwrap(), p);
        for c in b.iter_mut() {
            *c = ((*c as u64 * inv as u64) % p as u64) as u32;
        }
        fp_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn modinv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn fp_irreducible(m: &[u32], p: u32) -> bool {
    // Rabin: x^(p^e) = x mod m and gcd(x^(p^(e/l)) - x, m) = 1 for prime l | e.
    let e = m.len() - 1;
    let x = vec![0, 1];
    let frob = |v: &Vec<u32>| -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut base = v.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = fp_mulmod(&acc, &base, m, p);
            }
            base = fp_mulmod(&base, &base, m, p);
            k >>= 1;
        }
        acc
    };
    let mut powers = vec![x.clone()];
    for _ in 0..e {
        let next = frob(powers.last().unwrap());
        powers.push(next);
    }
    let mut xm = x.clone();
    fp_rem(&mut xm, m, p);
    if powers[e] != xm {
        return false;
    }
    for l in 2..=e {
        if e % l == 0 && is_prime(l as u64) {
            let mut d = powers[e / l].clone();
            d.resize(d.len().max(2), 0);
            d[1] = (d[1] + p - 1) % p;
            fp_trim(&mut d);
            let g = fp_gcd(m, &d, p);
            if g.len() != 1 {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree e over F_p,
/// comparing (c_{e-1}, ..., c_0).
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    for idx in 0..total {
        // digits of idx give c_{e-1} as most significant
        let mut m = vec![0u32; e + 1];
        m[e] = 1;
        let mut k = idx;
        for pos in 0..e {
            m[pos] = (k % p as u64) as u32;
            k /= p as u64;
        }
        if m[0] == 0 && e > 1 {
            continue;
        }
        if fp_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Fq {
    pub fn new(q: u64) -> Result<Fq, AlgebraError> {
        Fq::with_seed(q, DEFAULT_SEED)
    }

    pub fn with_seed(q: u64, seed: u64) -> Result<Fq, AlgebraError> {
        let (p, e) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
        if q > 1 << 16 && e > 1 {
            return Err(AlgebraError::FieldTooLarge(q));
        }
        if p > u32::MAX as u64 / 2 {
            return Err(AlgebraError::FieldTooLarge(q));
        }
        let p = p as u32;
        let modulus = if e == 1 { vec![0, 1] } else { least_irreducible(p, e) };
        let mut inner = FqInner { p, e, q: q as u32, modulus, exp: Vec::new(), log: Vec::new(), seed };
        if e > 1 {
            build_tables(&mut inner);
        }
        Ok(Fq(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients over F_p, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The generator `a` (equal to the element p when e = 1 is not allowed).
    pub fn generator(&self) -> Option<u32> {
        (self.0.e > 1).then_some(self.0.p)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut v = Vec::with_capacity(self.0.e as usize);
        let mut k = a;
        for _ in 0..self.0.e {
            v.push(k % p);
            k /= p;
        }
        v
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }
}

fn build_tables(inner: &mut FqInner) {
    let p = inner.p;
    let q = inner.q as usize;
    let e = inner.e as usize;
    let m = inner.modulus.clone();
    let to_code = |v: &[u32]| -> u32 {
        let mut d = v.to_vec();
        d.resize(e, 0);
        d.iter().rev().fold(0, |acc, &c| acc * p + c)
    };
    let from_code = |c: u32| -> Vec<u32> {
        let mut v = Vec::new();
        let mut k = c;
        for _ in 0..e {
            v.push(k % p);
            k /= p;
        }
        fp_trim(&mut v);
        v
    };
    for cand in 1..q as u32 {
        let g = from_code(cand);
        let mut exp = Vec::with_capacity(q - 1);
        let mut cur = vec![1u32];
        let mut ok = true;
        for i in 0..q - 1 {
            if i > 0 && cur == vec![1u32] {
                ok = false;
                break;
            }
            exp.push(to_code(&cur));
            cur = fp_mulmod(&cur, &g, &m, p);
        }
        if ok && cur == vec![1u32] {
            let mut log = vec![0u32; q];
            for (i, &c) in exp.iter().enumerate() {
                log[c as usize] = i as u32;
            }
            inner.exp = exp;
            inner.log = log;
            return;
        }
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}

impl FiniteField for Fq {
    type El = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.0.p;
        if self.0.e == 1 {
            let s = *a as u64 + *b as u64;
            return (s % p as u64) as u32;
        }
        let (mut x, mut y, mut out, mut place) = (*a, *b, 0u32, 1u32);
        for _ in 0..self.0.e {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn neg(&self, a: &u32) -> u32 {
        let p = self.0.p;
        if self.0.e == 1 {
            return if *a == 0 { 0 } else { p - a };
        }
        let d: Vec<u32> = self.digits(*a).into_iter().map(|c| (p - c) % p).collect();
        self.undigits(&d)
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if self.0.e == 1 {
            return ((*a as u64 * *b as u64) % self.0.p as u64) as u32;
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.0.q as usize - 1;
        let l = (self.0.log[*a as usize] as usize + self.0.log[*b as usize] as usize) % n;
        self.0.exp[l]
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in {:?}", self);
        if self.0.e == 1 {
            return modinv(*a, self.0.p);
        }
        let n = self.0.q as usize - 1;
        let l = (n - self.0.log[*a as usize] as usize) % n;
        self.0.exp[l]
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    fn size(&self) -> u64 {
        self.0.q as u64
    }

    fn elements(&self) -> Vec<u32> {
        (0..self.0.q).collect()
    }

    fn element(&self, i: u64) -> u32 {
        i as u32
    }

    fn seed(&self) -> u64 {
        self.0.seed
    }

    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    fn fmt_el(&self, a: &u32) -> String {
        if self.0.e == 1 {
            return a.to_string();
        }
        let d = self.digits(*a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

struct ResidueInner {
    base: Fq,
    modulus: Poly<Fq>,
    degree: usize,
    size: u64,
}

/// The residue field A/(p) for a monic irreducible p. Elements are reduced polynomials.
#[derive(Clone)]
pub struct ResidueField(Arc<ResidueInner>);

impl PartialEq for ResidueField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl fmt::Debug for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A/({})", self.0.modulus)
    }
}

impl ResidueField {
    /// Caller guarantees p is monic irreducible.
    pub fn new(p: &Poly<Fq>) -> ResidueField {
        let degree = p.degree().expect("nonzero modulus");
        let size = p.field().size().pow(degree as u32);
        ResidueField(Arc::new(ResidueInner { base: p.field().clone(), modulus: p.clone(), degree, size }))
    }

    pub fn modulus(&self) -> &Poly<Fq> {
        &self.0.modulus
    }

    pub fn base(&self) -> &Fq {
        &self.0.base
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn reduce(&self, a: &Poly<Fq>) -> Poly<Fq> {
        a.rem(&self.0.modulus)
    }
}

impl FiniteField for ResidueField {
    type El = Poly<Fq>;

    fn zero(&self) -> Poly<Fq> {
        Poly::zero(&self.0.base)
    }

    fn one(&self) -> Poly<Fq> {
        Poly::one(&self.0.base)
    }

    fn add(&self, a: &Poly<Fq>, b: &Poly<Fq>) -> Poly<Fq> {
        a + b
    }

    fn neg(&self, a: &Poly<Fq>) -> Poly<Fq> {
        -a
    }

    fn mul(&self, a: &Poly<Fq>, b: &Poly<Fq>) -> Poly<Fq> {
        (a * b).rem(&self.0.modulus)
    }

    fn inv(&self, a: &Poly<Fq>) -> Poly<Fq> {
        let (g, u, _) = a.xgcd(&self.0.modulus);
        assert!(g.is_one(), "inverse of a non-unit in {:?}", self);
        u.rem(&self.0.modulus)
    }

    fn is_zero(&self, a: &Poly<Fq>) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    fn size(&self) -> u64 {
        self.0.size
    }

    fn elements(&self) -> Vec<Poly<Fq>> {
        (0..self.0.size).map(|i| self.element(i)).collect()
    }

    fn element(&self, i: u64) -> Poly<Fq> {
        let q = self.0.base.size();
        let mut k = i;
        let mut c = Vec::with_capacity(self.0.degree);
        for _ in 0..self.0.degree {
            c.push(self.0.base.element(k % q));
            k /= q;
        }
        Poly::new(&self.0.base, c)
    }

    fn seed(&self) -> u64 {
        self.0.base.seed()
    }

    fn fmt_el(&self, a: &Poly<Fq>) -> String {
        a.to_string_var("T")
    }

    fn from_int(&self, n: i64) -> Poly<Fq> {
        Poly::constant(&self.0.base, self.0.base.from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(k: &Fq) {
        let els = k.elements();
        for a in &els {
            assert_eq!(k.add(a, &k.neg(a)), 0);
            if *a != 0 {
                assert_eq!(k.mul(a, &k.inv(a)), 1);
            }
            for b in &els {
                assert_eq!(k.add(a, b), k.add(b, a));
                assert_eq!(k.mul(a, b), k.mul(b, a));
            }
        }
        // distributivity on a sample
        for a in els.iter().take(7) {
            for b in els.iter().take(7) {
                for c in els.iter().take(7) {
                    assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5, 8, 9, 25, 27] {
            check_axioms(&Fq::new(q).unwrap());
        }
    }

    #[test]
    fn modulus_is_least() {
        // F_4: x^2 + x + 1; F_9: x^2 + 1 (c1 = 0 first, then c0 = 1); F_8: x^3 + x + 1
        assert_eq!(Fq::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Fq::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Fq::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn frobenius_root() {
        let k = Fq::new(9).unwrap();
        for a in k.elements() {
            let r = k.pth_root(&a);
            assert_eq!(k.pow(&r, 3), a);
        }
    }

    #[test]
    fn rejects_non_prime_power() {
        assert!(Fq::new(6).is_err());
        assert!(Fq::new(1).is_err());
    }
}
