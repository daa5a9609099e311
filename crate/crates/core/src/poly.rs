//! Dense univariate polynomials over a finite field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::field::{FiniteField, Fq};

/// Coefficients stored low degree first with no trailing zeros.
#[derive(Clone)]
pub struct Poly<F: FiniteField> {
    field: F,
    coeffs: Vec<F::El>,
}

/// An element of A = F_q[T].
pub type FqPoly = Poly<Fq>;

impl<F: FiniteField> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::El>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &F) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &F) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::El) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: &F, c: F::El, k: usize) -> Self {
        let mut v = vec![field.zero(); k];
        v.push(c);
        Poly::new(field, v)
    }

    /// The variable itself.
    pub fn var(field: &F) -> Self {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::El] {
        &self.coeffs
    }

    /// None for the zero polynomial; None sorts below every Some.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> F::El {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> F::El {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &F::El) -> Self {
        if self.field.is_zero(c) {
            return Poly::zero(&self.field);
        }
        let k = &self.field;
        Poly::new(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    /// Multiply by var^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs: v }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.field.inv(&self.lc()))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let k = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(k), self.clone());
        }
        let inv = k.inv(&d.lc());
        let mut r = self.coeffs.clone();
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if k.is_zero(&r[i]) {
                continue;
            }
            let c = k.mul(&r[i], &inv);
            for j in 0..=dd {
                let t = k.mul(&c, &d.coeffs[j]);
                r[i - dd + j] = k.sub(&r[i - dd + j], &t);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(k, q), Poly::new(k, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        self.divrem(d).1
    }

    /// Quotient if `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero when both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).unwrap()).monic()
    }

    /// (g, u, v) with g = u·self + v·other and g monic or zero.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let k = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(k), Poly::zero(k));
        let (mut t0, mut t1) = (Poly::zero(k), Poly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, Poly::zero(k), Poly::zero(k));
        }
        let inv = k.inv(&r0.lc());
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(k);
        }
        let v = (1..self.coeffs.len()).map(|i| k.mul(&k.from_int(i as i64), &self.coeffs[i])).collect();
        Poly::new(k, v)
    }

    pub fn eval(&self, x: &F::El) -> F::El {
        let k = &self.field;
        self.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m);
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
        }
        acc
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    /// self(g).
    pub fn compose(&self, g: &Self) -> Self {
        let k = &self.field;
        self.coeffs.iter().rev().fold(Poly::zero(k), |acc, c| &(&acc * g) + &Poly::constant(k, c.clone()))
    }

    /// p-th root of a polynomial all of whose exponents are multiples of p.
    pub fn pth_root(&self) -> Self {
        let k = &self.field;
        let p = k.characteristic() as usize;
        let v = self.coeffs.iter().step_by(p).map(|c| k.pth_root(c)).collect();
        Poly::new(k, v)
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let k = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.fmt_el(c);
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let t = if i == 0 {
                cs
            } else if k.is_one(c) {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

impl<F: FiniteField> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: FiniteField> Eq for Poly<F> {}

impl<F: FiniteField> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<F: FiniteField> Ord for Poly<F> {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: FiniteField> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: FiniteField> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("T"))
    }
}

impl<F: FiniteField> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("T"))
    }
}

impl<F: FiniteField> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| k.add(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(k, v)
    }
}

impl<F: FiniteField> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| k.sub(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(k, v)
    }
}

impl<F: FiniteField> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let k = &self.field;
        Poly { field: k.clone(), coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }
}

impl<F: FiniteField> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let k = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(k);
        }
        let mut v = vec![k.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(a, b));
            }
        }
        Poly::new(k, v)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: FiniteField> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl FqPoly {
    /// |p| = q^deg.
    pub fn norm(&self) -> u64 {
        self.field.size().pow(self.degree().unwrap_or(0) as u32)
    }

    /// Substitute T ↦ T + c.
    pub fn translate(&self, c: u32) -> FqPoly {
        let k = &self.field;
        let g = Poly::new(k, vec![c, 1]);
        self.compose(&g)
    }

    /// Multiplicity of the irreducible p in self (self nonzero).
    pub fn valuation(&self, p: &FqPoly) -> usize {
        let mut v = 0;
        let mut a = self.clone();
        while let Some(b) = a.div_exact(p) {
            v += 1;
            a = b;
        }
        v
    }

    /// All monic polynomials of exact degree d, in increasing order.
    pub fn monics_of_degree(field: &Fq, d: usize) -> Vec<FqPoly> {
        let q = field.size();
        let total = q.pow(d as u32);
        (0..total)
            .map(|idx| {
                let mut c = Vec::with_capacity(d + 1);
                let mut k = idx;
                for _ in 0..d {
                    c.push((k % q) as u32);
                    k /= q;
                }
                c.push(1);
                Poly::new(field, c)
            })
            .collect()
    }

    /// All polynomials of degree < d, in increasing index order.
    pub fn all_below_degree(field: &Fq, d: usize) -> Vec<FqPoly> {
        let q = field.size();
        (0..q.pow(d as u32))
            .map(|idx| {
                let mut c = Vec::with_capacity(d);
                let mut k = idx;
                for _ in 0..d {
                    c.push((k % q) as u32);
                    k /= q;
                }
                Poly::new(field, c)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(k: &Fq, c: &[i64]) -> FqPoly {
        Poly::new(k, c.iter().map(|&x| k.from_int(x)).collect())
    }

    #[test]
    fn xgcd_examples() {
        let k = Fq::new(3).unwrap();
        let f = fp(&k, &[1, 2, 2]);
        let (g, u, v) = f.xgcd(&Poly::zero(&k));
        assert_eq!(g, f.monic());
        assert_eq!(u, Poly::constant(&k, k.inv(&f.lc())));
        assert!(v.is_zero());
        let a = fp(&k, &[-1, 0, 1]);
        let b = fp(&k, &[-1, 1]);
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(g, b);
        assert_eq!(&(&u * &a) + &(&v * &b), g);
    }

    #[test]
    fn divrem_roundtrip() {
        let k = Fq::new(5).unwrap();
        let a = fp(&k, &[3, 1, 4, 1, 5, 9, 2]);
        let b = fp(&k, &[2, 7, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn degree_sentinel_orders_low() {
        let k = Fq::new(3).unwrap();
        assert!(Poly::zero(&k).degree() < Poly::one(&k).degree());
    }

    #[test]
    fn display() {
        let k = Fq::new(3).unwrap();
        assert_eq!(fp(&k, &[1, 0, 2]).to_string(), "2*T^2 + 1");
        let k9 = Fq::new(9).unwrap();
        let p = Poly::new(&k9, vec![4, 1]);
        assert_eq!(p.to_string(), "T + (a + 1)");
    }
}
