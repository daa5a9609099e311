//! The rational function field F = F_q(T) and dense linear algebra over it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::{FqPoly, Poly};

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: FqPoly,
    den: FqPoly,
}

impl RatFn {
    pub fn new(num: FqPoly, den: FqPoly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let k = den.field().clone();
            return RatFn { num, den: Poly::one(&k) };
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g).unwrap();
        let mut d = den.div_exact(&g).unwrap();
        let k = d.field().clone();
        let lc = d.lc();
        if lc != 1 {
            let inv = k.inv(&lc);
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFn { num: n, den: d }
    }

    pub fn from_poly(a: FqPoly) -> RatFn {
        let k = a.field().clone();
        RatFn { num: a, den: Poly::one(&k) }
    }

    pub fn zero(k: &Fq) -> RatFn {
        RatFn { num: Poly::zero(k), den: Poly::one(k) }
    }

    pub fn one(k: &Fq) -> RatFn {
        RatFn { num: Poly::one(k), den: Poly::one(k) }
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn field(&self) -> &Fq {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> RatFn {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> RatFn {
        self * &other.inv()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Valuation at an irreducible p (None for zero).
    pub fn valuation(&self, p: &FqPoly) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.num.valuation(p) as i64 - self.den.valuation(p) as i64)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFn::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero(self.field());
        }
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Row-major dense matrix over F_q(T).
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    pub field: Fq,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<RatFn>,
}

impl RatMatrix {
    pub fn zero(k: &Fq, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { field: k.clone(), rows, cols, data: vec![RatFn::zero(k); rows * cols] }
    }

    pub fn identity(k: &Fq, n: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(k, n, n);
        for i in 0..n {
            m.set(i, i, RatFn::one(k));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFn) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let k = self.field.clone();
        let mut out = RatMatrix::zero(&k, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RatFn::zero(&k);
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(l, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RatFn]) -> Vec<RatFn> {
        let k = self.field.clone();
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(RatFn::zero(&k), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        &acc + &(a * &v[j])
                    }
                })
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if piv != row {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.get(row, col).inv();
            for j in 0..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let c = self.get(i, col).clone();
                for j in 0..self.cols {
                    if self.get(row, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&c * self.get(row, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let k = self.field.clone();
        let mut aug = RatMatrix::zero(&k, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, RatFn::one(&k));
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(AlgebraError::Singular);
        }
        let mut out = RatMatrix::zero(&k, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    pub fn det(&self) -> RatFn {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let k = self.field.clone();
        let mut m = self.clone();
        let mut det = RatFn::one(&k);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return RatFn::zero(&k);
            };
            if piv != col {
                for j in 0..n {
                    m.data.swap(piv * n + j, col * n + j);
                }
                det = -&det;
            }
            let p = m.get(col, col).clone();
            det = &det * &p;
            let inv = p.inv();
            for i in col + 1..n {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let c = m.get(i, col) * &inv;
                for j in col..n {
                    let v = m.get(i, j) - &(&c * m.get(col, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<RatFn>> {
        let k = self.field.clone();
        let mut m = self.clone();
        let piv = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![RatFn::zero(&k); self.cols];
                v[fc] = RatFn::one(&k);
                for (r, &pc) in piv.iter().enumerate() {
                    v[pc] = -m.get(r, fc);
                }
                v
            })
            .collect()
    }
}
