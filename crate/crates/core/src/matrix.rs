//! Matrices over A = F_q[T]: Hermite and Smith normal forms, determinants.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::{FqPoly, Poly};
use crate::ratfn::{RatFn, RatMatrix};

/// Row-major matrix over A.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<FqPoly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl PolyMatrix {
    pub fn zero(k: &Fq, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { field: k.clone(), rows, cols, data: vec![Poly::zero(k); rows * cols] }
    }

    pub fn identity(k: &Fq, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(k, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(k));
        }
        m
    }

    /// Build from generator columns.
    pub fn from_columns(k: &Fq, rows: usize, cols: &[Vec<FqPoly>]) -> PolyMatrix {
        let mut m = PolyMatrix::zero(k, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FqPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<FqPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FqPoly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[FqPoly] {
        &self.data
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.field);
                for l in 0..self.cols {
                    if self.get(i, l).is_zero() {
                        continue;
                    }
                    acc = &acc + &(self.get(i, l) * other.get(l, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn to_rat(&self) -> RatMatrix {
        let mut m = RatMatrix::zero(&self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, RatFn::from_poly(self.get(i, j).clone()));
            }
        }
        m
    }

    pub fn det(&self) -> FqPoly {
        let d = self.to_rat().det();
        debug_assert!(d.is_polynomial());
        d.num().clone()
    }

    fn col_axpy(&mut self, dst: usize, c: &FqPoly, src: usize, upto: usize) {
        // column dst -= c * column src, rows 0..upto
        for i in 0..upto {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let v = self.get(i, dst) - &(c * s);
            self.set(i, dst, v);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

/// Square upper-triangular HNF with monic diagonal and reduced entries above pivots.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HnfBasis {
    matrix: PolyMatrix,
}

impl HnfBasis {
    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    /// Pivot row of column j is j.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim()).collect()
    }

    pub fn diagonal(&self) -> Vec<FqPoly> {
        (0..self.dim()).map(|i| self.matrix.get(i, i).clone()).collect()
    }

    /// Monic determinant = product of pivots.
    pub fn det(&self) -> FqPoly {
        let k = self.matrix.field.clone();
        self.diagonal().iter().fold(Poly::one(&k), |a, b| &a * b)
    }

    /// Solve H y = v over F_q(T) by back-substitution.
    pub fn solve(&self, v: &[RatFn]) -> Vec<RatFn> {
        let n = self.dim();
        let k = self.matrix.field.clone();
        let mut y = vec![RatFn::zero(&k); n];
        for i in (0..n).rev() {
            let mut acc = v[i].clone();
            for j in i + 1..n {
                let h = self.matrix.get(i, j);
                if h.is_zero() || y[j].is_zero() {
                    continue;
                }
                acc = &acc - &(&RatFn::from_poly(h.clone()) * &y[j]);
            }
            y[i] = RatFn::new(acc.num().clone(), acc.den() * self.matrix.get(i, i));
        }
        y
    }

    /// Solve H y = v for integral v, returning y only if it is integral.
    pub fn solve_integral(&self, v: &[FqPoly]) -> Option<Vec<FqPoly>> {
        let n = self.dim();
        let k = self.matrix.field.clone();
        let mut y = vec![Poly::zero(&k); n];
        for i in (0..n).rev() {
            let mut acc = v[i].clone();
            for j in i + 1..n {
                let h = self.matrix.get(i, j);
                if h.is_zero() || y[j].is_zero() {
                    continue;
                }
                acc = &acc - &(h * &y[j]);
            }
            y[i] = acc.div_exact(self.matrix.get(i, i))?;
        }
        Some(y)
    }

    /// H^{-1} over F_q(T).
    pub fn inverse(&self) -> RatMatrix {
        let n = self.dim();
        let k = self.matrix.field.clone();
        let mut out = RatMatrix::zero(&k, n, n);
        for j in 0..n {
            let mut e = vec![RatFn::zero(&k); n];
            e[j] = RatFn::one(&k);
            let col = self.solve(&e);
            for (i, c) in col.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        out
    }
}

/// Column-style HNF of a full-row-rank matrix (columns are generators).
pub fn hnf(m: &PolyMatrix) -> Result<HnfBasis> {
    let n = m.rows;
    let k = m.field.clone();
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..a.cols).collect();
    let mut pivot_cols = vec![0usize; n];
    for i in (0..n).rev() {
        // Euclid across the active columns on row i
        loop {
            let nz: Vec<usize> = active.iter().copied().filter(|&j| !a.get(i, j).is_zero()).collect();
            if nz.is_empty() {
                return Err(AlgebraError::RankDeficient { rank: n - 1 - i, expected: n });
            }
            let best = *nz.iter().min_by_key(|&&j| a.get(i, j).degree()).unwrap();
            if nz.len() == 1 {
                pivot_cols[i] = best;
                active.retain(|&j| j != best);
                break;
            }
            let piv = a.get(i, best).clone();
            for &j in &nz {
                if j == best {
                    continue;
                }
                let (q, _) = a.get(i, j).divrem(&piv);
                a.col_axpy(j, &q, best, i + 1);
            }
        }
    }
    let mut h = PolyMatrix::zero(&k, n, n);
    for (i, &c) in pivot_cols.iter().enumerate() {
        for r in 0..=i {
            h.set(r, i, a.get(r, c).clone());
        }
    }
    for j in 0..n {
        let lc = h.get(j, j).lc();
        if lc != 1 {
            let inv = k.inv(&lc);
            for r in 0..=j {
                let v = h.get(r, j).scale(&inv);
                h.set(r, j, v);
            }
        }
        for i in (0..j).rev() {
            let (q, _) = h.get(i, j).divrem(h.get(i, i));
            if !q.is_zero() {
                h.col_axpy(j, &q, i, i + 1);
            }
        }
    }
    Ok(HnfBasis { matrix: h })
}

/// Smith form data: P·C·Q = diag(d) with unimodular P; `p_inv` = P^{-1}.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub divisors: Vec<FqPoly>,
    pub p: PolyMatrix,
    pub p_inv: PolyMatrix,
}

pub fn snf_elementary_divisors(m: &PolyMatrix) -> Result<Vec<FqPoly>> {
    Ok(smith(m)?.divisors)
}

/// Smith normal form of a square nonsingular matrix, tracking row transforms.
pub fn smith(m: &PolyMatrix) -> Result<SmithForm> {
    assert_eq!(m.rows, m.cols, "Smith form needs a square matrix");
    let n = m.rows;
    let k = m.field.clone();
    let mut a = m.clone();
    let mut p = PolyMatrix::identity(&k, n);
    let mut pinv = PolyMatrix::identity(&k, n);

    // row_dst += c * row_src, mirrored on P and P^{-1}
    fn row_add(a: &mut PolyMatrix, p: &mut PolyMatrix, pinv: &mut PolyMatrix, dst: usize, c: &FqPoly, src: usize) {
        for mat in [&mut *a, &mut *p] {
            for j in 0..mat.cols {
                let s = mat.get(src, j);
                if s.is_zero() {
                    continue;
                }
                let v = mat.get(dst, j) + &(c * s);
                mat.set(dst, j, v);
            }
        }
        // P^{-1} column src -= c * column dst
        for i in 0..pinv.rows {
            let s = pinv.get(i, dst);
            if s.is_zero() {
                continue;
            }
            let v = pinv.get(i, src) - &(c * s);
            pinv.set(i, src, v);
        }
    }
    fn row_swap(a: &mut PolyMatrix, p: &mut PolyMatrix, pinv: &mut PolyMatrix, x: usize, y: usize) {
        if x == y {
            return;
        }
        for mat in [&mut *a, &mut *p] {
            for j in 0..mat.cols {
                mat.data.swap(x * mat.cols + j, y * mat.cols + j);
            }
        }
        pinv.swap_cols(x, y);
    }

    for t in 0..n {
        loop {
            // minimal-degree nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    let e = a.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.degree() < a.get(bi, bj).degree()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Err(AlgebraError::Singular);
            };
            row_swap(&mut a, &mut p, &mut pinv, t, bi);
            a.swap_cols(t, bj);
            let piv = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..n {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, t).divrem(&piv);
                row_add(&mut a, &mut p, &mut pinv, i, &(-&q), t);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(t, j).divrem(&piv);
                a.col_axpy(j, &q, t, n);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide the whole trailing block
            let mut bad = None;
            'outer: for i in t + 1..n {
                for j in t + 1..n {
                    if !piv.divides(a.get(i, j)) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => row_add(&mut a, &mut p, &mut pinv, t, &Poly::one(&k), i),
                None => break,
            }
        }
    }
    let mut divisors = Vec::with_capacity(n);
    for t in 0..n {
        let lc = a.get(t, t).lc();
        if lc != 1 {
            let inv = k.inv(&lc);
            for j in 0..n {
                let v = p.get(t, j).scale(&inv);
                p.set(t, j, v);
            }
            for i in 0..n {
                let v = pinv.get(i, t).scale(&lc);
                pinv.set(i, t, v);
            }
        }
        divisors.push(a.get(t, t).monic());
    }
    Ok(SmithForm { divisors, p, p_inv: pinv })
}
