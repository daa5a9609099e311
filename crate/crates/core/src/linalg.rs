//! Dense linear algebra over F_q.

use crate::field::{FiniteField, Fq};

/// Row-major matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FqMat {
    pub fn zero(rows: usize, cols: usize) -> FqMat {
        FqMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> FqMat {
        let mut m = FqMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> FqMat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        FqMat { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<u32>]) -> FqMat {
        let mut m = FqMat::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i];
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, k: &Fq, o: &FqMat) -> FqMat {
        assert_eq!(self.cols, o.rows);
        let mut out = FqMat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if b != 0 {
                        let v = k.add(&out.data[i * o.cols + j], &k.mul(&a, &b));
                        out.data[i * o.cols + j] = v;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, k: &Fq, v: &[u32]) -> Vec<u32> {
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if a != 0 && v[j] != 0 {
                        acc = k.add(&acc, &k.mul(&a, &v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, k: &Fq, o: &FqMat) -> FqMat {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| k.sub(a, b)).collect();
        FqMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, k: &Fq, mut e: u64) -> FqMat {
        let mut base = self.clone();
        let mut acc = FqMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base);
            }
        }
        acc
    }

    /// RREF in place; returns pivot columns.
    pub fn rref(&mut self, k: &Fq) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = k.inv(&self.get(row, col));
            for j in col..self.cols {
                let v = k.mul(&self.get(row, j), &inv);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                let c = self.get(i, col);
                if i == row || c == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let t = self.get(row, j);
                    if t != 0 {
                        let v = k.sub(&self.get(i, j), &k.mul(&c, &t));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, k: &Fq) -> usize {
        self.clone().rref(k).len()
    }

    /// Basis of {v : M v = 0}.
    pub fn kernel(&self, k: &Fq) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let piv = m.rref(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in piv.iter().enumerate() {
                    v[pc] = k.neg(&m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution x of M x = b, if any.
    pub fn solve(&self, k: &Fq, b: &[u32]) -> Option<Vec<u32>> {
        let mut aug = FqMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let piv = aug.rref(k);
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Canonical (RREF) basis of the span of some vectors.
pub fn span_basis(k: &Fq, dim: usize, vecs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut m = FqMat::from_rows(dim, vecs);
    let r = m.rref(k).len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Whether v lies in the span of an RREF basis.
pub fn in_span(k: &Fq, basis: &[Vec<u32>], v: &[u32]) -> bool {
    let mut w = v.to_vec();
    for b in basis {
        let Some(pc) = b.iter().position(|&c| c != 0) else { continue };
        let c = w[pc];
        if c != 0 {
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi = k.sub(wi, &k.mul(&c, bi));
            }
        }
    }
    w.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let k = Fq::new(3).unwrap();
        let m = FqMat::from_rows(3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        assert_eq!(m.rank(&k), 1);
        let ker = m.kernel(&k);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&k, &v).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn span_membership() {
        let k = Fq::new(5).unwrap();
        let b = span_basis(&k, 3, &[vec![1, 2, 3], vec![2, 4, 1]]);
        assert!(in_span(&k, &b, &[3, 1, 4]));
        assert!(!in_span(&k, &b, &[0, 1, 0]));
    }
}
