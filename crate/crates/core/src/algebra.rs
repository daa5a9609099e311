//! Finite commutative F_q-algebras S/pS: radical and splitting into local factors.

use crate::factor::factor;
use crate::field::{FiniteField, Fq};
use crate::ideal::Order;
use crate::linalg::{in_span, span_basis, FqMat};
use crate::poly::{FqPoly, Poly};

/// Algebra with F_q-basis e_0..e_{n-1} and structure constants.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: Fq,
    dim: usize,
    /// mult[a*dim + b] = e_a·e_b
    mult: Vec<Vec<u32>>,
    one: Vec<u32>,
}

/// One local factor e·C of the algebra.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub idempotent: Vec<u32>,
    /// dim_Fq e·C
    pub dim: usize,
    /// dim_Fq of the residue field e·C / e·J
    pub residue_dim: usize,
    /// F_q-basis of the maximal ideal J + (1-e)C
    pub maximal_ideal: Vec<Vec<u32>>,
}

impl FiniteAlgebra {
    pub fn new(field: &Fq, dim: usize, mult: Vec<Vec<u32>>, one: Vec<u32>) -> FiniteAlgebra {
        FiniteAlgebra { field: field.clone(), dim, mult, one }
    }

    /// S/pS with basis T^k·w_i at index i·deg(p) + k.
    pub fn order_mod_prime(order: &Order, p: &FqPoly) -> FiniteAlgebra {
        let k = order.ctx().field().clone();
        let d = p.degree().unwrap();
        let r = order.rank();
        let dim = r * d;
        let flatten = |coords: &[FqPoly]| -> Vec<u32> {
            let mut v = vec![0u32; dim];
            for (i, c) in coords.iter().enumerate() {
                let c = c.rem(p);
                for (t, &x) in c.coeffs().iter().enumerate() {
                    v[i * d + t] = x;
                }
            }
            v
        };
        let table = order.table();
        let mut mult = vec![Vec::new(); dim * dim];
        for i in 0..r {
            for j in 0..r {
                let base = &table[i][j];
                for a in 0..d {
                    for b in 0..d {
                        let shifted: Vec<FqPoly> = base.iter().map(|c| c.shift(a + b)).collect();
                        mult[(i * d + a) * dim + (j * d + b)] = flatten(&shifted);
                    }
                }
            }
        }
        let one = flatten(&order.one_coords());
        FiniteAlgebra { field: k, dim, mult, one }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn one(&self) -> &[u32] {
        &self.one
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let k = &self.field;
        let n = self.dim;
        let mut out = vec![0u32; n];
        for a in 0..n {
            if x[a] == 0 {
                continue;
            }
            for b in 0..n {
                if y[b] == 0 {
                    continue;
                }
                let c = k.mul(&x[a], &y[b]);
                for (o, &m) in out.iter_mut().zip(&self.mult[a * n + b]) {
                    if m != 0 {
                        *o = k.add(o, &k.mul(&c, &m));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = x.to_vec();
        let mut acc = self.one.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Matrix of x ↦ x^q.
    pub fn frobenius(&self) -> FqMat {
        let q = self.field.size();
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|i| self.pow(&self.unit(i), q)).collect();
        FqMat::from_cols(self.dim, &cols)
    }

    /// Matrix of x ↦ z·x.
    pub fn mult_matrix(&self, z: &[u32]) -> FqMat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|i| self.mul(z, &self.unit(i))).collect();
        FqMat::from_cols(self.dim, &cols)
    }

    /// F_q-basis (RREF) of the nilradical.
    pub fn radical(&self) -> Vec<Vec<u32>> {
        let k = &self.field;
        let q = k.size();
        let mut n = 1u64;
        let mut qn = q;
        while (qn as usize) < self.dim {
            n += 1;
            qn = qn.saturating_mul(q);
        }
        let phi = self.frobenius().pow(k, n);
        span_basis(k, self.dim, &phi.kernel(k))
    }

    /// Primitive idempotents, split deterministically from a basis of ker(φ - 1).
    pub fn primitive_idempotents(&self) -> Vec<Vec<u32>> {
        let k = &self.field;
        let phi = self.frobenius();
        let fixed = phi.sub(k, &FqMat::identity(self.dim)).kernel(k);
        let mut idems = vec![self.one.clone()];
        for b in &fixed {
            let mut next = Vec::new();
            for e in &idems {
                next.extend(self.split_by(e, &self.mul(e, b)));
            }
            idems = next;
        }
        idems.sort();
        idems
    }

    /// Split the idempotent e using z ∈ e·ker(φ-1), whose minimal polynomial over e·C splits
    /// into distinct linear factors.
    fn split_by(&self, e: &[u32], z: &[u32]) -> Vec<Vec<u32>> {
        let k = &self.field;
        let minpoly = self.minimal_polynomial(e, z);
        let roots: Vec<u32> = factor(&minpoly)
            .expect("nonzero minimal polynomial")
            .into_iter()
            .map(|(g, _)| {
                debug_assert_eq!(g.degree(), Some(1));
                k.neg(&g.coeff(0))
            })
            .collect();
        if roots.len() <= 1 {
            return vec![e.to_vec()];
        }
        let mut out = Vec::new();
        for (i, &c) in roots.iter().enumerate() {
            // e·∏_{c'≠c} (z - c'e)/(c - c')
            let mut acc = e.to_vec();
            for (j, &c2) in roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                let lin: Vec<u32> = z.iter().zip(e).map(|(zi, ei)| k.sub(zi, &k.mul(&c2, ei))).collect();
                acc = self.mul(&acc, &lin);
                let s = k.inv(&k.sub(&c, &c2));
                acc = acc.iter().map(|a| k.mul(a, &s)).collect();
            }
            out.push(acc);
        }
        out
    }

    /// Minimal polynomial of z over the unital algebra e·C (identity e).
    fn minimal_polynomial(&self, e: &[u32], z: &[u32]) -> FqPoly {
        let k = &self.field;
        let mut powers = vec![e.to_vec()];
        loop {
            let last = powers.last().unwrap().clone();
            let next = self.mul(&last, z);
            // solve next = Σ c_i powers[i]
            let m = FqMat::from_cols(self.dim, &powers);
            if let Some(c) = m.solve(k, &next) {
                let mut coeffs: Vec<u32> = c.iter().map(|x| k.neg(x)).collect();
                coeffs.push(1);
                return Poly::new(k, coeffs);
            }
            powers.push(next);
        }
    }

    /// Local factors with their dimensions and maximal ideals.
    pub fn local_factors(&self) -> Vec<LocalFactor> {
        let k = &self.field;
        let rad = self.radical();
        let idems = self.primitive_idempotents();
        idems
            .iter()
            .map(|e| {
                let ec: Vec<Vec<u32>> = (0..self.dim).map(|i| self.mul(e, &self.unit(i))).collect();
                let dim = span_basis(k, self.dim, &ec).len();
                let ej: Vec<Vec<u32>> = rad.iter().map(|j| self.mul(e, j)).collect();
                let jdim = span_basis(k, self.dim, &ej).len();
                let one_minus_e: Vec<u32> = self.one.iter().zip(e).map(|(a, b)| k.sub(a, b)).collect();
                let mut gens = rad.clone();
                for i in 0..self.dim {
                    gens.push(self.mul(&one_minus_e, &self.unit(i)));
                }
                let maximal_ideal = span_basis(k, self.dim, &gens);
                LocalFactor { idempotent: e.clone(), dim, residue_dim: dim - jdim, maximal_ideal }
            })
            .collect()
    }

    pub fn contains(&self, basis: &[Vec<u32>], v: &[u32]) -> bool {
        in_span(&self.field, basis, v)
    }
}

/// Lift an F_q-vector of S/pS to S-coordinates (degree < deg p in each slot).
pub fn lift_vector(field: &Fq, v: &[u32], r: usize, d: usize) -> Vec<FqPoly> {
    (0..r).map(|i| Poly::new(field, v[i * d..(i + 1) * d].to_vec())).collect()
}
