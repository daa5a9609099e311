//! Finite quotients M/N of lattices as F_q-vector spaces, and enumeration of their
//! submodules under a commuting family of operators.

use std::collections::{BTreeSet, VecDeque};

use crate::context::KElement;
use crate::error::{AlgebraError, Result};
use crate::field::{FiniteField, Fq};
use crate::ideal::{inclusion_matrix, FracIdeal};
use crate::linalg::{in_span, span_basis, FqMat};
use crate::matrix::{smith, PolyMatrix};
use crate::poly::{FqPoly, Poly};

/// M/N ≅ ⊕ A/(d_i) in an adapted basis u_i of M.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    outer: FracIdeal,
    inner: FracIdeal,
    /// Row transform P taking M-coordinates to u-coordinates.
    p: PolyMatrix,
    /// M-coordinates of the u_i with nontrivial d_i.
    gens: Vec<Vec<FqPoly>>,
    rows: Vec<usize>,
    divisors: Vec<FqPoly>,
    offsets: Vec<usize>,
    dim: usize,
}

impl QuotientModule {
    pub fn new(outer: &FracIdeal, inner: &FracIdeal) -> Result<QuotientModule> {
        let c = inclusion_matrix(outer, inner)?;
        let s = smith(&c)?;
        let mut gens = Vec::new();
        let mut rows = Vec::new();
        let mut divisors = Vec::new();
        let mut offsets = Vec::new();
        let mut dim = 0;
        for (i, d) in s.divisors.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            gens.push(s.p_inv.column(i));
            rows.push(i);
            divisors.push(d.clone());
            offsets.push(dim);
            dim += d.degree().unwrap();
        }
        Ok(QuotientModule { outer: outer.clone(), inner: inner.clone(), p: s.p, gens, rows, divisors, offsets, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Fq {
        self.outer.ctx().field()
    }

    pub fn divisors(&self) -> &[FqPoly] {
        &self.divisors
    }

    pub fn outer(&self) -> &FracIdeal {
        &self.outer
    }

    pub fn inner(&self) -> &FracIdeal {
        &self.inner
    }

    /// Image in M/N of an element given by M-coordinates.
    pub fn vector_of_coords(&self, m: &[FqPoly]) -> Vec<u32> {
        let mut v = vec![0u32; self.dim];
        for (slot, &row) in self.rows.iter().enumerate() {
            let mut y = Poly::zero(self.field());
            for (j, c) in m.iter().enumerate() {
                let pj = self.p.get(row, j);
                if !pj.is_zero() && !c.is_zero() {
                    y = &y + &(pj * c);
                }
            }
            let y = y.rem(&self.divisors[slot]);
            for (t, &x) in y.coeffs().iter().enumerate() {
                v[self.offsets[slot] + t] = x;
            }
        }
        v
    }

    pub fn vector_of(&self, z: &KElement) -> Result<Vec<u32>> {
        match self.outer.coords(z) {
            Some(c) => Ok(self.vector_of_coords(&c)),
            None => Err(AlgebraError::NotContained { witness: self.outer.ctx().element_string(z) }),
        }
    }

    /// M-coordinates of the canonical lift of an F_q-vector.
    pub fn lift(&self, v: &[u32]) -> Vec<FqPoly> {
        let k = self.field();
        let r = self.outer.ctx().r();
        let mut out = vec![Poly::zero(k); r];
        for (slot, g) in self.gens.iter().enumerate() {
            let deg = self.divisors[slot].degree().unwrap();
            let a = Poly::new(k, v[self.offsets[slot]..self.offsets[slot] + deg].to_vec());
            if a.is_zero() {
                continue;
            }
            for (o, gi) in out.iter_mut().zip(g) {
                *o = &*o + &(&a * gi);
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Matrix of multiplication by z, which must preserve M and N.
    pub fn operator(&self, z: &KElement) -> Result<FqMat> {
        let ctx = self.outer.ctx();
        let mut cols = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let lifted = self.outer.sublattice_element(&self.lift(&self.basis_vector(i)));
            let img = ctx.mul(&lifted, z);
            cols.push(self.vector_of(&img)?);
        }
        Ok(FqMat::from_cols(self.dim, &cols))
    }

    /// N + lifts of the subspace.
    pub fn pullback(&self, basis: &[Vec<u32>]) -> Result<FracIdeal> {
        let mut cols = inclusion_matrix(&self.outer, &self.inner)?.columns();
        for v in basis {
            cols.push(self.lift(v));
        }
        self.outer.sublattice(&cols)
    }
}

/// Commutative algebra generated by the operators, with its Jacobson radical.
fn radical_operators(k: &Fq, n: usize, ops: &[FqMat]) -> Vec<FqMat> {
    let flat = |m: &FqMat| m.data.clone();
    let mut basis: Vec<FqMat> = Vec::new();
    let mut rref: Vec<Vec<u32>> = Vec::new();
    let mut queue = VecDeque::from([FqMat::identity(n)]);
    while let Some(m) = queue.pop_front() {
        if in_span(k, &rref, &flat(&m)) {
            continue;
        }
        basis.push(m.clone());
        let mut all: Vec<Vec<u32>> = rref.clone();
        all.push(flat(&m));
        rref = span_basis(k, n * n, &all);
        for op in ops {
            queue.push_back(op.mul(k, &m));
        }
    }
    // Frobenius c ↦ c^q on the algebra, in the coordinates of `basis`
    let q = k.size();
    let dim = basis.len();
    let bm = FqMat::from_cols(n * n, &basis.iter().map(flat).collect::<Vec<_>>());
    let mut cols = Vec::with_capacity(dim);
    for b in &basis {
        let img = b.pow(k, q);
        cols.push(bm.solve(k, &flat(&img)).expect("algebra closed under powers"));
    }
    let phi = FqMat::from_cols(dim, &cols);
    let mut e = 1u64;
    let mut qe = q;
    while (qe as usize) < dim {
        e += 1;
        qe = qe.saturating_mul(q);
    }
    phi.pow(k, e)
        .kernel(k)
        .iter()
        .map(|c| {
            let mut acc = FqMat::zero(n, n);
            for (ci, b) in c.iter().zip(&basis) {
                if *ci != 0 {
                    for (a, x) in acc.data.iter_mut().zip(&b.data) {
                        *a = k.add(a, &k.mul(ci, x));
                    }
                }
            }
            acc
        })
        .collect()
}

/// Smallest invariant subspace containing the span of `gens`, in RREF.
fn closure(k: &Fq, n: usize, ops: &[FqMat], gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut basis = span_basis(k, n, &gens);
    loop {
        let mut grown = basis.clone();
        for b in &basis {
            for op in ops {
                let w = op.mul_vec(k, b);
                if !in_span(k, &grown, &w) {
                    grown.push(w);
                    grown = span_basis(k, n, &grown);
                }
            }
        }
        if grown.len() == basis.len() {
            return basis;
        }
        basis = grown;
    }
}

/// All subspaces of F_q^n invariant under the commuting operators, as RREF bases,
/// found layer by layer through minimal extensions inside the socle of V/W.
pub fn invariant_subspaces(k: &Fq, n: usize, ops: &[FqMat]) -> Vec<Vec<Vec<u32>>> {
    let rad = radical_operators(k, n, ops);
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    seen.insert(Vec::new());
    let mut queue = VecDeque::from([Vec::<Vec<u32>>::new()]);
    while let Some(w) = queue.pop_front() {
        if w.len() == n {
            continue;
        }
        // socle of V/W: {v : J v ⊆ W}
        let soc = if rad.is_empty() {
            (0..n).map(|i| unit(n, i)).collect::<Vec<_>>()
        } else {
            socle_preimage(k, n, &rad, &w)
        };
        let comp = complement(k, n, &w, &soc);
        let q = k.size();
        let total = q.pow(comp.len() as u32);
        for idx in 1..total {
            // projective representatives: first nonzero digit equal to 1
            let mut digits = Vec::with_capacity(comp.len());
            let mut t = idx;
            for _ in 0..comp.len() {
                digits.push((t % q) as u32);
                t /= q;
            }
            if digits.iter().find(|&&d| d != 0) != Some(&1) {
                continue;
            }
            let mut v = vec![0u32; n];
            for (d, c) in digits.iter().zip(&comp) {
                if *d != 0 {
                    for (vi, ci) in v.iter_mut().zip(c) {
                        *vi = k.add(vi, &k.mul(d, ci));
                    }
                }
            }
            let mut gens = w.clone();
            gens.push(v);
            let ext = closure(k, n, ops, gens);
            if seen.insert(ext.clone()) {
                queue.push_back(ext);
            }
        }
    }
    seen.into_iter().collect()
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// {v : j·v ∈ W for every radical operator j}.
fn socle_preimage(k: &Fq, n: usize, rad: &[FqMat], w: &[Vec<u32>]) -> Vec<Vec<u32>> {
    // v ↦ (j_1 v mod W, ..., j_s v mod W); kernel via the annihilator of W
    let ann = annihilator_rows(k, n, w);
    if ann.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let mut rows = Vec::new();
    for j in rad {
        for a in &ann {
            // (a·j) v = 0
            let row: Vec<u32> = (0..n)
                .map(|c| (0..n).fold(0u32, |acc, l| k.add(&acc, &k.mul(&a[l], &j.get(l, c)))))
                .collect();
            rows.push(row);
        }
    }
    let m = FqMat::from_rows(n, &rows);
    span_basis(k, n, &m.kernel(k))
}

/// Rows a with a·w = 0 for all w ∈ W (so v ∈ W iff a·v = 0 for all such a).
fn annihilator_rows(k: &Fq, n: usize, w: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if w.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    FqMat::from_rows(n, w).kernel(k)
}

/// Vectors of `big` completing a basis of `small` (small ⊆ big).
fn complement(k: &Fq, n: usize, small: &[Vec<u32>], big: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut cur = small.to_vec();
    let mut out = Vec::new();
    for b in big {
        if !in_span(k, &span_basis(k, n, &cur), b) {
            cur.push(b.clone());
            out.push(b.clone());
        }
    }
    out
}

impl FracIdeal {
    /// Element with the given coordinates in this basis.
    pub fn sublattice_element(&self, coords: &[FqPoly]) -> KElement {
        let h = self.numerator().matrix();
        let r = self.ctx().r();
        let k = self.ctx().field();
        let num: Vec<FqPoly> = (0..r)
            .map(|i| (0..r).fold(Poly::zero(k), |acc, j| &acc + &(h.get(i, j) * &coords[j])))
            .collect();
        KElement::new(num, self.denominator().clone())
    }
}

/// Submodules of M/N stable under multiplication by the given elements, as pullbacks.
pub fn intermediate_lattices(outer: &FracIdeal, inner: &FracIdeal, actors: &[KElement]) -> Result<Vec<FracIdeal>> {
    let qm = QuotientModule::new(outer, inner)?;
    if qm.dim() == 0 {
        return Ok(vec![outer.clone()]);
    }
    let k = qm.field().clone();
    let ops: Vec<FqMat> = actors.iter().map(|z| qm.operator(z)).collect::<Result<_>>()?;
    let subs = invariant_subspaces(&k, qm.dim(), &ops);
    let mut out: Vec<FracIdeal> = subs.iter().map(|s| qm.pullback(s)).collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_subspaces_brute(k: &Fq, n: usize, ops: &[FqMat]) -> usize {
        // every subset of vectors generating a subspace: enumerate all subspaces via spans of
        // up to n vectors is too slow; instead enumerate all vectors sets closure from scratch
        let q = k.size();
        let all: Vec<Vec<u32>> = (0..q.pow(n as u32))
            .map(|mut t| {
                (0..n)
                    .map(|_| {
                        let d = (t % q) as u32;
                        t /= q;
                        d
                    })
                    .collect()
            })
            .collect();
        let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
        seen.insert(Vec::new());
        let mut frontier = vec![Vec::<Vec<u32>>::new()];
        while let Some(w) = frontier.pop() {
            for v in &all {
                let mut g = w.clone();
                g.push(v.clone());
                let c = closure(k, n, ops, g);
                if seen.insert(c.clone()) {
                    frontier.push(c);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn subspace_counts() {
        let k = Fq::new(3).unwrap();
        // no operators on F_3^2: 0, four lines, whole space
        assert_eq!(invariant_subspaces(&k, 2, &[]).len(), 6);
        // nilpotent Jordan block on F_3^3: a chain of 4
        let mut j = FqMat::zero(3, 3);
        j.set(0, 1, 1);
        j.set(1, 2, 1);
        assert_eq!(invariant_subspaces(&k, 3, &[j.clone()]).len(), 4);
        // diag(1,1,2): subspaces of the 2-dim eigenspace times {0, line}
        let mut d = FqMat::identity(3);
        d.set(2, 2, 2);
        assert_eq!(invariant_subspaces(&k, 3, &[d.clone()]).len(), 12);
        assert_eq!(count_subspaces_brute(&k, 3, &[d]), 12);
        let mut m = FqMat::zero(4, 4);
        m.set(0, 1, 1);
        m.set(2, 3, 1);
        assert_eq!(invariant_subspaces(&k, 4, &[m.clone()]).len(), count_subspaces_brute(&k, 4, &[m]));
    }
}
