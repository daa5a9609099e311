//! Brute-force checks over A/p^n: matrices with a given characteristic polynomial,
//! their conjugacy orbits, commutants and group orders.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::bivariate::BiPoly;
use crate::error::{AlgebraError, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::{FqPoly, Poly};
use crate::ratfn::{RatFn, RatMatrix};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// A/p^n with elements coded as integers in base q over coefficients of T^0..T^{N-1}.
#[derive(Clone, Debug)]
pub struct TruncatedRing {
    field: Fq,
    p: FqPoly,
    n: usize,
    modulus: FqPoly,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

impl TruncatedRing {
    pub fn new(p: &FqPoly, n: usize) -> Result<TruncatedRing> {
        let field = p.field().clone();
        let modulus = p.pow(n as u64);
        let size = modulus.norm();
        if size > 4096 {
            return Err(AlgebraError::Budget { needed: size as u128, budget: 4096 });
        }
        let size = size as usize;
        let mut ring =
            TruncatedRing { field, p: p.clone(), n, modulus, size, add: Vec::new(), mul: Vec::new(), neg: Vec::new() };
        let elems: Vec<FqPoly> = (0..size).map(|i| ring.decode(i as u32)).collect();
        let mut add = vec![0u32; size * size];
        let mut mul = vec![0u32; size * size];
        for i in 0..size {
            for j in i..size {
                let s = ring.encode(&(&elems[i] + &elems[j]));
                let m = ring.encode(&(&elems[i] * &elems[j]).rem(&ring.modulus));
                add[i * size + j] = s;
                add[j * size + i] = s;
                mul[i * size + j] = m;
                mul[j * size + i] = m;
            }
        }
        ring.neg = elems.iter().map(|e| ring.encode(&-e)).collect();
        ring.add = add;
        ring.mul = mul;
        Ok(ring)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn prime(&self) -> &FqPoly {
        &self.p
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn encode(&self, a: &FqPoly) -> u32 {
        let a = a.rem(&self.modulus);
        let q = self.field.size() as u32;
        a.coeffs().iter().rev().fold(0u32, |acc, &c| acc * q + c)
    }

    pub fn decode(&self, mut code: u32) -> FqPoly {
        let q = self.field.size() as u32;
        let width = self.modulus.degree().unwrap();
        let mut c = Vec::with_capacity(width);
        for _ in 0..width {
            c.push(code % q);
            code /= q;
        }
        Poly::new(&self.field, c)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn is_unit(&self, a: u32) -> bool {
        !self.p.divides(&self.decode(a))
    }

    pub fn units(&self) -> Vec<u32> {
        (0..self.size as u32).filter(|&a| self.is_unit(a)).collect()
    }

    /// Reduction to A/p^k for k ≤ n, as a code of that ring.
    pub fn reduce_to(&self, a: u32, other: &TruncatedRing) -> u32 {
        other.encode(&self.decode(a))
    }
}

/// Square matrix over a TruncatedRing, row-major.
pub type RingMatrix = Vec<u32>;

/// Division-free characteristic polynomial (Berkowitz), ascending, monic of degree r.
pub fn charpoly(ring: &TruncatedRing, m: &[u32], r: usize) -> Vec<u32> {
    // vector of coefficients, highest degree first: starts with [1, -a11]
    let at = |i: usize, j: usize| m[i * r + j];
    let mut poly: Vec<u32> = vec![1, ring.neg(at(0, 0))];
    for k in 1..r {
        // Toeplitz column for the leading (k+1)x(k+1) block
        let a = at(k, k);
        let row: Vec<u32> = (0..k).map(|j| at(k, j)).collect();
        let col: Vec<u32> = (0..k).map(|i| at(i, k)).collect();
        // powers: R·A_k^i·C
        let mut vecs = vec![col.clone()];
        for _ in 1..k {
            let last = vecs.last().unwrap();
            let next: Vec<u32> = (0..k)
                .map(|i| (0..k).fold(0, |acc, j| ring.add(acc, ring.mul(at(i, j), last[j]))))
                .collect();
            vecs.push(next);
        }
        let dots: Vec<u32> =
            vecs.iter().map(|v| (0..k).fold(0, |acc, j| ring.add(acc, ring.mul(row[j], v[j])))).collect();
        // toeplitz first column: 1, -a, -R C, -R A C, ...
        let mut t = vec![1u32, ring.neg(a)];
        t.extend(dots.iter().map(|&d| ring.neg(d)));
        let mut next = vec![0u32; k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = 0;
            for (j, &pc) in poly.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    acc = ring.add(acc, ring.mul(t[i - j], pc));
                }
            }
            *slot = acc;
        }
        poly = next;
    }
    poly.reverse();
    poly
}

/// Companion matrix of a monic f over A, with last column -c_0..-c_{r-1}.
pub fn companion(f: &BiPoly) -> Vec<Vec<FqPoly>> {
    let r = f.degree_x().unwrap();
    let k = f.field();
    let mut m = vec![vec![Poly::zero(k); r]; r];
    for i in 1..r {
        m[i][i - 1] = Poly::one(k);
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[r - 1] = -&f.coeff(i);
    }
    m
}

fn target_charpoly(ring: &TruncatedRing, f: &BiPoly) -> Vec<u32> {
    f.coeffs().iter().map(|c| ring.encode(c)).collect()
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(AlgebraError::Budget { needed, budget });
    }
    Ok(())
}

/// All matrices over A/p^n with characteristic polynomial f mod p^n, found level by level:
/// every solution at level k+1 reduces to one at level k.
pub fn solutions(f: &BiPoly, p: &FqPoly, n: usize, budget: u128) -> Result<(TruncatedRing, Vec<RingMatrix>)> {
    let r = f.degree_x().unwrap();
    let r2 = r * r;
    let base = p.norm() as u128;
    let ring1 = TruncatedRing::new(p, 1)?;
    check_budget(base.pow(r2 as u32), budget)?;
    let target = target_charpoly(&ring1, f);
    let mut sols: Vec<RingMatrix> = (0..base.pow(r2 as u32) as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let mut m = vec![0u32; r2];
            let mut t = idx;
            for e in m.iter_mut() {
                *e = (t % base as u64) as u32;
                t /= base as u64;
            }
            (charpoly(&ring1, &m, r) == target).then_some(m)
        })
        .collect();
    let mut ring = ring1;
    let mut work = base.pow(r2 as u32);
    for level in 2..=n {
        let next = TruncatedRing::new(p, level)?;
        let target = target_charpoly(&next, f);
        let lifts = base.pow(r2 as u32);
        work += sols.len() as u128 * lifts;
        check_budget(work, budget)?;
        // p^{level-1}·c for c of degree < deg p
        let step: Vec<u32> = FqPoly::all_below_degree(p.field(), p.degree().unwrap())
            .iter()
            .map(|c| next.encode(&(c * &p.pow(level as u64 - 1))))
            .collect();
        let prev = &ring;
        sols = sols
            .par_iter()
            .flat_map_iter(|m| {
                let lifted: Vec<u32> = m.iter().map(|&a| prev.reduce_to(a, &next)).collect();
                let next = &next;
                let step = &step;
                let target = &target;
                (0..lifts as u64).filter_map(move |idx| {
                    let mut cand = lifted.clone();
                    let mut t = idx;
                    for e in cand.iter_mut() {
                        *e = next.add(*e, step[(t % base as u64) as usize]);
                        t /= base as u64;
                    }
                    (charpoly(next, &cand, r) == *target).then_some(cand)
                })
            })
            .collect();
        ring = next;
    }
    sols.sort();
    Ok((ring, sols))
}

/// |{M ∈ Mat_r(A/p^n) : charpoly(M) ≡ f}|.
pub fn count_matrices(f: &BiPoly, p: &FqPoly, n: usize, budget: u128) -> Result<u128> {
    Ok(solutions(f, p, n, budget)?.1.len() as u128)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Generators of GL_r(A/p^n): elementary E_ij(c) and diag(u, 1, ..., 1), with inverses.
fn gl_generators(ring: &TruncatedRing, r: usize) -> Vec<(RingMatrix, RingMatrix)> {
    let mut out = Vec::new();
    let id = |ring: &TruncatedRing| -> RingMatrix {
        let _ = ring;
        let mut m = vec![0u32; r * r];
        for i in 0..r {
            m[i * r + i] = 1;
        }
        m
    };
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            for c in 1..ring.size() as u32 {
                let mut g = id(ring);
                g[i * r + j] = c;
                let mut gi = id(ring);
                gi[i * r + j] = ring.neg(c);
                out.push((g, gi));
            }
        }
    }
    for u in ring.units() {
        let inv = ring.units().into_iter().find(|&v| ring.mul(u, v) == 1).unwrap();
        let mut g = id(ring);
        g[0] = u;
        let mut gi = id(ring);
        gi[0] = inv;
        out.push((g, gi));
    }
    out
}

fn mat_mul(ring: &TruncatedRing, a: &[u32], b: &[u32], r: usize) -> RingMatrix {
    let mut out = vec![0u32; r * r];
    for i in 0..r {
        for j in 0..r {
            let mut acc = 0;
            for l in 0..r {
                acc = ring.add(acc, ring.mul(a[i * r + l], b[l * r + j]));
            }
            out[i * r + j] = acc;
        }
    }
    out
}

/// Number of GL_r(A/p^n)-orbits on a conjugation-stable set of matrices.
pub fn orbit_count_of(ring: &TruncatedRing, r: usize, set: &[RingMatrix]) -> usize {
    let index: HashMap<&RingMatrix, usize> = set.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let gens = gl_generators(ring, r);
    let mut uf = UnionFind::new(set.len());
    for (i, m) in set.iter().enumerate() {
        for (g, gi) in &gens {
            let c = mat_mul(ring, &mat_mul(ring, g, m, r), gi, r);
            let j = *index.get(&c).expect("set is stable under conjugation");
            uf.union(i, j);
        }
    }
    (0..set.len()).filter(|&i| uf.find(i) == i).count()
}

#[derive(Clone, Debug)]
pub struct OrbitCount {
    pub level: usize,
    pub lift_depth: usize,
    pub matrices: usize,
    pub orbits: usize,
}

/// GL_r(A/p^n)-orbits among the reductions mod p^n of the solutions at level n + depth.
/// Depth 0 gives the naive count over all solutions mod p^n.
pub fn brute_orbit_count(f: &BiPoly, p: &FqPoly, n: usize, depth: usize, budget: u128) -> Result<OrbitCount> {
    let r = f.degree_x().unwrap();
    let (top, sols) = solutions(f, p, n + depth, budget)?;
    let ring = TruncatedRing::new(p, n)?;
    let images: BTreeSet<RingMatrix> =
        sols.iter().map(|m| m.iter().map(|&a| top.reduce_to(a, &ring)).collect()).collect();
    let set: Vec<RingMatrix> = images.into_iter().collect();
    let orbits = orbit_count_of(&ring, r, &set);
    Ok(OrbitCount { level: n, lift_depth: depth, matrices: set.len(), orbits })
}

/// dim over F_q(T) of {M : M·M_0 = M_0·M}.
pub fn commutant_dimension(f: &BiPoly) -> usize {
    let r = f.degree_x().unwrap();
    let k = f.field();
    let c = companion(f);
    // unknown M[a][b] at index a*r + b; equation (M C - C M)[i][j] = 0
    let mut sys = RatMatrix::zero(k, r * r, r * r);
    for i in 0..r {
        for j in 0..r {
            let row = i * r + j;
            for l in 0..r {
                // Σ_l M[i][l] C[l][j]
                let cur = sys.get(row, i * r + l).clone();
                sys.set(row, i * r + l, &cur + &RatFn::from_poly(c[l][j].clone()));
                // - Σ_l C[i][l] M[l][j]
                let cur = sys.get(row, l * r + j).clone();
                sys.set(row, l * r + j, &cur - &RatFn::from_poly(c[i][l].clone()));
            }
        }
    }
    r * r - sys.rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCounts {
    pub sl: u128,
    pub gl: u128,
    pub units: u128,
}

/// Exhaustive |SL_r(A/p^n)| and |GL_r(A/p^n)|, checking |GL| = |units|·|SL|.
pub fn brute_sl_count(r: usize, p: &FqPoly, n: usize, budget: u128) -> Result<GroupCounts> {
    let ring = TruncatedRing::new(p, n)?;
    let size = ring.size() as u128;
    let total = size.pow((r * r) as u32);
    check_budget(total, budget)?;
    let (sl, gl) = (0..total as u64)
        .into_par_iter()
        .map(|idx| {
            let mut m = vec![0u32; r * r];
            let mut t = idx;
            for e in m.iter_mut() {
                *e = (t % size as u64) as u32;
                t /= size as u64;
            }
            let cp = charpoly(&ring, &m, r);
            // det = (-1)^r · c_0
            let det = if r % 2 == 0 { cp[0] } else { ring.neg(cp[0]) };
            ((det == 1) as u128, ring.is_unit(det) as u128)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let units = ring.units().len() as u128;
    if gl != units * sl {
        return Err(AlgebraError::Invariant(format!("|GL| = {gl} but |units|·|SL| = {}", units * sl)));
    }
    Ok(GroupCounts { sl, gl, units })
}

/// Closed form |SL_r(A/p^n)| = |p|^{(n-1)(r²-1)}·Q^{r(r-1)/2}·∏_{i=2}^r (Q^i - 1), Q = |p|.
pub fn sl_order(r: usize, big_q: u128, n: usize) -> u128 {
    let mut s = big_q.pow((r * (r - 1) / 2) as u32);
    for i in 2..=r {
        s *= big_q.pow(i as u32) - 1;
    }
    s * big_q.pow(((n - 1) * (r * r - 1)) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_bivariate, parse_poly};

    #[test]
    fn small_groups() {
        let k = Fq::new(3).unwrap();
        let t = parse_poly(&k, "T").unwrap();
        let g = brute_sl_count(2, &t, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!((g.sl, g.gl), (24, 48));
        assert_eq!(brute_sl_count(2, &t, 2, DEFAULT_BUDGET).unwrap().sl, 648);
        assert_eq!(sl_order(2, 3, 2), 648);
    }

    #[test]
    fn cusp_level_one() {
        let k = Fq::new(3).unwrap();
        let f = parse_bivariate(&k, "x^2 - T^3").unwrap();
        let t = parse_poly(&k, "T").unwrap();
        // a + d = 0, ad - bc = 0 over F_3
        let direct = (0..81u32)
            .filter(|i| {
                let (a, b, c, d) = (i % 3, i / 3 % 3, i / 9 % 3, i / 27);
                (a + d) % 3 == 0 && (a * d + 9 - b * c % 3) % 3 == 0
            })
            .count() as u128;
        assert_eq!(count_matrices(&f, &t, 1, DEFAULT_BUDGET).unwrap(), direct);
        assert_eq!(direct, 9);
    }

    #[test]
    fn berkowitz_matches_cofactor() {
        let k = Fq::new(2).unwrap();
        let t = parse_poly(&k, "T").unwrap();
        let ring = TruncatedRing::new(&t, 2).unwrap();
        // 3x3 over A/T^2; compare charpoly at x = s with det(s - M) by cofactors
        let m: Vec<u32> = vec![1, 2, 3, 0, 1, 2, 3, 3, 1];
        let cp = charpoly(&ring, &m, 3);
        for s in 0..4u32 {
            let val = cp.iter().rev().fold(0, |acc, &c| ring.add(ring.mul(acc, s), c));
            let a: Vec<u32> =
                (0..9).map(|i| if i % 4 == 0 { ring.sub(s, m[i]) } else { ring.neg(m[i]) }).collect();
            let det3 = |a: &[u32]| {
                let t1 = ring.mul(a[0], ring.sub(ring.mul(a[4], a[8]), ring.mul(a[5], a[7])));
                let t2 = ring.mul(a[1], ring.sub(ring.mul(a[3], a[8]), ring.mul(a[5], a[6])));
                let t3 = ring.mul(a[2], ring.sub(ring.mul(a[3], a[7]), ring.mul(a[4], a[6])));
                ring.add(ring.sub(t1, t2), t3)
            };
            assert_eq!(val, det3(&a));
        }
    }

    #[test]
    fn commutants() {
        let k = Fq::new(3).unwrap();
        assert_eq!(commutant_dimension(&parse_bivariate(&k, "1 - x + x^3").unwrap()), 3);
        assert_eq!(commutant_dimension(&parse_bivariate(&k, "x^2 - T^3").unwrap()), 2);
    }
}
