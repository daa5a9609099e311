//! Fractional ideals and orders as A-lattices in K.

use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::context::{AlgebraContext, KElement};
use crate::error::{AlgebraError, Result};
use crate::matrix::{hnf, smith, HnfBasis, PolyMatrix};
use crate::poly::{FqPoly, Poly};
use crate::ratfn::{RatFn, RatMatrix};

/// The lattice (1/den)·num·A^r, num in HNF, normalized.
#[derive(Clone, Debug)]
pub struct FracIdeal {
    ctx: AlgebraContext,
    num: HnfBasis,
    den: FqPoly,
}

impl PartialEq for FracIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for FracIdeal {}

impl FracIdeal {
    /// Lattice spanned by integral columns divided by `den`.
    pub fn from_columns(ctx: &AlgebraContext, cols: &[Vec<FqPoly>], den: FqPoly) -> Result<FracIdeal> {
        let r = ctx.r();
        let m = PolyMatrix::from_columns(ctx.field(), r, cols);
        let h = hnf(&m)?;
        Ok(FracIdeal::normalize(ctx, h, den))
    }

    fn normalize(ctx: &AlgebraContext, h: HnfBasis, den: FqPoly) -> FracIdeal {
        let den = den.monic();
        let g = h.matrix().entries().iter().fold(den.clone(), |acc, e| acc.gcd(e));
        if g.is_one() {
            return FracIdeal { ctx: ctx.clone(), num: h, den };
        }
        let r = ctx.r();
        let cols: Vec<Vec<FqPoly>> =
            h.matrix().columns().iter().map(|c| c.iter().map(|e| e.div_exact(&g).unwrap()).collect()).collect();
        let m = PolyMatrix::from_columns(ctx.field(), r, &cols);
        let h = hnf(&m).expect("scaling preserves rank");
        FracIdeal { ctx: ctx.clone(), num: h, den: den.div_exact(&g).unwrap() }
    }

    pub fn from_generators(ctx: &AlgebraContext, gens: &[KElement]) -> Result<FracIdeal> {
        let k = ctx.field();
        let den = gens.iter().fold(Poly::one(k), |acc, g| acc.lcm(g.den()));
        let cols: Vec<Vec<FqPoly>> = gens
            .iter()
            .map(|g| {
                let s = den.div_exact(g.den()).unwrap();
                g.num().iter().map(|c| c * &s).collect()
            })
            .collect();
        if cols.is_empty() {
            return Err(AlgebraError::RankDeficient { rank: 0, expected: ctx.r() });
        }
        FracIdeal::from_columns(ctx, &cols, den)
    }

    pub fn from_rational_columns(ctx: &AlgebraContext, cols: &[Vec<RatFn>]) -> Result<FracIdeal> {
        let gens: Vec<KElement> = cols.iter().map(|c| ctx.from_rational(c)).collect();
        FracIdeal::from_generators(ctx, &gens)
    }

    pub fn ctx(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn numerator(&self) -> &HnfBasis {
        &self.num
    }

    pub fn denominator(&self) -> &FqPoly {
        &self.den
    }

    pub fn basis(&self) -> Vec<KElement> {
        self.num.matrix().columns().into_iter().map(|c| KElement::new(c, self.den.clone())).collect()
    }

    fn check_ctx(&self, other: &FracIdeal) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(AlgebraError::ContextMismatch);
        }
        Ok(())
    }

    /// Lattice spanned by the elements with the given coordinates in this basis.
    pub fn sublattice(&self, cols: &[Vec<FqPoly>]) -> Result<FracIdeal> {
        let h = self.num.matrix();
        let cm = PolyMatrix::from_columns(self.ctx.field(), self.ctx.r(), cols);
        FracIdeal::from_columns(&self.ctx, &h.mul(&cm).columns(), self.den.clone())
    }

    /// Coordinates of z in this basis, over F_q(T).
    pub fn rational_coords(&self, z: &KElement) -> Vec<RatFn> {
        let v: Vec<RatFn> = z.num().iter().map(|c| RatFn::new(c * &self.den, z.den().clone())).collect();
        self.num.solve(&v)
    }

    /// Integral coordinates of z, if z lies in the lattice.
    pub fn coords(&self, z: &KElement) -> Option<Vec<FqPoly>> {
        let y = self.rational_coords(z);
        y.iter().all(|c| c.is_polynomial()).then(|| y.into_iter().map(|c| c.num().clone()).collect())
    }

    pub fn contains_element(&self, z: &KElement) -> bool {
        if z.is_zero() {
            return true;
        }
        // fast path for integral coordinates
        if z.den().is_one() {
            let v: Vec<FqPoly> = z.num().iter().map(|c| c * &self.den).collect();
            return self.num.solve_integral(&v).is_some();
        }
        self.coords(z).is_some()
    }

    /// J ⊆ self.
    pub fn contains(&self, j: &FracIdeal) -> bool {
        j.basis().iter().all(|b| self.contains_element(b))
    }

    pub fn first_outside(&self, j: &FracIdeal) -> Option<KElement> {
        j.basis().into_iter().find(|b| !self.contains_element(b))
    }

    pub fn sum(&self, j: &FracIdeal) -> Result<FracIdeal> {
        self.check_ctx(j)?;
        let mut g = self.basis();
        g.extend(j.basis());
        FracIdeal::from_generators(&self.ctx, &g)
    }

    pub fn product(&self, j: &FracIdeal) -> Result<FracIdeal> {
        self.check_ctx(j)?;
        let ctx = &self.ctx;
        // integral products then one common denominator
        let a = self.num.matrix().columns();
        let b = j.num.matrix().columns();
        let mut cols = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                cols.push(ctx.mul_coords(x, y));
            }
        }
        FracIdeal::from_columns(ctx, &cols, &self.den * &j.den)
    }

    pub fn scale(&self, z: &KElement) -> Result<FracIdeal> {
        if z.is_zero() {
            return Err(AlgebraError::RankDeficient { rank: 0, expected: self.ctx.r() });
        }
        let ctx = &self.ctx;
        let cols: Vec<Vec<FqPoly>> = self.num.matrix().columns().iter().map(|c| ctx.mul_coords(c, z.num())).collect();
        FracIdeal::from_columns(ctx, &cols, &self.den * z.den())
    }

    pub fn scale_poly(&self, a: &FqPoly) -> Result<FracIdeal> {
        self.scale(&self.ctx.scalar(a.clone()))
    }

    /// Matrix sending power-basis coordinates to coordinates in this basis.
    pub fn coord_map(&self) -> RatMatrix {
        let inv = self.num.inverse();
        let d = RatFn::from_poly(self.den.clone());
        let mut m = inv;
        for e in m.data.iter_mut() {
            *e = &*e * &d;
        }
        m
    }

    /// (self : J) = {z : zJ ⊆ self}.
    pub fn colon(&self, j: &FracIdeal) -> Result<FracIdeal> {
        self.check_ctx(j)?;
        let c = self.coord_map();
        let blocks: Vec<RatMatrix> = j.basis().iter().map(|w| c.mul(&self.ctx.mult_matrix(w))).collect();
        lattice_preimage(&self.ctx, &blocks)
    }

    pub fn intersection(&self, j: &FracIdeal) -> Result<FracIdeal> {
        self.check_ctx(j)?;
        lattice_preimage(&self.ctx, &[self.coord_map(), j.coord_map()])
    }

    pub fn multiplicator_ring(&self) -> Result<Order> {
        Order::from_ideal(self.colon(self)?)
    }

    /// True if 1 ∈ self.
    pub fn contains_one(&self) -> bool {
        self.contains_element(&self.ctx.one())
    }

    /// Canonical sort key: denominator then HNF entries.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut key = Vec::new();
        let mut push = |p: &FqPoly| {
            key.push(p.coeffs().len() as u32);
            key.extend_from_slice(p.coeffs());
        };
        push(&self.den);
        for e in self.num.matrix().entries() {
            push(e);
        }
        key
    }

    pub fn to_json(&self) -> Value {
        let m = self.num.matrix();
        let rows: Vec<Vec<String>> =
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| self.ctx.poly_string(m.get(i, j))).collect()).collect();
        json!({"den": self.ctx.poly_string(&self.den), "num": rows})
    }
}

impl PartialOrd for FracIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FracIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

/// {z ∈ F^r : B z ∈ A^{rows(B)} for every block B}, as a lattice in power-basis coordinates.
pub fn lattice_preimage(ctx: &AlgebraContext, blocks: &[RatMatrix]) -> Result<FracIdeal> {
    let k = ctx.field();
    let r = ctx.r();
    let mut d = Poly::one(k);
    for b in blocks {
        for e in &b.data {
            d = d.lcm(e.den());
        }
    }
    // columns of Φ'^T are the rows of D·Φ
    let mut cols = Vec::new();
    for b in blocks {
        assert_eq!(b.cols, r);
        for i in 0..b.rows {
            let row: Vec<FqPoly> = (0..r).map(|j| b.get(i, j).num() * &d.div_exact(b.get(i, j).den()).unwrap()).collect();
            if row.iter().any(|c| !c.is_zero()) {
                cols.push(row);
            }
        }
    }
    let m = PolyMatrix::from_columns(k, r, &cols);
    let hc = hnf(&m)?;
    let inv = hc.inverse();
    let dr = RatFn::from_poly(d);
    // generators: D times the rows of Hc^{-1}
    let gens: Vec<Vec<RatFn>> = (0..r).map(|i| (0..r).map(|j| inv.get(i, j) * &dr).collect()).collect();
    FracIdeal::from_rational_columns(ctx, &gens)
}

/// Generator of the order ideal of M/N for N ⊆ M.
pub fn index_ideal(m: &FracIdeal, n: &FracIdeal) -> Result<FqPoly> {
    Ok(quotient_divisors(m, n)?.iter().fold(Poly::one(m.ctx.field()), |a, b| &a * b))
}

/// Elementary divisors of M/N.
pub fn quotient_divisors(m: &FracIdeal, n: &FracIdeal) -> Result<Vec<FqPoly>> {
    m.check_ctx(n)?;
    let c = inclusion_matrix(m, n)?;
    Ok(smith(&c)?.divisors)
}

/// Integral matrix whose columns are the M-coordinates of N's basis.
pub fn inclusion_matrix(m: &FracIdeal, n: &FracIdeal) -> Result<PolyMatrix> {
    let mut cols = Vec::new();
    for b in n.basis() {
        match m.coords(&b) {
            Some(c) => cols.push(c),
            None => return Err(AlgebraError::NotContained { witness: m.ctx.element_string(&b) }),
        }
    }
    Ok(PolyMatrix::from_columns(m.ctx.field(), m.ctx.r(), &cols))
}

/// An order: a lattice containing 1 and closed under multiplication.
#[derive(Clone, Debug)]
pub struct Order {
    ideal: FracIdeal,
    /// table[i][j] = coordinates of b_i·b_j.
    table: Vec<Vec<Vec<FqPoly>>>,
}

impl PartialEq for Order {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
    }
}

impl Eq for Order {}

impl Order {
    pub fn from_ideal(ideal: FracIdeal) -> Result<Order> {
        if !ideal.contains_one() {
            return Err(AlgebraError::NotAnOrder("1 is not in the lattice".into()));
        }
        let ctx = ideal.ctx.clone();
        let basis = ideal.basis();
        let r = basis.len();
        let mut table = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in i..r {
                let p = ctx.mul(&basis[i], &basis[j]);
                let Some(c) = ideal.coords(&p) else {
                    return Err(AlgebraError::NotAnOrder(format!(
                        "product of basis elements {i},{j} lies outside"
                    )));
                };
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        Ok(Order { ideal, table })
    }

    /// R = A[π].
    pub fn monogenic(ctx: &AlgebraContext) -> Order {
        let r = ctx.r();
        let k = ctx.field();
        let cols: Vec<Vec<FqPoly>> = (0..r)
            .map(|j| (0..r).map(|i| if i == j { Poly::one(k) } else { Poly::zero(k) }).collect())
            .collect();
        let ideal = FracIdeal::from_columns(ctx, &cols, Poly::one(k)).unwrap();
        Order::from_ideal(ideal).expect("A[π] is an order")
    }

    pub fn ideal(&self) -> &FracIdeal {
        &self.ideal
    }

    pub fn ctx(&self) -> &AlgebraContext {
        &self.ideal.ctx
    }

    pub fn rank(&self) -> usize {
        self.table.len()
    }

    pub fn basis(&self) -> Vec<KElement> {
        self.ideal.basis()
    }

    pub fn table(&self) -> &Vec<Vec<Vec<FqPoly>>> {
        &self.table
    }

    /// Product of two elements given by coordinates in this basis.
    pub fn mul_coords(&self, a: &[FqPoly], b: &[FqPoly]) -> Vec<FqPoly> {
        let r = self.rank();
        let k = self.ctx().field();
        let mut out = vec![Poly::zero(k); r];
        for i in 0..r {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for l in 0..r {
                    let t = &self.table[i][j][l];
                    if !t.is_zero() {
                        out[l] = &out[l] + &(&c * t);
                    }
                }
            }
        }
        out
    }

    pub fn element(&self, coords: &[FqPoly]) -> KElement {
        let ctx = self.ctx();
        let basis = self.basis();
        let mut acc = ctx.zero();
        for (c, b) in coords.iter().zip(&basis) {
            if !c.is_zero() {
                acc = ctx.add(&acc, &b.scale(c));
            }
        }
        acc
    }

    pub fn contains(&self, other: &Order) -> bool {
        self.ideal.contains(&other.ideal)
    }

    /// Coordinates of 1.
    pub fn one_coords(&self) -> Vec<FqPoly> {
        self.ideal.coords(&self.ctx().one()).expect("1 lies in every order")
    }

    /// The ideal a·S.
    pub fn scalar_ideal(&self, a: &FqPoly) -> FracIdeal {
        self.ideal.scale_poly(a).expect("nonzero scalar")
    }

    pub fn to_json(&self) -> Value {
        self.ideal.to_json()
    }
}
