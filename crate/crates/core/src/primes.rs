//! Prime splitting, discriminants, maximal orders and the model at infinity.

use serde_json::{json, Value};

use crate::algebra::{lift_vector, FiniteAlgebra};
use crate::bivariate::BiPoly;
use crate::context::AlgebraContext;
use crate::error::{AlgebraError, Result};
use crate::factor::{factor, is_irreducible};
use crate::field::ResidueField;
use crate::ideal::{index_ideal, FracIdeal, Order};
use crate::poly::{FqPoly, Poly};
use crate::ratfn::{RatFn, RatMatrix};

/// A prime of an order above a prime p of A.
#[derive(Clone, Debug)]
pub struct PrimeAbove {
    pub below: FqPoly,
    pub ideal: FracIdeal,
    pub e: usize,
    pub f_res: usize,
    pub regular: bool,
}

#[derive(Clone, Debug)]
pub struct SplittingReport {
    pub p: FqPoly,
    pub primes: Vec<PrimeAbove>,
}

impl SplittingReport {
    /// Σ e_i·f_i.
    pub fn degree_sum(&self) -> usize {
        self.primes.iter().map(|q| q.e * q.f_res).sum()
    }

    pub fn to_json(&self, ctx: &AlgebraContext) -> Value {
        json!({
            "p": ctx.poly_string(&self.p),
            "primes": self.primes.iter().map(|q| json!({
                "e": q.e,
                "f": q.f_res,
                "regular": q.regular,
                "ideal": q.ideal.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn check_prime(p: &FqPoly) -> Result<()> {
    if !p.is_monic() || !is_irreducible(p) {
        return Err(AlgebraError::NotPrime(p.to_string()));
    }
    Ok(())
}

/// Monic disc(f); rejects inseparable f.
pub fn discriminant(ctx: &AlgebraContext) -> Result<FqPoly> {
    let d = ctx.raw_discriminant();
    if d.is_zero() {
        return Err(AlgebraError::Inseparable);
    }
    Ok(d.monic())
}

/// Monic determinant of the trace form on the basis of S.
pub fn order_discriminant(s: &Order) -> FqPoly {
    let ctx = s.ctx();
    let r = ctx.r();
    let k = ctx.field();
    let traces = ctx.power_traces(r);
    let basis = s.basis();
    let tr = |z: &crate::context::KElement| -> RatFn {
        let n = z.num().iter().zip(&traces).fold(Poly::zero(k), |acc, (c, t)| &acc + &(c * t));
        RatFn::new(n, z.den().clone())
    };
    let mut g = RatMatrix::zero(k, r, r);
    for i in 0..r {
        for j in i..r {
            let t = tr(&ctx.mul(&basis[i], &basis[j]));
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    let d = g.det();
    debug_assert!(d.is_polynomial());
    d.num().monic()
}

fn lift_residue_poly(ctx: &AlgebraContext, g: &Poly<ResidueField>) -> BiPoly {
    BiPoly::new(ctx.field(), g.coeffs().to_vec())
}

/// Splitting of p in R = A[π] by factoring f mod p.
pub fn kummer_dedekind(r_order: &Order, p: &FqPoly) -> Result<SplittingReport> {
    check_prime(p)?;
    let ctx = r_order.ctx();
    let rf = ResidueField::new(p);
    let fbar: Poly<ResidueField> = Poly::new(&rf, ctx.f().coeffs().iter().map(|c| c.rem(p)).collect());
    let p2 = p * p;
    let mut primes = Vec::new();
    for (g, mult) in factor(&fbar)? {
        let lifted = lift_residue_poly(ctx, &g);
        let g_elem = ctx.element_from_coeffs(lifted.coeffs().to_vec());
        let mut gens = Vec::new();
        for j in 0..ctx.r() {
            let pj = ctx.pi_pow(j);
            gens.push(pj.scale(p));
            gens.push(ctx.mul(&g_elem, &pj));
        }
        let ideal = FracIdeal::from_generators(ctx, &gens)?;
        let regular = mult == 1 || !remainder_in_p2(ctx.f(), &lifted, &p2);
        primes.push(PrimeAbove { below: p.clone(), ideal, e: mult, f_res: g.degree().unwrap(), regular });
    }
    Ok(SplittingReport { p: p.clone(), primes })
}

/// Remainder of f on division by the monic g, tested for membership in p²·A[x].
fn remainder_in_p2(f: &BiPoly, g: &BiPoly, p2: &FqPoly) -> bool {
    let dg = g.degree_x().unwrap();
    let mut rem: Vec<FqPoly> = f.coeffs().to_vec();
    while rem.len() > dg {
        let top = rem.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let base = rem.len() - dg;
        for i in 0..dg {
            rem[base + i] = &rem[base + i] - &(&top * &g.coeff(i));
        }
    }
    rem.iter().all(|c| c.rem(p2).is_zero())
}

/// Primes of A lying below a singular prime of R.
pub fn singular_primes(r_order: &Order) -> Result<Vec<FqPoly>> {
    let ctx = r_order.ctx();
    let d = discriminant(ctx)?;
    let mut out = Vec::new();
    for (p, v) in factor(&d)? {
        if v < 2 {
            continue;
        }
        let rep = kummer_dedekind(r_order, &p)?;
        if rep.primes.iter().any(|q| !q.regular) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Lattice of S generated by the given S-coordinate vectors.
pub fn lattice_from_order_coords(s: &Order, cols: &[Vec<FqPoly>]) -> Result<FracIdeal> {
    s.ideal().sublattice(cols)
}

/// pS plus lifts of the nilradical of S/pS.
pub fn p_radical(s: &Order, p: &FqPoly) -> Result<FracIdeal> {
    let alg = FiniteAlgebra::order_mod_prime(s, p);
    let rad = alg.radical();
    lattice_with_p(s, p, &rad)
}

/// pS plus the lifts of F_q-vectors of S/pS.
fn lattice_with_p(s: &Order, p: &FqPoly, vecs: &[Vec<u32>]) -> Result<FracIdeal> {
    let r = s.rank();
    let k = s.ctx().field();
    let d = p.degree().unwrap();
    let mut cols = Vec::new();
    for i in 0..r {
        let mut c = vec![Poly::zero(k); r];
        c[i] = p.clone();
        cols.push(c);
    }
    for v in vecs {
        cols.push(lift_vector(k, v, r, d));
    }
    lattice_from_order_coords(s, &cols)
}

/// Primes of an arbitrary order S above p, from the local factors of S/pS.
pub fn primes_above(s: &Order, p: &FqPoly) -> Result<SplittingReport> {
    check_prime(p)?;
    let alg = FiniteAlgebra::order_mod_prime(s, p);
    let deg = p.degree().unwrap();
    let mut primes = Vec::new();
    for lf in alg.local_factors() {
        let ideal = lattice_with_p(s, p, &lf.maximal_ideal)?;
        let regular = ideal.colon(&ideal)? == *s.ideal();
        primes.push(PrimeAbove {
            below: p.clone(),
            ideal,
            e: lf.dim / lf.residue_dim,
            f_res: lf.residue_dim / deg,
            regular,
        });
    }
    primes.sort_by(|a, b| a.ideal.cmp(&b.ideal));
    Ok(SplittingReport { p: p.clone(), primes })
}

/// Round-two saturation at p.
pub fn p_maximal_order(s: &Order, p: &FqPoly) -> Result<Order> {
    let mut cur = s.clone();
    let bound = order_discriminant(s).valuation(p) / 2 + 2;
    for _ in 0..bound {
        let rad = p_radical(&cur, p)?;
        let next = rad.multiplicator_ring()?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(AlgebraError::Invariant(format!("saturation at {p} did not converge")))
}

/// O_K by saturating R at each p with p² | disc(f).
pub fn maximal_order(r_order: &Order) -> Result<Order> {
    let d = discriminant(r_order.ctx())?;
    let mut s = r_order.clone();
    for (p, v) in factor(&d)? {
        if v >= 2 {
            s = p_maximal_order(&s, &p)?;
        }
    }
    Ok(s)
}

/// Integral model at infinity: f_∞(U, y) with T = 1/U, y = U^e·x.
#[derive(Clone, Debug)]
pub struct InfinityModel {
    pub ctx: AlgebraContext,
    pub shift: usize,
    /// The order over F_q[U] that is maximal at U.
    pub order: Order,
}

impl InfinityModel {
    /// Places above U.
    pub fn places(&self) -> Result<SplittingReport> {
        let u = Poly::var(self.ctx.field());
        primes_above(&self.order, &u)
    }

    /// v_U of the discriminant of the U-maximal order.
    pub fn disc_valuation(&self) -> usize {
        order_discriminant(&self.order).valuation(&Poly::var(self.ctx.field()))
    }
}

pub fn infinity_transform(ctx: &AlgebraContext) -> (BiPoly, usize) {
    let r = ctx.r();
    let f = ctx.f();
    let k = ctx.field();
    let mut e = 0;
    for i in 0..r {
        if let Some(d) = f.coeff(i).degree() {
            e = e.max(d.div_ceil(r - i));
        }
    }
    let coeffs = (0..=r)
        .map(|i| {
            let c = f.coeff(i);
            match c.degree() {
                None => Poly::zero(k),
                Some(d) => {
                    let rev = Poly::new(k, c.coeffs().iter().rev().cloned().collect());
                    rev.shift(e * (r - i) - d)
                }
            }
        })
        .collect();
    (BiPoly::new(k, coeffs), e)
}

pub fn infinity_order(ctx: &AlgebraContext) -> Result<InfinityModel> {
    discriminant(ctx)?;
    let (finf, shift) = infinity_transform(ctx);
    let ictx = AlgebraContext::unchecked(ctx.field(), finf, "U", "y")?;
    let r = Order::monogenic(&ictx);
    let u = Poly::var(ctx.field());
    let order = p_maximal_order(&r, &u)?;
    Ok(InfinityModel { ctx: ictx, shift, order })
}

/// [O : S] for S ⊆ O.
pub fn order_index(o: &Order, s: &Order) -> Result<FqPoly> {
    index_ideal(o.ideal(), s.ideal())
}
