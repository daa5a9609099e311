//! Irreducibility of f over F_q(T) and the full constant field, via Frobenius kernels.
//!
//! For separable f, the elements of F[x]/f fixed by z ↦ z^Q (Q = q^i) form the product
//! of the fields F_{q^i} ∩ L_j over the factors L_j of f; its F_q-dimension is the number
//! of irreducible factors of f over F_{q^i}(T). Such elements are constants, hence lie in
//! (1/disc)·A[π] with coordinate degrees bounded by the pole order of π at infinity.

use crate::bivariate::BiPoly;
use crate::context::AlgebraContext;
use crate::error::Result;
use crate::field::FiniteField;
use crate::linalg::FqMat;
use crate::poly::{FqPoly, Poly};

/// μ·r(r-1) rounded down, μ = max_k deg(c_k)/(r-k).
fn coordinate_degree_bound(ctx: &AlgebraContext) -> usize {
    let r = ctx.r();
    let f = ctx.f();
    let mut best = (0usize, 1usize); // fraction num/den
    for k in 0..r {
        if let Some(d) = f.coeff(k).degree() {
            let cand = (d, r - k);
            if cand.0 * best.1 > best.0 * cand.1 {
                best = cand;
            }
        }
    }
    best.0 * r * (r - 1) / best.1
}

/// Number of irreducible factors of a separable f over F_{q^i}(T).
pub fn factor_count_over_extension(ctx: &AlgebraContext, i: u32) -> usize {
    let k = ctx.field();
    let r = ctx.r();
    if r == 1 {
        return 1;
    }
    let disc = ctx.raw_discriminant();
    assert!(!disc.is_zero(), "Frobenius kernel needs separable f");
    let b = coordinate_degree_bound(ctx);
    let qq = k.size().pow(i);
    // a ↦ a^Q - D^{Q-1}·a on {Σ a_j π^j : deg a_j ≤ b}
    let dq = disc.pow(qq - 1);
    let pi_q = ctx.pi_pow(qq as usize).num().to_vec();
    let mut pi_qj = vec![ctx.one().num().to_vec()];
    for j in 1..r {
        let next = ctx.mul_coords(&pi_qj[j - 1], &pi_q);
        pi_qj.push(next);
    }
    let mut images: Vec<Vec<FqPoly>> = Vec::new();
    for j in 0..r {
        for t in 0..=b {
            let tk = Poly::monomial(k, k.one(), t);
            let tkq = Poly::monomial(k, k.one(), t * qq as usize);
            let frob: Vec<FqPoly> = pi_qj[j].iter().map(|c| c * &tkq).collect();
            let mut img = frob;
            img[j] = &img[j] - &(&dq * &tk);
            images.push(img);
        }
    }
    let width = images
        .iter()
        .flat_map(|v| v.iter().map(|c| c.degree().map_or(0, |d| d + 1)))
        .max()
        .unwrap_or(0)
        .max(1);
    let cols: Vec<Vec<u32>> = images
        .iter()
        .map(|v| {
            let mut flat = vec![0u32; r * width];
            for (j, c) in v.iter().enumerate() {
                for (t, &x) in c.coeffs().iter().enumerate() {
                    flat[j * width + t] = x;
                }
            }
            flat
        })
        .collect();
    let m = FqMat::from_cols(r * width, &cols);
    images.len() - m.rank(k)
}

/// Irreducibility of f in F_q(T)[x].
pub fn irreducible_over_f(ctx: &AlgebraContext) -> Result<bool> {
    let f = ctx.f();
    if ctx.r() == 1 {
        return Ok(true);
    }
    if ctx.is_separable() {
        // f' ≠ 0 but disc = 0 means a repeated factor
        if ctx.raw_discriminant().is_zero() {
            return Ok(false);
        }
        return Ok(factor_count_over_extension(ctx, 1) == 1);
    }
    // f = g(x^p): irreducible iff g is and g is not a p-th power coefficientwise
    let k = ctx.field();
    let p = k.characteristic() as usize;
    let g = BiPoly::new(k, f.coeffs().iter().step_by(p).cloned().collect());
    let all_pth = g.coeffs().iter().all(|c| c.coeffs().iter().enumerate().all(|(i, &a)| a == 0 || i % p == 0));
    if all_pth {
        return Ok(false);
    }
    let gctx = AlgebraContext::unchecked(k, g, ctx.tvar(), "x")?;
    irreducible_over_f(&gctx)
}

/// m with F_{q^m} the full constant field, for irreducible separable f.
pub fn constant_field_degree(ctx: &AlgebraContext) -> usize {
    let r = ctx.r();
    factor_count_over_extension(ctx, r as u32)
}
