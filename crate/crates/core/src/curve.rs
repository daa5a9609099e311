//! Cached global data of a function field K = Frac(A[x]/f).

use rayon::prelude::*;

use crate::bivariate::BiPoly;
use crate::context::AlgebraContext;
use crate::error::{AlgebraError, Result};
use crate::factor::{factor_degrees, is_irreducible};
use crate::field::{Fq, ResidueField};
use crate::ideal::Order;
use crate::irreducible::constant_field_degree;
use crate::poly::{FqPoly, Poly};
use crate::primes::{discriminant, infinity_order, maximal_order, primes_above, singular_primes, InfinityModel};

/// Ramification index and residue degree over the residue field of the prime below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Residue {
    pub e: usize,
    pub f_res: usize,
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub ctx: AlgebraContext,
    pub r_order: Order,
    pub disc: FqPoly,
    pub singular: Vec<FqPoly>,
    pub o_k: Order,
    pub infinity: InfinityModel,
    pub infinite_places: Vec<Residue>,
    /// Degree of the full constant field over F_q.
    pub m: usize,
}

impl Curve {
    /// Rejects reducible and inseparable f.
    pub fn new(field: &Fq, f: BiPoly) -> Result<Curve> {
        let ctx = AlgebraContext::new(field, f)?;
        Curve::from_ctx(ctx)
    }

    pub fn from_ctx(ctx: AlgebraContext) -> Result<Curve> {
        let disc = discriminant(&ctx)?;
        let r_order = Order::monogenic(&ctx);
        let singular = singular_primes(&r_order)?;
        let o_k = maximal_order(&r_order)?;
        let infinity = infinity_order(&ctx)?;
        let infinite_places = infinity
            .places()?
            .primes
            .iter()
            .map(|q| Residue { e: q.e, f_res: q.f_res })
            .collect();
        let m = constant_field_degree(&ctx);
        Ok(Curve { ctx, r_order, disc, singular, o_k, infinity, infinite_places, m })
    }

    pub fn field(&self) -> &Fq {
        self.ctx.field()
    }

    pub fn rank(&self) -> usize {
        self.ctx.r()
    }

    pub fn is_singular(&self, p: &FqPoly) -> bool {
        self.singular.contains(p)
    }

    /// Residue data of the primes of O_K above p, sorted.
    pub fn residues(&self, p: &FqPoly) -> Result<Vec<Residue>> {
        crate::primes::check_prime(p)?;
        let mut out: Vec<Residue> = if self.is_singular(p) {
            primes_above(&self.o_k, p)?.primes.iter().map(|q| Residue { e: q.e, f_res: q.f_res }).collect()
        } else {
            // R is maximal at p, so the factorization of f mod p decides
            let rf = ResidueField::new(p);
            let fbar = Poly::new(&rf, self.ctx.f().coeffs().iter().map(|c| c.rem(p)).collect());
            factor_degrees(&fbar).into_iter().map(|(d, e)| Residue { e, f_res: d }).collect()
        };
        out.sort();
        Ok(out)
    }

    /// Monic irreducibles of degree d, in increasing order.
    pub fn primes_of_degree(&self, d: usize) -> Vec<FqPoly> {
        FqPoly::monics_of_degree(self.field(), d).into_iter().filter(is_irreducible).collect()
    }

    /// Number of places of K of degree d over F_q.
    pub fn count_places(&self, d: usize) -> Result<u64> {
        let mut total = self.infinite_places.iter().filter(|q| q.f_res == d).count() as u64;
        for k in (1..=d).filter(|k| d % k == 0) {
            let primes = self.primes_of_degree(k);
            let counts: Vec<Result<u64>> = primes
                .par_iter()
                .map(|p| Ok(self.residues(p)?.iter().filter(|q| k * q.f_res == d).count() as u64))
                .collect();
            for c in counts {
                total += c?;
            }
        }
        Ok(total)
    }

    /// g = 1 - r/m + (deg disc(O_K) + v_U disc(O_∞)) / 2m.
    pub fn genus(&self) -> Result<usize> {
        let d_fin = crate::primes::order_discriminant(&self.o_k).degree().unwrap_or(0);
        let d_inf = self.infinity.disc_valuation();
        let num = 2 * self.m as i64 - 2 * self.rank() as i64 + (d_fin + d_inf) as i64;
        let den = 2 * self.m as i64;
        if num < 0 || num % den != 0 {
            return Err(AlgebraError::Invariant(format!(
                "genus formula gave {num}/{den} (finite disc degree {d_fin}, infinite {d_inf})"
            )));
        }
        Ok((num / den) as usize)
    }
}
