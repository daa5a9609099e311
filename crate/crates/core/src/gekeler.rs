//! Local Gekeler ratios and their global product.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::curve::{Curve, Residue};
use crate::error::{AlgebraError, Result};
use crate::field::FiniteField;
use crate::oracle::{count_matrices, sl_order};
use crate::poly::FqPoly;
use crate::weak::local_icm;
use crate::zeta::{l_polynomial, LPolynomial};

pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn int(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// m_p, the size of the local ideal class monoid at p.
pub fn orbit_count(curve: &Curve, p: &FqPoly) -> Result<usize> {
    if !curve.is_singular(p) {
        crate::primes::check_prime(p)?;
        return Ok(1);
    }
    Ok(local_icm(&curve.r_order, p)?.m_p)
}

#[derive(Clone, Debug)]
pub struct LocalRatio {
    pub p: FqPoly,
    pub m_p: usize,
    pub residues: Vec<Residue>,
    pub value: BigRational,
}

impl LocalRatio {
    pub fn to_json(&self, curve: &Curve) -> Value {
        json!({
            "p": curve.ctx.poly_string(&self.p),
            "m_p": self.m_p,
            "primes_above": self.residues.iter().map(|q| json!({"e": q.e, "f": q.f_res})).collect::<Vec<_>>(),
            "value": rational_string(&self.value),
        })
    }
}

/// m_p·(1 - 1/|p|) / ∏_{q|p} (1 - 1/N(q)).
pub fn ratio_formula(norm_p: u128, m_p: usize, residues: &[Residue]) -> BigRational {
    let one = BigRational::one();
    let np = int(norm_p);
    let mut v = int(m_p as u128) * (&one - &one / &np);
    for q in residues {
        let nq = int(norm_p.pow(q.f_res as u32));
        v /= &one - &one / nq;
    }
    v
}

pub fn gekeler_ratio(curve: &Curve, p: &FqPoly) -> Result<LocalRatio> {
    let m_p = orbit_count(curve, p)?;
    let residues = curve.residues(p)?;
    let value = ratio_formula(p.norm() as u128, m_p, &residues);
    Ok(LocalRatio { p: p.clone(), m_p, residues, value })
}

#[derive(Clone, Debug)]
pub struct ProductReport {
    pub singular: Vec<(FqPoly, usize)>,
    pub l: LPolynomial,
    pub value: BigRational,
}

impl ProductReport {
    pub fn to_json(&self, curve: &Curve) -> Value {
        json!({
            "singular_primes": self.singular.iter().map(|(p, m)| json!({
                "p": curve.ctx.poly_string(p),
                "m_p": m,
            })).collect::<Vec<_>>(),
            "zeta": self.l.to_json(),
            "value": rational_string(&self.value),
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

/// ∏ m_p · L_K(q^{-m}) · (1 - q^{-1}) / (1 - q^{-m}) · 1/m.
pub fn gekeler_product(curve: &Curve) -> Result<ProductReport> {
    let l = l_polynomial(curve)?;
    let mut singular = Vec::new();
    for p in &curve.singular {
        singular.push((p.clone(), orbit_count(curve, p)?));
    }
    let q = int(curve.field().size() as u128);
    let one = BigRational::one();
    let t = &one / int(l.big_q as u128);
    let mut lval = BigRational::zero();
    for c in l.coeffs.iter().rev() {
        lval = lval * &t + BigRational::from_integer(BigInt::from(*c));
    }
    let mut value = lval * (&one - &one / &q) / (&one - &t) / int(l.m as u128);
    for (_, m) in &singular {
        value *= int(*m as u128);
    }
    if value <= BigRational::zero() {
        return Err(AlgebraError::Invariant("nonpositive product".into()));
    }
    Ok(ProductReport { singular, l, value })
}

#[derive(Clone, Debug)]
pub struct PartialProduct {
    pub degree: usize,
    pub value: BigRational,
}

/// ∏ of the local ratios over monic irreducibles of degree ≤ D, one entry per D.
pub fn partial_products(curve: &Curve, depth: usize) -> Result<Vec<PartialProduct>> {
    let mut acc = BigRational::one();
    let mut out = Vec::with_capacity(depth);
    for d in 1..=depth {
        for p in curve.primes_of_degree(d) {
            acc *= gekeler_ratio(curve, &p)?.value;
        }
        out.push(PartialProduct { degree: d, value: acc.clone() });
    }
    Ok(out)
}

/// count·|p|^{n(r-1)} / |SL_r(A/p^n)| at level n.
pub fn finite_level_ratio(curve: &Curve, p: &FqPoly, n: usize, budget: u128) -> Result<BigRational> {
    crate::primes::check_prime(p)?;
    let r = curve.rank();
    let count = count_matrices(curve.ctx.f(), p, n, budget)?;
    let np = p.norm() as u128;
    Ok(int(count) * int(np.pow((n * (r - 1)) as u32)) / int(sl_order(r, np, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_examples() {
        let two = BigRational::from_integer(2.into());
        assert_eq!(ratio_formula(3, 2, &[Residue { e: 2, f_res: 1 }]), two);
        let split = [Residue { e: 1, f_res: 1 }, Residue { e: 1, f_res: 1 }];
        assert_eq!(ratio_formula(3, 1, &split), BigRational::new(3.into(), 2.into()));
        assert_eq!(ratio_formula(3, 1, &[Residue { e: 1, f_res: 2 }]), BigRational::new(3.into(), 4.into()));
    }
}
