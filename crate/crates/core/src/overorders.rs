//! p-overorders of the monogenic order R.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::context::KElement;
use crate::error::{AlgebraError, Result};
use crate::ideal::{index_ideal, Order};
use crate::poly::{FqPoly, Poly};
use crate::primes::{check_prime, discriminant, p_maximal_order};
use crate::submodules::intermediate_lattices;

#[derive(Clone, Debug)]
pub struct POverorderSet {
    pub p: FqPoly,
    /// Sorted by canonical key; the first is R, the p-saturation is among them.
    pub orders: Vec<Order>,
    pub saturation: Order,
}

impl POverorderSet {
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let ctx = self.saturation.ctx();
        json!({
            "p": ctx.poly_string(&self.p),
            "count": self.orders.len(),
            "orders": self.orders.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Generators of S as a ring over A, used as operators on S-modules.
pub fn ring_actors(s: &Order) -> Vec<KElement> {
    let ctx = s.ctx();
    let mut out = vec![ctx.scalar(Poly::var(ctx.field()))];
    out.extend(s.basis().into_iter().filter(|b| *b != ctx.one()));
    out
}

/// All S with R ⊆ S ⊆ O, O the p-saturation of R, from the R-submodules of O/R.
pub fn p_overorders(r_order: &Order, p: &FqPoly) -> Result<POverorderSet> {
    check_prime(p)?;
    discriminant(r_order.ctx())?;
    let o = p_maximal_order(r_order, p)?;
    let lattices = intermediate_lattices(o.ideal(), r_order.ideal(), &ring_actors(r_order))?;
    let mut orders: Vec<Order> = lattices.into_par_iter().filter_map(|l| Order::from_ideal(l).ok()).collect();
    orders.sort_by(|a, b| a.ideal().cmp(b.ideal()));
    if !orders.contains(r_order) || !orders.contains(&o) {
        return Err(AlgebraError::Invariant("R or its saturation missing from the overorders".into()));
    }
    Ok(POverorderSet { p: p.clone(), orders, saturation: o })
}

/// Checks that S is an order containing R whose index over R is a p-power.
pub fn check_p_overorder(r_order: &Order, s: &Order, p: &FqPoly) -> Result<()> {
    if !s.contains(r_order) {
        return Err(AlgebraError::NotOverorder("does not contain R".into()));
    }
    let idx = index_ideal(s.ideal(), r_order.ideal())?;
    let mut rest = idx;
    while !rest.is_one() {
        if !p.divides(&rest) {
            return Err(AlgebraError::NotOverorder(format!("index is not a power of {p}")));
        }
        rest = rest.div_exact(p).unwrap();
    }
    Ok(())
}
