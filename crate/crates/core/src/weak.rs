//! Weak equivalence classes and local ideal class monoids.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::ideal::{index_ideal, FracIdeal, Order};
use crate::overorders::{check_p_overorder, p_overorders, ring_actors};
use crate::poly::FqPoly;
use crate::primes::{check_prime, kummer_dedekind, primes_above};
use crate::submodules::intermediate_lattices;

#[derive(Clone, Debug)]
pub struct WeakClassRep {
    pub ideal: FracIdeal,
    pub mult_ring: Order,
}

/// 1 ∈ (I:J)(J:I).
pub fn weakly_equivalent(i: &FracIdeal, j: &FracIdeal) -> Result<bool> {
    Ok(i.colon(j)?.product(&j.colon(i)?)?.contains_one())
}

/// Keeps the first of each class in the given order.
fn collapse<F>(candidates: Vec<FracIdeal>, s: &Order, mut same: F) -> Result<Vec<WeakClassRep>>
where
    F: FnMut(&FracIdeal, &FracIdeal) -> Result<bool>,
{
    let mut reps: Vec<WeakClassRep> = Vec::new();
    'outer: for c in candidates {
        for r in &reps {
            if same(&r.ideal, &c)? {
                continue 'outer;
            }
        }
        reps.push(WeakClassRep { ideal: c, mult_ring: s.clone() });
    }
    Ok(reps)
}

/// Lattices between `lower` and `upper` stable under S whose multiplicator ring is S.
fn window_candidates(s: &Order, upper: &FracIdeal, lower: &FracIdeal) -> Result<Vec<FracIdeal>> {
    let lattices = intermediate_lattices(upper, lower, &ring_actors(s))?;
    let keep: Vec<Result<Option<FracIdeal>>> = lattices
        .into_par_iter()
        .map(|l| Ok((l.colon(&l)? == *s.ideal()).then_some(l)))
        .collect();
    let mut out = Vec::new();
    for k in keep {
        if let Some(l) = k? {
            out.push(l);
        }
    }
    out.sort();
    Ok(out)
}

/// Representatives of W_S(R), each with (S:O_K) ⊆ I ⊆ O_K.
pub fn weak_classes(r_order: &Order, s: &Order, o_k: &Order) -> Result<Vec<WeakClassRep>> {
    if !s.contains(r_order) || !o_k.contains(s) {
        return Err(AlgebraError::NotOverorder("need R ⊆ S ⊆ O_K".into()));
    }
    let c = s.ideal().colon(o_k.ideal())?;
    let cands = window_candidates(s, o_k.ideal(), &c)?;
    collapse(cands, s, weakly_equivalent)
}

/// I_p ~ J_p, decided by (I:J)(J:I) ∩ R meeting no prime of R above p.
pub fn locally_weakly_equivalent(r_order: &Order, i: &FracIdeal, j: &FracIdeal, p: &FqPoly) -> Result<bool> {
    let l = i.colon(j)?.product(&j.colon(i)?)?;
    let lr = l.intersection(r_order.ideal())?;
    let primes = primes_above(r_order, p)?;
    Ok(primes.primes.iter().all(|q| !q.ideal.contains(&lr)))
}

/// Same test through the coordinates of 1 in L, which must be p-integral.
pub fn locally_weakly_equivalent_by_coords(i: &FracIdeal, j: &FracIdeal, p: &FqPoly) -> Result<bool> {
    let l = i.colon(j)?.product(&j.colon(i)?)?;
    let one = l.ctx().one();
    Ok(l.rational_coords(&one).iter().all(|c| !p.divides(c.den())))
}

/// Lattices equal to S away from p that cover W_{S_p}(R_p) for the p-saturation O.
fn local_window(s: &Order, o: &Order, p: &FqPoly) -> Result<(FracIdeal, FracIdeal)> {
    let c = s.ideal().colon(o.ideal())?;
    let d = index_ideal(o.ideal(), &c)?;
    let v = d.valuation(p);
    let pv = p.pow(v as u64);
    let cofactor = d.div_exact(&pv).expect("p^v divides the index");
    let upper = s.ideal().sum(&o.ideal().scale_poly(&cofactor)?)?;
    let lower = c.sum(&s.ideal().scale_poly(&pv)?)?;
    Ok((upper, lower))
}

/// Representatives of W_{S_p}(R_p) for a p-overorder S.
pub fn local_weak_classes(r_order: &Order, s: &Order, p: &FqPoly) -> Result<Vec<WeakClassRep>> {
    check_prime(p)?;
    check_p_overorder(r_order, s, p)?;
    let o = crate::primes::p_maximal_order(r_order, p)?;
    if !o.contains(s) {
        return Err(AlgebraError::NotOverorder("not inside the p-saturation".into()));
    }
    let (upper, lower) = local_window(s, &o, p)?;
    let cands = window_candidates(s, &upper, &lower)?;
    collapse(cands, s, |a, b| locally_weakly_equivalent(r_order, a, b, p))
}

/// Local classes obtained from the global ones by collapsing under local equivalence.
pub fn collapse_global(r_order: &Order, global: &[WeakClassRep], p: &FqPoly) -> Result<Vec<WeakClassRep>> {
    let Some(first) = global.first() else {
        return Ok(Vec::new());
    };
    collapse(global.iter().map(|c| c.ideal.clone()).collect(), &first.mult_ring, |a, b| {
        locally_weakly_equivalent(r_order, a, b, p)
    })
}

#[derive(Clone, Debug)]
pub struct LocalICMReport {
    pub p: FqPoly,
    pub by_overorder: Vec<(Order, Vec<WeakClassRep>)>,
    pub m_p: usize,
    pub regular: bool,
}

impl LocalICMReport {
    pub fn to_json(&self) -> Value {
        let ctx = self.by_overorder[0].0.ctx();
        json!({
            "p": ctx.poly_string(&self.p),
            "m_p": self.m_p,
            "regular": self.regular,
            "by_overorder": self.by_overorder.iter().map(|(s, cls)| json!({
                "order": s.to_json(),
                "classes": cls.iter().map(|c| c.ideal.to_json()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// ICM(R_p) as the disjoint union of W_{S_p}(R_p) over the p-overorders; Pic(S_p) is trivial.
pub fn local_icm(r_order: &Order, p: &FqPoly) -> Result<LocalICMReport> {
    let kd = kummer_dedekind(r_order, p)?;
    if kd.primes.iter().all(|q| q.regular) {
        let cls = vec![WeakClassRep { ideal: r_order.ideal().clone(), mult_ring: r_order.clone() }];
        return Ok(LocalICMReport { p: p.clone(), by_overorder: vec![(r_order.clone(), cls)], m_p: 1, regular: true });
    }
    let set = p_overorders(r_order, p)?;
    let by_overorder: Vec<(Order, Vec<WeakClassRep>)> = set
        .orders
        .par_iter()
        .map(|s| Ok((s.clone(), local_weak_classes(r_order, s, p)?)))
        .collect::<Result<_>>()?;
    let m_p = by_overorder.iter().map(|(_, c)| c.len()).sum();
    Ok(LocalICMReport { p: p.clone(), by_overorder, m_p, regular: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::AlgebraContext;
    use crate::field::Fq;
    use crate::parse::{parse_bivariate, parse_poly};
    use crate::primes::maximal_order;

    fn setup(q: u64, f: &str) -> (AlgebraContext, Order) {
        let k = Fq::new(q).unwrap();
        let ctx = AlgebraContext::new(&k, parse_bivariate(&k, f).unwrap()).unwrap();
        let r = Order::monogenic(&ctx);
        (ctx, r)
    }

    #[test]
    fn cusp_classes() {
        let (ctx, r) = setup(3, "x^2 - T^3");
        let ok = maximal_order(&r).unwrap();
        assert_eq!(weak_classes(&r, &ok, &ok).unwrap().len(), 1);
        assert_eq!(weak_classes(&r, &r, &ok).unwrap().len(), 1);
        let p = parse_poly(ctx.field(), "T").unwrap();
        let rep = local_icm(&r, &p).unwrap();
        assert_eq!(rep.m_p, 2);
        let m = FracIdeal::from_generators(&ctx, &[ctx.scalar(p.clone()), ctx.pi()]).unwrap();
        assert!(!locally_weakly_equivalent(&r, r.ideal(), &m, &p).unwrap());
        assert!(locally_weakly_equivalent(&r, &m, &m, &p).unwrap());
    }

    #[test]
    fn regular_short_circuit() {
        let (ctx, r) = setup(3, "x^2 - T");
        let p = parse_poly(ctx.field(), "T").unwrap();
        assert_eq!(local_icm(&r, &p).unwrap().m_p, 1);
    }

    #[test]
    fn local_matches_global_collapse() {
        for (q, f) in [(3, "x^2 - T^3"), (3, "x^2 - T^5"), (2, "x^2 + x + T^3"), (3, "x^3 - T^4")] {
            let (ctx, r) = setup(q, f);
            let ok = match maximal_order(&r) {
                Ok(o) => o,
                Err(_) => continue,
            };
            let p = parse_poly(ctx.field(), "T").unwrap();
            for s in p_overorders(&r, &p).unwrap().orders {
                let global = weak_classes(&r, &s, &ok).unwrap();
                let local = local_weak_classes(&r, &s, &p).unwrap();
                let collapsed = collapse_global(&r, &global, &p).unwrap();
                assert_eq!(local.len(), collapsed.len(), "{f}");
                assert!(local.len() <= global.len());
            }
        }
    }
}
