//! Randomized ideal-calculus checks shared with the acceptance suite.

use gekeler::bivariate::BiPoly;
use gekeler::ideal::{index_ideal, FracIdeal, Order};
use gekeler::overorders::p_overorders;
use gekeler::primes::{discriminant, kummer_dedekind};
use gekeler::weak::*;
use gekeler::{AlgebraContext, FiniteField, Fq, FqPoly, KElement, Poly};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Raw material for one random instance; everything is reduced mod q when built.
#[derive(Clone, Debug)]
struct Seed {
    q: u64,
    f: Vec<Vec<u32>>,
    elems: Vec<Vec<Vec<u32>>>,
    den: Vec<u32>,
}

fn seed() -> impl Strategy<Value = Seed> {
    (prop::sample::select(vec![2u64, 3]), 1usize..=3).prop_flat_map(|(q, r)| {
        let cdeg = if r == 3 { 3 } else { 4 };
        (
            Just(q),
            prop::collection::vec(prop::collection::vec(0u32..3, 0..cdeg), r),
            prop::collection::vec(prop::collection::vec(prop::collection::vec(0u32..3, 0..3), r), 6),
            prop::collection::vec(0u32..3, 0..3),
        )
            .prop_map(|(q, f, elems, den)| Seed { q, f, elems, den })
    })
}

struct Instance {
    ctx: AlgebraContext,
    r_order: Order,
    elems: Vec<KElement>,
    den: FqPoly,
}

fn build(s: &Seed) -> Option<Instance> {
    let k = Fq::new(s.q).unwrap();
    let red = |c: &[u32]| Poly::new(&k, c.iter().map(|x| x % s.q as u32).collect());
    let mut coeffs: Vec<FqPoly> = s.f.iter().map(|c| red(c)).collect();
    coeffs.push(Poly::one(&k));
    let f = BiPoly::new(&k, coeffs);
    let ctx = AlgebraContext::new(&k, f).ok()?;
    discriminant(&ctx).ok()?;
    let r = Order::monogenic(&ctx);
    let elems: Vec<KElement> = s
        .elems
        .iter()
        .map(|e| ctx.element_from_coeffs(e.iter().map(|c| red(c)).collect()))
        .filter(|e| !e.is_zero())
        .collect();
    if elems.len() < 4 {
        return None;
    }
    let den = red(&s.den);
    let den = if den.is_zero() { Poly::one(&k) } else { den.monic() };
    Some(Instance { ctx, r_order: r, elems, den })
}

/// a·R + b·R.
fn r_ideal(inst: &Instance, gens: &[&KElement]) -> FracIdeal {
    let ctx = &inst.ctx;
    let mut all = Vec::new();
    for g in gens {
        for j in 0..ctx.r() {
            all.push(ctx.mul(g, &ctx.pi_pow(j)));
        }
    }
    FracIdeal::from_generators(ctx, &all).unwrap()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, max_global_rejects: 100_000, failure_persistence: None, ..Config::default() })
}

/// The 500-instance ideal-calculus suite.
pub fn ideal_calculus(cases: u32) -> Result<(), String> {
    let mut runner = runner(cases);
    runner
        .run(&seed(), |s| {
            let Some(inst) = build(&s) else {
                return Err(TestCaseError::reject("reducible or inseparable"));
            };
            let ctx = &inst.ctx;
            let e = &inst.elems;
            let i = r_ideal(&inst, &[&e[0], &e[1]]);
            let j = r_ideal(&inst, &[&e[2].div_scalar(&inst.den)]);
            let j = j.sum(&r_ideal(&inst, &e[3..4].iter().collect::<Vec<_>>())).unwrap_or(j);

            // (I:J)·J ⊆ I
            let c = i.colon(&j).unwrap();
            prop_assert!(i.contains(&c.product(&j).unwrap()));

            // [I+J : I∩J] = [I+J : I]·[I : I∩J]
            let top = i.sum(&j).unwrap();
            let bot = i.intersection(&j).unwrap();
            let lhs = index_ideal(&top, &bot).unwrap();
            let rhs = &index_ideal(&top, &i).unwrap() * &index_ideal(&i, &bot).unwrap();
            prop_assert_eq!(lhs, rhs);

            // HNF canonicity: generators permuted, with a redundant sum and a unit scaling
            let mut gens = i.basis();
            gens.reverse();
            gens.push(ctx.add(&gens[0], gens.last().unwrap()));
            let k = ctx.field();
            let unit = Poly::constant(k, k.size() as u32 - 1);
            gens = gens.iter().map(|g| g.scale(&unit)).collect();
            let i2 = FracIdeal::from_generators(ctx, &gens).unwrap();
            prop_assert_eq!(&i2, &i);
            prop_assert_eq!(i2.canonical_key(), i.canonical_key());

            // weak equivalence laws
            let z = &e[e.len() - 1];
            let zi = i.scale(z).unwrap();
            prop_assert!(weakly_equivalent(&i, &i).unwrap());
            prop_assert!(weakly_equivalent(&i, &zi).unwrap());
            let ij = weakly_equivalent(&i, &j).unwrap();
            prop_assert_eq!(ij, weakly_equivalent(&j, &i).unwrap());
            let jz = weakly_equivalent(&j, &zi).unwrap();
            prop_assert_eq!(ij, jz); // I ~ zI, so J ~ I iff J ~ zI

            let d = discriminant(ctx).unwrap();
            let p = gekeler::factor::factor(&d)
                .unwrap()
                .into_iter()
                .map(|(p, _)| p)
                .next()
                .unwrap_or_else(|| Poly::var(k));
            let loc = |a: &FracIdeal, b: &FracIdeal| locally_weakly_equivalent(&inst.r_order, a, b, &p).unwrap();
            prop_assert!(loc(&i, &i));
            prop_assert!(loc(&i, &zi));
            prop_assert_eq!(loc(&i, &j), loc(&j, &i));
            prop_assert_eq!(loc(&i, &j), loc(&zi, &j));
            prop_assert_eq!(loc(&i, &j), locally_weakly_equivalent_by_coords(&i, &j, &p).unwrap());
            if ij {
                prop_assert!(loc(&i, &j));
            }
            if loc(&i, &j) {
                // multiplicator rings agree after localizing
                let (si, sj) = (i.colon(&i).unwrap(), j.colon(&j).unwrap());
                prop_assert!(locally_weakly_equivalent_by_coords(&si, &sj, &p).unwrap());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Regular primes of degree ≤ 1 have a trivial local class monoid, by full enumeration.
pub fn regular_primes(cases: u32) -> Result<(), String> {
    let mut runner = runner(cases);
    runner
        .run(&(seed(), 0u32..3), |(s, c)| {
            let Some(inst) = build(&s) else {
                return Err(TestCaseError::reject("reducible or inseparable"));
            };
            let k = inst.ctx.field();
            let p = Poly::new(k, vec![c % s.q as u32, 1]);
            let kd = kummer_dedekind(&inst.r_order, &p).unwrap();
            if !kd.primes.iter().all(|q| q.regular) {
                return Err(TestCaseError::reject("singular"));
            }
            prop_assert_eq!(local_icm(&inst.r_order, &p).unwrap().m_p, 1);
            let set = p_overorders(&inst.r_order, &p).unwrap();
            prop_assert_eq!(set.len(), 1);
            prop_assert_eq!(local_weak_classes(&inst.r_order, &inst.r_order, &p).unwrap().len(), 1);
            Ok(())
        })
        .map_err(|e| e.to_string())
}
