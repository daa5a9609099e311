mod common;

use common::{ctx, poly};
use gekeler::gekeler::*;
use gekeler::oracle::{brute_orbit_count, DEFAULT_BUDGET};
use gekeler::zeta::*;
use gekeler::Curve;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn curve(q: u64, f: &str) -> Curve {
    Curve::from_ctx(ctx(q, f)).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn genera() {
    assert_eq!(curve(3, "x^2 - T^3").genus().unwrap(), 0);
    assert_eq!(curve(3, "x^2 - T").genus().unwrap(), 0);
    assert_eq!(curve(5, "x^2 - (T^3 + T + 1)").genus().unwrap(), 1);
    assert_eq!(curve(3, "x^2 + 1").m, 2);
    assert_eq!(curve(3, "x^2 + 1").genus().unwrap(), 0);
    assert_eq!(curve(3, "1 - x + x^3").genus().unwrap(), 0);
}

#[test]
fn place_counts() {
    let c = curve(3, "x^2 - T^3");
    assert_eq!(c.count_places(1).unwrap(), 4);
    assert_eq!(c.count_places(2).unwrap(), 3);
    let e = curve(5, "x^2 - (T^3 + T + 1)");
    assert_eq!(e.count_places(1).unwrap(), 9);
    let l = l_polynomial(&e).unwrap();
    assert_eq!(l.coeffs, vec![1, 3, 5]);
    let census = PlaceCensus::new(&e, 3).unwrap();
    let b: Vec<i128> = (1..=3).map(|d| census.total(d) as i128).collect();
    assert_eq!(zeta_series(&l, 3), effective_divisor_counts(&b, 3));
    let c2 = curve(3, "x^2 + 1");
    assert_eq!(c2.count_places(1).unwrap(), 0);
    assert_eq!(l_polynomial(&c2).unwrap().coeffs, vec![1]);
}

#[test]
fn cusp_numbers() {
    let c = curve(3, "x^2 - T^3");
    let t = poly(&c.ctx, "T");
    assert_eq!(gekeler_ratio(&c, &t).unwrap().value, rat(2, 1));
    assert_eq!(gekeler_ratio(&c, &poly(&c.ctx, "T - 1")).unwrap().value, rat(3, 2));
    assert_eq!(gekeler_product(&c).unwrap().value, rat(2, 1));
    assert_eq!(gekeler_product(&curve(3, "x^2 - T")).unwrap().value, rat(1, 1));
    assert_eq!(gekeler_product(&curve(5, "x^2 - (T^3 + T + 1)")).unwrap().value, rat(9, 5));
    for n in 1..=3 {
        let v = finite_level_ratio(&c, &poly(&c.ctx, "T - 1"), n, DEFAULT_BUDGET).unwrap();
        assert_eq!(v, rat(3, 2));
    }
    let lv: Vec<f64> =
        (1..=3).map(|n| finite_level_ratio(&c, &t, n, DEFAULT_BUDGET).unwrap().to_f64().unwrap()).collect();
    assert_eq!(lv, vec![1.125, 1.375, 1.375]);
}

#[test]
fn orbits() {
    let c = curve(3, "x^2 - T^3");
    let t = poly(&c.ctx, "T");
    assert_eq!(brute_orbit_count(c.ctx.f(), &t, 2, 3, DEFAULT_BUDGET).unwrap().orbits, 2);
    assert_eq!(brute_orbit_count(c.ctx.f(), &t, 1, 0, DEFAULT_BUDGET).unwrap().orbits, 2);
    for p in ["T - 1", "T + 1"] {
        for n in 1..=2 {
            assert_eq!(brute_orbit_count(c.ctx.f(), &poly(&c.ctx, p), n, 0, DEFAULT_BUDGET).unwrap().orbits, 1);
        }
    }
}

#[test]
fn partial_product_values() {
    let c = curve(3, "x^2 - T^3");
    let pp = partial_products(&c, 4).unwrap();
    let gaps: Vec<f64> = pp.iter().map(|x| (x.value.to_f64().unwrap() / 2.0).ln().abs()).collect();
    eprintln!("cusp gaps {gaps:?}");
    let c = curve(3, "x^2 - T");
    let pp = partial_products(&c, 4).unwrap();
    let gaps: Vec<f64> = pp.iter().map(|x| x.value.to_f64().unwrap().ln().abs()).collect();
    eprintln!("x^2-T gaps {gaps:?}");
}

#[test]
fn translation_invariance() {
    use gekeler::FiniteField;
    for (q, f) in [(3, "x^2 - T^3"), (3, "x^2 - T"), (5, "x^2 - (T^3 + T + 1)"), (3, "1 - x + x^3")] {
        let base = curve(q, f);
        let v = gekeler_product(&base).unwrap().value;
        for c in 1..base.field().size() as u32 {
            let g = base.ctx.f().map_coeffs(|a| a.translate(c));
            let moved = Curve::new(base.field(), g).unwrap();
            assert_eq!(gekeler_product(&moved).unwrap().value, v, "{f} with T -> T + {c}");
        }
    }
}

#[test]
fn frozen_oracle_counts() {
    use gekeler::oracle::count_matrices;
    let c = curve(3, "x^2 - T^3");
    let f = c.ctx.f();
    let t = poly(&c.ctx, "T");
    let counts: Vec<u128> = (1..=4).map(|n| count_matrices(f, &t, n, DEFAULT_BUDGET).unwrap()).collect();
    assert_eq!(counts, vec![9, 99, 891, 7776]);
    let naive: Vec<usize> =
        (1..=3).map(|n| brute_orbit_count(f, &t, n, 0, DEFAULT_BUDGET).unwrap().orbits).collect();
    assert_eq!(naive, vec![2, 5, 8]);
}

/// Weak classes at rank 3 against a search over every F_q-subspace of the window.
#[test]
fn rank_three_weak_classes() {
    use gekeler::linalg::{in_span, span_basis};
    use gekeler::overorders::p_overorders;
    use gekeler::submodules::QuotientModule;
    use gekeler::weak::{weak_classes, weakly_equivalent};
    use gekeler::FiniteField;
    use std::collections::BTreeSet;

    let c = curve(2, "x^3 - T^4");
    let k = c.field().clone();
    let t = poly(&c.ctx, "T");
    for s in p_overorders(&c.r_order, &t).unwrap().orders {
        let cond = s.ideal().colon(c.o_k.ideal()).unwrap();
        let qm = QuotientModule::new(c.o_k.ideal(), &cond).unwrap();
        let n = qm.dim();
        assert!(n <= 6);
        let vecs: Vec<Vec<u32>> = (1..k.size().pow(n as u32))
            .map(|mut i| {
                (0..n)
                    .map(|_| {
                        let d = (i % k.size()) as u32;
                        i /= k.size();
                        d
                    })
                    .collect()
            })
            .collect();
        let mut subspaces: BTreeSet<Vec<Vec<u32>>> = BTreeSet::from([Vec::new()]);
        let mut stack = vec![Vec::<Vec<u32>>::new()];
        while let Some(w) = stack.pop() {
            for v in &vecs {
                if in_span(&k, &w, v) {
                    continue;
                }
                let mut g = w.clone();
                g.push(v.clone());
                let b = span_basis(&k, n, &g);
                if subspaces.insert(b.clone()) {
                    stack.push(b);
                }
            }
        }
        let mut reps: Vec<gekeler::FracIdeal> = Vec::new();
        let mut cands: Vec<gekeler::FracIdeal> = subspaces
            .iter()
            .map(|b| qm.pullback(b).unwrap())
            .filter(|l| l.colon(l).unwrap() == *s.ideal())
            .collect();
        cands.sort();
        for l in cands {
            if !reps.iter().any(|r| weakly_equivalent(r, &l).unwrap()) {
                reps.push(l);
            }
        }
        assert_eq!(weak_classes(&c.r_order, &s, &c.o_k).unwrap().len(), reps.len());
    }
}
