mod common;

use common::{ctx, poly};
use gekeler::ideal::{index_ideal, FracIdeal, Order};
use gekeler::primes::*;

#[test]
fn monogenic_is_identity() {
    for (q, f) in [(3, "x^2 - T"), (3, "1 - x + x^3"), (3, "x^2 - T^3")] {
        let c = ctx(q, f);
        let r = Order::monogenic(&c);
        assert!(r.ideal().denominator().is_one());
        let m = r.ideal().numerator().matrix();
        for i in 0..c.r() {
            for j in 0..c.r() {
                assert_eq!(m.get(i, j).is_one(), i == j);
                assert_eq!(m.get(i, j).is_zero(), i != j);
            }
        }
        assert_eq!(r.ideal().colon(r.ideal()).unwrap(), *r.ideal());
    }
    // π² = T³ in the table of the cusp
    let c = ctx(3, "x^2 - T^3");
    let r = Order::monogenic(&c);
    assert_eq!(r.table()[1][1][0], poly(&c, "T^3"));
}

#[test]
fn cusp_maximal_order() {
    let c = ctx(3, "x^2 - T^3");
    let r = Order::monogenic(&c);
    let o = maximal_order(&r).unwrap();
    assert_eq!(index_ideal(o.ideal(), r.ideal()).unwrap(), poly(&c, "T"));
    // t = π/T is in O_K
    let t = c.pi().div_scalar(&poly(&c, "T"));
    assert!(o.ideal().contains_element(&t));
    assert_eq!(order_discriminant(&o), poly(&c, "T"));
    assert_eq!(discriminant(&c).unwrap(), poly(&c, "T^3"));
    // m = (T, π): (m:m) = O_K
    let m = FracIdeal::from_generators(&c, &[c.scalar(poly(&c, "T")), c.pi(), c.pi().scale(&poly(&c, "T")), c.pi_pow(2)]).unwrap();
    assert_eq!(m.colon(&m).unwrap(), *o.ideal());
    assert!(o.ideal().contains(r.ideal()));
    assert!(!r.ideal().contains(o.ideal()));
}

#[test]
fn kd_examples() {
    let c = ctx(3, "x^2 - T");
    let r = Order::monogenic(&c);
    let rep = kummer_dedekind(&r, &poly(&c, "T")).unwrap();
    assert_eq!(rep.primes.len(), 1);
    assert_eq!((rep.primes[0].e, rep.primes[0].f_res, rep.primes[0].regular), (2, 1, true));
    assert!(singular_primes(&r).unwrap().is_empty());
    assert_eq!(discriminant(&c).unwrap(), poly(&c, "T"));

    let c = ctx(3, "x^2 - T^3");
    let r = Order::monogenic(&c);
    let rep = kummer_dedekind(&r, &poly(&c, "T")).unwrap();
    assert_eq!((rep.primes[0].e, rep.primes[0].f_res, rep.primes[0].regular), (2, 1, false));
    let rep = kummer_dedekind(&r, &poly(&c, "T - 1")).unwrap();
    assert_eq!(rep.primes.len(), 2);
    assert!(rep.primes.iter().all(|q| q.e == 1 && q.f_res == 1 && q.regular));
    assert_eq!(singular_primes(&r).unwrap(), vec![poly(&c, "T")]);
}

#[test]
fn splitting_in_maximal_order() {
    let c = ctx(3, "x^2 - T^3");
    let o = maximal_order(&Order::monogenic(&c)).unwrap();
    let rep = primes_above(&o, &poly(&c, "T")).unwrap();
    assert_eq!(rep.primes.len(), 1);
    assert_eq!((rep.primes[0].e, rep.primes[0].f_res), (2, 1));
    let rep = primes_above(&o, &poly(&c, "T - 1")).unwrap();
    assert_eq!(rep.primes.len(), 2);
    assert!(rep.primes.iter().all(|q| q.f_res == 1 && q.e == 1 && q.regular));
    // inert: T^2 + 1 over F_3 and x^2 - T: T is a nonsquare mod T^2+1? check sum rule anyway
    let rep = primes_above(&o, &poly(&c, "T^2 + 1")).unwrap();
    assert_eq!(rep.degree_sum(), 2);
}

#[test]
fn infinity_models() {
    let c = ctx(3, "x^2 - T");
    let inf = infinity_order(&c).unwrap();
    assert_eq!(inf.ctx.f_string(), "y^2 + 2*U");
    let pl = inf.places().unwrap();
    assert_eq!(pl.primes.len(), 1);
    assert_eq!(pl.primes[0].e, 2);

    let c = ctx(3, "x^2 - T^3");
    let inf = infinity_order(&c).unwrap();
    assert_eq!(inf.shift, 2);
    assert_eq!(inf.ctx.f_string(), "y^2 + 2*U");

    let c = ctx(5, "x^2 - (T^3 + T + 1)");
    let inf = infinity_order(&c).unwrap();
    let pl = inf.places().unwrap();
    assert_eq!(pl.primes.len(), 1);
    assert_eq!((pl.primes[0].e, pl.primes[0].f_res), (2, 1));
    assert_eq!(inf.disc_valuation(), 1);
}

#[test]
fn cubic_over_f3() {
    let c = ctx(3, "1 - x + x^3");
    let r = Order::monogenic(&c);
    let d = discriminant(&c).unwrap();
    // constant discriminant: 4·1 + 27·1 ≡ 1 mod 3 up to sign
    assert!(d.is_one());
    assert_eq!(maximal_order(&r).unwrap(), r);
}
