//! Factorization of univariate polynomials over finite fields:
//! squarefree decomposition, distinct-degree and equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::FiniteField;
use crate::poly::Poly;

/// Squarefree decomposition: pairs (g_i, i) with g = lc·∏ g_i^i, each g_i squarefree and monic.
pub fn squarefree<F: FiniteField>(g: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    sqf_rec(&g.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn sqf_rec<F: FiniteField>(f: &Poly<F>, scale: usize, out: &mut Vec<(Poly<F>, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.field().characteristic() as usize;
    let d = f.derivative();
    if d.is_zero() {
        sqf_rec(&f.pth_root(), scale * p, out);
        return;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i * scale));
        }
        i += 1;
        c = c.div_exact(&y).unwrap();
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        sqf_rec(&c.pth_root().monic(), scale * p, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (product of all irreducible factors of degree d, d).
pub fn distinct_degree<F: FiniteField>(g: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let k = g.field();
    let q = BigUint::from(k.size());
    let x = Poly::var(k);
    let mut out = Vec::new();
    let mut rest = g.monic();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            let deg = rest.degree().unwrap();
            out.push((rest.clone(), deg));
            break;
        }
        h = h.powmod(&q, &rest);
        let t = (&h - &x).gcd(&rest);
        if !t.is_one() {
            rest = rest.div_exact(&t).unwrap();
            h = h.rem(&rest);
            out.push((t, d));
        }
    }
    out
}

/// Split a monic squarefree product of irreducibles of degree d.
pub fn equal_degree<F: FiniteField>(g: &Poly<F>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let n = g.degree().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let k = g.field();
    let qsize = k.size();
    let p = k.characteristic();
    loop {
        let a = random_poly(k, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(kd-1)) with q = 2^k
            let kk = qsize.trailing_zeros() as usize;
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..kk * d {
                t = t.mulmod(&t, g);
                acc = &acc + &t;
            }
            acc
        } else {
            let e = (BigUint::from(qsize).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            &a.powmod(&e, g) - &Poly::one(k)
        };
        let h = b.gcd(g);
        if h.degree().unwrap_or(0) > 0 && h.degree() < g.degree() {
            let other = g.div_exact(&h).unwrap();
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

fn random_poly<F: FiniteField>(k: &F, n: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    let q = k.size();
    Poly::new(k, (0..n).map(|_| k.element(rng.gen_range(0..q))).collect())
}

/// Full factorization into monic irreducibles with multiplicity, sorted canonically.
pub fn factor<F: FiniteField>(g: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    if g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.field().seed());
    let mut out = Vec::new();
    for (s, mult) in squarefree(g) {
        for (prod, d) in distinct_degree(&s) {
            for h in equal_degree(&prod, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Rabin irreducibility test.
pub fn is_irreducible<F: FiniteField>(g: &Poly<F>) -> bool {
    let n = match g.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let k = g.field();
    let g = g.monic();
    let q = BigUint::from(k.size());
    let x = Poly::var(k);
    let mut pows = vec![x.rem(&g)];
    for _ in 0..n {
        let next = pows.last().unwrap().powmod(&q, &g);
        pows.push(next);
    }
    if pows[n] != x.rem(&g) {
        return false;
    }
    for l in prime_divisors(n) {
        let t = (&pows[n / l] - &x).gcd(&g);
        if !t.is_one() {
            return false;
        }
    }
    true
}

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Degrees of the irreducible factors (with multiplicity) without splitting further.
pub fn factor_degrees<F: FiniteField>(g: &Poly<F>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (s, mult) in squarefree(g) {
        for (prod, d) in distinct_degree(&s) {
            for _ in 0..prod.degree().unwrap() / d {
                out.push((d, mult));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::poly::FqPoly;

    fn fp(k: &Fq, c: &[i64]) -> FqPoly {
        Poly::new(k, c.iter().map(|&x| k.from_int(x)).collect())
    }

    fn expand(fs: &[(FqPoly, usize)], k: &Fq) -> FqPoly {
        fs.iter().fold(Poly::one(k), |acc, (f, m)| &acc * &f.pow(*m as u64))
    }

    #[test]
    fn pure_power() {
        let k = Fq::new(3).unwrap();
        let x = Poly::var(&k);
        assert_eq!(factor(&x.pow(2)).unwrap(), vec![(x, 2)]);
    }

    #[test]
    fn difference_of_squares() {
        let k = Fq::new(3).unwrap();
        let f = fp(&k, &[-1, 0, 1]);
        let fs = factor(&f).unwrap();
        assert_eq!(fs, vec![(fp(&k, &[1, 1]), 1), (fp(&k, &[-1, 1]), 1)]);
    }

    #[test]
    fn cubic_over_extensions() {
        // 1 - x + x^3: irreducible over F_3 (no roots), splits over F_27.
        for (q, expect) in [(3u64, vec![3]), (9, vec![3]), (27, vec![1, 1, 1])] {
            let k = Fq::new(q).unwrap();
            let f = fp(&k, &[1, -1, 0, 1]);
            let fs = factor(&f).unwrap();
            assert_eq!(expand(&fs, &k), f);
            let mut degs: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
            degs.sort();
            assert_eq!(degs, expect);
            // no factor of degree 3 has a root in F_q
            for (g, _) in &fs {
                if g.degree().unwrap() > 1 {
                    assert!(k.elements().iter().all(|a| g.eval(a) != 0));
                }
            }
        }
    }

    #[test]
    fn inseparable_input() {
        let k = Fq::new(2).unwrap();
        // (x^2 + x + 1)^2 * x^4 = x^8 + x^6 + x^4... in char 2 exponents double
        let g = fp(&k, &[1, 1, 1]);
        let f = &g.pow(2) * &Poly::var(&k).pow(4);
        let fs = factor(&f).unwrap();
        assert_eq!(expand(&fs, &k), f);
        assert_eq!(fs, vec![(Poly::var(&k), 4), (g, 2)]);
    }

    #[test]
    fn char_two_splitting() {
        let k = Fq::new(4).unwrap();
        // x^4 - x over F_4 splits completely
        let f = &Poly::var(&k).pow(4) - &Poly::var(&k);
        let fs = factor(&f).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(expand(&fs, &k), f);
    }
}
