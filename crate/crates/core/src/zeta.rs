//! Place census and the L-polynomial of K over its full constant field.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::curve::Curve;
use crate::error::{AlgebraError, Result};
use crate::field::FiniteField;

/// Places of K by F_q-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceCensus {
    /// finite[d-1], infinite[d-1] for d = 1..=max_degree
    pub finite: Vec<u64>,
    pub infinite: Vec<u64>,
}

impl PlaceCensus {
    pub fn new(curve: &Curve, max_degree: usize) -> Result<PlaceCensus> {
        let mut finite = Vec::with_capacity(max_degree);
        let mut infinite = Vec::with_capacity(max_degree);
        for d in 1..=max_degree {
            let inf = curve.infinite_places.iter().filter(|q| q.f_res == d).count() as u64;
            finite.push(curve.count_places(d)? - inf);
            infinite.push(inf);
        }
        Ok(PlaceCensus { finite, infinite })
    }

    pub fn total(&self, d: usize) -> u64 {
        self.finite[d - 1] + self.infinite[d - 1]
    }

    pub fn max_degree(&self) -> usize {
        self.finite.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub m: usize,
    pub g: usize,
    /// Constant field size q^m.
    pub big_q: i128,
    pub coeffs: Vec<i128>,
}

impl LPolynomial {
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c as f64)
    }

    /// L(1), the class number of degree-zero divisors.
    pub fn class_number(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    pub fn functional_equation_holds(&self) -> bool {
        let g = self.g;
        self.coeffs.len() == 2 * g + 1
            && self.coeffs[0] == 1
            && (0..=g).all(|i| self.coeffs[2 * g - i] == self.big_q.pow((g - i) as u32) * self.coeffs[i])
    }

    /// Complex roots, all of which should lie on |t| = Q^{-1/2}.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.coeffs.len() - 1;
        if n == 0 {
            return Vec::new();
        }
        let c: Vec<f64> = self.coeffs.iter().map(|&x| x as f64).collect();
        if n == 2 {
            let (a, b, c0) = (c[2], c[1], c[0]);
            let disc = Complex64::new(b * b - 4.0 * a * c0, 0.0).sqrt();
            return vec![(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)];
        }
        aberth(&c)
    }

    /// Largest deviation of |root| from Q^{-1/2}.
    pub fn root_deviation(&self) -> f64 {
        let target = (self.big_q as f64).powf(-0.5);
        self.roots().iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "g": self.g,
            "L": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Simultaneous root refinement for a real polynomial with ascending coefficients.
fn aberth(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let radius = monic[0].abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Constant field degree, cross-checked against the place degrees below m.
pub fn checked_constant_field_degree(curve: &Curve) -> Result<usize> {
    let m = curve.m;
    for d in 1..m {
        let n = curve.count_places(d)?;
        if n != 0 {
            return Err(AlgebraError::Invariant(format!(
                "constant field degree {m} but {n} places of degree {d}"
            )));
        }
    }
    Ok(m)
}

/// L_K from the counts of places of F_{q^m}-degree 1..g.
pub fn l_polynomial(curve: &Curve) -> Result<LPolynomial> {
    let m = checked_constant_field_degree(curve)?;
    let g = curve.genus()?;
    let big_q = (curve.field().size() as i128).pow(m as u32);
    let b: Vec<i128> = (1..=g).map(|j| curve.count_places(m * j).map(|c| c as i128)).collect::<Result<_>>()?;
    let coeffs = l_from_place_counts(big_q, g, &b)?;
    let l = LPolynomial { m, g, big_q, coeffs };
    if l.class_number() <= 0 || !l.functional_equation_holds() {
        return Err(AlgebraError::Invariant(format!("L-polynomial {:?} fails its identities", l.coeffs)));
    }
    Ok(l)
}

/// a_1..a_g by Newton's identities from the point counts, the rest by the functional equation.
pub fn l_from_place_counts(big_q: i128, g: usize, b: &[i128]) -> Result<Vec<i128>> {
    // S_n = Σ_{d|n} d·B_d points over the degree-n extension; s_n = Q^n + 1 - S_n
    let s: Vec<i128> = (1..=g)
        .map(|n| {
            let pts: i128 = (1..=n).filter(|d| n % d == 0).map(|d| d as i128 * b[d - 1]).sum();
            big_q.pow(n as u32) + 1 - pts
        })
        .collect();
    let mut a = vec![0i128; 2 * g + 1];
    a[0] = 1;
    for k in 1..=g {
        let acc: i128 = (1..=k).map(|i| s[i - 1] * a[k - i]).sum();
        if acc % k as i128 != 0 {
            return Err(AlgebraError::Invariant(format!("Newton step {k} is not integral")));
        }
        a[k] = -acc / k as i128;
    }
    for i in 0..g {
        a[2 * g - i] = big_q.pow((g - i) as u32) * a[i];
    }
    Ok(a)
}

/// Coefficients of L(t)/((1-t)(1-Qt)) up to t^n.
pub fn zeta_series(l: &LPolynomial, n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n + 1];
    for (i, &c) in l.coeffs.iter().enumerate().take(n + 1) {
        // 1/((1-t)(1-Qt)) = Σ_k (Q^{k+1}-1)/(Q-1) t^k
        for k in 0..=n - i {
            let geo: i128 = (0..=k).map(|j| l.big_q.pow(j as u32)).sum();
            out[i + k] += c * geo;
        }
    }
    out
}

/// Effective divisors of each degree up to n from the place counts B_1..B_n.
pub fn effective_divisor_counts(b: &[i128], n: usize) -> Vec<i128> {
    let mut series = vec![0i128; n + 1];
    series[0] = 1;
    for (d, &count) in b.iter().enumerate().take(n) {
        let d = d + 1;
        for _ in 0..count {
            // multiply by 1/(1 - t^d)
            for k in d..=n {
                series[k] += series[k - d];
            }
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_zero_counts() {
        // P^1 over F_3: B_1 = 4, B_2 = 3
        let l = LPolynomial { m: 1, g: 0, big_q: 3, coeffs: vec![1] };
        assert_eq!(zeta_series(&l, 2), effective_divisor_counts(&[4, 3], 2));
    }

    #[test]
    fn elliptic_from_counts() {
        let a = l_from_place_counts(5, 1, &[9]).unwrap();
        assert_eq!(a, vec![1, 3, 5]);
        let l = LPolynomial { m: 1, g: 1, big_q: 5, coeffs: a };
        assert!(l.root_deviation() < 1e-9);
        assert!(l.functional_equation_holds());
    }

    #[test]
    fn aberth_quartic() {
        // (1 + 2t + 3t^2)^2 for Q = 3, g = 2
        let l = LPolynomial { m: 1, g: 2, big_q: 3, coeffs: vec![1, 4, 10, 12, 9] };
        assert!(l.functional_equation_holds());
        assert!(l.root_deviation() < 1e-6);
    }
}
