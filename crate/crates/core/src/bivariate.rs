//! Polynomials in A[x] with A = F_q[T].

use std::fmt;

use crate::field::{FiniteField, Fq};
use crate::poly::{FqPoly, Poly};

/// Coefficient of x^k at index k, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: Fq,
    coeffs: Vec<FqPoly>,
}

impl BiPoly {
    pub fn new(field: &Fq, mut coeffs: Vec<FqPoly>) -> BiPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Fq) -> BiPoly {
        BiPoly::new(field, Vec::new())
    }

    pub fn from_a(a: FqPoly) -> BiPoly {
        let k = a.field().clone();
        BiPoly::new(&k, vec![a])
    }

    pub fn x(field: &Fq) -> BiPoly {
        BiPoly::new(field, vec![Poly::zero(field), Poly::one(field)])
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FqPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic_x(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Largest T-degree among the coefficients.
    pub fn degree_t(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn derivative_x(&self) -> BiPoly {
        let k = &self.field;
        let v = (1..self.coeffs.len()).map(|i| self.coeffs[i].scale(&k.from_int(i as i64))).collect();
        BiPoly::new(k, v)
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        BiPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return BiPoly::zero(&self.field);
        }
        let mut v = vec![Poly::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BiPoly::new(&self.field, v)
    }

    pub fn pow(&self, e: u64) -> BiPoly {
        let mut acc = BiPoly::from_a(Poly::one(&self.field));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Map every coefficient through `g`.
    pub fn map_coeffs(&self, g: impl Fn(&FqPoly) -> FqPoly) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(g).collect())
    }

    /// Reduce the coefficients modulo m.
    pub fn reduce_coeffs(&self, m: &FqPoly) -> BiPoly {
        self.map_coeffs(|c| c.rem(m))
    }

    pub fn to_string_vars(&self, t: &str, x: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string_var(t);
            let mono = match k {
                0 => String::new(),
                1 => x.to_string(),
                _ => format!("{x}^{k}"),
            };
            let term = if k == 0 {
                cs
            } else if c.is_one() {
                mono
            } else if cs.contains(' ') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_vars("T", "x"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
