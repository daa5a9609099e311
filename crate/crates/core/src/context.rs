//! The algebra K = F(π), f(π) = 0, with elements in the power basis.

use std::fmt;
use std::sync::Arc;

use crate::bivariate::BiPoly;
use crate::error::{AlgebraError, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::{FqPoly, Poly};
use crate::ratfn::{RatFn, RatMatrix};

struct CtxInner {
    field: Fq,
    f: BiPoly,
    r: usize,
    /// Names of the base variable and of π when printing.
    tvar: String,
    xvar: String,
}

/// Shared read-only description of K = Frac(A[x]/f).
#[derive(Clone)]
pub struct AlgebraContext(Arc<CtxInner>);

impl PartialEq for AlgebraContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.f == other.0.f
    }
}

impl fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[{}] over {:?}", self.f_string(), self.0.field)
    }
}

impl AlgebraContext {
    /// Validates monicity and irreducibility of f.
    pub fn new(field: &Fq, f: BiPoly) -> Result<AlgebraContext> {
        let ctx = AlgebraContext::unchecked(field, f, "T", "x")?;
        if !crate::irreducible::irreducible_over_f(&ctx)? {
            return Err(AlgebraError::Reducible);
        }
        Ok(ctx)
    }

    /// Only checks that f is monic of positive degree in x.
    pub fn unchecked(field: &Fq, f: BiPoly, tvar: &str, xvar: &str) -> Result<AlgebraContext> {
        let r = match f.degree_x() {
            None | Some(0) => return Err(AlgebraError::ConstantInX),
            Some(r) => r,
        };
        if !f.is_monic_x() {
            return Err(AlgebraError::NotMonicInX);
        }
        Ok(AlgebraContext(Arc::new(CtxInner {
            field: field.clone(),
            f,
            r,
            tvar: tvar.into(),
            xvar: xvar.into(),
        })))
    }

    pub fn field(&self) -> &Fq {
        &self.0.field
    }

    pub fn f(&self) -> &BiPoly {
        &self.0.f
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn tvar(&self) -> &str {
        &self.0.tvar
    }

    pub fn f_string(&self) -> String {
        self.0.f.to_string_vars(&self.0.tvar, &self.0.xvar)
    }

    pub fn poly_string(&self, a: &FqPoly) -> String {
        a.to_string_var(&self.0.tvar)
    }

    /// Tr(π^k) for k < n, by Newton's identities.
    pub fn power_traces(&self, n: usize) -> Vec<FqPoly> {
        let k = &self.0.field;
        let r = self.0.r;
        let c = self.0.f.coeffs();
        let mut s: Vec<FqPoly> = Vec::with_capacity(n);
        for m in 0..n {
            if m == 0 {
                s.push(Poly::constant(k, k.from_int(r as i64)));
                continue;
            }
            let mut acc = if m <= r { c[r - m].scale(&k.from_int(-(m as i64))) } else { Poly::zero(k) };
            for i in 1..m.min(r + 1) {
                if i > r || m < i {
                    break;
                }
                acc = &acc - &(&c[r - i] * &s[m - i]);
            }
            s.push(acc);
        }
        s
    }

    /// det(Tr(π^(i+j))), zero when f is inseparable.
    pub fn raw_discriminant(&self) -> FqPoly {
        let r = self.0.r;
        let s = self.power_traces(2 * r - 1);
        let mut g = crate::matrix::PolyMatrix::zero(&self.0.field, r, r);
        for i in 0..r {
            for j in 0..r {
                g.set(i, j, s[i + j].clone());
            }
        }
        g.det()
    }

    pub fn is_separable(&self) -> bool {
        self.0.f.derivative_x().degree_x().is_some()
    }

    /// Reduce a coefficient list in π modulo f to length r.
    pub fn reduce(&self, mut v: Vec<FqPoly>) -> Vec<FqPoly> {
        let r = self.0.r;
        let f = self.0.f.coeffs();
        while v.len() > r {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = v.len() - r;
            for i in 0..r {
                if f[i].is_zero() {
                    continue;
                }
                v[base + i] = &v[base + i] - &(&top * &f[i]);
            }
        }
        v.resize(r, Poly::zero(&self.0.field));
        v
    }

    /// Product of two integral coordinate vectors.
    pub fn mul_coords(&self, a: &[FqPoly], b: &[FqPoly]) -> Vec<FqPoly> {
        let k = &self.0.field;
        let r = self.0.r;
        let mut v = vec![Poly::zero(k); 2 * r - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(x * y);
            }
        }
        self.reduce(v)
    }

    pub fn zero(&self) -> KElement {
        KElement { num: vec![Poly::zero(&self.0.field); self.0.r], den: Poly::one(&self.0.field) }
    }

    pub fn one(&self) -> KElement {
        self.scalar(Poly::one(&self.0.field))
    }

    pub fn scalar(&self, a: FqPoly) -> KElement {
        let mut e = self.zero();
        e.num[0] = a;
        e
    }

    /// π^k.
    pub fn pi_pow(&self, k: usize) -> KElement {
        let mut v = vec![Poly::zero(&self.0.field); k + 1];
        v[k] = Poly::one(&self.0.field);
        KElement::new(self.reduce(v), Poly::one(&self.0.field))
    }

    pub fn pi(&self) -> KElement {
        self.pi_pow(1)
    }

    pub fn mul(&self, a: &KElement, b: &KElement) -> KElement {
        KElement::new(self.mul_coords(&a.num, &b.num), &a.den * &b.den)
    }

    pub fn add(&self, a: &KElement, b: &KElement) -> KElement {
        let num = a.num.iter().zip(&b.num).map(|(x, y)| &(x * &b.den) + &(y * &a.den)).collect();
        KElement::new(num, &a.den * &b.den)
    }

    pub fn sub(&self, a: &KElement, b: &KElement) -> KElement {
        self.add(a, &b.neg())
    }

    pub fn pow(&self, a: &KElement, e: u64) -> KElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Matrix of multiplication by z in the power basis (columns z·π^j).
    pub fn mult_matrix(&self, z: &KElement) -> RatMatrix {
        let k = &self.0.field;
        let r = self.0.r;
        let mut m = RatMatrix::zero(k, r, r);
        let mut cur = z.num.clone();
        for j in 0..r {
            for (i, c) in cur.iter().enumerate() {
                m.set(i, j, RatFn::new(c.clone(), z.den.clone()));
            }
            if j + 1 < r {
                let mut shifted = vec![Poly::zero(k)];
                shifted.extend(cur.iter().cloned());
                cur = self.reduce(shifted);
            }
        }
        m
    }

    pub fn trace(&self, z: &KElement) -> RatFn {
        let m = self.mult_matrix(z);
        (0..self.0.r).fold(RatFn::zero(&self.0.field), |acc, i| &acc + m.get(i, i))
    }

    pub fn norm(&self, z: &KElement) -> RatFn {
        self.mult_matrix(z).det()
    }

    /// Inverse of a nonzero element.
    pub fn inverse(&self, z: &KElement) -> Result<KElement> {
        let m = self.mult_matrix(z).inverse()?;
        // z^{-1} = M^{-1} e_0
        let col: Vec<RatFn> = (0..self.0.r).map(|i| m.get(i, 0).clone()).collect();
        Ok(self.from_rational(&col))
    }

    pub fn from_rational(&self, v: &[RatFn]) -> KElement {
        let k = &self.0.field;
        let den = v.iter().fold(Poly::one(k), |acc, c| acc.lcm(c.den()));
        let num = v.iter().map(|c| c.num() * &den.div_exact(c.den()).unwrap()).collect();
        KElement::new(num, den)
    }

    pub fn element_from_coeffs(&self, v: Vec<FqPoly>) -> KElement {
        KElement::new(self.reduce(v), Poly::one(&self.0.field))
    }

    pub fn element_string(&self, z: &KElement) -> String {
        let b = BiPoly::new(&self.0.field, z.num.clone());
        let n = b.to_string_vars(&self.0.tvar, &self.0.xvar);
        if z.den.is_one() {
            n
        } else {
            format!("({n})/({})", z.den.to_string_var(&self.0.tvar))
        }
    }
}

/// num/den with num in power-basis coordinates; den monic and coprime to the content of num.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KElement {
    num: Vec<FqPoly>,
    den: FqPoly,
}

impl KElement {
    pub fn new(mut num: Vec<FqPoly>, mut den: FqPoly) -> KElement {
        assert!(!den.is_zero(), "zero denominator");
        let k = den.field().clone();
        let g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            num = num.iter().map(|c| c.div_exact(&g).unwrap()).collect();
            den = den.div_exact(&g).unwrap();
        }
        let lc = den.lc();
        if lc != 1 {
            let inv = k.inv(&lc);
            num = num.iter().map(|c| c.scale(&inv)).collect();
            den = den.scale(&inv);
        }
        if num.iter().all(|c| c.is_zero()) {
            den = Poly::one(&k);
        }
        KElement { num, den }
    }

    pub fn num(&self) -> &[FqPoly] {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_integral_coords(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> KElement {
        KElement { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn scale(&self, a: &FqPoly) -> KElement {
        KElement::new(self.num.iter().map(|c| c * a).collect(), self.den.clone())
    }

    pub fn div_scalar(&self, a: &FqPoly) -> KElement {
        KElement::new(self.num.clone(), &self.den * a)
    }

    pub fn rational_coords(&self) -> Vec<RatFn> {
        self.num.iter().map(|c| RatFn::new(c.clone(), self.den.clone())).collect()
    }
}
