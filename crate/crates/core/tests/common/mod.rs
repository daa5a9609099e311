#![allow(dead_code)]

use gekeler::parse::{parse_bivariate, parse_poly};
use gekeler::{AlgebraContext, Fq, FqPoly};

pub fn ctx(q: u64, f: &str) -> AlgebraContext {
    let k = Fq::new(q).unwrap();
    AlgebraContext::new(&k, parse_bivariate(&k, f).unwrap()).unwrap()
}

pub fn poly(c: &AlgebraContext, s: &str) -> FqPoly {
    parse_poly(c.field(), s).unwrap()
}
