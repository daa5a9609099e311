//! Exact arithmetic for orders in function fields F_q(T)[x]/f: fractional ideals,
//! overorders, weak equivalence classes, local ideal class monoids, zeta functions
//! and local Gekeler ratios, with brute-force oracles over A/p^n.

pub mod algebra;
pub mod bivariate;
pub mod context;
pub mod curve;
pub mod error;
pub mod factor;
pub mod field;
pub mod gekeler;
pub mod ideal;
pub mod irreducible;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod overorders;
pub mod primes;
pub mod ratfn;
pub mod submodules;
pub mod weak;
pub mod zeta;

pub use bivariate::BiPoly;
pub use context::{AlgebraContext, KElement};
pub use curve::Curve;
pub use error::{AlgebraError, Result};
pub use field::{FiniteField, Fq, ResidueField};
pub use ideal::{FracIdeal, Order};
pub use poly::{FqPoly, Poly};
