//! Exact coefficient rings: ℚ, ℚ[vars], ℚ(vars), a quadratic extension of
//! ℚ(vars), and dense matrices over them.

pub mod gcd;
pub mod matrix;
pub mod mpoly;
pub mod quadext;
pub mod rat;
pub mod ratfn;
pub mod ring;

pub use matrix::Matrix;
pub use mpoly::{parse_mpoly, MPoly, Monomial, Vars};
pub use quadext::{Modulus, QuadExt};
pub use rat::{parse_rat, rat, ratio, Rat};
pub use ratfn::RatFn;
pub use ring::{Field, IntegralDomain, Ring};
