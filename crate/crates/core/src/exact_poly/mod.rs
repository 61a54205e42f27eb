//! Exact arithmetic kernel: rationals, multivariate polynomials, Gröbner
//! bases, factorization over Q and linear algebra over exact fields.

pub mod factor;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod linalg;
mod modp;
pub mod multipoly;
pub mod order;
pub mod rational;
pub mod solve;
pub mod upoly;

pub use factor::factor_univariate_q;
pub use field::{Field, Rationals};
pub use groebner::{gb_compute, gb_compute_in, ideal_member, GroebnerBasis, Membership};
pub use multipoly::{vars, Exponents, MultiPoly, Vars};
pub use order::MonomialOrder;
pub use rational::{q, qf, Rational};
pub use upoly::UPoly;
