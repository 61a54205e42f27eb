//! Function fields K = Q(t_1..t_r)(a_1..a_m) and finite extensions L/K as
//! explicit towers with exact element arithmetic.

mod analysis;
mod build;
pub mod norm;
pub mod ratfunc;
mod roots;
mod tower;

pub use analysis::{char_poly, min_poly, quasi_galois_check, validate_nice_basis, Clause, GeneratorSplitting, NiceBasisReport, QuasiGaloisReport};
pub use build::{certify_irreducible, recertify, tower_build, valid_symbol, TowerSpec};
pub use ratfunc::{RatFunc, RatFuncField};
pub use roots::{root_count_bound, roots_in_tower};
pub use tower::{FieldElement, FieldTower, GeneratorSpec, Monomial};
