//! Exact sparse polynomial arithmetic over `Q` and `F_p`, monomial orders and
//! seeded generic data.

mod field;
mod monomial;
mod parse;
mod poly;
mod random;

pub use field::{is_prime, Coeff, FieldSpec, MIN_PRIME};
pub use monomial::{Exponents, Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub(crate) use parse::parse_polynomial_at;
pub use poly::{PolyRing, Polynomial};
pub use random::{
    random_combinations, rank, restrict_to_generic_subspace, LinearSubspace, RandomSource,
    DEFAULT_COEFFICIENT_RANGE,
};
