//! Exact coefficient arithmetic and sparse multivariate polynomials.

mod monomial;
mod order;
mod poly;
mod scalar;
mod table;

pub use monomial::Monomial;
pub use order::MonomialOrder;
pub(crate) use poly::same_table;
pub use poly::{Polynomial, Substitution};
pub use scalar::{is_prime, Field, Scalar};
pub use table::{VarId, VariableTable};
