//! Exact field and sparse multivariate polynomial arithmetic.

pub mod field;
pub mod literal;
pub mod poly;

pub use field::{is_prime, make_extension, FieldSpec, Scalar};
pub use poly::{jacobian_rank_at, matrix_rank, pascal_row, LineExpansion, MultiPoly};
