//! Exact linear algebra over the rationals and prime fields.

mod matrix;
pub mod poly;
mod scalar;

pub use matrix::{
    independent_subset, kernel_basis, make_primitive, quotient_dim, rank_of, rref, solve, Matrix, QuotientSpace, Rref,
};
pub use scalar::{is_prime, Field, Scalar};
