//! Exact linear algebra over ℤ and prime fields.

mod integer;
mod matrix;
mod prime_field;
mod ring;
mod snf;

pub use integer::Integer;
pub use matrix::{IntegerMatrix, SparseVec};
pub use prime_field::PrimeFieldMatrix;
pub use ring::Ring;
pub use snf::{smith_normal_form, smith_normal_form_over, SnfDecomposition};
