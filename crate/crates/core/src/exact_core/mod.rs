//! Exact scalars, polynomials and rational functions.

pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod scalar;
pub mod sturm;

pub use linalg::determinant;
pub use poly::{poly_divmod, Polynomial};
pub use ratfun::{ratfun_reduce, RationalFunction};
pub use scalar::{parse_rational, ratio, Scalar};
