//! Exact conversions between Hamburger moment sequences and their canonical
//! models: Hankel determinants, Jacobi matrices, Krein–Stieltjes and
//! Krein–Langer strings, and Hamburger Hamiltonians. Each model also carries
//! an independent evaluation of its Weyl–Titchmarsh function.
//!
//! The algorithms are generic over [`exact_core::Scalar`]; the aliases below
//! fix the exact rational instantiation used throughout.

pub mod canonical;
pub mod error;
pub mod exact_core;
pub mod jacobi_weyl;
pub mod moments;
pub mod orthopoly;
pub mod strings;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type Poly = exact_core::Polynomial<Rational>;
pub type RatFun = exact_core::RationalFunction<Rational>;
pub type ComplexValue = num_complex::Complex64;
pub type Moments = moments::MomentSequence<Rational>;
pub type Measure = moments::DiscreteMeasure<Rational>;
pub type Jacobi = orthopoly::JacobiModel<Rational>;
pub type KlString = strings::KreinLangerString<Rational>;
pub type Hamiltonian = canonical::HamburgerHamiltonian<Rational>;
