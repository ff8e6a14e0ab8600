//! Hamburger Hamiltonians: construction from moments, transfer matrices and
//! Weyl functions, the Euclidean continued-fraction decomposition, and the
//! maps to and from Krein–Langer strings.

mod angle;
mod euclid;
mod hamiltonian;
mod string_map;
mod transfer;

pub use angle::AngleData;
pub use euclid::euclid_decompose;
pub use hamiltonian::{
    hamiltonian_from_moments, hamiltonian_from_moments_max, Extent, HamburgerHamiltonian, Interval,
};
pub use string_map::{hamiltonian_to_kl, kl_to_hamiltonian};
pub use transfer::{
    determinant, transfer_matrix, weyl_function, weyl_principal, weyl_tail, weyl_tail_recursion,
    TransferMatrix, IDENTITY,
};
