//! Quasi-Hermitian Hamiltonians of su(1,1)/sl₂(ℝ) Lie-algebraic type.
//!
//! The crate solves the constraint families that make a nine-coupling
//! Hamiltonian H = Σ μ_l K_l + Σ μ_nm :K_n K_m: similar to a Hermitian one
//! through a metric operator η = exp(2εK₀ + 2ν(K₊ + K₋)), computes the
//! Hermitian counterparts in closed form, diagonalizes the same
//! Hamiltonians through generalized Bogoliubov transformations, and
//! verifies everything numerically in truncated matrix representations.

pub mod bogoliubov;
pub mod error;
pub mod metric;
pub mod numerics;
pub mod rep;
pub mod su11;

pub use error::{QhError, Result};
