//! Numerical-radius toolkit for small dense real and complex matrices.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`matrix`], [`eigen`] and [`block`]: dense complex arithmetic, a cyclic
//!   Jacobi Hermitian eigensolver, singular-value extremes and block-partition
//!   bookkeeping.
//! - [`range`]: the Hermitian pencil `H_θ`, numerical radius, Crawford number,
//!   boundary sampling, attaining sets and the real-field radius.
//! - [`ortho`]: numerical-radius and Birkhoff–James orthogonality deciders
//!   together with a definitional convex-minimisation oracle.
//! - [`bounds`]: block-matrix lower bounds, literature lower bounds, the
//!   Gau–Wu comparators, Kittaneh's upper bound and comparison reports.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod block;
pub mod bounds;
pub mod eigen;
mod error;
pub mod matrix;
pub mod ortho;
pub mod range;
mod search;

pub use block::{block_extract, zero_cross, BlockPartition};
pub use eigen::{herm_eig, HermEigDecomp};
pub use error::{Error, Result};
pub use matrix::{min_modulus, op_norm, CMatrix, Field};
pub use num_complex::Complex64;
pub use bounds::{BoundEntry, BoundKind, BoundsReport};
pub use ortho::{Counterexample, OrthoMethod, OrthoVerdict, Witness};

pub use range::{AttainingSet, RadiusCertificate, RealRadius};
