//! Dense complex and real matrix kernel.
//!
//! Sizes in this crate stay small (at most a few hundred rows), so every
//! routine is a straightforward dense implementation: Kronecker products,
//! a cyclic Jacobi eigensolver for Hermitian matrices, one-sided Jacobi
//! singular values, and partial transpose / partial trace on tensor-product
//! spaces.

mod density;
mod eigen;
mod matrix;
mod real;
mod svd;

pub use density::{partial_transpose, DensityMatrix};
pub use eigen::{eig_hermitian, eigh, HermitianEigen};
pub use matrix::{kron, kron_all, ComplexMatrix};
pub use real::RealMatrix;
pub use svd::{singular_values, trace_norm};

pub use num_complex::Complex64;
