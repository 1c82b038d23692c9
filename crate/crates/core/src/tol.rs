//! Numerical tolerances shared across modules.

/// Maximum entrywise |M - M†| accepted for a Hermitian matrix.
pub const HERMITIAN: f64 = 1e-10;

/// Maximum |Tr ρ - 1| accepted for a density matrix.
pub const TRACE: f64 = 1e-10;

/// Smallest eigenvalue accepted for a positive semidefinite matrix is `-PSD`.
pub const PSD: f64 = 1e-10;

/// Margin added to a bound before a criterion reports a violation.
pub const VIOLATION: f64 = 1e-9;
