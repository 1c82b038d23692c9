//! Heisenberg-Weyl Bloch representation and trace-norm entanglement criteria.
//!
//! Density matrices are expanded in the basis of Hermitian Heisenberg-Weyl
//! observables `Q(l,m)`; the resulting Bloch vectors and correlation tensors
//! feed a family of trace-norm separability tests:
//!
//! * [`criteria::check_theorem1`]: the bipartite `S`-matrix criterion with
//!   free parameters `α, β, m`, in the standard or rescaled basis;
//! * [`criteria::check_theorem2`]: its multipartite version on every
//!   bipartition of the coefficient tensor;
//! * the correlation-matrix criteria [`criteria::check_vb`],
//!   [`criteria::check_lb`], [`criteria::check_isc`], and the partial
//!   transpose test [`criteria::check_ppt`].
//!
//! [`analysis`] scans one-parameter families for detection thresholds and
//! grid-searches criterion parameters.
//!
//! ```
//! use hwsep::criteria::check_theorem1;
//! use hwsep::hw_basis::Normalization;
//! use hwsep::states::StateFamily;
//!
//! let family = StateFamily::horodecki_mix(0.9)?;
//! let beta = (2.0f64 / 11.0).sqrt();
//! let v = check_theorem1(&family.at(0.3)?, 0.5, beta, 1, Normalization::Standard)?;
//! assert!(v.verdict.is_entangled());
//! # Ok::<(), hwsep::Error>(())
//! ```

pub mod analysis;
pub mod bloch;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod hw_basis;
pub mod linalg;
pub mod states;
pub mod tol;

pub use criteria::{Criterion, CriterionKind, CriterionVerdict, Verdict};
pub use error::{Error, Result};
pub use hw_basis::{HwBasis, Normalization};
pub use linalg::{ComplexMatrix, DensityMatrix, RealMatrix};
