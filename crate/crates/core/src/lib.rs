//! Analysis of reciprocal pairwise-comparison matrices.
//!
//! The crate derives priority vectors (eigenvalue and geometric-mean
//! methods), computes seven inconsistency indices (CI, CR, GWI, PLI, GCI,
//! KII, RIC) plus max-operator and compromise variants, checks index
//! functions empirically against six inconsistency axioms, and estimates
//! the random index by Monte Carlo.
//!
//! Core math is generic over the scalar type via [`Scalar`] (`f32` or
//! `f64`); the aliases below fix `f64`, which is what the CLI and the
//! default tolerances are tuned for.
//!
//! ```
//! use pcm::{ComparisonMatrix, CornerSpec, WeightMethod};
//!
//! let m = ComparisonMatrix::corner(CornerSpec::new(3, 2.0_f64)?);
//! let report = pcm::report(&m, Some(&pcm::RiTable::bundled()), WeightMethod::Gm)?;
//! assert_eq!(report.get(pcm::IndexName::Kii), Some(0.5));
//! # Ok::<(), pcm::Error>(())
//! ```

pub mod axioms;
pub mod error;
pub mod indices;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use indices::{
    ci, ci_from_lambda, compromise, cr, gci, gwi, gwi_max, kii, pli, pli_max, report, ric,
    ric_from_cosines, IndexName, IndexReport, RiProvenance, RiTable,
};
pub use matrix::{validate, ComparisonMatrix, CornerSpec, Triad, ValidationReport, Violation};
pub use scalar::Scalar;
pub use solvers::{
    geometric_mean_weights, principal_eigen, principal_eigen_default, EigenResult, PriorityVector,
    WeightMethod,
};

/// `f64` instantiations of the core types.
pub type ComparisonMatrix64 = ComparisonMatrix<f64>;
pub type PriorityVector64 = PriorityVector<f64>;
pub type EigenResult64 = EigenResult<f64>;
pub type IndexReport64 = IndexReport<f64>;
pub type RiTable64 = RiTable<f64>;
pub type Triad64 = Triad<f64>;
pub type CornerSpec64 = CornerSpec<f64>;
