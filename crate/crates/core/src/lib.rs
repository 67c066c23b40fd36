//! Exact computations for n-ary multiplicative Hom-Nambu-Lie superalgebras
//! over ℚ: axiom verification, cohomology, abelian extensions and
//! T*-extensions.

pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod extensions;
pub mod format;
pub mod graded;
pub mod random;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod subspace;
pub mod tstar;

pub use error::{NambuError, Result};
pub use graded::{HomSuperAlgebra, MetricAlgebra};
pub use linalg::{Matrix, Vector};
pub use report::Report;
pub use scalar::Scalar;
pub use subspace::Subspace;
