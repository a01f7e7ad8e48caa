//! Exact-arithmetic computer algebra for graded algebras, curved
//! DG-modules, and constructive derived-category-of-the-second-kind
//! certificates, over prime fields or the rationals.

pub mod bec;
pub mod cdg;
pub mod dg;
pub mod fixtures;
pub mod grading;
pub mod graded;
pub mod matrix;
pub mod randgen;
pub mod report;
pub mod scalar;

pub use grading::{Degree, GradingDatum, GroupKind, SigmaForm};
pub use matrix::{LinSys, Matrix};
pub use report::CheckReport;
pub use scalar::{Fp, Rat, Scalar};

/// Concrete aliases for the two supported scalar types.
pub type MatrixFp = Matrix<Fp>;
pub type MatrixQ = Matrix<Rat>;
pub type AlgebraFp = graded::GradedAlgebra<Fp>;
pub type AlgebraQ = graded::GradedAlgebra<Rat>;
pub type ModuleFp = graded::GradedModule<Fp>;
pub type ModuleQ = graded::GradedModule<Rat>;
