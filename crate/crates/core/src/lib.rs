//! Exact and floating-point tooling for higher gauge theory built on
//! differential 2-crossed modules.

pub mod algebra;
pub mod config;
pub mod crossed;
pub mod error;
pub mod forms;
pub mod gauge;
pub mod identities;
pub mod group;
pub mod instances;
pub mod invariant;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod reduce;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod variational;

pub use algebra::{AlgebraElement, LieAlgebra, MatrixRep};
pub use crossed::{AxiomReport, DifferentialCrossedModule, Slot, Status, TwoCrossedModule};
pub use error::{Error, Result};
pub use linalg::{Matrix, Tensor3};
pub use poly::{Monomial, Polynomial};
pub use scalar::{Rational, Scalar};
