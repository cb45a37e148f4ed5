//! Exact representation theory of Hecke algebras and group algebras: field
//! arithmetic, Coxeter combinatorics, finite-dimensional algebras and
//! modules, symmetrizing forms, Auslander-generator witnesses and bounds on
//! representation dimension.

pub mod error;
pub mod field;

pub use error::{Error, Result};
pub use field::{field_make, root_of_unity, scalar_arith, ArithOp, FieldDescriptor, FieldKind, Scalar};
pub mod matrix;
pub use matrix::{solve_and_kernel, ScalarMatrix, Subspace};
pub mod algebra;
pub mod auslander;
pub mod bounds;
pub mod coxeter;
pub mod fitting;
pub mod module;
pub mod poly;
pub mod symform;
