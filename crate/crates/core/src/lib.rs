//! Implicit linear algebra over exact fields, and its use on linear
//! electrical multiports.
//!
//! Everything is generic over [`ExactField`]; the aliases below fix the two
//! supported fields.

pub mod error;
pub mod generate;
pub mod graph;
pub mod label;
pub mod matrix;
pub mod multiport;
pub mod netlist;
pub mod scalar;
pub mod spaces;
pub mod suites;
pub mod terminations;
pub mod theorems;

pub use error::{Error, Result};
pub use label::{Decoration, Label};
pub use matrix::{Matrix, SolveKind, SolveReport};
pub use scalar::{ExactField, FieldMode, GaussianRational, Rational};
pub use spaces::{AffineSpace, VectorSpace};

pub type RationalMatrix = Matrix<Rational>;
pub type GaussianMatrix = Matrix<GaussianRational>;
pub type RationalSpace = VectorSpace<Rational>;
pub type GaussianSpace = VectorSpace<GaussianRational>;
pub type RationalAffineSpace = AffineSpace<Rational>;
pub type GaussianAffineSpace = AffineSpace<GaussianRational>;
