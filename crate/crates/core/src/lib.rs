//! Truncated Fock-space models of the operator algebras generated by a
//! finite directed multigraph.
//!
//! Operators are generic over a [`Scalar`]; the aliases below fix the common
//! choices.

pub mod classify;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod fock;
pub mod fourier;
pub mod freeness;
pub mod gauge;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod matrix_forms;
pub mod path;
pub mod radical;
pub mod scalar;
pub mod sparse;
pub mod spectral;

use num_complex::Complex;
use num_rational::Ratio;

pub use error::{Error, Result};
pub use fock::{FockSpace, GeneratorKind, Side};
pub use graph::{DirectedMultigraph, Edge, EdgeId, VertexId};
pub use path::{Path, PathTable};
pub use scalar::{FieldScalar, Real, Scalar};
pub use sparse::SparseOperator;

pub type C64 = Complex<f64>;
/// Integer operators: exact arithmetic for the 0/1 generator relations.
pub type ExactOperator = SparseOperator<i64>;
pub type ComplexOperator = SparseOperator<C64>;
/// Gaussian-integer operators, exact with complex coefficients.
pub type GaussianOperator = SparseOperator<Complex<i64>>;
pub type RationalOperator = SparseOperator<Complex<Ratio<i64>>>;
