//! Noncommutative rewriting and Hopf-Galois verification for quantum group
//! presentations over `Q(p, q)`.

pub mod action;
pub mod bimodule;
pub mod coeff;
pub mod error;
pub mod galois;
pub mod hopf;
pub mod linalg;
pub mod ncpoly;
pub mod presentations;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod suites;

pub use coeff::{Coeff, NumericPoint, Rational, Specializer, Symbolic};
pub use error::{Error, Location, Result};
pub use hopf::{check_convolution_inverse, ConvolutionMap, HopfStructure, TensorTerms};
pub use ncpoly::{tensor_embed, translate, word_compare, Alphabet, Element, Letter, MonomialOrder, Poly, PolyOp, Word};
pub use presentations::{builtin, Algebra, Catalog, GenMap, MapKind, Presentation, Registry};
pub use report::{CheckRecord, CheckReport, Params, Status, SuiteReport};
pub use rewrite::{Ambiguity, AmbiguityKind, Provenance, RewriteSystem, Rule};
pub use scalar::{Scalar, ScalarOp};
