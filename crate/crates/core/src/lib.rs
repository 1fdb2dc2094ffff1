//! Exact cyclic-homology computations for finitely presented dg categories
//! over ℚ.
//!
//! The crate builds the Hochschild, cyclic, Connes, negative and periodic
//! cyclic complexes of a presentation, the X-complexes of its short bimodule
//! resolution and their Hodge-completed total, and checks the identities and
//! quasi-isomorphisms relating them by exact sparse linear algebra on each
//! finite `(degree, weight)` piece.

pub mod bimodule;
pub mod cache;
pub mod check;
pub mod complex;
pub mod dgcat;
pub mod error;
pub mod examples;
pub mod hochschild;
pub mod input;
pub mod lin;
pub mod linalg;
pub mod natural;
pub mod report;
pub mod theorems;
pub mod xcomplex;

pub use check::{CheckReport, DimCell, Verdict};
pub use complex::{BigradedComplex, Complex, Mixed, Window};
pub use dgcat::{DgPresentation, GeneratorDecl, Letter, MorElement, ObjectSet, Word};
pub use error::{Error, Result};
pub use lin::Lin;
pub use linalg::{Rational, SparseMatrix};
