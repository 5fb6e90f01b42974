//! Graded modules, projective complexes and derived functors over finite-dimensional
//! algebras given by faithful matrices.

pub mod alg;
pub mod basic;
pub mod complex;
pub mod module;
pub mod ops;
pub mod resolve;

pub use alg::{Alg, AlgGen, BasisElem};
pub use complex::{BigradedTable, Laurent, ProjComplex, Summand};
pub use module::{GradedModule, GradedSubspace};
pub use resolve::{apply_bimodule, top_generators, Bimodule, FreeModule, Resolution};
