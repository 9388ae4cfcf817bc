//! Exact, finite computations with triples, cotriples and their cosimplicial
//! resolutions: simplex-category combinatorics, simplicial and cosimplicial
//! modules, bicomplex spectral sequences, bounded small object arguments and
//! simplicial augmented algebras.

pub mod delta;
pub mod linalg;
pub mod linear;
pub mod simpalg;
pub mod simplicial;
pub mod small_object;
pub mod spectral;
pub mod triple;

pub use delta::{FiniteSimplicialSet, OrdinalMap};
pub use linalg::{Field, Matrix, Scalar};
