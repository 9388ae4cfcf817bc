//! Simplicial augmented commutative algebras over a prime field: square-zero
//! extensions, abelianization, the truncated free/forget cotriple and the
//! completion experiment.

pub mod abelian;
pub mod experiment;
pub mod free;
pub mod level;
pub mod object;
pub mod presented;

pub use abelian::{abelianize, abelianize_map, square_zero, AbelianizationTriple};
pub use experiment::{conjecture_experiment, ExperimentReport, LevelOverflow};
pub use free::{monomial_map, FreeForget, TruncationPolicy};
pub use level::{AlgebraLevel, Indecomposables, MonomialBasis, Overflow, Product};
pub use object::{AlgMap, AlgObj, SimpAlgCat, SimplicialAlgebra};
pub use presented::{AlgebraFixture, Factor, FreePresentation, GeneratorSpec, Term};

use crate::triple::TripleError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimpAlgError {
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("level {level} needs {needed}, over the cap of {cap} basis elements")]
    Capacity { level: usize, needed: String, cap: usize },
}

impl From<SimpAlgError> for TripleError {
    fn from(e: SimpAlgError) -> TripleError {
        match e {
            SimpAlgError::Capacity { .. } => TripleError::Capacity(e.to_string()),
            SimpAlgError::Invalid(msg) => TripleError::Identity(msg),
        }
    }
}
