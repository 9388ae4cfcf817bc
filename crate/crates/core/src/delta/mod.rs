//! Combinatorics of the simplex category.

pub mod edgewise;
pub mod ordinal;
pub mod sset;
pub mod subdivision;

pub use edgewise::{edgewise_map, edgewise_object, h_structure_map, u_component, SubdivisionSpec};
pub use ordinal::{compose, epi_mono_factor, recompose, EpiMonoWord, OrdinalMap};
pub use sset::{FiniteSimplicialSet, Simplex, SimplicialMap};
pub use subdivision::{delta_subdivision, diag_overcategory_bijection, Arrow, CategoryIso, FiniteCategory};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("cannot compose {left} with {right}")]
    Composition { left: String, right: String },
    #[error("invalid ordinal map: {0}")]
    InvalidMap(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid subdivision copy l={l} for k={k}")]
    InvalidSubdivision { k: usize, l: usize },
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
}
