//! Triples and cotriples, their standard and mixed cosimplicial resolutions
//! with explicit contractions, and the completion pipeline.

pub mod completion;
pub mod descriptor;
pub mod modules;
pub mod resolution;

pub use completion::{completion, completion_naturality, homology_maps, linearize, Completion, CompletionDegree, Linearize, Naturality};
pub use descriptor::{
    verify_cotriple, verify_triple, verify_triple_map, verify_triple_naturality, AxiomCheck, AxiomReport, Cotriple,
    IdentityCotriple, IdentityTriple, Triple, TripleMap,
};
pub use modules::{AlgebraMap, CoalgebraCotriple, FiniteAlgebra, FiniteCoalgebra, TensorTriple};
pub use resolution::{
    induced_map, mixed_resolution, resolution_map, standard_resolution, triple_map_homotopy, Contraction, MixedResolution, Resolver,
    ResolutionDump, Side,
};

use crate::simplicial::SimplicialError;
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("the category lacks {0}")]
    Capability(String),
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error("identity failure: {0}")]
    Identity(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}
