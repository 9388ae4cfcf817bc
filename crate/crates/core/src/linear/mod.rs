//! Chain complexes, simplicial modules, normalization and homotopy groups.

pub mod chain;
pub mod normalize;

pub use chain::{ChainComplex, HomologyGroup};
pub use normalize::{common_kernel, cosimplicial_dold_kan, dold_kan, dold_kan_map, homotopy_groups, moore_complex, unnormalized_complex, HomotopyGroups, NormalizedComplex, SimplicialModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("differentials do not square to zero at degree {0}")]
    NotAComplex(i64),
    #[error("complex has negative degree {0}")]
    NegativeDegree(i64),
}
