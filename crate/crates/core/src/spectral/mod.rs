//! Cosimplicial simplicial modules, their bicomplexes and the spectral
//! sequence of the column filtration.

pub mod bicomplex;
pub mod cssm;
pub mod diagonal;
pub mod multi;
pub mod random;
pub mod sequence;
pub mod tower;

pub use bicomplex::{
    conormalize_bicomplex, conormalized_map, total_complex, total_map, Bicomplex, Conormalized, TotalComplex, TotalLayout, SIGN_CONVENTION,
};
pub use cssm::CosimplicialSimplicialModule;
pub use diagonal::{diag_vs_total, random_bicosimplicial, random_triple_complex, BicosimplicialModule, DiagVsTotal};
pub use random::{random_bicomplex, Piece, RandomBicomplex};
pub use multi::{bicomplex_module, DoldKan, GeneratorSet, MultiComplex};
pub use tower::{coskeleton_rows, tot_homology_map, tot_tower, tot_truncation, TotStage, TotTower};
pub use sequence::{e2_by_iterated_homology, e2_from_homotopy, exact, reliable, spectral_sequence, Differential, Entry, Page, SSReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}
