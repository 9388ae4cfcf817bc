//! Simplicial and cosimplicial objects in a concrete category, the homotopy
//! relation with explicit witnesses, and skeleta/coskeleta of module-valued
//! objects.

pub mod category;
pub mod fixture;
pub mod homotopy;
pub mod objects;
pub mod truncation;

pub use category::{ConcreteCategory, FinSetCat, FnTable, VectCat};
pub use homotopy::{
    check_cosimplicial_homotopy, check_simplicial_homotopy, edgewise_homotopy, edgewise_pullback, u_pullback,
    Direction, HomotopyWitness,
};
pub use objects::{chains_on, cochains_on, power_by, tensor_with, CosimplicialObject, IdentityViolation, LevelMap, SimplicialObject};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("the category lacks {0}")]
    Capability(&'static str),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operator {0} leaves the truncation range")]
    OutOfRange(String),
    #[error("{0}")]
    Identity(String),
    #[error("invalid fixture: {0}")]
    Fixture(String),
}
