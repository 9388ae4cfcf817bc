//! Bounded small object arguments on finite simplicial sets.

pub mod cells;
pub mod cofibrant;

pub use cells::{Attachment, Core, Simp, SimplexTable, StageLedger, StageRecord};
pub use cofibrant::{cofibrant_stages, CofCore, CofSimplex, CofibrantReplacement};
pub mod fibrant;

pub use fibrant::{associativity_report, fibrant_over, fibrant_stages, iterate, FibCore, FibSimplex, FibrantReplacement, HornCell};
