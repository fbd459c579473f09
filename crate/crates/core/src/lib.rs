//! Reductions from semi-Thue accessibility to the generalized and the
//! classical Post correspondence problem, with bounded solvers on both
//! sides and translation of certificates along every reduction stage.

pub mod cli;
pub mod codes;
pub mod correspondence;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod manifest;
pub mod reductions;
pub mod rewriting;
pub mod witnesses;
pub mod words;

pub use correspondence::{GpcpInstance, PcpInstance, SearchOutcome, SolverLimits};
pub use error::{Error, Result};
pub use manifest::{Instance, ReductionManifest, Stage};
pub use rewriting::{AccessInstance, DerivationTrace, ReachabilityLimits, ReachabilityOutcome, Rule, SemiThueSystem, Step};
pub use witnesses::Witness;
pub use words::{Alphabet, Letter, Morphism, Word};
