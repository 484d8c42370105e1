//! Exact structure theory of real Lie algebras and weak amenability verdicts
//! for the associated simply connected groups, plus explicit lattice groups
//! and orbit experiments for `SL(2,Z)`-actions.

pub mod catalog;
pub mod constructions;
pub mod format;
pub mod groups;
pub mod lie;
pub mod linalg;
pub mod orbit;
pub mod report;
pub mod selftest;
pub mod structure;
pub mod subspace;
pub mod verdict;

pub use catalog::{Catalog, CatalogError, RealFormRecord, WaConstant};
pub use lie::{LieAlgebra, LieError, StructureTable};
pub use linalg::{RatMatrix, Rational, Signature};
pub use structure::{LeviDecomposition, StructureError};
pub use subspace::Subspace;
pub use verdict::{decide, Dichotomy, Verdict};
