//! Exact-arithmetic workbench for finitely presented graded algebras.
//!
//! The crate builds graded skew PBW extensions over finitely presented
//! bases, detects PBW bases by bounded rewriting, and certifies or refutes
//! Koszulness at bounded degree through three independent probes (bar
//! cohomology diagonals, Hilbert series duality, lattice distributivity).
//! All arithmetic is exact: rationals of unbounded size or a prime field.

pub mod scalar;
pub mod freealg;
pub mod linalg;
pub mod presentation;
pub mod rewriting;
pub mod extension;
pub mod koszul;
pub mod catalog;
pub mod textio;

pub use scalar::{FieldSpec, Scalar};
pub use freealg::{Context, FreePoly, GeneratorOrder, Word};
pub use presentation::{Presentation, Subspace, ValidationReport};
pub use rewriting::{PbwStatus, PbwVerdict, RewriteRule, RewriteSystem};
pub use extension::{ClassFlags, ExtensionBuilder, ExtensionData};
pub use koszul::{ExtTable, KoszulBounds, KoszulReport, MulOracle, ProbeStatus, Verdict};
pub use catalog::{CatalogItem, EntryInfo};

/// Errors reachable from user input (files, CLI flags, catalog parameters).
///
/// Structural misuse of the API (mixing contexts, out-of-range generator
/// indices) is a programmer error and panics instead.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid field: {0}")]
    Field(String),
    #[error("invalid generators: {0}")]
    Generators(String),
    #[error("not homogeneous quadratic: {0}")]
    NotQuadratic(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unknown catalog entry '{0}'")]
    UnknownCatalog(String),
    #[error("invalid generator order: {0}")]
    Order(String),
    #[error("invalid extension: {0}")]
    Extension(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
