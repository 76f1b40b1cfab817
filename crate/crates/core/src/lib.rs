//! Combinatorial models of totally normal cellular stratified spaces.
//!
//! A finite totally normal cellular stratified space is encoded by its face
//! category: a finite acyclic category whose objects are cells and whose
//! morphisms are the lifts of cell structure maps, together with a dimension
//! grading. The barycentric subdivision of such a space is the classifying
//! space of the face category, computed here as the Δ-set of nondegenerate
//! chains. Integral homology is computed exactly via Smith normal form.
//!
//! Builders are included for two families of examples: the face posets of
//! rational hyperplane arrangements with their higher-order stratifications
//! (and the resulting Salvetti complexes), and cellular models of
//! configuration spaces of graphs (with the Abrams discretized model as an
//! independent oracle).

pub mod arrangement;
pub mod category;
pub mod css;
pub mod delta;
pub mod graphconf;
pub mod homology;
pub mod json;
pub mod poset;
pub mod report;
pub mod snf;

pub use category::{Chain, FiniteAcyclicCategory, Morphism};
pub use css::TotallyNormalCss;
pub use delta::DeltaSet;
pub use homology::{ChainComplex, HomologyResult};
pub use poset::{GradedPoset, Poset};
pub use report::{ValidationReport, Violation};
pub use snf::SparseIntMat;

/// Library-wide error type. The CLI maps the variants to exit codes:
/// `Input` → 2, `Validation` → 1, `Internal` → 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("validation failed:\n{0}")]
    Validation(report::ValidationReport),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
