//! Filtered GF(2) chain complexes and their spectral sequences.

mod adapted;
mod chain;
pub mod doc;
mod filtered;
mod pages;
mod sub;
mod weights;

pub use adapted::AdaptedComplex;
pub use chain::{ChainComplex, ChainMap};
pub use filtered::{canonical_filtration, deligne_shift, Diagnostic, FilteredComplex};
pub use pages::{differential_target, pages, reindex, weight_coords, Indexing, Page, PageEntry, PageSet};
pub use sub::{all_cells_except, quotient, subcomplex, CellSelection};
pub use weights::{
    in_support_triangle, purity_collapse_report, virtual_poincare, virtual_poincare_from_first_page, weight_profile, Poly, PurityReport,
    TriangleViolation, WeightProfile,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FcomplexError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid filtered complex: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

/// Validation report; empty iff `fc` is a valid filtered complex.
pub fn validate(fc: &FilteredComplex) -> Vec<Diagnostic> {
    fc.validate()
}
