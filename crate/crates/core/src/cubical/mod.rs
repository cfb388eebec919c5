//! Cubical diagrams of filtered complexes, their simple complexes, and
//! skeleton-filtered total complexes of simplicial hyperresolution data.

mod diagram;
mod hyperres;

pub use diagram::{
    additivity_check, is_acyclic, parse_diagram, simple_filtered, square_sequence, AdditivityReport, CubicalDiagram, DiagramDoc,
    DiagramIssue, DiagramMapDoc, SequenceRow,
};
pub use hyperres::{
    hyperres_weight_compare, parse_hyperresolution, single_level_shift_is_canonical, skeleton_filtration, DeligneReport,
    FaceDoc, HyperresDoc, Hyperresolution,
};

use crate::fcomplex::FcomplexError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubicalError {
    #[error("invalid diagram: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<DiagramIssue>),
    #[error("invalid hyperresolution: {}", .0.join("; "))]
    Hyperresolution(Vec<String>),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Complex(#[from] FcomplexError),
}
