//! Euler calculus on finite regular cell complexes: constructible functions,
//! links, mod-2 chains and their pushforwards.

mod calculus;
mod complex;
pub mod doc;

pub use calculus::{
    chain_boundary, closure, euler_integral, half_boundary, incidence_boundary, link, open_boundary, pushforward_chain,
    pushforward_cf, restrict, BlowupSquare, CellChain, CellMap, ConstructibleFunction, HalfValues, OpenChain,
};
pub use doc::{parse_cell_complex, parse_function, CellComplexDoc, ChainDoc, FunctionDoc, MapDoc};
pub use complex::{circle_two_cells, CellComplex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EulerError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("map is not cellular: {0}")]
    NotCellular(String),
    #[error("cell set is not open")]
    NotOpen,
    #[error("parse error: {0}")]
    Parse(String),
}
