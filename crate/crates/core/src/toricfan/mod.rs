//! Fans, orbit groups, and the cellular chain complex of a real toric
//! variety with its toric filtration.

mod cells;
mod fan;
mod invariants;
mod orbit;

pub use cells::{refinement_pushforward, toric_cell_complex, toric_filtration, ToricCellComplex};
pub use fan::{
    a1_cone, affine_space, blown_up_p2, fan_corpus, hirzebruch, p2_minus_cone, parse_fan, product_fan, projective_space,
    smooth_complete_names, square_cone, standard_fan, trivial_fan, weighted_p112, Cone, ConeDoc, ConeId, Fan,
    FanDoc, FanIssue, ZERO_CONE_ID,
};
pub use invariants::{fan_virtual_poincare, orbit_sum, toric_pages};
pub use orbit::{orbit_group, orbit_map, quotient_map, OrbitGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid fan: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<FanIssue>),
    #[error("unknown cone {0:?}")]
    UnknownCone(String),
    #[error("{cone:?} does not cover {face:?}")]
    NotACover { face: String, cone: String },
    #[error("unknown fixture fan {0:?}")]
    UnknownFixture(String),
    #[error("{0}")]
    Internal(String),
}
