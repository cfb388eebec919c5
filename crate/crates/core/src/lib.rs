//! Weight spectral sequences over GF(2).
//!
//! The crate computes spectral sequences of bounded filtered chain complexes
//! over the two-element field, builds the cellular chain complex of a real
//! toric variety together with its toric filtration, assembles simple
//! complexes of cubical diagrams, and implements a combinatorial Euler
//! calculus of constructible functions and chains on regular cell complexes.
//!
//! - [`checks`]: property suites over the fixture corpus.
//! - [`exactalg`]: bit-packed GF(2) matrices and subspaces, integer Smith form.
//! - [`fcomplex`]: filtered complexes, pages, reindexing, weight filtration, `β`.
//! - [`cubical`]: cubical diagrams, simple filtered complexes, hyperresolutions.
//! - [`fixtures`]: hand-built squares, hyperresolutions and fold maps.
//! - [`sampling`]: seeded random complexes, functions and filtrations.
//! - [`toricfan`]: fans, orbit groups, toric cell complexes and filtrations.
//! - [`euler`]: link operator, chain boundary, pushforwards, restriction, pullback.

pub mod checks;
pub mod cubical;
pub mod euler;
pub mod exactalg;
pub mod fcomplex;
pub mod fixtures;
pub mod sampling;
pub mod toricfan;
