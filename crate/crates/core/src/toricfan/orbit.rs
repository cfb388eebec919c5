use crate::exactalg::{saturate_mod2, BitMatrix, BitSubspace, BitVec, IntMatrix};

use super::fan::{ConeId, Fan};
use super::ToricError;

/// The sign group `T_σ = (ℤ₂)ⁿ / W_σ`, with `W_σ` the mod-2 image of the
/// lattice points of `span σ`.
///
/// Generators are the unit vectors at the non-pivot coordinates of `W_σ`,
/// so element `g` (a bitmask over the generators) is represented by the
/// vector with bit `generators[j]` set whenever bit `j` of `g` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitGroup {
    pub cone: ConeId,
    pub lattice: BitSubspace,
    pub generators: Vec<usize>,
}

impl OrbitGroup {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> usize {
        1 << self.dim()
    }

    /// Generator vectors in `(ℤ₂)ⁿ`.
    pub fn basis(&self) -> Vec<BitVec> {
        let n = self.lattice.ambient_dim();
        self.generators.iter().map(|&c| BitVec::unit(n, c)).collect()
    }

    /// Representative in `(ℤ₂)ⁿ` of element `g`.
    pub fn element_vector(&self, g: usize) -> BitVec {
        let n = self.lattice.ambient_dim();
        BitVec::from_ones(n, self.generators.iter().enumerate().filter(|(j, _)| g >> j & 1 == 1).map(|(_, &c)| c))
    }

    /// The element represented by any vector of `(ℤ₂)ⁿ`.
    pub fn label(&self, x: &BitVec) -> usize {
        let r = self.lattice.reduce(x);
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, &c)| r.get(c))
            .fold(0, |g, (j, _)| g | 1 << j)
    }
}

pub fn orbit_group(fan: &Fan, sigma: ConeId) -> Result<OrbitGroup, ToricError> {
    if sigma >= fan.len() {
        return Err(ToricError::UnknownCone(format!("#{sigma}")));
    }
    let n = fan.lattice_rank();
    let rows: Vec<Vec<i64>> = fan.cone(sigma).rays.iter().map(|&r| fan.rays()[r].clone()).collect();
    let lattice = saturate_mod2(&IntMatrix::from_i64_rows(n, &rows), n);
    let pivots = lattice.pivots();
    let generators = (0..n).filter(|c| !pivots.contains(c)).collect();
    Ok(OrbitGroup { cone: sigma, lattice, generators })
}

/// Matrix of the quotient `T_σ → T_τ` for any face `σ ≤ τ`; columns are
/// the generators of `T_σ`, rows those of `T_τ`.
pub fn quotient_map(small: &OrbitGroup, large: &OrbitGroup) -> BitMatrix {
    let cols: Vec<BitVec> = small
        .basis()
        .iter()
        .map(|v| {
            let g = large.label(v);
            BitVec::from_bools((0..large.dim()).map(|j| g >> j & 1 == 1))
        })
        .collect();
    BitMatrix::from_columns(large.dim(), &cols)
}

/// `φ_{τσ}: T_σ → T_τ` for a cover `σ ⋖ τ`.
pub fn orbit_map(fan: &Fan, sigma: ConeId, tau: ConeId) -> Result<BitMatrix, ToricError> {
    if sigma >= fan.len() || tau >= fan.len() {
        return Err(ToricError::UnknownCone(format!("#{}", sigma.max(tau))));
    }
    if !fan.covers(sigma).contains(&tau) {
        return Err(ToricError::NotACover {
            face: fan.cone(sigma).id.clone(),
            cone: fan.cone(tau).id.clone(),
        });
    }
    Ok(quotient_map(&orbit_group(fan, sigma)?, &orbit_group(fan, tau)?))
}
