use std::collections::HashMap;

use rayon::prelude::*;

use crate::exactalg::{BitMatrix, BitSubspace, BitVec};
use crate::fcomplex::{subcomplex, AdaptedComplex, ChainComplex, ChainMap, CellSelection, FilteredComplex};

use super::fan::{ConeId, Fan};
use super::orbit::{orbit_group, OrbitGroup};
use super::ToricError;

/// Cellular chain complex of the real toric variety of a fan.
///
/// Degree `k` has one cell `(σ, g)` for every cone of codimension `k` and
/// every `g ∈ T_σ`, listed by cone and then by `g`. The filtration is the
/// toric one, on `p ∈ [-n, 0]`.
#[derive(Clone, Debug)]
pub struct ToricCellComplex {
    pub cells: Vec<Vec<(ConeId, usize)>>,
    pub groups: Vec<OrbitGroup>,
    pub complex: ChainComplex,
    pub filtration: FilteredComplex,
    offsets: HashMap<ConeId, usize>,
}

impl ToricCellComplex {
    /// Index within its degree of cell `(σ, g)`.
    pub fn cell_index(&self, sigma: ConeId, g: usize) -> usize {
        self.offsets[&sigma] + g
    }

    /// Cells of cones containing `τ`, i.e. the closure of the orbit of `τ`.
    pub fn orbit_closure_cells(&self, fan: &Fan, tau: ConeId) -> CellSelection {
        self.cells_where(|sigma| fan.is_face(tau, sigma))
    }

    pub fn cells_where(&self, keep: impl Fn(ConeId) -> bool) -> CellSelection {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, cells)| {
                (k as i32, cells.iter().enumerate().filter(|(_, (s, _))| keep(*s)).map(|(i, _)| i).collect())
            })
            .collect()
    }

    /// The orbit closure `V(τ)` with its induced filtration, and its inclusion.
    pub fn orbit_closure(&self, fan: &Fan, tau: ConeId) -> (FilteredComplex, ChainMap) {
        subcomplex(&self.filtration, &self.orbit_closure_cells(fan, tau)).expect("orbit closures are subcomplexes")
    }
}

impl ToricCellComplex {
    /// The complex in the basis of subgroup indicators `[⟨t_i : i ∈ S⟩]`,
    /// which is adapted to the toric filtration: that basis vector sits in
    /// filtration degree `-|S|`, at the position of cell `(σ, S)`.
    ///
    /// The change of basis `g ↦ Σ_{g ⊆ S} (σ, S)` is its own inverse mod 2.
    pub fn adapted(&self, fan: &Fan) -> AdaptedComplex {
        let n = fan.lattice_rank();
        let weights: Vec<Vec<i32>> = self.cells.iter().map(|c| c.iter().map(|&(_, s)| -(s.count_ones() as i32)).collect()).collect();
        let maps: Vec<(i32, BitMatrix)> = (1..=n)
            .into_par_iter()
            .map(|k| {
                let mut entries = Vec::new();
                for &sigma in self.cells[k].iter().filter(|(_, g)| *g == 0).map(|(s, _)| s) {
                    let group = &self.groups[sigma];
                    for &tau in fan.covers(sigma) {
                        let target = &self.groups[tau];
                        let images: Vec<usize> = group.basis().iter().map(|v| target.label(v)).collect();
                        let image = |g: usize| (0..images.len()).filter(|j| g >> j & 1 == 1).fold(0, |h, j| h ^ images[j]);
                        for mask in 0..group.order() {
                            // parity of the image of the subgroup, then its coordinates
                            let mut v = vec![false; target.order()];
                            let mut g = mask;
                            loop {
                                v[image(g)] ^= true;
                                if g == 0 {
                                    break;
                                }
                                g = (g - 1) & mask;
                            }
                            for j in 0..target.dim() {
                                for t in 0..target.order() {
                                    if t >> j & 1 == 0 {
                                        v[t] ^= v[t | 1 << j];
                                    }
                                }
                            }
                            let col = self.cell_index(sigma, mask);
                            let off = self.cell_index(tau, 0);
                            entries.extend(v.iter().enumerate().filter(|(_, &b)| b).map(|(t, _)| (off + t, col)));
                        }
                    }
                }
                (k as i32, BitMatrix::from_entries(self.complex.dim(k as i32 - 1), self.complex.dim(k as i32), &entries))
            })
            .collect();
        let dims = self.cells.iter().map(Vec::len).collect();
        let complex = ChainComplex::new(0, dims, maps).expect("conjugate of a complex");
        AdaptedComplex::new(complex, weights).expect("indicator basis is adapted")
    }
}

/// Indicator of the subgroup generated by the generators in `mask`: the
/// elements `g` with `g ⊆ mask`.
fn subgroup_indicator(k: usize, mask: usize) -> BitVec {
    BitVec::from_ones(1 << k, (0..1usize << k).filter(|g| g & !mask == 0))
}

pub fn toric_cell_complex(fan: &Fan) -> Result<ToricCellComplex, ToricError> {
    let n = fan.lattice_rank();
    let groups: Vec<OrbitGroup> = (0..fan.len()).into_par_iter().map(|c| orbit_group(fan, c)).collect::<Result<_, _>>()?;
    let mut cells: Vec<Vec<(ConeId, usize)>> = vec![Vec::new(); n + 1];
    let mut offsets = HashMap::new();
    for (c, g) in groups.iter().enumerate() {
        let k = fan.codim(c);
        debug_assert_eq!(g.dim(), k);
        offsets.insert(c, cells[k].len());
        cells[k].extend((0..g.order()).map(|e| (c, e)));
    }
    let dims: Vec<usize> = cells.iter().map(Vec::len).collect();
    let maps: Vec<(i32, BitMatrix)> = (1..=n)
        .into_par_iter()
        .map(|k| {
            let mut entries = Vec::new();
            for (j, &(sigma, g)) in cells[k].iter().enumerate() {
                let v = groups[sigma].element_vector(g);
                for &tau in fan.covers(sigma) {
                    entries.push((offsets[&tau] + groups[tau].label(&v), j));
                }
            }
            (k as i32, BitMatrix::from_entries(dims[k - 1], dims[k], &entries))
        })
        .collect();
    let complex = ChainComplex::new(0, dims, maps).map_err(|e| ToricError::Internal(e.to_string()))?;

    // 𝒯_{-q} C_k(σ) is spanned by indicators of the subgroups ⟨t_i : i ∈ S⟩, |S| ≥ q.
    let (cells_ref, offsets_ref, groups_ref) = (&cells, &offsets, &groups);
    let level = |p: i32, k: i32| -> BitSubspace {
        let (cells, offsets, groups) = (cells_ref, offsets_ref, groups_ref);
        let k = k as usize;
        let q = (-p) as usize;
        let vectors = cells[k]
            .iter()
            .filter(|(_, g)| *g == 0)
            .flat_map(|&(sigma, _)| {
                let off = offsets[&sigma];
                let kk = groups[sigma].dim();
                (0..1usize << kk)
                    .filter(move |mask| mask.count_ones() as usize >= q)
                    .map(move |mask| {
                        let local = subgroup_indicator(kk, mask);
                        BitVec::from_ones(cells[k].len(), local.ones().map(|i| i + off))
                    })
            })
            .collect::<Vec<_>>();
        BitSubspace::span(cells[k].len(), vectors)
    };
    let c = complex.clone();
    let filtration = FilteredComplex::from_fn(c, -(n as i32), 0, level).map_err(|e| ToricError::Internal(e.to_string()))?;
    Ok(ToricCellComplex { cells, groups, complex, filtration, offsets })
}

pub fn toric_filtration(fan: &Fan) -> Result<FilteredComplex, ToricError> {
    Ok(toric_cell_complex(fan)?.filtration)
}

/// Cellular pushforward along a refinement of fans in the same lattice.
///
/// `assignment[σ̃]` is the smallest cone of `coarse` containing `σ̃`. A cell
/// `(σ̃, g)` goes to the class of `g` in `T_σ` when both orbits have the same
/// dimension, and to zero when the orbit is collapsed.
pub fn refinement_pushforward(
    fine: &Fan,
    fine_cells: &ToricCellComplex,
    coarse: &Fan,
    coarse_cells: &ToricCellComplex,
    assignment: &[ConeId],
) -> Result<ChainMap, ToricError> {
    if fine.lattice_rank() != coarse.lattice_rank() || assignment.len() != fine.len() {
        return Err(ToricError::Internal("refinement data does not match the fans".into()));
    }
    for a in 0..fine.len() {
        for b in 0..fine.len() {
            if fine.is_face(a, b) && !coarse.is_face(assignment[a], assignment[b]) {
                return Err(ToricError::Internal(format!(
                    "cone assignment does not preserve the face relation at {:?} ≤ {:?}",
                    fine.cone(a).id,
                    fine.cone(b).id
                )));
            }
        }
    }
    let n = fine.lattice_rank();
    let components = (0..=n)
        .map(|k| {
            let mut entries = Vec::new();
            for (j, &(s, g)) in fine_cells.cells[k].iter().enumerate() {
                let t = assignment[s];
                if coarse.codim(t) == k {
                    let v = fine_cells.groups[s].element_vector(g);
                    entries.push((coarse_cells.cell_index(t, coarse_cells.groups[t].label(&v)), j));
                }
            }
            (k as i32, BitMatrix::from_entries(coarse_cells.complex.dim(k as i32), fine_cells.complex.dim(k as i32), &entries))
        })
        .collect();
    Ok(ChainMap { components })
}
