use std::collections::BTreeMap;

use crate::exactalg::BitMatrix;

use super::chain::{ChainComplex, ChainMap};
use super::filtered::FilteredComplex;
use super::FcomplexError;

/// Basis indices kept in each degree; missing degrees keep nothing.
pub type CellSelection = BTreeMap<i32, Vec<usize>>;

fn selected(sel: &CellSelection, k: i32) -> &[usize] {
    sel.get(&k).map_or(&[], Vec::as_slice)
}

fn submatrix(m: &BitMatrix, rows: &[usize], cols: &[usize]) -> BitMatrix {
    let mut out = BitMatrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            if m.get(r, c) {
                out.set(i, j, true);
            }
        }
    }
    out
}

fn selection_matrix(sel: &[usize], ambient: usize) -> BitMatrix {
    let entries: Vec<(usize, usize)> = sel.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    BitMatrix::from_entries(ambient, sel.len(), &entries)
}

fn restricted_complex(c: &ChainComplex, sel: &CellSelection) -> Result<ChainComplex, FcomplexError> {
    if c.is_empty() {
        return Ok(ChainComplex::zero());
    }
    let dims: Vec<usize> = c.degrees().map(|k| selected(sel, k).len()).collect();
    let maps: Vec<(i32, BitMatrix)> = c
        .degrees()
        .map(|k| (k, submatrix(&c.boundary(k), selected(sel, k - 1), selected(sel, k))))
        .collect();
    ChainComplex::new(c.k_min(), dims, maps)
}

fn check_selection(c: &ChainComplex, sel: &CellSelection) -> Result<(), FcomplexError> {
    for (&k, cells) in sel {
        if let Some(&bad) = cells.iter().find(|&&i| i >= c.dim(k)) {
            return Err(FcomplexError::Shape(format!("cell {bad} does not exist in degree {k}")));
        }
        if cells.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FcomplexError::Shape(format!("cells in degree {k} must be strictly increasing")));
        }
    }
    Ok(())
}

/// The subcomplex spanned by the selected cells with the induced filtration,
/// and its inclusion. The selection must be closed under the boundary.
pub fn subcomplex(fc: &FilteredComplex, sel: &CellSelection) -> Result<(FilteredComplex, ChainMap), FcomplexError> {
    let c = fc.complex();
    check_selection(c, sel)?;
    for k in c.degrees() {
        let cells = selected(sel, k);
        let below = selected(sel, k - 1);
        let d = c.boundary(k);
        for &j in cells {
            if let Some(r) = (0..d.rows()).find(|&r| d.get(r, j) && below.binary_search(&r).is_err()) {
                return Err(FcomplexError::Shape(format!(
                    "selection is not a subcomplex: cell {j} in degree {k} has boundary cell {r} outside it"
                )));
            }
        }
    }
    let sub = restricted_complex(c, sel)?;
    let inclusion = ChainMap {
        components: c.degrees().map(|k| (k, selection_matrix(selected(sel, k), c.dim(k)))).collect(),
    };
    let (p_min, p_max) = fc.p_range().unwrap_or((0, -1));
    let filtered = FilteredComplex::from_fn(sub, p_min, p_max, |p, k| fc.level(p, k).restrict_to(selected(sel, k)))?;
    Ok((filtered, inclusion))
}

/// The quotient by the complementary cells, written on the selected cells,
/// with the image filtration and the projection. The unselected cells must
/// span a subcomplex.
pub fn quotient(fc: &FilteredComplex, sel: &CellSelection) -> Result<(FilteredComplex, ChainMap), FcomplexError> {
    let c = fc.complex();
    check_selection(c, sel)?;
    let complement: CellSelection = c
        .degrees()
        .map(|k| {
            let keep = selected(sel, k);
            (k, (0..c.dim(k)).filter(|i| keep.binary_search(i).is_err()).collect())
        })
        .collect();
    subcomplex(fc, &complement).map_err(|_| {
        FcomplexError::Shape("selection is not a quotient: its complement is not a subcomplex".into())
    })?;
    let q = restricted_complex(c, sel)?;
    let projection = ChainMap {
        components: c.degrees().map(|k| (k, selection_matrix(selected(sel, k), c.dim(k)).transpose())).collect(),
    };
    let (p_min, p_max) = fc.p_range().unwrap_or((0, -1));
    let filtered = FilteredComplex::from_fn(q, p_min, p_max, |p, k| fc.level(p, k).project(selected(sel, k)))?;
    Ok((filtered, projection))
}

/// Full selection in every degree except those listed in `drop`.
pub fn all_cells_except(c: &ChainComplex, drop: &CellSelection) -> CellSelection {
    c.degrees()
        .map(|k| {
            let gone = selected(drop, k);
            (k, (0..c.dim(k)).filter(|i| gone.binary_search(i).is_err()).collect())
        })
        .collect()
}

