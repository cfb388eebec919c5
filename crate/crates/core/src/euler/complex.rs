use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::exactalg::BitMatrix;
use crate::fcomplex::ChainComplex;

use super::EulerError;

/// A finite regular cell complex given by its face poset.
///
/// Cells are sorted by dimension. Each cell of dimension `d ≥ 1` lists its
/// facets (faces of dimension `d - 1`); the closure of a cell is the set of
/// its iterated facets. Regularity is checked through the thinness of the
/// poset: a 1-cell has two endpoints and every interval of length two has
/// exactly two middle elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    labels: Vec<String>,
    dims: Vec<usize>,
    facets: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    /// Position of each cell among the cells of its dimension.
    position: Vec<usize>,
    by_dim: Vec<Vec<usize>>,
    simplex_index: Option<HashMap<Vec<usize>, usize>>,
}

impl CellComplex {
    /// Builds from `(label, dim, facets)`; facets index into the same list.
    pub fn from_cells(cells: Vec<(String, usize, Vec<usize>)>) -> Result<Self, EulerError> {
        let m = cells.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (cells[i].1, i));
        let mut new_index = vec![0; m];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut labels = Vec::with_capacity(m);
        let mut dims = Vec::with_capacity(m);
        let mut facets = Vec::with_capacity(m);
        for &old in &order {
            let (label, dim, fs) = &cells[old];
            let mut mapped = Vec::with_capacity(fs.len());
            for &f in fs {
                if f >= m {
                    return Err(EulerError::Invalid(format!("cell {label:?} lists missing facet #{f}")));
                }
                if cells[f].1 + 1 != *dim {
                    return Err(EulerError::Invalid(format!(
                        "cell {label:?} of dimension {dim} lists facet {:?} of dimension {}",
                        cells[f].0, cells[f].1
                    )));
                }
                mapped.push(new_index[f]);
            }
            mapped.sort_unstable();
            if mapped.windows(2).any(|w| w[0] == w[1]) {
                return Err(EulerError::Invalid(format!("cell {label:?} lists a facet twice")));
            }
            labels.push(label.clone());
            dims.push(*dim);
            facets.push(mapped);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(EulerError::Invalid(format!("cell label {l:?} is used twice")));
            }
        }
        Self::finish(labels, dims, facets, None)
    }

    fn finish(
        labels: Vec<String>,
        dims: Vec<usize>,
        facets: Vec<Vec<usize>>,
        simplex_index: Option<HashMap<Vec<usize>, usize>>,
    ) -> Result<Self, EulerError> {
        let m = dims.len();
        // facets always have smaller index, so closures build in one pass
        let mut faces: Vec<Vec<usize>> = Vec::with_capacity(m);
        for c in 0..m {
            let mut set = BTreeSet::new();
            for &f in &facets[c] {
                set.insert(f);
                set.extend(faces[f].iter().copied());
            }
            faces.push(set.into_iter().collect());
        }
        let mut cofaces = vec![Vec::new(); m];
        for c in 0..m {
            for &f in &faces[c] {
                cofaces[f].push(c);
            }
        }
        let top = dims.iter().copied().max().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        let mut position = vec![0; m];
        for c in 0..m {
            position[c] = by_dim[dims[c]].len();
            by_dim[dims[c]].push(c);
        }
        let x = CellComplex { labels, dims, facets, faces, cofaces, position, by_dim, simplex_index };
        x.check_regular()?;
        Ok(x)
    }

    fn check_regular(&self) -> Result<(), EulerError> {
        for c in 0..self.len() {
            let d = self.dims[c];
            if d == 1 && self.facets[c].len() != 2 {
                return Err(EulerError::Invalid(format!(
                    "1-cell {:?} has {} endpoints, expected 2",
                    self.labels[c],
                    self.facets[c].len()
                )));
            }
            if d >= 2 {
                for &f in self.faces[c].iter().filter(|&&f| self.dims[f] + 2 == d) {
                    let between = self.facets[c].iter().filter(|&&m| self.facets[m].contains(&f)).count();
                    if between != 2 {
                        return Err(EulerError::Invalid(format!(
                            "cell {:?} is not regular: face {:?} lies in {between} of its facets, expected 2",
                            self.labels[c], self.labels[f]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Simplicial complex generated by `simplices` (closed under faces).
    pub fn from_simplices(vertices: usize, simplices: &[Vec<usize>]) -> Result<Self, EulerError> {
        let mut all: BTreeSet<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(EulerError::Invalid("empty simplex".into()));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
                return Err(EulerError::Invalid(format!("simplex {s:?} uses vertex {v} of {vertices}")));
            }
            if s.len() > 16 {
                return Err(EulerError::Invalid(format!("simplex {s:?} is too large")));
            }
            for mask in 1u32..(1u32 << s.len()) {
                all.insert((0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect());
            }
        }
        let mut list: Vec<Vec<usize>> = all.into_iter().collect();
        list.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index: HashMap<Vec<usize>, usize> = list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let facets = list
            .iter()
            .map(|s| {
                if s.len() == 1 {
                    return Vec::new();
                }
                let mut fs: Vec<usize> = (0..s.len())
                    .map(|skip| {
                        let f: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                        index[&f]
                    })
                    .collect();
                fs.sort_unstable();
                fs
            })
            .collect();
        let labels = list.iter().map(|s| format!("{s:?}")).collect();
        let dims = list.iter().map(|s| s.len() - 1).collect();
        Self::finish(labels, dims, facets, Some(index))
    }

    /// Face poset read off a chain complex: the facets of a basis cell are
    /// the cells in its boundary. Degrees must start at 0.
    pub fn from_boundary(c: &ChainComplex, labels: Option<Vec<String>>) -> Result<Self, EulerError> {
        if !c.is_empty() && c.k_min() != 0 {
            return Err(EulerError::Invalid("cell degrees must start at 0".into()));
        }
        let mut cells = Vec::new();
        let mut start = BTreeMap::new();
        for k in c.degrees() {
            start.insert(k, cells.len());
            let d = c.boundary(k);
            for j in 0..c.dim(k) {
                let fs = (0..d.rows()).filter(|&r| d.get(r, j)).map(|r| start[&(k - 1)] + r).collect();
                cells.push((format!("{k}:{j}"), k as usize, fs));
            }
        }
        if let Some(l) = labels {
            if l.len() != cells.len() {
                return Err(EulerError::Invalid(format!("{} labels for {} cells", l.len(), cells.len())));
            }
            for (cell, label) in cells.iter_mut().zip(l) {
                cell.0 = label;
            }
        }
        Self::from_cells(cells)
    }

    /// Product cell complex; cell `(a, b)` has index `a * other.len() + b`
    /// before re-sorting by dimension, and label `a×b`.
    pub fn product(&self, other: &CellComplex) -> CellComplex {
        let m = other.len();
        let cells = (0..self.len())
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| {
                let fs = self.facets[a]
                    .iter()
                    .map(|&f| f * m + b)
                    .chain(other.facets[b].iter().map(|&g| a * m + g))
                    .collect();
                (format!("{}×{}", self.labels[a], other.labels[b]), self.dims[a] + other.dims[b], fs)
            })
            .collect();
        CellComplex::from_cells(cells).expect("products of regular complexes are regular")
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    /// `max dim`, or `None` for the empty complex.
    pub fn top_dim(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    pub fn label(&self, c: usize) -> &str {
        &self.labels[c]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of a simplex given by its vertices (simplicial complexes only).
    pub fn simplex(&self, vertices: &[usize]) -> Option<usize> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.simplex_index.as_ref()?.get(&v).copied()
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplex_index.is_some()
    }

    pub fn facets(&self, c: usize) -> &[usize] {
        &self.facets[c]
    }

    /// All cells strictly in the closure of `c`.
    pub fn faces(&self, c: usize) -> &[usize] {
        &self.faces[c]
    }

    /// All cells having `c` as a proper face.
    pub fn cofaces(&self, c: usize) -> &[usize] {
        &self.cofaces[c]
    }

    pub fn cells_of_dim(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    /// Index of `c` in the basis of its chain group.
    pub fn position(&self, c: usize) -> usize {
        self.position[c]
    }

    /// Closure of a set of cells.
    pub fn closure(&self, cells: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut out = vec![false; self.len()];
        for c in cells {
            out[c] = true;
            for &f in &self.faces[c] {
                out[f] = true;
            }
        }
        out
    }

    /// Closed under taking faces (a subcomplex).
    pub fn is_closed(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|c| !set[c] || self.faces[c].iter().all(|&f| set[f]))
    }

    /// Closed under taking cofaces (a union of open cells that is open).
    pub fn is_open(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|c| !set[c] || self.cofaces[c].iter().all(|&f| set[f]))
    }

    /// Cellular chain complex over ℤ₂, degree `k` spanned by the `k`-cells.
    pub fn chain_complex(&self) -> ChainComplex {
        let Some(top) = self.top_dim() else { return ChainComplex::zero() };
        let dims: Vec<usize> = (0..=top).map(|k| self.cells_of_dim(k).len()).collect();
        let maps: Vec<(i32, BitMatrix)> = (1..=top)
            .map(|k| {
                let entries: Vec<(usize, usize)> = self
                    .cells_of_dim(k)
                    .iter()
                    .flat_map(|&c| self.facets[c].iter().map(move |&f| (self.position[f], self.position[c])))
                    .collect();
                (k as i32, BitMatrix::from_entries(dims[k - 1], dims[k], &entries))
            })
            .collect();
        ChainComplex::new(0, dims, maps).expect("cell incidences fit")
    }
}

/// The circle as two vertices `0`, `∞` joined by two edges `+`, `-`.
pub fn circle_two_cells() -> CellComplex {
    CellComplex::from_cells(vec![
        ("0".into(), 0, vec![]),
        ("inf".into(), 0, vec![]),
        ("+".into(), 1, vec![0, 1]),
        ("-".into(), 1, vec![0, 1]),
    ])
    .expect("circle model is regular")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_closure() {
        let t = CellComplex::from_simplices(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(t.len(), 7);
        let top = t.simplex(&[2, 0, 1]).unwrap();
        assert_eq!(t.faces(top).len(), 6);
        assert_eq!(t.cofaces(t.simplex(&[0]).unwrap()).len(), 3);
        assert_eq!(t.chain_complex().bettis(), vec![(0, 1), (1, 0), (2, 0)]);
    }

    #[test]
    fn circle_model() {
        let c = circle_two_cells();
        assert_eq!(c.chain_complex().bettis(), vec![(0, 1), (1, 1)]);
        let sq = c.product(&c);
        assert_eq!(sq.len(), 16);
        assert_eq!(sq.chain_complex().bettis(), vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn irregular_cells_rejected() {
        let loop_edge = vec![("v".into(), 0, vec![]), ("e".into(), 1, vec![0])];
        assert!(CellComplex::from_cells(loop_edge).is_err());
        let bad_dim = vec![("v".into(), 0, vec![]), ("f".into(), 2, vec![0])];
        assert!(CellComplex::from_cells(bad_dim).is_err());
    }

    #[test]
    fn open_and_closed_sets() {
        let c = circle_two_cells();
        let minus_vertex: Vec<bool> = (0..4).map(|i| i != 0).collect();
        assert!(c.is_open(&minus_vertex));
        assert!(!c.is_closed(&minus_vertex));
        let vertex: Vec<bool> = (0..4).map(|i| i == 0).collect();
        assert!(c.is_closed(&vertex));
    }
}
