//! Spectral-sequence pages of a filtered complex by subspace arithmetic.
//!
//! With `n = p + q`,
//!
//! ```text
//! Z^r_{p,q} = F_p K_n ∩ ∂⁻¹(F_{p-r} K_{n-1})
//! B^r_{p,q} = Z^{r-1}_{p-1,q+1} + ∂ Z^{r-1}_{p+r-1,q-r+2}
//! E^r_{p,q} = Z^r_{p,q} / B^r_{p,q}
//! ```
//!
//! and `d^r: E^r_{p,q} → E^r_{p-r,q+r-1}` is induced by `∂`. For a filtration
//! supported on `[p_min, p_max]` the page `r = p_max - p_min + 1` is already
//! `E^∞`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::exactalg::{BitMatrix, BitSubspace, BitVec, QuotientBasis};

use super::filtered::FilteredComplex;
use super::FcomplexError;

/// Which coordinates a [`PageSet`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Indexing {
    /// Pages of the filtration as given, `E^r_{p,q}` with `r ≥ 0`.
    Weight,
    /// First-quadrant coordinates `p' = 2p + q`, `q' = -p`, `r' = r + 1`.
    FirstQuadrant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry {
    pub dim: usize,
    /// Representatives in `K_{p+q}` of the canonical quotient basis.
    pub representatives: Vec<BitVec>,
}

/// One page: nonzero entries and the differentials between them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Page {
    pub entries: BTreeMap<(i32, i32), PageEntry>,
    /// `d^r` out of `(p, q)`, as a `dim(target) × dim(source)` matrix in the quotient bases.
    pub differentials: BTreeMap<(i32, i32), BitMatrix>,
}

impl Page {
    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.entries.get(&(p, q)).map_or(0, |e| e.dim)
    }

    pub fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        self.entries.iter().map(|(&k, e)| (k, e.dim)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageSet {
    pub indexing: Indexing,
    pub pages: BTreeMap<i32, Page>,
    /// Pages are constant from this index on.
    pub stabilization_index: i32,
    pub infinity: BTreeMap<(i32, i32), usize>,
}

/// Target coordinates of `d^r` out of `(p, q)`; the same in both indexings.
pub fn differential_target(r: i32, p: i32, q: i32) -> (i32, i32) {
    (p - r, q + r - 1)
}

impl PageSet {
    pub fn empty(indexing: Indexing) -> Self {
        Self {
            indexing,
            pages: BTreeMap::new(),
            stabilization_index: 0,
            infinity: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pages.is_empty()
    }

    pub fn first_page(&self) -> Option<i32> {
        self.pages.keys().next().copied()
    }

    pub fn last_page(&self) -> Option<i32> {
        self.pages.keys().next_back().copied()
    }

    /// The page at `r`, extended constantly past the last computed page.
    pub fn page(&self, r: i32) -> Option<&Page> {
        let last = self.last_page()?;
        self.pages.get(&r.min(last))
    }

    pub fn dim(&self, r: i32, p: i32, q: i32) -> usize {
        self.page(r).map_or(0, |pg| pg.dim(p, q))
    }

    pub fn infinity_dim(&self, p: i32, q: i32) -> usize {
        self.infinity.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Least `r ≥ from` whose page agrees with `E^∞` dimension-wise.
    pub fn collapse_page(&self, from: i32) -> Option<i32> {
        self.pages
            .iter()
            .filter(|(&r, _)| r >= from)
            .find(|(_, pg)| pg.dims() == self.infinity)
            .map(|(&r, _)| r)
    }
}

/// Spectral sequence of a filtered complex, pages `r = 0 ..= r∞`.
pub fn pages(fc: &FilteredComplex) -> Result<PageSet, FcomplexError> {
    fc.ensure_valid()?;
    Ok(compute_pages(fc))
}

pub(crate) fn compute_pages(fc: &FilteredComplex) -> PageSet {
    let c = fc.complex();
    let Some((p_min, p_max)) = fc.p_range().filter(|_| c.total_dim() > 0) else {
        return PageSet::empty(Indexing::Weight);
    };
    let r_inf = p_max - p_min + 1;
    let degrees: Vec<i32> = c.degrees().collect();

    let z_space = |r: i32, p: i32, n: i32| -> BitSubspace {
        let f = fc.level(p, n);
        if f.is_zero() {
            return f;
        }
        let target = fc.level(p - r, n - 1);
        if target.is_full() {
            return f;
        }
        let pre = BitSubspace::preimage(&c.boundary(n), &target).expect("boundary shape");
        f.intersect(&pre).expect("same ambient")
    };
    // Z^r for every r ∈ [-1, r∞] and p ∈ [p_min-1, p_max+r∞]
    let mut z: HashMap<(i32, i32, i32), BitSubspace> = HashMap::new();
    let keys: Vec<(i32, i32, i32)> = (-1..=r_inf)
        .flat_map(|r| {
            let degrees = &degrees;
            (p_min - 1..=p_max + r_inf).flat_map(move |p| degrees.iter().map(move |&n| (r, p, n)))
        })
        .collect();
    z.extend(keys.into_par_iter().map(|key| (key, z_space(key.0, key.1, key.2))).collect::<Vec<_>>());
    let z_at = |r: i32, p: i32, n: i32| -> BitSubspace {
        z.get(&(r, p, n)).cloned().unwrap_or_else(|| z_space(r, p, n))
    };

    let mut page_map = BTreeMap::new();
    for r in 0..=r_inf {
        let cells: Vec<(i32, i32)> = (p_min..=p_max).flat_map(|p| c.degrees().map(move |n| (p, n))).collect();
        let quotients: HashMap<(i32, i32), QuotientBasis> = cells
            .par_iter()
            .map(|&(p, n)| {
                let zr = z_at(r, p, n);
                let lower = z_at(r - 1, p - 1, n);
                let from_above = z_at(r - 1, p + r - 1, n + 1)
                    .image_under(&c.boundary(n + 1))
                    .expect("boundary shape");
                let b = lower.sum(&from_above).expect("same ambient");
                ((p, n), QuotientBasis::new(&zr, &b))
            })
            .collect();
        let mut page = Page::default();
        for (&(p, n), qb) in &quotients {
            if qb.dim() == 0 {
                continue;
            }
            page.entries.insert(
                (p, n - p),
                PageEntry { dim: qb.dim(), representatives: qb.representatives().to_vec() },
            );
        }
        for (&(p, n), qb) in &quotients {
            if qb.dim() == 0 {
                continue;
            }
            let Some(target) = quotients.get(&(p - r, n - 1)).filter(|t| t.dim() > 0) else {
                continue;
            };
            let cols: Vec<BitVec> = qb
                .representatives()
                .iter()
                .map(|x| target.coords(&c.apply_boundary(n, x)))
                .collect();
            page.differentials.insert((p, n - p), BitMatrix::from_columns(target.dim(), &cols));
        }
        page_map.insert(r, page);
    }

    let mut infinity = BTreeMap::new();
    for p in p_min..=p_max {
        for n in c.degrees() {
            let cycles = c.cycles(n);
            let zinf = fc.level(p, n).intersect(&cycles).expect("same ambient");
            let lower = fc.level(p - 1, n).intersect(&cycles).expect("same ambient");
            let bounded = fc.level(p, n).intersect(&c.boundaries(n)).expect("same ambient");
            let binf = lower.sum(&bounded).expect("same ambient");
            let dim = zinf.dim() - binf.dim();
            if dim > 0 {
                infinity.insert((p, n - p), dim);
            }
        }
    }

    PageSet {
        indexing: Indexing::Weight,
        pages: page_map,
        stabilization_index: r_inf,
        infinity,
    }
}

/// First-quadrant reindexing `p' = 2p + q`, `q' = -p`, `r' = r + 1`.
pub fn reindex(ps: &PageSet) -> PageSet {
    if ps.indexing == Indexing::FirstQuadrant {
        return ps.clone();
    }
    let map = |(p, q): (i32, i32)| (2 * p + q, -p);
    PageSet {
        indexing: Indexing::FirstQuadrant,
        pages: ps
            .pages
            .iter()
            .map(|(&r, pg)| {
                let page = Page {
                    entries: pg.entries.iter().map(|(&k, e)| (map(k), e.clone())).collect(),
                    differentials: pg.differentials.iter().map(|(&k, m)| (map(k), m.clone())).collect(),
                };
                (r + 1, page)
            })
            .collect(),
        stabilization_index: ps.stabilization_index + 1,
        infinity: ps.infinity.iter().map(|(&k, &d)| (map(k), d)).collect(),
    }
}

/// Inverse of [`reindex`] on coordinates: `(p', q') ↦ (-q', p' + 2q')`.
pub fn weight_coords(p: i32, q: i32) -> (i32, i32) {
    (-q, p + 2 * q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcomplex::chain::ChainComplex;
    use crate::fcomplex::filtered::canonical_filtration;

    fn circle() -> ChainComplex {
        let d1 = BitMatrix::from_entries(2, 2, &[(0, 0), (1, 0), (0, 1), (1, 1)]);
        ChainComplex::new(0, vec![2, 2], [(1, d1)]).unwrap()
    }

    #[test]
    fn trivial_filtration_gives_homology_in_one_column() {
        let fc = FilteredComplex::trivial(circle(), 3);
        let ps = pages(&fc).unwrap();
        assert_eq!(ps.stabilization_index, 1);
        let e1 = ps.page(1).unwrap().dims();
        assert_eq!(e1, BTreeMap::from([((3, -3), 1), ((3, -2), 1)]));
        assert_eq!(ps.infinity, e1);
    }

    #[test]
    fn canonical_circle_e1() {
        let ps = pages(&canonical_filtration(&circle()).unwrap()).unwrap();
        assert_eq!(ps.page(1).unwrap().dims(), BTreeMap::from([((0, 0), 1), ((-1, 2), 1)]));
        assert_eq!(ps.collapse_page(1), Some(1));
    }

    #[test]
    fn reindex_moves_e1_entry() {
        let ps = pages(&canonical_filtration(&circle()).unwrap()).unwrap();
        let tilde = reindex(&ps);
        assert_eq!(tilde.dim(2, 0, 1), 1);
        assert_eq!(tilde.dim(2, 0, 0), 1);
        for (&(p, q), _) in &tilde.infinity {
            let (wp, wq) = weight_coords(p, q);
            assert_eq!(ps.infinity_dim(wp, wq), tilde.infinity_dim(p, q));
        }
        assert!(reindex(&PageSet::empty(Indexing::Weight)).is_empty());
    }

    #[test]
    fn empty_inputs_give_empty_pages() {
        assert!(pages(&FilteredComplex::zero()).unwrap().is_empty());
    }

    #[test]
    fn nontrivial_differential() {
        // C_1 = <e>, C_0 = <v>, ∂e = v, with v in F_0 and e in F_1 only:
        // E^1 has one class at (1,0) and one at (0,0), killed by d^1.
        let c = ChainComplex::new(0, vec![1, 1], [(1, BitMatrix::identity(1))]).unwrap();
        let fc = FilteredComplex::from_fn(c, 0, 1, |p, k| {
            if p == 0 && k == 1 { BitSubspace::zero(1) } else { BitSubspace::full(1) }
        })
        .unwrap();
        let ps = pages(&fc).unwrap();
        assert_eq!(ps.page(1).unwrap().dims(), BTreeMap::from([((0, 0), 1), ((1, 0), 1)]));
        assert_eq!(ps.page(1).unwrap().differentials[&(1, 0)], BitMatrix::identity(1));
        assert!(ps.page(2).unwrap().entries.is_empty());
        assert!(ps.infinity.is_empty());
    }
}
