use crate::exactalg::{BitMatrix, BitSubspace, BitVec};

use super::FcomplexError;

/// A bounded chain complex of GF(2) vector spaces, `∂_k: C_k → C_{k-1}`.
///
/// Degrees run over `k_min ..= k_min + dims.len() - 1`; every other degree
/// is zero. `boundary[i]` is `∂` out of degree `k_min + i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainComplex {
    k_min: i32,
    dims: Vec<usize>,
    boundary: Vec<BitMatrix>,
}

impl ChainComplex {
    pub fn zero() -> Self {
        Self {
            k_min: 0,
            dims: Vec::new(),
            boundary: Vec::new(),
        }
    }

    /// `boundaries` lists `(k, ∂_k)`; degrees not listed get a zero map.
    pub fn new(
        k_min: i32,
        dims: Vec<usize>,
        boundaries: impl IntoIterator<Item = (i32, BitMatrix)>,
    ) -> Result<Self, FcomplexError> {
        let mut boundary: Vec<BitMatrix> = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| BitMatrix::zeros(if i == 0 { 0 } else { dims[i - 1] }, d))
            .collect();
        for (k, m) in boundaries {
            let i = k - k_min;
            if i < 0 || i as usize >= dims.len() {
                if m.is_zero() {
                    continue;
                }
                return Err(FcomplexError::Shape(format!("boundary given in degree {k} outside the degree range")));
            }
            let i = i as usize;
            let expected = (boundary[i].rows(), boundary[i].cols());
            if (m.rows(), m.cols()) != expected {
                return Err(FcomplexError::Shape(format!(
                    "boundary in degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                )));
            }
            boundary[i] = m;
        }
        Ok(Self { k_min, dims, boundary })
    }

    /// A complex with zero differentials.
    pub fn graded(k_min: i32, dims: Vec<usize>) -> Self {
        Self::new(k_min, dims, []).expect("zero maps always fit")
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn k_min(&self) -> i32 {
        self.k_min
    }

    pub fn k_max(&self) -> i32 {
        self.k_min + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + Clone {
        self.k_min..=self.k_max()
    }

    fn index(&self, k: i32) -> Option<usize> {
        let i = k - self.k_min;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    pub fn dim(&self, k: i32) -> usize {
        self.index(k).map_or(0, |i| self.dims[i])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `∂_k`, a `dim(k-1) × dim(k)` matrix (possibly empty).
    pub fn boundary(&self, k: i32) -> BitMatrix {
        match self.index(k) {
            Some(i) => self.boundary[i].clone(),
            None => BitMatrix::zeros(self.dim(k - 1), 0),
        }
    }

    pub fn boundary_ref(&self, k: i32) -> Option<&BitMatrix> {
        self.index(k).map(|i| &self.boundary[i])
    }

    pub fn apply_boundary(&self, k: i32, x: &BitVec) -> BitVec {
        match self.index(k) {
            Some(i) => self.boundary[i].apply(x),
            None => BitVec::zeros(self.dim(k - 1)),
        }
    }

    pub fn cycles(&self, k: i32) -> BitSubspace {
        self.boundary(k).kernel()
    }

    pub fn boundaries(&self, k: i32) -> BitSubspace {
        match self.index(k + 1) {
            Some(i) => self.boundary[i].image(),
            None => BitSubspace::zero(self.dim(k)),
        }
    }

    pub fn betti(&self, k: i32) -> usize {
        self.cycles(k).dim() - self.boundaries(k).dim()
    }

    /// `(k, dim H_k)` for every degree in range.
    pub fn bettis(&self) -> Vec<(i32, usize)> {
        self.degrees().map(|k| (k, self.betti(k))).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { self.dim(k) as i64 } else { -(self.dim(k) as i64) })
            .sum()
    }

    /// Degrees where `∂_{k-1} ∘ ∂_k ≠ 0`.
    pub fn square_violations(&self) -> Vec<i32> {
        self.degrees()
            .filter(|&k| self.index(k - 1).is_some())
            .filter(|&k| !self.boundary(k - 1).mul(&self.boundary(k)).is_zero())
            .collect()
    }

    /// Same complex re-indexed so that degree `k` becomes `k + shift`.
    pub fn shifted(&self, shift: i32) -> ChainComplex {
        ChainComplex {
            k_min: self.k_min + shift,
            dims: self.dims.clone(),
            boundary: self.boundary.clone(),
        }
    }

    /// Applies `new_basis_k` in each degree: the returned complex has
    /// `∂'_k = A_{k-1} ∂_k A_k⁻¹`. Every `A_k` must be invertible.
    pub fn conjugated(&self, change: &[BitMatrix]) -> ChainComplex {
        assert_eq!(change.len(), self.dims.len());
        let inverses: Vec<BitMatrix> = change.iter().map(|a| a.inverse().expect("change of basis must be invertible")).collect();
        let maps = self.degrees().skip(1).map(|k| {
            let i = (k - self.k_min) as usize;
            (k, change[i - 1].mul(&self.boundary[i]).mul(&inverses[i]))
        });
        ChainComplex::new(self.k_min, self.dims.clone(), maps.collect::<Vec<_>>()).expect("shapes preserved")
    }
}

/// A degree-preserving linear map between two complexes, one matrix per degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    /// `(k, f_k: A_k → B_k)`; unlisted degrees are zero.
    pub components: Vec<(i32, BitMatrix)>,
}

impl ChainMap {
    pub fn zero() -> Self {
        Self { components: Vec::new() }
    }

    pub fn component(&self, k: i32, source: &ChainComplex, target: &ChainComplex) -> BitMatrix {
        self.components
            .iter()
            .find(|(d, _)| *d == k)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| BitMatrix::zeros(target.dim(k), source.dim(k)))
    }

    /// Degrees where the shapes disagree with the complexes or `∂f ≠ f∂`.
    pub fn violations(&self, source: &ChainComplex, target: &ChainComplex) -> Vec<String> {
        let mut out = Vec::new();
        for (k, m) in &self.components {
            if m.rows() != target.dim(*k) || m.cols() != source.dim(*k) {
                out.push(format!("map component in degree {k} has shape {}x{}, expected {}x{}", m.rows(), m.cols(), target.dim(*k), source.dim(*k)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let lo = source.k_min().min(target.k_min());
        let hi = source.k_max().max(target.k_max());
        for k in lo..=hi {
            let f_k = self.component(k, source, target);
            let f_km1 = self.component(k - 1, source, target);
            let left = target.boundary(k).try_mul(&f_k);
            let right = f_km1.try_mul(&source.boundary(k));
            match (left, right) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(_), Ok(_)) => out.push(format!("map does not commute with the boundary in degree {k}")),
                _ => {}
            }
        }
        out
    }

    pub fn compose(&self, after: &ChainMap, a: &ChainComplex, b: &ChainComplex, c: &ChainComplex) -> ChainMap {
        let lo = a.k_min().min(c.k_min());
        let hi = a.k_max().max(c.k_max());
        ChainMap {
            components: (lo..=hi)
                .filter(|&k| a.dim(k) > 0 && c.dim(k) > 0)
                .map(|k| (k, after.component(k, b, c).mul(&self.component(k, a, b))))
                .collect(),
        }
    }

    /// Rank of the induced map `H_k(A) → H_k(B)`.
    pub fn induced_rank(&self, k: i32, source: &ChainComplex, target: &ChainComplex) -> usize {
        let f = self.component(k, source, target);
        let image = source.cycles(k).image_under(&f).expect("shape checked");
        let b = target.boundaries(k);
        image.sum(&b).expect("same ambient").dim() - b.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        let d1 = BitMatrix::from_entries(2, 2, &[(0, 0), (1, 0), (0, 1), (1, 1)]);
        ChainComplex::new(0, vec![2, 2], [(1, d1)]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        assert_eq!(c.bettis(), vec![(0, 1), (1, 1)]);
        assert_eq!(c.euler_characteristic(), 0);
        assert!(c.square_violations().is_empty());
    }

    #[test]
    fn shape_errors_are_reported() {
        let bad = BitMatrix::zeros(3, 2);
        assert!(ChainComplex::new(0, vec![2, 2], [(1, bad)]).is_err());
        assert!(ChainComplex::new(0, vec![2], [(5, BitMatrix::identity(1))]).is_err());
    }

    #[test]
    fn conjugation_preserves_homology() {
        let c = circle();
        let a0 = BitMatrix::from_entries(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        let a1 = BitMatrix::from_entries(2, 2, &[(0, 1), (1, 0)]);
        let d = c.conjugated(&[a0, a1]);
        assert_eq!(d.bettis(), c.bettis());
        assert!(d.square_violations().is_empty());
    }

    #[test]
    fn identity_map_is_chain_map() {
        let c = circle();
        let id = ChainMap { components: vec![(0, BitMatrix::identity(2)), (1, BitMatrix::identity(2))] };
        assert!(id.violations(&c, &c).is_empty());
        assert_eq!(id.induced_rank(1, &c, &c), 1);
        let bad = ChainMap { components: vec![(1, BitMatrix::identity(2))] };
        assert!(!bad.violations(&c, &c).is_empty());
    }
}
