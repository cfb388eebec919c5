use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::exactalg::{BitMatrix, BitSubspace, BitVec};

use super::chain::ChainComplex;
use super::filtered::FilteredComplex;
use super::FcomplexError;

/// A filtered complex written in a basis adapted to the filtration: basis
/// vector `i` of degree `k` has filtration degree `weights[k][i]` and
/// `F_p K_k` is spanned by the basis vectors of degree at most `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedComplex {
    complex: ChainComplex,
    weights: Vec<Vec<i32>>,
}

impl AdaptedComplex {
    pub fn new(complex: ChainComplex, weights: Vec<Vec<i32>>) -> Result<Self, FcomplexError> {
        if weights.len() != complex.degrees().count() {
            return Err(FcomplexError::Shape("one weight list per degree expected".into()));
        }
        for (k, w) in complex.degrees().zip(&weights) {
            if w.len() != complex.dim(k) {
                return Err(FcomplexError::Shape(format!("degree {k} has {} weights for {} basis vectors", w.len(), complex.dim(k))));
            }
        }
        let out = Self { complex, weights };
        for k in out.complex.degrees() {
            let d = out.complex.boundary(k);
            for (r, c) in d.entries() {
                if out.weight(k - 1, r) > out.weight(k, c) {
                    return Err(FcomplexError::Invalid(vec![super::Diagnostic::NotSubcomplex {
                        p: out.weight(k, c),
                        degree: k,
                    }]));
                }
            }
        }
        Ok(out)
    }

    fn weight(&self, k: i32, i: usize) -> i32 {
        self.weights[(k - self.complex.k_min()) as usize][i]
    }

    fn weights_in(&self, k: i32) -> &[i32] {
        let i = k - self.complex.k_min();
        if i < 0 || i as usize >= self.weights.len() {
            &[]
        } else {
            &self.weights[i as usize]
        }
    }

    /// Adapted basis by extending bases of successive levels, and the
    /// boundary conjugated into it.
    pub fn from_filtered(fc: &FilteredComplex) -> Result<Self, FcomplexError> {
        fc.ensure_valid()?;
        let c = fc.complex();
        let Some((p_min, p_max)) = fc.p_range() else {
            return Self::new(c.clone(), c.degrees().map(|_| Vec::new()).collect());
        };
        let mut change = Vec::new();
        let mut weights = Vec::new();
        for k in c.degrees() {
            let mut span = BitSubspace::zero(c.dim(k));
            let mut cols = Vec::new();
            let mut w = Vec::new();
            for p in p_min..=p_max {
                for v in fc.level(p, k).basis() {
                    if span.insert(v.clone()) {
                        cols.push(v.clone());
                        w.push(p);
                    }
                }
            }
            change.push(BitMatrix::from_columns(c.dim(k), &cols));
            weights.push(w);
        }
        let inverses: Vec<BitMatrix> = change.iter().map(|a| a.inverse().expect("adapted basis spans")).collect();
        let maps: Vec<(i32, BitMatrix)> = c
            .degrees()
            .skip(1)
            .map(|k| {
                let i = (k - c.k_min()) as usize;
                (k, inverses[i - 1].mul(&c.boundary(k)).mul(&change[i]))
            })
            .collect();
        let dims = c.degrees().map(|k| c.dim(k)).collect();
        Self::new(ChainComplex::new(c.k_min(), dims, maps)?, weights)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn p_range(&self) -> Option<(i32, i32)> {
        let all = self.weights.iter().flatten();
        Some((*all.clone().min()?, *all.max()?))
    }

    /// The same filtration with levels as coordinate subspaces.
    pub fn to_filtered(&self) -> FilteredComplex {
        let c = self.complex.clone();
        let (p_min, p_max) = self.p_range().unwrap_or((0, -1));
        FilteredComplex::from_fn(c, p_min, p_max, |p, k| {
            let w = self.weights_in(k);
            BitSubspace::coordinate(w.len(), (0..w.len()).filter(|&i| w[i] <= p))
        })
        .expect("coordinate levels fit")
    }

    /// `dim E¹_{p,q} = dim H_{p+q}(F_p / F_{p-1})`, from ranks of the diagonal
    /// blocks of the boundary.
    pub fn first_page_dims(&self) -> BTreeMap<(i32, i32), usize> {
        let Some((p_min, p_max)) = self.p_range() else { return BTreeMap::new() };
        let c = &self.complex;
        let block_rank = |k: i32, p: i32| -> usize {
            let cols: Vec<usize> = (0..c.dim(k)).filter(|&i| self.weights_in(k)[i] == p).collect();
            let rows: Vec<usize> = (0..c.dim(k - 1)).filter(|&i| self.weights_in(k - 1)[i] == p).collect();
            if cols.is_empty() || rows.is_empty() {
                return 0;
            }
            let d = c.boundary(k);
            let vectors: Vec<BitVec> = cols.iter().map(|&j| BitVec::from_bools(rows.iter().map(|&r| d.get(r, j)))).collect();
            BitSubspace::span(rows.len(), vectors).dim()
        };
        let keys: Vec<(i32, i32)> = (p_min..=p_max).flat_map(|p| c.degrees().map(move |k| (p, k))).collect();
        let ranks: BTreeMap<(i32, i32), usize> = keys
            .par_iter()
            .map(|&(p, k)| ((p, k), block_rank(k, p)))
            .collect();
        let mut out = BTreeMap::new();
        for &(p, k) in &keys {
            let size = self.weights_in(k).iter().filter(|&&w| w == p).count();
            let d = size - ranks[&(p, k)] - ranks.get(&(p, k + 1)).copied().unwrap_or(0);
            if d > 0 {
                out.insert((p, k - p), d);
            }
        }
        out
    }
}
