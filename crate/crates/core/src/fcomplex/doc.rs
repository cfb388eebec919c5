//! JSON interchange for chain complexes and filtered complexes.
//!
//! ```json
//! { "degree_range": [0, 1],
//!   "dims": {"0": 2, "1": 2},
//!   "boundary": {"1": [[0,0],[1,0],[0,1],[1,1]]},
//!   "filtration": {"-1": {"1": ["11"]}, "0": {"0": ["10","01"], "1": ["10","01"]}} }
//! ```
//!
//! Boundary entries are `[row, col]` positions of ones in `∂_k: C_k → C_{k-1}`.
//! Bit strings are little-endian by basis index. A level missing a degree is
//! the zero subspace there.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactalg::{BitMatrix, BitSubspace, BitVec};

use super::chain::{ChainComplex, ChainMap};
use super::filtered::FilteredComplex;
use super::FcomplexError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_range: Option<[i32; 2]>,
    #[serde(default)]
    pub dims: BTreeMap<i32, usize>,
    #[serde(default)]
    pub boundary: BTreeMap<i32, Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<BTreeMap<i32, BTreeMap<i32, Vec<String>>>>,
}

pub type MatrixDoc = BTreeMap<i32, Vec<[usize; 2]>>;

pub fn matrix_entries(m: &BitMatrix) -> Vec<[usize; 2]> {
    m.entries().into_iter().map(|(r, c)| [r, c]).collect()
}

fn matrix_from_entries(rows: usize, cols: usize, entries: &[[usize; 2]], what: &str) -> Result<BitMatrix, FcomplexError> {
    for &[r, c] in entries {
        if r >= rows || c >= cols {
            return Err(FcomplexError::Parse(format!("{what}: entry [{r},{c}] outside {rows}x{cols}")));
        }
    }
    let pairs: Vec<(usize, usize)> = entries.iter().map(|&[r, c]| (r, c)).collect();
    Ok(BitMatrix::from_entries(rows, cols, &pairs))
}

impl ComplexDoc {
    pub fn to_complex(&self) -> Result<ChainComplex, FcomplexError> {
        let range = match self.degree_range {
            Some(r) => r,
            None => match (self.dims.keys().next(), self.dims.keys().next_back()) {
                (Some(&lo), Some(&hi)) => [lo, hi],
                _ => [0, -1],
            },
        };
        let [lo, hi] = range;
        if let Some(k) = self.dims.keys().find(|&&k| k < lo || k > hi) {
            return Err(FcomplexError::Parse(format!("dims: degree {k} outside degree_range [{lo}, {hi}]")));
        }
        let dims: Vec<usize> = (lo..=hi).map(|k| self.dims.get(&k).copied().unwrap_or(0)).collect();
        let dim = |k: i32| if k < lo || k > hi { 0 } else { dims[(k - lo) as usize] };
        let mut maps = Vec::new();
        for (&k, entries) in &self.boundary {
            maps.push((k, matrix_from_entries(dim(k - 1), dim(k), entries, &format!("boundary.{k}"))?));
        }
        ChainComplex::new(lo, dims, maps)
    }

    /// The filtered complex; without a `filtration` field, the single-jump filtration at 0.
    pub fn to_filtered(&self) -> Result<FilteredComplex, FcomplexError> {
        let complex = self.to_complex()?;
        let Some(filtration) = &self.filtration else {
            return Ok(FilteredComplex::trivial(complex, 0));
        };
        let (Some(&p_min), Some(&p_max)) = (filtration.keys().next(), filtration.keys().next_back()) else {
            return FilteredComplex::from_fn(complex, 0, -1, |_, _| unreachable!());
        };
        let mut parsed: BTreeMap<(i32, i32), BitSubspace> = BTreeMap::new();
        for (&p, by_degree) in filtration {
            for (&k, strings) in by_degree {
                let dim = complex.dim(k);
                let mut vectors = Vec::new();
                for s in strings {
                    let v = BitVec::parse_bit_string(s)
                        .ok_or_else(|| FcomplexError::Parse(format!("filtration.{p}.{k}: bad bit string {s:?}")))?;
                    if v.len() != dim {
                        return Err(FcomplexError::Parse(format!(
                            "filtration.{p}.{k}: bit string of length {} in a space of dimension {dim}",
                            v.len()
                        )));
                    }
                    vectors.push(v);
                }
                parsed.insert((p, k), BitSubspace::span(dim, vectors));
            }
        }
        let c = complex.clone();
        FilteredComplex::from_fn(complex, p_min, p_max, |p, k| {
            parsed.get(&(p, k)).cloned().unwrap_or_else(|| BitSubspace::zero(c.dim(k)))
        })
    }

    pub fn from_complex(c: &ChainComplex) -> Self {
        if c.is_empty() {
            return ComplexDoc::default();
        }
        ComplexDoc {
            degree_range: Some([c.k_min(), c.k_max()]),
            dims: c.degrees().map(|k| (k, c.dim(k))).collect(),
            boundary: c
                .degrees()
                .map(|k| (k, matrix_entries(&c.boundary(k))))
                .filter(|(_, e)| !e.is_empty())
                .collect(),
            filtration: None,
        }
    }

    pub fn from_filtered(fc: &FilteredComplex) -> Self {
        let c = fc.complex();
        let mut doc = Self::from_complex(c);
        let mut filtration = BTreeMap::new();
        if let Some((p_min, p_max)) = fc.p_range() {
            for p in p_min..=p_max {
                let by_degree: BTreeMap<i32, Vec<String>> = c
                    .degrees()
                    .map(|k| (k, fc.level(p, k)))
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(k, s)| (k, s.basis().iter().map(BitVec::to_bit_string).collect()))
                    .collect();
                filtration.insert(p, by_degree);
            }
        }
        doc.filtration = Some(filtration);
        doc
    }
}

pub fn chain_map_from_doc(
    doc: &MatrixDoc,
    source: &ChainComplex,
    target: &ChainComplex,
    what: &str,
) -> Result<ChainMap, FcomplexError> {
    let mut components = Vec::new();
    for (&k, entries) in doc {
        components.push((k, matrix_from_entries(target.dim(k), source.dim(k), entries, &format!("{what}.{k}"))?));
    }
    Ok(ChainMap { components })
}

pub fn chain_map_to_doc(map: &ChainMap) -> MatrixDoc {
    map.components
        .iter()
        .map(|(k, m)| (*k, matrix_entries(m)))
        .filter(|(_, e)| !e.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = r#"{"degree_range":[0,1],"dims":{"0":2,"1":2},"boundary":{"1":[[0,0],[1,0],[0,1],[1,1]]}}"#;

    #[test]
    fn parses_circle() {
        let doc: ComplexDoc = serde_json::from_str(CIRCLE).unwrap();
        let c = doc.to_complex().unwrap();
        assert_eq!(c.bettis(), vec![(0, 1), (1, 1)]);
        let fc = doc.to_filtered().unwrap();
        assert!(fc.validate().is_empty());
    }

    #[test]
    fn filtered_round_trip() {
        let doc: ComplexDoc = serde_json::from_str(CIRCLE).unwrap();
        let fc = super::super::canonical_filtration(&doc.to_complex().unwrap()).unwrap();
        let text = serde_json::to_string(&ComplexDoc::from_filtered(&fc)).unwrap();
        let back: ComplexDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_filtered().unwrap(), fc);
    }

    #[test]
    fn out_of_range_entries_rejected() {
        let bad = r#"{"degree_range":[0,1],"dims":{"0":1,"1":1},"boundary":{"1":[[3,0]]}}"#;
        let doc: ComplexDoc = serde_json::from_str(bad).unwrap();
        assert!(matches!(doc.to_complex(), Err(FcomplexError::Parse(_))));
        let bad = r#"{"dims":{"0":1},"filtration":{"0":{"0":["11"]}}}"#;
        let doc: ComplexDoc = serde_json::from_str(bad).unwrap();
        assert!(doc.to_filtered().is_err());
    }
}
