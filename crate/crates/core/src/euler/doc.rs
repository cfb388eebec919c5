//! JSON forms of complexes, constructible functions, chains and cell maps.
//!
//! A complex is either simplicial, `{"vertices": 3, "simplices": [[0,1],[1,2],[0,2]]}`
//! with faces closed automatically, or cellular,
//! `{"cells": [{"name": "v", "dim": 0}, {"name": "e", "dim": 1, "facets": ["v", "w"]}]}`.
//! Functions list `{"simplex": [..], "value": n}` or `{"cell": "name", "value": n}`
//! entries; unlisted cells are zero. Maps send cell names to cell names.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::calculus::{CellChain, CellMap, ConstructibleFunction};
use super::complex::CellComplex;
use super::EulerError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub facets: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellComplexDoc {
    Simplicial { vertices: usize, simplices: Vec<Vec<usize>> },
    Cellular { cells: Vec<CellDoc> },
}

impl CellComplexDoc {
    pub fn to_complex(&self) -> Result<CellComplex, EulerError> {
        match self {
            Self::Simplicial { vertices, simplices } => CellComplex::from_simplices(*vertices, simplices),
            Self::Cellular { cells } => {
                let index: BTreeMap<&str, usize> = cells.iter().enumerate().map(|(i, c)| (c.name.as_str(), i)).collect();
                let mut list = Vec::with_capacity(cells.len());
                for c in cells {
                    let facets = c
                        .facets
                        .iter()
                        .map(|f| {
                            index.get(f.as_str()).copied().ok_or_else(|| {
                                EulerError::Parse(format!("cell {:?} lists unknown facet {f:?}", c.name))
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    list.push((c.name.clone(), c.dim, facets));
                }
                CellComplex::from_cells(list)
            }
        }
    }

    /// Cellular form of any complex.
    pub fn from_complex(x: &CellComplex) -> Self {
        Self::Cellular {
            cells: (0..x.len())
                .map(|c| CellDoc {
                    name: x.label(c).to_string(),
                    dim: x.dim(c),
                    facets: x.facets(c).iter().map(|&f| x.label(f).to_string()).collect(),
                })
                .collect(),
        }
    }
}

pub fn parse_cell_complex(text: &str) -> Result<CellComplex, EulerError> {
    let doc: CellComplexDoc = serde_json::from_str(text).map_err(|e| EulerError::Parse(e.to_string()))?;
    doc.to_complex()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplex: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<String>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    /// Path of the complex document, resolved by the caller.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<String>,
    pub weights: Vec<WeightDoc>,
}

fn locate(x: &CellComplex, simplex: &Option<Vec<usize>>, cell: &Option<String>, at: &str) -> Result<usize, EulerError> {
    match (simplex, cell) {
        (Some(s), None) => x.simplex(s).ok_or_else(|| EulerError::Parse(format!("{at}: no simplex {s:?}"))),
        (None, Some(name)) => x.find(name).ok_or_else(|| EulerError::Parse(format!("{at}: no cell {name:?}"))),
        _ => Err(EulerError::Parse(format!("{at}: give exactly one of simplex or cell"))),
    }
}

impl FunctionDoc {
    pub fn to_function(&self, x: &CellComplex) -> Result<ConstructibleFunction, EulerError> {
        let mut f = ConstructibleFunction::zero(x);
        for (i, w) in self.weights.iter().enumerate() {
            let c = locate(x, &w.simplex, &w.cell, &format!("weights[{i}]"))?;
            f.values[c] = w.value;
        }
        Ok(f)
    }

    pub fn from_function(x: &CellComplex, f: &ConstructibleFunction) -> Self {
        let weights = f
            .support()
            .map(|c| WeightDoc { simplex: None, cell: Some(x.label(c).to_string()), value: f.get(c) })
            .collect();
        Self { complex: None, weights }
    }
}

pub fn parse_function(text: &str, x: &CellComplex) -> Result<ConstructibleFunction, EulerError> {
    let doc: FunctionDoc = serde_json::from_str(text).map_err(|e| EulerError::Parse(e.to_string()))?;
    doc.to_function(x)
}

/// `{"degree": k, "cells": ["name", …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDoc {
    pub degree: usize,
    pub cells: Vec<String>,
}

impl ChainDoc {
    pub fn to_chain(&self, x: &CellComplex) -> Result<CellChain, EulerError> {
        let cells = self
            .cells
            .iter()
            .map(|n| x.find(n).ok_or_else(|| EulerError::Parse(format!("chain: no cell {n:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        CellChain::new(x, self.degree, cells)
    }

    pub fn from_chain(x: &CellComplex, c: &CellChain) -> Self {
        Self { degree: c.k, cells: c.members.iter().map(|&m| x.label(m).to_string()).collect() }
    }
}

/// `{"assignment": {"source cell": "target cell", …}}`; every source cell must appear.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub assignment: BTreeMap<String, String>,
}

impl MapDoc {
    pub fn to_map(&self, source: &CellComplex, target: &CellComplex) -> Result<CellMap, EulerError> {
        let assignment = (0..source.len())
            .map(|c| {
                let name = source.label(c);
                let image = self
                    .assignment
                    .get(name)
                    .ok_or_else(|| EulerError::Parse(format!("assignment: cell {name:?} has no image")))?;
                target.find(image).ok_or_else(|| EulerError::Parse(format!("assignment: no target cell {image:?}")))
            })
            .collect::<Result<_, _>>()?;
        CellMap::new(source, target, assignment)
    }

    pub fn from_map(source: &CellComplex, target: &CellComplex, f: &CellMap) -> Self {
        Self {
            assignment: (0..source.len())
                .map(|c| (source.label(c).to_string(), target.label(f.assignment[c]).to_string()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::circle_two_cells;

    #[test]
    fn simplicial_and_cellular_forms_agree() {
        let s = parse_cell_complex(r#"{"vertices":3,"simplices":[[0,1],[1,2],[0,2]]}"#).unwrap();
        let text = serde_json::to_string(&CellComplexDoc::from_complex(&s)).unwrap();
        let c = parse_cell_complex(&text).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!((0..6).map(|i| c.label(i)).collect::<Vec<_>>(), (0..6).map(|i| s.label(i)).collect::<Vec<_>>());
    }

    #[test]
    fn function_by_simplex_and_cell() {
        let x = parse_cell_complex(r#"{"vertices":2,"simplices":[[0,1]]}"#).unwrap();
        let f = parse_function(r#"{"weights":[{"simplex":[1,0],"value":3},{"cell":"[0]","value":-1}]}"#, &x).unwrap();
        assert_eq!(f.get(x.simplex(&[0, 1]).unwrap()), 3);
        assert_eq!(f.get(x.simplex(&[0]).unwrap()), -1);
        assert!(parse_function(r#"{"weights":[{"value":3}]}"#, &x).is_err());
    }

    #[test]
    fn map_round_trip() {
        let c = circle_two_cells();
        let f = CellMap::identity(&c);
        let doc = MapDoc::from_map(&c, &c, &f);
        assert_eq!(doc.to_map(&c, &c).unwrap(), f);
        let mut broken = doc.clone();
        broken.assignment.remove("+");
        assert!(broken.to_map(&c, &c).is_err());
    }

    #[test]
    fn unknown_facet_is_a_parse_error() {
        let err = parse_cell_complex(r#"{"cells":[{"name":"e","dim":1,"facets":["v"]}]}"#).unwrap_err();
        assert!(matches!(err, EulerError::Parse(_)));
    }
}
