use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactalg::{BitMatrix, BitSubspace};
use crate::fcomplex::doc::{chain_map_from_doc, chain_map_to_doc, ComplexDoc, MatrixDoc};
use crate::fcomplex::{
    canonical_filtration, deligne_shift, pages, ChainComplex, ChainMap, FilteredComplex, PageSet,
};

use super::CubicalError;

/// Levels `X⁽⁰⁾, …, X⁽ⁿ⁾` with face maps `d_j: X⁽ⁱ⁾ → X⁽ⁱ⁻¹⁾`, `0 ≤ j ≤ i`.
#[derive(Clone, Debug)]
pub struct Hyperresolution {
    levels: Vec<ChainComplex>,
    /// `faces[i - 1][j]` is `d_j` out of level `i`.
    faces: Vec<Vec<ChainMap>>,
}

impl Hyperresolution {
    /// `faces` is keyed by `(level, face_index)`; missing faces are zero.
    pub fn new(levels: Vec<ChainComplex>, faces: BTreeMap<(usize, usize), ChainMap>) -> Result<Self, CubicalError> {
        let mut issues = Vec::new();
        for (i, c) in levels.iter().enumerate() {
            if !c.square_violations().is_empty() {
                issues.push(format!("level {i}: boundary does not square to zero"));
            }
        }
        for &(i, j) in faces.keys() {
            if i == 0 || i >= levels.len() || j > i {
                issues.push(format!("face d_{j} out of level {i} does not exist"));
            }
        }
        if !issues.is_empty() {
            return Err(CubicalError::Hyperresolution(issues));
        }
        let faces: Vec<Vec<ChainMap>> = (1..levels.len())
            .map(|i| (0..=i).map(|j| faces.get(&(i, j)).cloned().unwrap_or_else(ChainMap::zero)).collect())
            .collect();
        let h = Self { levels, faces };
        let issues = h.violations();
        if issues.is_empty() {
            Ok(h)
        } else {
            Err(CubicalError::Hyperresolution(issues))
        }
    }

    pub fn levels(&self) -> &[ChainComplex] {
        &self.levels
    }

    pub fn face(&self, level: usize, j: usize) -> &ChainMap {
        &self.faces[level - 1][j]
    }

    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 1..self.levels.len() {
            for j in 0..=i {
                for v in self.face(i, j).violations(&self.levels[i], &self.levels[i - 1]) {
                    out.push(format!("d_{j} out of level {i}: {v}"));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        // d_a d_b = d_{b-1} d_a for a < b, as maps from level i to level i - 2
        for i in 2..self.levels.len() {
            let (x, y, z) = (&self.levels[i], &self.levels[i - 1], &self.levels[i - 2]);
            for b in 1..=i {
                for a in 0..b {
                    let left = self.face(i, b).compose(self.face(i - 1, a), x, y, z);
                    let right = self.face(i, a).compose(self.face(i - 1, b - 1), x, y, z);
                    let lo = x.k_min().min(z.k_min());
                    let hi = x.k_max().max(z.k_max());
                    if (lo..=hi).any(|k| left.component(k, x, z) != right.component(k, x, z)) {
                        out.push(format!("simplicial identity d_{a} d_{b} = d_{} d_{a} fails out of level {i}", b - 1));
                    }
                }
            }
        }
        out
    }

    fn degree_span(&self) -> Option<(i32, i32)> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(i, c)| (c.k_min() + i as i32, c.k_max() + i as i32))
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }
}

/// Total complex `C_k = ⊕_i C_{k-i} X⁽ⁱ⁾` with `∂ = ∂'' + Σ_j d_j`, filtered by
/// `F̂_p C_k = ⊕_{i ≤ p} C_{k-i} X⁽ⁱ⁾`. Over ℤ₂ the usual signs disappear.
pub fn skeleton_filtration(h: &Hyperresolution) -> Result<FilteredComplex, CubicalError> {
    let Some((lo, hi)) = h.degree_span() else {
        return Ok(FilteredComplex::zero());
    };
    let levels = &h.levels;
    let offsets = |k: i32| -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::new();
        for (i, c) in levels.iter().enumerate() {
            out.push(acc);
            acc += c.dim(k - i as i32);
        }
        out.push(acc);
        out
    };
    let table: BTreeMap<i32, Vec<usize>> = (lo - 1..=hi).map(|k| (k, offsets(k))).collect();
    let total = |k: i32| *table[&k].last().expect("nonempty");
    let dims: Vec<usize> = (lo..=hi).map(total).collect();
    let mut maps = Vec::new();
    for k in lo + 1..=hi {
        let mut m = BitMatrix::zeros(total(k - 1), total(k));
        for (i, c) in levels.iter().enumerate() {
            let j = k - i as i32;
            if c.dim(j) == 0 {
                continue;
            }
            m.add_block(table[&(k - 1)][i], table[&k][i], &c.boundary(j));
            if i > 0 {
                let below = &levels[i - 1];
                for face in &h.faces[i - 1] {
                    m.add_block(table[&(k - 1)][i - 1], table[&k][i], &face.component(j, c, below));
                }
            }
        }
        maps.push((k, m));
    }
    let complex = ChainComplex::new(lo, dims, maps)?;
    let top = levels.len() as i32 - 1;
    let fc = FilteredComplex::from_fn(complex, 0, top, |p, k| {
        let end = table[&k][(p + 1) as usize];
        BitSubspace::coordinate(total(k), 0..end)
    })?;
    Ok(fc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneReport {
    /// `(r, p, q, dim E^r_{p,q}(Dec F̂), dim Ê^{r+1}_{2p+q,-p})` where they differ.
    pub mismatches: Vec<(i32, i32, i32, usize, usize)>,
    /// Pages `r ≥ 1` compared.
    pub pages_checked: Vec<i32>,
    pub skeleton: PageSet,
    pub shifted: PageSet,
}

impl DeligneReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the pages of the Deligne shift of `F̂` with those of `F̂` itself
/// through `E^r_{p,q} ≅ Ê^{r+1}_{2p+q,-p}`, for every `r ≥ 1` up to the
/// later of the two stabilizations.
pub fn hyperres_weight_compare(h: &Hyperresolution) -> Result<DeligneReport, CubicalError> {
    let f = skeleton_filtration(h)?;
    let skeleton = pages(&f)?;
    let shifted = pages(&deligne_shift(&f)?)?;
    Ok(compare_shift(skeleton, shifted))
}

pub(crate) fn compare_shift(skeleton: PageSet, shifted: PageSet) -> DeligneReport {
    let last = shifted.last_page().unwrap_or(1).max(skeleton.last_page().unwrap_or(1) - 1).max(1);
    let mut mismatches = Vec::new();
    let pages_checked: Vec<i32> = (1..=last).collect();
    for &r in &pages_checked {
        let ours = shifted.page(r).map(|p| p.dims()).unwrap_or_default();
        let theirs = skeleton.page(r + 1).map(|p| p.dims()).unwrap_or_default();
        let mut keys: Vec<(i32, i32)> = ours.keys().copied().collect();
        keys.extend(theirs.keys().map(|&(a, b)| (-b, a + 2 * b)));
        keys.sort_unstable();
        keys.dedup();
        for (p, q) in keys {
            let x = ours.get(&(p, q)).copied().unwrap_or(0);
            let y = theirs.get(&(2 * p + q, -p)).copied().unwrap_or(0);
            if x != y {
                mismatches.push((r, p, q, x, y));
            }
        }
    }
    DeligneReport { mismatches, pages_checked, skeleton, shifted }
}

/// Single-level special case: the skeleton filtration has one jump and its
/// Deligne shift is the canonical filtration.
pub fn single_level_shift_is_canonical(c: &ChainComplex) -> Result<bool, CubicalError> {
    let h = Hyperresolution::new(vec![c.clone()], BTreeMap::new())?;
    let dec = deligne_shift(&skeleton_filtration(&h)?)?;
    let can = canonical_filtration(c)?;
    let range = |fc: &FilteredComplex| fc.p_range().unwrap_or((0, -1));
    let (lo, hi) = (range(&dec).0.min(range(&can).0), range(&dec).1.max(range(&can).1));
    Ok(c.degrees().all(|k| (lo - 1..=hi + 1).all(|p| dec.level(p, k) == can.level(p, k))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub level: usize,
    pub face_index: usize,
    pub matrices: MatrixDoc,
}

/// `{ "levels": [complex, …], "faces": [{"level": 1, "face_index": 0, "matrices": {…}}] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperresDoc {
    pub levels: Vec<ComplexDoc>,
    #[serde(default)]
    pub faces: Vec<FaceDoc>,
}

impl HyperresDoc {
    pub fn to_hyperresolution(&self) -> Result<Hyperresolution, CubicalError> {
        let levels: Vec<ChainComplex> = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, d)| d.to_complex().map_err(|e| CubicalError::Parse(format!("levels[{i}]: {e}"))))
            .collect::<Result<_, _>>()?;
        let mut faces = BTreeMap::new();
        for (n, f) in self.faces.iter().enumerate() {
            if f.level == 0 || f.level >= levels.len() {
                return Err(CubicalError::Parse(format!("faces[{n}]: level {} has no faces", f.level)));
            }
            let m = chain_map_from_doc(&f.matrices, &levels[f.level], &levels[f.level - 1], &format!("faces[{n}]"))
                .map_err(|e| CubicalError::Parse(e.to_string()))?;
            if faces.insert((f.level, f.face_index), m).is_some() {
                return Err(CubicalError::Parse(format!("faces[{n}]: d_{} out of level {} listed twice", f.face_index, f.level)));
            }
        }
        Hyperresolution::new(levels, faces)
    }

    pub fn from_hyperresolution(h: &Hyperresolution) -> Self {
        let mut faces = Vec::new();
        for (i, row) in h.faces.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                let matrices = chain_map_to_doc(m);
                if !matrices.is_empty() {
                    faces.push(FaceDoc { level: i + 1, face_index: j, matrices });
                }
            }
        }
        Self { levels: h.levels.iter().map(ComplexDoc::from_complex).collect(), faces }
    }
}

pub fn parse_hyperresolution(text: &str) -> Result<Hyperresolution, CubicalError> {
    let doc: HyperresDoc = serde_json::from_str(text).map_err(|e| CubicalError::Parse(e.to_string()))?;
    doc.to_hyperresolution()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_complex() -> ChainComplex {
        ChainComplex::new(0, vec![1, 1], [(1, BitMatrix::zeros(1, 1))]).unwrap()
    }

    #[test]
    fn single_level_is_trivially_filtered() {
        let c = loop_complex();
        let h = Hyperresolution::new(vec![c.clone()], BTreeMap::new()).unwrap();
        let f = skeleton_filtration(&h).unwrap();
        assert_eq!(f.p_range(), Some((0, 0)));
        let ps = pages(&f).unwrap();
        assert_eq!(ps.infinity.values().sum::<usize>(), 2);
        assert!(single_level_shift_is_canonical(&c).unwrap());
        assert!(hyperres_weight_compare(&h).unwrap().holds());
    }

    #[test]
    fn broken_identity_is_reported() {
        // level 2 point mapping to two different level-1 points under d_0 and d_1,
        // both of which go to the same level-0 point, except one face is zero
        let pt = ChainComplex::graded(0, vec![1]);
        let two = ChainComplex::graded(0, vec![2]);
        let e = |r: usize, c: usize, rows: usize, cols: usize| ChainMap {
            components: vec![(0, BitMatrix::from_entries(rows, cols, &[(r, c)]))],
        };
        let faces = BTreeMap::from([
            ((1, 0), e(0, 0, 1, 2)),
            ((2, 0), e(0, 0, 2, 1)),
            ((2, 1), e(1, 0, 2, 1)),
        ]);
        let err = Hyperresolution::new(vec![pt.clone(), two, pt], faces).unwrap_err();
        assert!(err.to_string().contains("simplicial identity"), "{err}");
    }

    #[test]
    fn out_of_range_face_rejected() {
        let faces = BTreeMap::from([((1, 2), ChainMap::zero())]);
        let c = loop_complex();
        assert!(Hyperresolution::new(vec![c.clone(), c], faces).is_err());
    }

    #[test]
    fn doc_round_trip() {
        let c = loop_complex();
        let pt = ChainComplex::graded(0, vec![1]);
        let inc = ChainMap { components: vec![(0, BitMatrix::identity(1))] };
        let h = Hyperresolution::new(vec![c, pt], BTreeMap::from([((1, 0), inc.clone()), ((1, 1), inc)])).unwrap();
        let doc = HyperresDoc::from_hyperresolution(&h);
        let back = parse_hyperresolution(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(HyperresDoc::from_hyperresolution(&back), doc);
        let f = skeleton_filtration(&back).unwrap();
        // circle with a point glued to its vertex by both faces: the point is
        // killed and a new loop appears
        assert_eq!(f.complex().bettis(), vec![(0, 1), (1, 2)]);
    }
}
