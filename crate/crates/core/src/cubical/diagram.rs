use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::{BitMatrix, BitSubspace, BitVec};
use crate::fcomplex::doc::{chain_map_from_doc, chain_map_to_doc, ComplexDoc, MatrixDoc};
use crate::fcomplex::{canonical_filtration, pages, ChainComplex, ChainMap, Diagnostic, FilteredComplex};

use super::CubicalError;

/// A contravariant diagram of filtered complexes over the subsets of
/// `{0, …, n}`, with a map `K_S → K_T` for every `T = S ∖ {j}`.
///
/// Subsets are bitmasks. Missing objects are zero complexes and missing
/// maps are zero.
#[derive(Clone, Debug)]
pub struct CubicalDiagram {
    n: usize,
    objects: BTreeMap<usize, FilteredComplex>,
    maps: BTreeMap<(usize, usize), ChainMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramIssue {
    MaskOutOfRange { mask: usize },
    NotAFaceMap { from: usize, to: usize },
    Object { mask: usize, diagnostics: Vec<Diagnostic> },
    Shape { from: usize, to: usize, degree: i32 },
    NotChainMap { from: usize, to: usize, degree: i32 },
    NotFiltered { from: usize, to: usize, p: i32, degree: i32 },
    Square { from: usize, to: usize, degree: i32 },
}

fn mask_str(m: usize) -> String {
    let items: Vec<String> = (0..usize::BITS as usize).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for DiagramIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MaskOutOfRange { mask } => write!(f, "subset mask {mask} is outside the cube"),
            Self::NotAFaceMap { from, to } => {
                write!(f, "map {} -> {} does not drop exactly one index", mask_str(*from), mask_str(*to))
            }
            Self::Object { mask, diagnostics } => {
                let d: Vec<String> = diagnostics.iter().map(ToString::to_string).collect();
                write!(f, "object {}: {}", mask_str(*mask), d.join("; "))
            }
            Self::Shape { from, to, degree } => {
                write!(f, "map {} -> {} has the wrong shape in degree {degree}", mask_str(*from), mask_str(*to))
            }
            Self::NotChainMap { from, to, degree } => {
                write!(f, "map {} -> {} does not commute with the boundary in degree {degree}", mask_str(*from), mask_str(*to))
            }
            Self::NotFiltered { from, to, p, degree } => {
                write!(f, "map {} -> {} does not preserve F_{p} in degree {degree}", mask_str(*from), mask_str(*to))
            }
            Self::Square { from, to, degree } => {
                write!(f, "square from {} to {} does not commute in degree {degree}", mask_str(*from), mask_str(*to))
            }
        }
    }
}

impl CubicalDiagram {
    pub fn new(
        n: usize,
        objects: BTreeMap<usize, FilteredComplex>,
        maps: BTreeMap<(usize, usize), ChainMap>,
    ) -> Result<Self, CubicalError> {
        let d = Self { n, objects, maps };
        let issues = d.validate();
        if issues.is_empty() {
            Ok(d)
        } else {
            Err(CubicalError::Invalid(issues))
        }
    }

    /// Diagram of type □⁺₀: a single filtered chain map `B → A`, with `B` at `{0}`.
    pub fn arrow(source: FilteredComplex, target: FilteredComplex, map: ChainMap) -> Result<Self, CubicalError> {
        Self::new(0, BTreeMap::from([(0, target), (1, source)]), BTreeMap::from([((1, 0), map)]))
    }

    /// Number of indices in the cube, `n + 1`.
    pub fn width(&self) -> usize {
        self.n + 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn object(&self, mask: usize) -> FilteredComplex {
        self.objects.get(&mask).cloned().unwrap_or_else(FilteredComplex::zero)
    }

    fn object_ref(&self, mask: usize) -> Option<&FilteredComplex> {
        self.objects.get(&mask)
    }

    fn complex_of(&self, mask: usize) -> ChainComplex {
        self.object_ref(mask).map(|o| o.complex().clone()).unwrap_or_else(ChainComplex::zero)
    }

    pub fn map(&self, from: usize, to: usize) -> ChainMap {
        self.maps.get(&(from, to)).cloned().unwrap_or_else(ChainMap::zero)
    }

    pub fn masks(&self) -> impl Iterator<Item = usize> {
        0..1usize << self.width()
    }

    fn degree_span(&self) -> Option<(i32, i32)> {
        let mut span: Option<(i32, i32)> = None;
        for fc in self.objects.values() {
            let c = fc.complex();
            if c.is_empty() {
                continue;
            }
            span = Some(match span {
                None => (c.k_min(), c.k_max()),
                Some((lo, hi)) => (lo.min(c.k_min()), hi.max(c.k_max())),
            });
        }
        span
    }

    fn p_span(&self) -> Option<(i32, i32)> {
        self.objects.values().filter_map(FilteredComplex::p_range).reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }

    /// Every violated condition; empty iff the diagram is valid.
    pub fn validate(&self) -> Vec<DiagramIssue> {
        let full = (1usize << self.width()) - 1;
        let mut out = Vec::new();
        for (&mask, fc) in &self.objects {
            if mask & !full != 0 {
                out.push(DiagramIssue::MaskOutOfRange { mask });
            }
            let diagnostics = fc.validate();
            if !diagnostics.is_empty() {
                out.push(DiagramIssue::Object { mask, diagnostics });
            }
        }
        let (lo, hi) = self.degree_span().unwrap_or((0, -1));
        let (p_lo, p_hi) = self.p_span().unwrap_or((0, -1));
        for (&(from, to), m) in &self.maps {
            if (from | to) & !full != 0 {
                out.push(DiagramIssue::MaskOutOfRange { mask: from | to });
                continue;
            }
            if to & !from != 0 || (from ^ to).count_ones() != 1 {
                out.push(DiagramIssue::NotAFaceMap { from, to });
                continue;
            }
            let (a, b) = (self.complex_of(from), self.complex_of(to));
            let bad_shape = m
                .components
                .iter()
                .find(|(k, x)| x.rows() != b.dim(*k) || x.cols() != a.dim(*k))
                .map(|(k, _)| *k);
            if let Some(degree) = bad_shape {
                out.push(DiagramIssue::Shape { from, to, degree });
                continue;
            }
            for k in lo..=hi {
                let lhs = b.boundary(k).mul(&m.component(k, &a, &b));
                let rhs = m.component(k - 1, &a, &b).mul(&a.boundary(k));
                if lhs != rhs {
                    out.push(DiagramIssue::NotChainMap { from, to, degree: k });
                }
            }
            let (fa, fb) = (self.object(from), self.object(to));
            for k in lo..=hi {
                let f = m.component(k, &a, &b);
                for p in p_lo..=p_hi {
                    let image = fa.level(p, k).image_under(&f).expect("shape checked");
                    if !image.is_subspace_of(&fb.level(p, k)) {
                        out.push(DiagramIssue::NotFiltered { from, to, p, degree: k });
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for from in self.masks() {
            for to in self.masks().filter(|&t| t & !from == 0 && (from ^ t).count_ones() == 2) {
                let dropped: Vec<usize> = (0..self.width()).filter(|j| (from ^ to) >> j & 1 == 1).collect();
                let via = |j: usize| -> ChainMap {
                    let mid = from & !(1 << j);
                    self.map(from, mid).compose(&self.map(mid, to), &self.complex_of(from), &self.complex_of(mid), &self.complex_of(to))
                };
                let (x, y) = (via(dropped[0]), via(dropped[1]));
                let (a, b) = (self.complex_of(from), self.complex_of(to));
                for k in lo..=hi {
                    if x.component(k, &a, &b) != y.component(k, &a, &b) {
                        out.push(DiagramIssue::Square { from, to, degree: k });
                    }
                }
            }
        }
        out
    }

    /// The same diagram with every object carrying its canonical filtration.
    pub fn with_canonical_filtrations(&self) -> Result<Self, CubicalError> {
        let objects = self
            .objects
            .iter()
            .map(|(&m, fc)| Ok((m, canonical_filtration(fc.complex())?)))
            .collect::<Result<_, CubicalError>>()?;
        Self::new(self.n, objects, self.maps.clone())
    }

    /// Relabels the cube by exchanging indices `i` and `j`.
    pub fn swap_indices(&self, i: usize, j: usize) -> Self {
        let swap = |m: usize| {
            let (bi, bj) = (m >> i & 1, m >> j & 1);
            (m & !(1 << i) & !(1 << j)) | bj << i | bi << j
        };
        Self {
            n: self.n,
            objects: self.objects.iter().map(|(&m, o)| (swap(m), o.clone())).collect(),
            maps: self.maps.iter().map(|(&(a, b), f)| ((swap(a), swap(b)), f.clone())).collect(),
        }
    }
}

/// `s𝒦_k = ⊕_{i + |S| - 1 = k} K_{i,S}` with `∂ = ∂_K + Σ_{j ∈ S} ∂_{S∖j,S}` and
/// `F_p s𝒦 = ⊕ F_p K_S`. Summands are ordered by mask; no signs over ℤ₂.
pub fn simple_filtered(d: &CubicalDiagram) -> Result<FilteredComplex, CubicalError> {
    let issues = d.validate();
    if !issues.is_empty() {
        return Err(CubicalError::Invalid(issues));
    }
    let masks: Vec<usize> = d.masks().collect();
    let shift = |m: usize| m.count_ones() as i32 - 1;
    let Some((lo, hi)) = d.degree_span() else {
        return Ok(FilteredComplex::zero());
    };
    let (k_lo, k_hi) = (lo - 1, hi + d.width() as i32 - 1);
    let complexes: BTreeMap<usize, ChainComplex> = masks.iter().map(|&m| (m, d.complex_of(m))).collect();
    // offset of summand S inside s_k
    let layout = |k: i32| -> (Vec<(usize, usize)>, usize) {
        let mut off = 0;
        let mut out = Vec::new();
        for &m in &masks {
            out.push((m, off));
            off += complexes[&m].dim(k - shift(m));
        }
        (out, off)
    };
    let layouts: BTreeMap<i32, (Vec<(usize, usize)>, usize)> = (k_lo..=k_hi).map(|k| (k, layout(k))).collect();
    let offset = |k: i32, m: usize| layouts[&k].0.iter().find(|(x, _)| *x == m).map(|(_, o)| *o).expect("mask listed");
    let dims: Vec<usize> = (k_lo..=k_hi).map(|k| layouts[&k].1).collect();
    let mut maps = Vec::new();
    for k in k_lo + 1..=k_hi {
        let mut m = BitMatrix::zeros(layouts[&(k - 1)].1, layouts[&k].1);
        for &s in &masks {
            let i = k - shift(s);
            let cs = &complexes[&s];
            if cs.dim(i) == 0 {
                continue;
            }
            m.add_block(offset(k - 1, s), offset(k, s), &cs.boundary(i));
            for j in (0..d.width()).filter(|j| s >> j & 1 == 1) {
                let t = s & !(1 << j);
                let f = d.map(s, t).component(i, cs, &complexes[&t]);
                m.add_block(offset(k - 1, t), offset(k, s), &f);
            }
        }
        maps.push((k, m));
    }
    let complex = ChainComplex::new(k_lo, dims, maps)?;
    let (p_lo, p_hi) = d.p_span().unwrap_or((0, 0));
    let objects: BTreeMap<usize, FilteredComplex> = masks.iter().map(|&m| (m, d.object(m))).collect();
    let sc = complex.clone();
    let fc = FilteredComplex::from_fn(complex, p_lo, p_hi, |p, k| {
        let total = sc.dim(k);
        let vectors = masks.iter().flat_map(|&m| {
            let off = offset(k, m);
            let level = objects[&m].level(p, k - shift(m));
            level.basis().iter().map(|v| BitVec::from_ones(total, v.ones().map(|i| i + off))).collect::<Vec<_>>()
        });
        BitSubspace::span(total, vectors.collect::<Vec<_>>())
    })?;
    Ok(fc)
}

/// One degree of `0 → H(K_{01}) → H(K_0) ⊕ H(K_1) → H(K_∅) → 0` for a □⁺₁ diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRow {
    pub degree: i32,
    pub dims: [usize; 3],
    pub rank_in: usize,
    pub rank_out: usize,
}

impl SequenceRow {
    /// Injective, surjective, and exact in the middle (the composite vanishes
    /// because the square commutes mod 2).
    pub fn is_exact(&self) -> bool {
        let [a, b, c] = self.dims;
        self.rank_in == a && self.rank_out == c && b == a + c
    }
}

fn direct_sum(a: &ChainComplex, b: &ChainComplex, lo: i32, hi: i32) -> ChainComplex {
    let dims = (lo..=hi).map(|k| a.dim(k) + b.dim(k)).collect();
    let maps: Vec<(i32, BitMatrix)> =
        (lo + 1..=hi).map(|k| (k, BitMatrix::block_diagonal(&a.boundary(k), &b.boundary(k)))).collect();
    ChainComplex::new(lo, dims, maps).expect("sum of complexes")
}

/// Homology sequence of the square, degree by degree.
pub fn square_sequence(d: &CubicalDiagram) -> Result<Vec<SequenceRow>, CubicalError> {
    if d.n() != 1 {
        return Err(CubicalError::Shape(format!("expected a square, got n = {}", d.n())));
    }
    let Some((lo, hi)) = d.degree_span() else { return Ok(Vec::new()) };
    let (x, x0, x1, x01) = (d.complex_of(0), d.complex_of(1), d.complex_of(2), d.complex_of(3));
    let mid = direct_sum(&x0, &x1, lo, hi);
    let stack = |k: i32| {
        let mut m = BitMatrix::zeros(mid.dim(k), x01.dim(k));
        m.add_block(0, 0, &d.map(3, 1).component(k, &x01, &x0));
        m.add_block(x0.dim(k), 0, &d.map(3, 2).component(k, &x01, &x1));
        m
    };
    let side = |k: i32| {
        let mut m = BitMatrix::zeros(x.dim(k), mid.dim(k));
        m.add_block(0, 0, &d.map(1, 0).component(k, &x0, &x));
        m.add_block(0, x0.dim(k), &d.map(2, 0).component(k, &x1, &x));
        m
    };
    let into = ChainMap { components: (lo..=hi).map(|k| (k, stack(k))).collect() };
    let out = ChainMap { components: (lo..=hi).map(|k| (k, side(k))).collect() };
    Ok((lo..=hi)
        .map(|k| SequenceRow {
            degree: k,
            dims: [x01.betti(k), mid.betti(k), x.betti(k)],
            rank_in: into.induced_rank(k, &x01, &mid),
            rank_out: out.induced_rank(k, &mid, &x),
        })
        .collect())
}

/// `E¹ = 0`, i.e. the filtered complex is filtered quasi-isomorphic to zero.
pub fn is_acyclic(fc: &FilteredComplex) -> Result<bool, CubicalError> {
    let ps = pages(fc)?;
    Ok(ps.page(1).map_or(true, |p| p.entries.is_empty()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityReport {
    /// `(p, q, dim E¹_{p,q}(s), dim E¹_{p,q+1}(complement))` where they differ.
    pub mismatches: Vec<(i32, i32, usize, usize)>,
}

impl AdditivityReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `E¹` of the simple complex of `Y → X` with `E¹` of the complement.
///
/// The simple complex puts `X` in degree `i - 1`, so it computes `H_{n+1}(X, Y)`
/// in total degree `n`; the comparison therefore matches `E¹_{p,q}(s)` with
/// `E¹_{p,q+1}(X ∖ Y)`.
pub fn additivity_check(inclusion: &CubicalDiagram, complement: &FilteredComplex) -> Result<AdditivityReport, CubicalError> {
    if inclusion.n() != 0 {
        return Err(CubicalError::Shape(format!("expected a diagram of type □⁺₀, got n = {}", inclusion.n())));
    }
    let s = pages(&simple_filtered(inclusion)?)?;
    let c = pages(complement)?;
    let e1 = |ps: &crate::fcomplex::PageSet| ps.page(1).map(|p| p.dims()).unwrap_or_default();
    let (left, right) = (e1(&s), e1(&c));
    let mut keys: Vec<(i32, i32)> = left.keys().copied().collect();
    keys.extend(right.keys().map(|&(p, q)| (p, q - 1)));
    keys.sort_unstable();
    keys.dedup();
    let mismatches = keys
        .into_iter()
        .filter_map(|(p, q)| {
            let (a, b) = (left.get(&(p, q)).copied().unwrap_or(0), right.get(&(p, q + 1)).copied().unwrap_or(0));
            (a != b).then_some((p, q, a, b))
        })
        .collect();
    Ok(AdditivityReport { mismatches })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramMapDoc {
    pub from_mask: usize,
    pub to_mask: usize,
    pub matrices: MatrixDoc,
}

/// ```json
/// { "n": 0, "objects": {"0": {...}, "1": {...}}, "maps": [{"from_mask": 1, "to_mask": 0, "matrices": {"0": [[0,0]]}}] }
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub n: usize,
    pub objects: BTreeMap<usize, ComplexDoc>,
    #[serde(default)]
    pub maps: Vec<DiagramMapDoc>,
}

impl DiagramDoc {
    pub fn to_diagram(&self) -> Result<CubicalDiagram, CubicalError> {
        let mut objects = BTreeMap::new();
        for (&m, doc) in &self.objects {
            objects.insert(m, doc.to_filtered().map_err(|e| CubicalError::Parse(format!("objects.{m}: {e}")))?);
        }
        let zero = ChainComplex::zero();
        let mut maps = BTreeMap::new();
        for (i, m) in self.maps.iter().enumerate() {
            let a = objects.get(&m.from_mask).map(|o: &FilteredComplex| o.complex()).unwrap_or(&zero);
            let b = objects.get(&m.to_mask).map(|o: &FilteredComplex| o.complex()).unwrap_or(&zero);
            let f = chain_map_from_doc(&m.matrices, a, b, &format!("maps[{i}]")).map_err(|e| CubicalError::Parse(e.to_string()))?;
            if maps.insert((m.from_mask, m.to_mask), f).is_some() {
                return Err(CubicalError::Parse(format!("maps[{i}]: map {} -> {} listed twice", m.from_mask, m.to_mask)));
            }
        }
        CubicalDiagram::new(self.n, objects, maps)
    }

    pub fn from_diagram(d: &CubicalDiagram) -> Self {
        Self {
            n: d.n,
            objects: d.objects.iter().map(|(&m, o)| (m, ComplexDoc::from_filtered(o))).collect(),
            maps: d
                .maps
                .iter()
                .map(|(&(from_mask, to_mask), f)| DiagramMapDoc { from_mask, to_mask, matrices: chain_map_to_doc(f) })
                .collect(),
        }
    }
}

pub fn parse_diagram(text: &str) -> Result<CubicalDiagram, CubicalError> {
    let doc: DiagramDoc = serde_json::from_str(text).map_err(|e| CubicalError::Parse(e.to_string()))?;
    doc.to_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point() -> FilteredComplex {
        FilteredComplex::trivial(ChainComplex::graded(0, vec![1]), 0)
    }

    fn id_point() -> ChainMap {
        ChainMap { components: vec![(0, BitMatrix::identity(1))] }
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let d = CubicalDiagram::arrow(point(), point(), id_point()).unwrap();
        let s = simple_filtered(&d).unwrap();
        assert_eq!((s.complex().dim(-1), s.complex().dim(0)), (1, 1));
        assert!(is_acyclic(&s).unwrap());
    }

    #[test]
    fn zero_map_is_not_acyclic() {
        let d = CubicalDiagram::arrow(point(), point(), ChainMap::zero()).unwrap();
        assert!(!is_acyclic(&simple_filtered(&d).unwrap()).unwrap());
    }

    #[test]
    fn empty_source_leaves_target_shifted() {
        let d = CubicalDiagram::new(0, BTreeMap::from([(0, point())]), BTreeMap::new()).unwrap();
        let s = simple_filtered(&d).unwrap();
        assert_eq!(s.complex().bettis(), vec![(-1, 1), (0, 0)]);
        let r = additivity_check(&d, &point()).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn non_commuting_square_is_named() {
        let objects: BTreeMap<usize, FilteredComplex> = (0..4).map(|m| (m, point())).collect();
        let mut maps: BTreeMap<(usize, usize), ChainMap> =
            [(3, 1), (3, 2), (1, 0), (2, 0)].into_iter().map(|k| (k, id_point())).collect();
        maps.insert((2, 0), ChainMap::zero());
        let err = CubicalDiagram::new(1, objects, maps).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("square from {0,1} to {} does not commute"), "{text}");
    }

    #[test]
    fn bad_map_key_rejected() {
        let objects: BTreeMap<usize, FilteredComplex> = (0..4).map(|m| (m, point())).collect();
        let maps = BTreeMap::from([((3, 0), id_point())]);
        assert!(matches!(
            CubicalDiagram::new(1, objects, maps),
            Err(CubicalError::Invalid(v)) if v == vec![DiagramIssue::NotAFaceMap { from: 3, to: 0 }]
        ));
    }

    #[test]
    fn unfiltered_map_rejected() {
        let low = FilteredComplex::trivial(ChainComplex::graded(0, vec![1]), -1);
        let high = FilteredComplex::trivial(ChainComplex::graded(0, vec![1]), 0);
        assert!(CubicalDiagram::arrow(high.clone(), low.clone(), id_point()).is_ok());
        let err = CubicalDiagram::arrow(low, high, id_point()).unwrap_err();
        assert!(err.to_string().contains("does not preserve F_-1"), "{err}");
    }

    #[test]
    fn doc_round_trip() {
        let d = CubicalDiagram::arrow(point(), point(), id_point()).unwrap();
        let doc = DiagramDoc::from_diagram(&d);
        let text = serde_json::to_string(&doc).unwrap();
        let back = parse_diagram(&text).unwrap();
        assert_eq!(DiagramDoc::from_diagram(&back), doc);
    }
}
