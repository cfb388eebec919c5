use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Sub};

use rayon::prelude::*;

use crate::exactalg::BitMatrix;
use crate::fcomplex::ChainMap;

use super::complex::CellComplex;
use super::EulerError;

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An integer-valued function constant on open cells.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConstructibleFunction {
    pub values: Vec<i64>,
}

impl ConstructibleFunction {
    pub fn zero(x: &CellComplex) -> Self {
        Self { values: vec![0; x.len()] }
    }

    pub fn constant(x: &CellComplex, c: i64) -> Self {
        Self { values: vec![c; x.len()] }
    }

    /// `1_A` for the union of the given open cells.
    pub fn indicator(x: &CellComplex, cells: impl IntoIterator<Item = usize>) -> Self {
        let mut f = Self::zero(x);
        for c in cells {
            f.values[c] = 1;
        }
        f
    }

    /// `1_{cl A}`.
    pub fn closure_indicator(x: &CellComplex, cells: impl IntoIterator<Item = usize>) -> Self {
        Self { values: x.closure(cells).into_iter().map(i64::from).collect() }
    }

    pub fn get(&self, c: usize) -> i64 {
        self.values[c]
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self { values: self.values.iter().map(|v| v * k).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i)
    }

    fn check(&self, x: &CellComplex) -> Result<(), EulerError> {
        if self.values.len() != x.len() {
            return Err(EulerError::Invalid(format!(
                "function has {} values on a complex of {} cells",
                self.values.len(),
                x.len()
            )));
        }
        Ok(())
    }
}

impl Add for &ConstructibleFunction {
    type Output = ConstructibleFunction;
    fn add(self, rhs: &ConstructibleFunction) -> ConstructibleFunction {
        ConstructibleFunction { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ConstructibleFunction {
    type Output = ConstructibleFunction;
    fn sub(self, rhs: &ConstructibleFunction) -> ConstructibleFunction {
        ConstructibleFunction { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect() }
    }
}

/// `∫ φ dχ = Σ a_σ (-1)^{dim σ}`, with compactly supported Euler characteristic.
pub fn euler_integral(x: &CellComplex, phi: &ConstructibleFunction) -> i64 {
    (0..x.len()).map(|c| phi.values[c] * sign(x.dim(c))).sum()
}

/// The link operator.
///
/// At a point of an open `s`-cell `σ` the small link sphere is
/// `S^{s-1} * lk(σ)`. The part inside `σ` is `S^{s-1}`, with Euler
/// characteristic `1 + (-1)^{s-1}`, and each coface `τ` contributes an open
/// cell of dimension `dim τ - 1`.
pub fn link(x: &CellComplex, phi: &ConstructibleFunction) -> ConstructibleFunction {
    let values = (0..x.len())
        .into_par_iter()
        .map(|c| {
            let s = x.dim(c);
            let own = if s == 0 { 0 } else { phi.values[c] * (1 + sign(s - 1)) };
            own + x.cofaces(c).iter().map(|&t| phi.values[t] * sign(x.dim(t) - 1)).sum::<i64>()
        })
        .collect();
    ConstructibleFunction { values }
}

/// A ℤ₂-chain: a set of open `k`-cells.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CellChain {
    pub k: usize,
    pub members: BTreeSet<usize>,
}

impl CellChain {
    pub fn new(x: &CellComplex, k: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, EulerError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&c) = members.iter().find(|&&c| c >= x.len() || x.dim(c) != k) {
            return Err(EulerError::Invalid(format!("chain of degree {k} contains cell #{c} of another dimension")));
        }
        Ok(Self { k, members })
    }

    pub fn empty(k: usize) -> Self {
        Self { k, members: BTreeSet::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.members.is_empty()
    }

    /// All `k`-cells.
    pub fn fundamental(x: &CellComplex, k: usize) -> Self {
        Self { k, members: x.cells_of_dim(k).iter().copied().collect() }
    }

    /// Symmetric difference, the sum of ℤ₂-chains.
    pub fn sum(&self, other: &CellChain) -> CellChain {
        CellChain { k: self.k, members: self.members.symmetric_difference(&other.members).copied().collect() }
    }
}

/// `∂[A] = [{Λ1_A odd}]` with `A` the closure of the chain's cells. A
/// chain of degree 0 has zero boundary, returned as the empty chain of degree 0.
pub fn chain_boundary(x: &CellComplex, c: &CellChain) -> CellChain {
    if c.k == 0 {
        return CellChain::empty(0);
    }
    let closed = ConstructibleFunction::closure_indicator(x, c.members.iter().copied());
    odd_locus(x, &closed, c.k - 1, |_| true)
}

fn odd_locus(x: &CellComplex, closed: &ConstructibleFunction, k: usize, keep: impl Fn(usize) -> bool) -> CellChain {
    let lam = link(x, closed);
    let members = x
        .cells_of_dim(k)
        .iter()
        .copied()
        .filter(|&w| keep(w) && closed.values[w] != 0 && lam.values[w].rem_euclid(2) == 1)
        .collect();
    CellChain { k, members }
}

/// Boundary by facet incidences mod 2.
pub fn incidence_boundary(x: &CellComplex, c: &CellChain) -> CellChain {
    if c.k == 0 {
        return CellChain::empty(0);
    }
    let mut members = BTreeSet::new();
    for &m in &c.members {
        for &f in x.facets(m) {
            if !members.remove(&f) {
                members.insert(f);
            }
        }
    }
    CellChain { k: c.k - 1, members }
}

/// A cellular map: each open cell maps onto an open cell of no larger dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    pub assignment: Vec<usize>,
}

impl CellMap {
    pub fn new(source: &CellComplex, target: &CellComplex, assignment: Vec<usize>) -> Result<Self, EulerError> {
        if assignment.len() != source.len() {
            return Err(EulerError::Invalid(format!(
                "map assigns {} cells, source has {}",
                assignment.len(),
                source.len()
            )));
        }
        for (c, &d) in assignment.iter().enumerate() {
            if d >= target.len() {
                return Err(EulerError::Invalid(format!("cell {:?} maps to missing cell #{d}", source.label(c))));
            }
            if target.dim(d) > source.dim(c) {
                return Err(EulerError::NotCellular(format!(
                    "cell {:?} of dimension {} maps onto {:?} of dimension {}",
                    source.label(c),
                    source.dim(c),
                    target.label(d),
                    target.dim(d)
                )));
            }
            for &f in source.faces(c) {
                let img = assignment[f];
                if img != d && !target.faces(d).contains(&img) {
                    return Err(EulerError::NotCellular(format!(
                        "face {:?} of {:?} maps outside the closure of the image cell {:?}",
                        source.label(f),
                        source.label(c),
                        target.label(d)
                    )));
                }
            }
        }
        Ok(Self { assignment })
    }

    pub fn identity(x: &CellComplex) -> Self {
        Self { assignment: (0..x.len()).collect() }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &CellMap) -> CellMap {
        CellMap { assignment: self.assignment.iter().map(|&c| after.assignment[c]).collect() }
    }

    /// The product map `f × g` on product complexes built by [`CellComplex::product`].
    pub fn product(
        &self,
        other: &CellMap,
        (s1, t1): (&CellComplex, &CellComplex),
        (s2, t2): (&CellComplex, &CellComplex),
        (source, target): (&CellComplex, &CellComplex),
    ) -> Result<CellMap, EulerError> {
        let find = |x: &CellComplex, l: String| x.find(&l).expect("product labels");
        let assignment = (0..source.len())
            .map(|c| {
                let label = source.label(c);
                let (a, b) = label
                    .match_indices('×')
                    .find_map(|(i, m)| Some((s1.find(&label[..i])?, s2.find(&label[i + m.len()..])?)))
                    .expect("product labels");
                let (fa, gb) = (self.assignment[a], other.assignment[b]);
                find(target, format!("{}×{}", t1.label(fa), t2.label(gb)))
            })
            .collect();
        CellMap::new(source, target, assignment)
    }

    /// Induced map on cellular chains: a cell goes to its image when the
    /// dimension is kept and to zero otherwise.
    pub fn chain_map(&self, source: &CellComplex, target: &CellComplex) -> ChainMap {
        let top = source.top_dim().unwrap_or(0);
        let components = (0..=top)
            .map(|k| {
                let entries: Vec<(usize, usize)> = source
                    .cells_of_dim(k)
                    .iter()
                    .filter(|&&c| target.dim(self.assignment[c]) == k)
                    .map(|&c| (target.position(self.assignment[c]), source.position(c)))
                    .collect();
                (k as i32, BitMatrix::from_entries(target.cells_of_dim(k).len(), source.cells_of_dim(k).len(), &entries))
            })
            .collect();
        ChainMap { components }
    }
}

/// `(f_*φ)(d) = Σ_{f(c) = d} a_c (-1)^{dim c - dim d}`.
pub fn pushforward_cf(
    f: &CellMap,
    source: &CellComplex,
    target: &CellComplex,
    phi: &ConstructibleFunction,
) -> Result<ConstructibleFunction, EulerError> {
    phi.check(source)?;
    let mut out = ConstructibleFunction::zero(target);
    for (c, &d) in f.assignment.iter().enumerate() {
        out.values[d] += phi.values[c] * sign(source.dim(c) - target.dim(d));
    }
    Ok(out)
}

/// `f_*[A]`: the target `k`-cells over which an odd number of members lie.
pub fn pushforward_chain(
    f: &CellMap,
    source: &CellComplex,
    target: &CellComplex,
    c: &CellChain,
) -> Result<CellChain, EulerError> {
    let mut members = BTreeSet::new();
    for &m in &c.members {
        let d = f.assignment[m];
        if target.dim(d) != c.k {
            return Err(EulerError::NotCellular(format!(
                "chain cell {:?} is collapsed onto {:?} of dimension {}",
                source.label(m),
                target.label(d),
                target.dim(d)
            )));
        }
        if !members.remove(&d) {
            members.insert(d);
        }
    }
    Ok(CellChain { k: c.k, members })
}

/// A chain on an open subset `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenChain {
    pub open: Vec<bool>,
    pub chain: CellChain,
}

pub fn restrict(x: &CellComplex, c: &CellChain, open: &[bool]) -> Result<OpenChain, EulerError> {
    if open.len() != x.len() || !x.is_open(open) {
        return Err(EulerError::NotOpen);
    }
    Ok(OpenChain {
        open: open.to_vec(),
        chain: CellChain { k: c.k, members: c.members.iter().copied().filter(|&m| open[m]).collect() },
    })
}

/// Closure in the ambient complex. Chains are homogeneous, so the `k`-cells
/// of the closure are the members themselves.
pub fn closure(c: &OpenChain) -> CellChain {
    c.chain.clone()
}

/// Boundary computed inside the open set: links of cells of `U` only see `U`.
pub fn open_boundary(x: &CellComplex, c: &OpenChain) -> OpenChain {
    if c.chain.k == 0 {
        return OpenChain { open: c.open.clone(), chain: CellChain::empty(0) };
    }
    let mut closed = ConstructibleFunction::closure_indicator(x, c.chain.members.iter().copied());
    for (v, &inside) in closed.values.iter_mut().zip(&c.open) {
        if !inside {
            *v = 0;
        }
    }
    let chain = odd_locus(x, &closed, c.chain.k - 1, |w| c.open[w]);
    OpenChain { open: c.open.clone(), chain }
}

/// A square `Ỹ ⊂ X̃ → X ⊃ Y` with `π` a bijection of cells off `Y`.
#[derive(Clone, Debug)]
pub struct BlowupSquare {
    pub map: CellMap,
    /// The closed subcomplex `Y` of the target.
    pub center: Vec<bool>,
    inverse: BTreeMap<usize, usize>,
}

impl BlowupSquare {
    pub fn new(source: &CellComplex, target: &CellComplex, map: CellMap, center: Vec<bool>) -> Result<Self, EulerError> {
        if center.len() != target.len() || !target.is_closed(&center) {
            return Err(EulerError::Invalid("center of the square is not a closed subcomplex".into()));
        }
        let mut inverse = BTreeMap::new();
        for (c, &d) in map.assignment.iter().enumerate() {
            if center[d] {
                continue;
            }
            if source.dim(c) != target.dim(d) || inverse.insert(d, c).is_some() {
                return Err(EulerError::Invalid(format!(
                    "map is not a cellular bijection off the center at {:?}",
                    target.label(d)
                )));
            }
        }
        if let Some(d) = (0..target.len()).find(|&d| !center[d] && !inverse.contains_key(&d)) {
            return Err(EulerError::Invalid(format!("cell {:?} off the center has no preimage", target.label(d))));
        }
        Ok(Self { map, center, inverse })
    }

    /// The exceptional set `π⁻¹(Y)`, a closed subcomplex of the source.
    pub fn exceptional(&self) -> Vec<bool> {
        self.map.assignment.iter().map(|&d| self.center[d]).collect()
    }

    /// `π⁻¹c = cl((π′)⁻¹_*(c|_{X∖Y}))`.
    pub fn pullback(&self, target: &CellComplex, c: &CellChain) -> Result<CellChain, EulerError> {
        let off: Vec<bool> = self.center.iter().map(|&y| !y).collect();
        let restricted = restrict(target, c, &off)?;
        let members = restricted.chain.members.iter().map(|d| self.inverse[d]).collect();
        Ok(closure(&OpenChain { open: self.exceptional().iter().map(|&e| !e).collect(), chain: CellChain { k: c.k, members } }))
    }
}

/// Values of the averaging boundary on the cells of `W`, stored doubled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfValues {
    pub doubled: BTreeMap<usize, i64>,
}

impl HalfValues {
    /// The value at `w` when it is an integer.
    pub fn as_integer(&self, w: usize) -> Option<i64> {
        let d = *self.doubled.get(&w)?;
        (d % 2 == 0).then_some(d / 2)
    }

    /// Cells where the value divided by `unit` is an odd integer.
    pub fn odd_locus(&self, unit: i64) -> BTreeSet<usize> {
        self.doubled
            .iter()
            .filter(|(_, &d)| d % (2 * unit) == 0 && (d / (2 * unit)).rem_euclid(2) == 1)
            .map(|(&w, _)| w)
            .collect()
    }
}

/// `(∂_W φ)(w) = ½ Σ a_z` over the top cells `z` having `w` as a facet.
pub fn half_boundary(x: &CellComplex, phi: &ConstructibleFunction, w: &[usize]) -> Result<HalfValues, EulerError> {
    phi.check(x)?;
    let support: Vec<usize> = phi.support().collect();
    let Some(k) = support.iter().map(|&c| x.dim(c)).max() else {
        return Ok(HalfValues { doubled: w.iter().map(|&c| (c, 0)).collect() });
    };
    let closed = x.closure(support.iter().copied());
    for &c in w {
        if c >= x.len() || x.dim(c) + 1 != k || !closed[c] {
            return Err(EulerError::Invalid(format!(
                "cell #{c} of W is not of codimension one in the support of the function"
            )));
        }
    }
    let doubled = w
        .iter()
        .map(|&c| {
            let total: i64 = x.cofaces(c).iter().filter(|&&z| x.dim(z) == k).map(|&z| phi.values[z]).sum();
            (c, total)
        })
        .collect();
    Ok(HalfValues { doubled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::complex::circle_two_cells;

    fn edge() -> CellComplex {
        CellComplex::from_simplices(2, &[vec![0, 1]]).unwrap()
    }

    #[test]
    fn link_of_closed_edge() {
        let x = edge();
        let l = link(&x, &ConstructibleFunction::constant(&x, 1));
        assert_eq!(l.values, vec![1, 1, 2]);
        assert_eq!(link(&x, &ConstructibleFunction::zero(&x)), ConstructibleFunction::zero(&x));
    }

    #[test]
    fn link_of_circle_is_two() {
        let x = CellComplex::from_simplices(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let l = link(&x, &ConstructibleFunction::constant(&x, 1));
        assert!(l.values.iter().all(|&v| v == 2));
        let c2 = circle_two_cells();
        assert!(link(&c2, &ConstructibleFunction::constant(&c2, 1)).values.iter().all(|&v| v == 2));
    }

    #[test]
    fn boundaries() {
        let x = edge();
        let e = x.simplex(&[0, 1]).unwrap();
        let b = chain_boundary(&x, &CellChain::new(&x, 1, [e]).unwrap());
        assert_eq!(b.members, [0, 1].into_iter().collect());
        let circle = CellComplex::from_simplices(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(chain_boundary(&circle, &CellChain::fundamental(&circle, 1)).is_zero());
        let disk = CellComplex::from_simplices(4, &[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
        let t = disk.simplex(&[0, 1, 2]).unwrap();
        let b = chain_boundary(&disk, &CellChain::new(&disk, 2, [t]).unwrap());
        let expected: BTreeSet<usize> =
            [[0, 1], [1, 2], [0, 2]].iter().map(|s| disk.simplex(s).unwrap()).collect();
        assert_eq!(b.members, expected);
    }

    #[test]
    fn fold_on_circle() {
        let x = circle_two_cells();
        let (plus, minus) = (x.find("+").unwrap(), x.find("-").unwrap());
        let mut a: Vec<usize> = (0..4).collect();
        a[minus] = plus;
        let f = CellMap::new(&x, &x, a).unwrap();
        let pushed = pushforward_cf(&f, &x, &x, &ConstructibleFunction::constant(&x, 1)).unwrap();
        assert_eq!(pushed.get(plus), 2);
        assert_eq!(pushed.get(minus), 0);
        assert_eq!(pushed.get(x.find("0").unwrap()), 1);
        assert_eq!(pushed.get(x.find("inf").unwrap()), 1);
        let fundamental = CellChain::fundamental(&x, 1);
        assert!(pushforward_chain(&f, &x, &x, &fundamental).unwrap().is_zero());
    }

    #[test]
    fn averaging_on_circle() {
        let x = circle_two_cells();
        let (plus, minus) = (x.find("+").unwrap(), x.find("-").unwrap());
        let w = [x.find("0").unwrap(), x.find("inf").unwrap()];
        let mut phi = ConstructibleFunction::zero(&x);
        phi.values[plus] = 2;
        phi.values[minus] = 2;
        let h = half_boundary(&x, &phi, &w).unwrap();
        assert!(w.iter().all(|&c| h.as_integer(c) == Some(2)));
        phi.values[minus] = 0;
        let h = half_boundary(&x, &phi, &w).unwrap();
        assert!(w.iter().all(|&c| h.as_integer(c) == Some(1)));
        let h = half_boundary(&x, &ConstructibleFunction::zero(&x), &w).unwrap();
        assert!(w.iter().all(|&c| h.as_integer(c) == Some(0)));
        assert!(half_boundary(&x, &phi, &[plus]).is_err());
    }

    #[test]
    fn restriction_to_punctured_circle() {
        let x = circle_two_cells();
        let open: Vec<bool> = (0..4).map(|c| c != x.find("0").unwrap()).collect();
        let fundamental = CellChain::fundamental(&x, 1);
        let r = restrict(&x, &fundamental, &open).unwrap();
        assert_eq!(r.chain.members.len(), 2);
        assert_eq!(closure(&r), fundamental);
        let b = open_boundary(&x, &r);
        assert!(b.chain.is_zero());
        let closed_vertex: Vec<bool> = (0..4).map(|c| c == 0).collect();
        assert!(matches!(restrict(&x, &fundamental, &closed_vertex), Err(EulerError::NotOpen)));
    }
}
