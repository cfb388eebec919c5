use super::bits::BitVec;
use super::matrix::BitMatrix;
use super::DimensionError;

/// A linear subspace of GF(2)^n held in reduced row echelon form.
///
/// Pivots are the lowest set bit of each basis vector, basis vectors are
/// sorted by pivot, and every pivot column is zero in all other basis
/// vectors. The form is unique, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSubspace {
    ambient: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl BitSubspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: (0..ambient).map(|i| BitVec::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = BitVec>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(ambient, indices.into_iter().map(|i| BitVec::unit(ambient, i)))
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace. The result is zero on every pivot
    /// column, and the map `v ↦ reduce(v)` is linear.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.ambient, "vector not in ambient space");
        let mut v = v.clone();
        for (p, b) in self.pivots.iter().zip(&self.basis) {
            if v.get(*p) {
                v.xor_assign(b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(&v);
        let Some(p) = v.lowest_one() else {
            return false;
        };
        for b in self.basis.iter_mut() {
            if b.get(p) {
                b.xor_assign(&v);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.basis.insert(pos, v);
        true
    }

    pub fn is_subspace_of(&self, other: &BitSubspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_ambient(&self, other: &BitSubspace, context: &'static str) -> Result<(), DimensionError> {
        if self.ambient != other.ambient {
            Err(DimensionError::new(context, self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &BitSubspace) -> Result<BitSubspace, DimensionError> {
        self.check_ambient(other, "subspace sum")?;
        let mut out = self.clone();
        for b in &other.basis {
            out.insert(b.clone());
        }
        Ok(out)
    }

    /// Intersection via the kernel of the stacked basis matrix `[A | B]`:
    /// every kernel vector `(x, y)` gives a common element `A x = B y`.
    pub fn intersect(&self, other: &BitSubspace) -> Result<BitSubspace, DimensionError> {
        self.check_ambient(other, "subspace intersection")?;
        if self.is_zero() || other.is_zero() {
            return Ok(BitSubspace::zero(self.ambient));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let columns: Vec<BitVec> = self.basis.iter().chain(&other.basis).cloned().collect();
        let stacked = BitMatrix::from_columns(self.ambient, &columns);
        let kernel = stacked.kernel();
        let a = self.dim();
        let common = kernel.basis().iter().map(|k| {
            let mut v = BitVec::zeros(self.ambient);
            for i in k.ones().filter(|&i| i < a) {
                v.xor_assign(&self.basis[i]);
            }
            v
        });
        Ok(BitSubspace::span(self.ambient, common))
    }

    /// Image `m(self)` in the row space of `m`.
    pub fn image_under(&self, m: &BitMatrix) -> Result<BitSubspace, DimensionError> {
        if m.cols() != self.ambient {
            return Err(DimensionError::new("image under matrix", m.cols(), self.ambient));
        }
        Ok(BitSubspace::span(m.rows(), self.basis.iter().map(|b| m.apply(b))))
    }

    /// `{x : m x ∈ target}`.
    pub fn preimage(m: &BitMatrix, target: &BitSubspace) -> Result<BitSubspace, DimensionError> {
        if m.rows() != target.ambient {
            return Err(DimensionError::new("preimage", m.rows(), target.ambient));
        }
        if target.is_full() {
            return Ok(BitSubspace::full(m.cols()));
        }
        // compose m with the quotient map onto the non-pivot coordinates of target
        let mut is_pivot = vec![false; target.ambient];
        for &p in &target.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..target.ambient).filter(|&i| !is_pivot[i]).collect();
        let projected: Vec<BitVec> = m
            .columns()
            .iter()
            .map(|c| {
                let r = target.reduce(c);
                BitVec::from_bools(free.iter().map(|&i| r.get(i)))
            })
            .collect();
        Ok(BitMatrix::from_columns(free.len(), &projected).kernel())
    }

    /// `dim(self / sub)`, assuming `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &BitSubspace) -> usize {
        debug_assert!(sub.is_subspace_of(self));
        self.dim() - sub.dim()
    }

    /// Image under the coordinate projection onto `coords` (in that order).
    pub fn project(&self, coords: &[usize]) -> BitSubspace {
        BitSubspace::span(
            coords.len(),
            self.basis.iter().map(|b| BitVec::from_bools(coords.iter().map(|&i| b.get(i)))),
        )
    }

    /// Vectors supported on `coords`, written in those coordinates.
    pub fn restrict_to(&self, coords: &[usize]) -> BitSubspace {
        self.intersect(&BitSubspace::coordinate(self.ambient, coords.iter().copied()))
            .expect("same ambient")
            .project(coords)
    }

    /// All vectors of the subspace. Only sensible for small dimensions.
    pub fn elements(&self) -> Vec<BitVec> {
        assert!(self.dim() < 24, "refusing to enumerate a subspace of dimension {}", self.dim());
        (0u64..(1u64 << self.dim()))
            .map(|mask| {
                let mut v = BitVec::zeros(self.ambient);
                for (i, b) in self.basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v.xor_assign(b);
                    }
                }
                v
            })
            .collect()
    }
}

/// Canonical basis of a quotient `Z / B` with `B ⊆ Z`.
///
/// Representatives are the vectors of `Z` reduced modulo `B` and put in
/// reduced echelon form; their pivots avoid the pivots of `B`, so the
/// coordinates of any class are read off at the representative pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    modulus: BitSubspace,
    reps: BitSubspace,
}

impl QuotientBasis {
    pub fn new(numerator: &BitSubspace, modulus: &BitSubspace) -> Self {
        debug_assert!(modulus.is_subspace_of(numerator), "quotient modulus not contained in numerator");
        let reps = BitSubspace::span(
            numerator.ambient,
            numerator.basis.iter().map(|z| modulus.reduce(z)),
        );
        Self {
            modulus: modulus.clone(),
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn representatives(&self) -> &[BitVec] {
        self.reps.basis()
    }

    /// Coordinates of the class of `x` (which must lie in the numerator).
    pub fn coords(&self, x: &BitVec) -> BitVec {
        let r = self.modulus.reduce(x);
        let c = BitVec::from_bools(self.reps.pivots.iter().map(|&p| r.get(p)));
        debug_assert!(self.reps.reduce(&r).is_zero(), "vector not in quotient numerator");
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVec {
        BitVec::parse_bit_string(s).unwrap()
    }

    #[test]
    fn idempotent_lattice_ops() {
        let a = BitSubspace::span(3, [v("110"), v("011")]);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn coordinate_axes_meet_in_zero() {
        let a = BitSubspace::coordinate(2, [0]);
        let b = BitSubspace::coordinate(2, [1]);
        assert_eq!(a.sum(&b).unwrap(), BitSubspace::full(2));
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn three_dim_intersection_by_enumeration() {
        // a = <e1+e2, e3>, b = <e2+e3, e1>; enumerate both spans
        let a = BitSubspace::span(3, [v("110"), v("001")]);
        let b = BitSubspace::span(3, [v("011"), v("100")]);
        let ea = a.elements();
        let common: Vec<BitVec> = b.elements().into_iter().filter(|x| ea.contains(x)).collect();
        assert_eq!(common.len(), 2);
        let expected = BitSubspace::span(3, common);
        assert_eq!(expected, BitSubspace::span(3, [v("111")]));
        assert_eq!(a.intersect(&b).unwrap(), expected);
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = BitSubspace::full(2);
        let b = BitSubspace::full(3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn preimage_special_cases() {
        let m = BitMatrix::from_entries(2, 2, &[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(BitSubspace::preimage(&m, &BitSubspace::full(2)).unwrap(), BitSubspace::full(2));
        assert_eq!(BitSubspace::preimage(&m, &BitSubspace::zero(2)).unwrap(), m.kernel());
        // target = <v+ + v->: every edge chain maps into it
        let target = BitSubspace::span(2, [v("11")]);
        let pre = BitSubspace::preimage(&m, &target).unwrap();
        let brute = (0u8..4)
            .map(|b| BitVec::from_bools([b & 1 == 1, b & 2 == 2]))
            .filter(|x| target.contains(&m.apply(x)))
            .count();
        assert_eq!(brute, 4);
        assert_eq!(pre, BitSubspace::full(2));
        assert!(BitSubspace::preimage(&m, &BitSubspace::full(3)).is_err());
    }

    #[test]
    fn quotient_coordinates() {
        let z = BitSubspace::full(3);
        let b = BitSubspace::span(3, [v("110")]);
        let q = QuotientBasis::new(&z, &b);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.coords(&v("110")), BitVec::zeros(2));
        assert_eq!(q.coords(&v("100")), q.coords(&v("010")));
        assert!(!q.coords(&v("001")).is_zero());
    }
}
