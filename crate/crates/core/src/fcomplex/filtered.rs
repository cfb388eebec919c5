use std::fmt;

use crate::exactalg::{BitMatrix, BitSubspace};

use super::chain::ChainComplex;
use super::FcomplexError;

/// A chain complex with an increasing bounded filtration by subcomplexes.
///
/// Levels are stored for `p_min ..= p_max`; below `p_min` every level is
/// zero and above `p_max` every level is the whole space. A valid complex
/// also has `F_{p_max} = K`. An empty range (`p_min > p_max`) is only
/// valid for the zero complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FilteredComplex {
    complex: ChainComplex,
    p_min: i32,
    p_max: i32,
    levels: Vec<Vec<BitSubspace>>,
}

/// One violated invariant of a filtered complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Diagnostic {
    BoundarySquare { degree: i32 },
    NotNested { p: i32, degree: i32 },
    NotSubcomplex { p: i32, degree: i32 },
    NotExhaustive { degree: i32 },
    EmptyRange,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::BoundarySquare { degree } => write!(f, "boundary squares to nonzero from degree {degree}"),
            Diagnostic::NotNested { p, degree } => write!(f, "F_{} is not contained in F_{p} in degree {degree}", p - 1),
            Diagnostic::NotSubcomplex { p, degree } => write!(f, "boundary does not preserve F_{p} in degree {degree}"),
            Diagnostic::NotExhaustive { degree } => write!(f, "top filtration level is not the whole space in degree {degree}"),
            Diagnostic::EmptyRange => write!(f, "empty filtration range on a nonzero complex"),
        }
    }
}

impl FilteredComplex {
    /// `level(p, k)` is called for every `p` in range and every degree.
    pub fn from_fn(
        complex: ChainComplex,
        p_min: i32,
        p_max: i32,
        mut level: impl FnMut(i32, i32) -> BitSubspace,
    ) -> Result<Self, FcomplexError> {
        let mut levels = Vec::new();
        if p_min <= p_max {
            for p in p_min..=p_max {
                let mut row = Vec::new();
                for k in complex.degrees() {
                    let s = level(p, k);
                    if s.ambient_dim() != complex.dim(k) {
                        return Err(FcomplexError::Shape(format!(
                            "F_{p} in degree {k} lives in dimension {}, expected {}",
                            s.ambient_dim(),
                            complex.dim(k)
                        )));
                    }
                    row.push(s);
                }
                levels.push(row);
            }
        }
        Ok(Self { complex, p_min, p_max, levels })
    }

    /// The filtration with a single jump: `F_p = 0` for `p < jump`, `K` otherwise.
    pub fn trivial(complex: ChainComplex, jump: i32) -> Self {
        let c = complex.clone();
        Self::from_fn(complex, jump, jump, |_, k| BitSubspace::full(c.dim(k))).expect("full levels fit")
    }

    /// The empty filtered complex.
    pub fn zero() -> Self {
        Self {
            complex: ChainComplex::zero(),
            p_min: 0,
            p_max: -1,
            levels: Vec::new(),
        }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn p_range(&self) -> Option<(i32, i32)> {
        (self.p_min <= self.p_max).then_some((self.p_min, self.p_max))
    }

    pub fn is_empty(&self) -> bool {
        self.complex.total_dim() == 0 || self.p_range().is_none()
    }

    /// `F_p K_k`.
    pub fn level(&self, p: i32, k: i32) -> BitSubspace {
        let dim = self.complex.dim(k);
        if self.p_min > self.p_max || p > self.p_max {
            return BitSubspace::full(dim);
        }
        if p < self.p_min {
            return BitSubspace::zero(dim);
        }
        let ki = k - self.complex.k_min();
        if ki < 0 || ki as usize >= self.levels[0].len() {
            return BitSubspace::zero(0);
        }
        self.levels[(p - self.p_min) as usize][ki as usize].clone()
    }

    /// Every violated invariant, with coordinates; empty iff valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out: Vec<Diagnostic> = self
            .complex
            .square_violations()
            .into_iter()
            .map(|degree| Diagnostic::BoundarySquare { degree })
            .collect();
        let Some((p_min, p_max)) = self.p_range() else {
            if self.complex.total_dim() > 0 {
                out.push(Diagnostic::EmptyRange);
            }
            return out;
        };
        for k in self.complex.degrees() {
            let d = self.complex.boundary(k);
            for p in p_min..=p_max {
                let fp = self.level(p, k);
                if !self.level(p - 1, k).is_subspace_of(&fp) {
                    out.push(Diagnostic::NotNested { p, degree: k });
                }
                let image = fp.image_under(&d).expect("boundary shape matches level");
                if !image.is_subspace_of(&self.level(p, k - 1)) {
                    out.push(Diagnostic::NotSubcomplex { p, degree: k });
                }
            }
            if !self.level(p_max, k).is_full() {
                out.push(Diagnostic::NotExhaustive { degree: k });
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), FcomplexError> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            Err(FcomplexError::Invalid(diags))
        }
    }

    /// Same complex, same levels, indices moved: `F'_p = F_{p - shift}`.
    pub fn shifted_filtration(&self, shift: i32) -> FilteredComplex {
        FilteredComplex {
            complex: self.complex.clone(),
            p_min: self.p_min + shift,
            p_max: self.p_max + shift,
            levels: self.levels.clone(),
        }
    }

    /// Transports the filtered complex along invertible degreewise maps `A_k`:
    /// `F'_p = A(F_p)` and `∂' = A ∂ A⁻¹`.
    pub fn change_basis(&self, change: &[BitMatrix]) -> FilteredComplex {
        let complex = self.complex.conjugated(change);
        let levels = self
            .levels
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(i, s)| s.image_under(&change[i]).expect("change of basis shape"))
                    .collect()
            })
            .collect();
        FilteredComplex { complex, p_min: self.p_min, p_max: self.p_max, levels }
    }

    /// Graded piece dimensions `dim F_p K_k / F_{p-1} K_k`.
    pub fn graded_dim(&self, p: i32, k: i32) -> usize {
        self.level(p, k).dim() - self.level(p - 1, k).dim()
    }
}

/// `F_p K_q = K_q` if `q > -p`, `ker ∂_q` if `q = -p`, `0` if `q < -p`.
pub fn canonical_filtration(c: &ChainComplex) -> Result<FilteredComplex, FcomplexError> {
    let squares = c.square_violations();
    if !squares.is_empty() {
        return Err(FcomplexError::Invalid(
            squares.into_iter().map(|degree| Diagnostic::BoundarySquare { degree }).collect(),
        ));
    }
    if c.is_empty() {
        return Ok(FilteredComplex::from_fn(c.clone(), 0, -1, |_, _| unreachable!())?);
    }
    FilteredComplex::from_fn(c.clone(), -c.k_max(), -c.k_min(), |p, q| {
        use std::cmp::Ordering::*;
        match q.cmp(&-p) {
            Greater => BitSubspace::full(c.dim(q)),
            Equal => c.cycles(q),
            Less => BitSubspace::zero(c.dim(q)),
        }
    })
}

/// `(Dec F)_m C_k = ker[∂: F_{m+k} C_k → C_{k-1} / F_{m+k-1} C_{k-1}]`.
pub fn deligne_shift(fc: &FilteredComplex) -> Result<FilteredComplex, FcomplexError> {
    fc.ensure_valid()?;
    let c = fc.complex();
    let Some((p_min, p_max)) = fc.p_range().filter(|_| !c.is_empty()) else {
        return FilteredComplex::from_fn(c.clone(), 0, -1, |_, _| unreachable!());
    };
    FilteredComplex::from_fn(c.clone(), p_min - c.k_max(), p_max - c.k_min() + 1, |m, k| {
        let upper = fc.level(m + k, k);
        if upper.is_zero() {
            return upper;
        }
        let lower = fc.level(m + k - 1, k - 1);
        let pre = BitSubspace::preimage(&c.boundary(k), &lower).expect("boundary shape");
        upper.intersect(&pre).expect("same ambient")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::BitVec;

    fn circle() -> ChainComplex {
        let d1 = BitMatrix::from_entries(2, 2, &[(0, 0), (1, 0), (0, 1), (1, 1)]);
        ChainComplex::new(0, vec![2, 2], [(1, d1)]).unwrap()
    }

    #[test]
    fn zero_complex_validates() {
        assert!(FilteredComplex::zero().validate().is_empty());
        assert!(canonical_filtration(&ChainComplex::zero()).unwrap().validate().is_empty());
    }

    #[test]
    fn injected_square_violation_names_degree() {
        // C_2 -> C_1 -> C_0 with both maps the identity on one dimension
        let c = ChainComplex::new(0, vec![1, 1, 1], [(1, BitMatrix::identity(1)), (2, BitMatrix::identity(1))]).unwrap();
        let fc = FilteredComplex::trivial(c.clone(), 0);
        assert_eq!(fc.validate(), vec![Diagnostic::BoundarySquare { degree: 2 }]);
        assert!(canonical_filtration(&c).is_err());
    }

    #[test]
    fn non_nested_and_non_subcomplex_detected() {
        let c = circle();
        let e0 = BitVec::unit(2, 0);
        // F_0 C_1 = <e0> but F_0 C_0 = 0: the boundary leaves the level
        let fc = FilteredComplex::from_fn(c.clone(), 0, 1, |p, k| match (p, k) {
            (0, 1) => BitSubspace::span(2, [e0.clone()]),
            (0, 0) => BitSubspace::zero(2),
            _ => BitSubspace::full(2),
        })
        .unwrap();
        assert_eq!(fc.validate(), vec![Diagnostic::NotSubcomplex { p: 0, degree: 1 }]);
        let fc = FilteredComplex::from_fn(c, 0, 1, |p, k| match (p, k) {
            (0, _) => BitSubspace::full(2),
            (1, 1) => BitSubspace::span(2, [e0.clone()]),
            _ => BitSubspace::full(2),
        })
        .unwrap();
        let diags = fc.validate();
        assert!(diags.contains(&Diagnostic::NotNested { p: 1, degree: 1 }));
        assert!(diags.contains(&Diagnostic::NotExhaustive { degree: 1 }));
    }

    #[test]
    fn canonical_of_zero_differential_complex() {
        let c = ChainComplex::graded(0, vec![2, 3, 1]);
        let fc = canonical_filtration(&c).unwrap();
        for k in 0..3 {
            assert!(fc.level(-k, k).is_full());
            assert!(fc.level(-k - 1, k).is_zero());
        }
    }

    #[test]
    fn canonical_of_point() {
        let fc = canonical_filtration(&ChainComplex::graded(0, vec![1])).unwrap();
        assert_eq!(fc.p_range(), Some((0, 0)));
        assert!(fc.level(0, 0).is_full());
        assert!(fc.level(-1, 0).is_zero());
    }

    #[test]
    fn deligne_of_zero_differential_is_shifted_levels() {
        let c = ChainComplex::graded(0, vec![2, 2]);
        let fc = FilteredComplex::from_fn(c.clone(), -1, 0, |p, k| {
            if p == -1 { BitSubspace::coordinate(2, [k as usize]) } else { BitSubspace::full(2) }
        })
        .unwrap();
        let dec = deligne_shift(&fc).unwrap();
        assert!(dec.validate().is_empty());
        for m in -4..4 {
            for k in 0..2 {
                assert_eq!(dec.level(m, k), fc.level(m + k, k), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn deligne_of_single_jump_is_canonical() {
        let c = circle();
        let dec = deligne_shift(&FilteredComplex::trivial(c.clone(), 0)).unwrap();
        let can = canonical_filtration(&c).unwrap();
        for m in -4..4 {
            for k in 0..2 {
                assert_eq!(dec.level(m, k), can.level(m, k));
            }
        }
    }
}
