//! Exact linear algebra over GF(2) and over the integers.
//!
//! Everything homological in the crate reduces to [`BitMatrix`] and
//! [`BitSubspace`] arithmetic. Integer matrices only appear when computing
//! lattice data of fans.

mod bits;
mod integer;
mod matrix;
mod subspace;

pub use bits::BitVec;
pub use integer::{saturate_mod2, IntMatrix, SmithForm};
pub use matrix::BitMatrix;
pub use subspace::{BitSubspace, QuotientBasis};

/// Two operands whose dimensions were required to agree did not.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimension mismatch in {context}: {left} vs {right}")]
pub struct DimensionError {
    pub context: &'static str,
    pub left: usize,
    pub right: usize,
}

impl DimensionError {
    pub fn new(context: &'static str, left: usize, right: usize) -> Self {
        Self { context, left, right }
    }
}

/// Rank, kernel and image of `m`.
pub fn rank_kernel_image(m: &BitMatrix) -> (usize, BitSubspace, BitSubspace) {
    m.rank_kernel_image()
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    m.smith_normal_form()
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn subspace_strategy(n: usize) -> impl Strategy<Value = BitSubspace> {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), 0..=n)
            .prop_map(move |vs| BitSubspace::span(n, vs.into_iter().map(BitVec::from_bools)))
    }

    fn pair_strategy() -> impl Strategy<Value = (BitSubspace, BitSubspace)> {
        (1usize..=12).prop_flat_map(|n| (subspace_strategy(n), subspace_strategy(n)))
    }

    fn matrix_strategy() -> impl Strategy<Value = BitMatrix> {
        (0usize..10, 0usize..10).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(any::<bool>(), c), r)
                .prop_map(move |rows| BitMatrix::from_rows(c, rows.into_iter().map(BitVec::from_bools).collect()))
        })
    }

    proptest! {
        #[test]
        fn modular_law_against_enumeration((a, b) in pair_strategy()) {
            let sum = a.sum(&b).unwrap();
            let meet = a.intersect(&b).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
            // brute force: the intersection is exactly the common elements
            let eb = b.elements();
            let common = a.elements().into_iter().filter(|x| eb.contains(x)).count();
            prop_assert_eq!(common, 1usize << meet.dim());
            prop_assert!(meet.is_subspace_of(&a) && meet.is_subspace_of(&b));
            prop_assert!(a.is_subspace_of(&sum) && b.is_subspace_of(&sum));
        }

        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let (rank, kernel, image) = m.rank_kernel_image();
            prop_assert_eq!(rank + kernel.dim(), m.cols());
            prop_assert_eq!(rank, image.dim());
            for k in kernel.basis() {
                prop_assert!(m.apply(k).is_zero());
            }
        }

        #[test]
        fn preimage_contains_kernel(m in matrix_strategy(), bits in prop::collection::vec(any::<bool>(), 0..10)) {
            let target = BitSubspace::span(m.rows(), bits.chunks(m.rows().max(1)).filter(|c| c.len() == m.rows()).map(|c| BitVec::from_bools(c.iter().copied())));
            let pre = BitSubspace::preimage(&m, &target).unwrap();
            prop_assert!(m.kernel().is_subspace_of(&pre));
            for x in pre.basis() {
                prop_assert!(target.contains(&m.apply(x)));
            }
            // dimension count: dim pre = dim ker + dim(im ∩ target)
            let meet = m.image().intersect(&target).unwrap();
            prop_assert_eq!(pre.dim(), m.kernel().dim() + meet.dim());
        }

        #[test]
        fn saturation_dimension_is_rational_rank(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 0..5)) {
            let m = IntMatrix::from_i64_rows(3, &rows);
            let snf = m.smith_normal_form();
            prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
            prop_assert_eq!(saturate_mod2(&m, 3).dim(), snf.rank);
        }
    }
}
