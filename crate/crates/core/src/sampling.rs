//! Seeded random inputs for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::euler::{CellChain, CellComplex, ConstructibleFunction};
use crate::exactalg::BitMatrix;
use crate::fcomplex::{AdaptedComplex, ChainComplex, FilteredComplex};

/// A random simplicial complex on at most `max_vertices` vertices, generated
/// by up to `max_facets` random simplices of dimension at most `max_dim`.
pub fn simplicial_complex<R: Rng>(rng: &mut R, max_vertices: usize, max_facets: usize, max_dim: usize) -> CellComplex {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let count = rng.gen_range(1..=max_facets.max(1));
    let mut facets = Vec::with_capacity(count);
    let all: Vec<usize> = (0..n).collect();
    for _ in 0..count {
        let size = rng.gen_range(1..=(max_dim + 1).min(n));
        let mut s: Vec<usize> = all.choose_multiple(rng, size).copied().collect();
        s.sort_unstable();
        facets.push(s);
    }
    CellComplex::from_simplices(n, &facets).expect("random simplices are valid")
}

/// Values drawn uniformly from `-bound ..= bound`.
pub fn constructible_function<R: Rng>(rng: &mut R, x: &CellComplex, bound: i64) -> ConstructibleFunction {
    ConstructibleFunction { values: (0..x.len()).map(|_| rng.gen_range(-bound..=bound)).collect() }
}

/// A random `k`-chain, each `k`-cell included with probability one half.
pub fn chain<R: Rng>(rng: &mut R, x: &CellComplex, k: usize) -> CellChain {
    let members = x.cells_of_dim(k).iter().copied().filter(|_| rng.gen_bool(0.5));
    CellChain::new(x, k, members).expect("cells of the right dimension")
}

/// A random invertible `n × n` matrix over ℤ₂: a product of a random
/// permutation and unipotent lower and upper factors.
pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> BitMatrix {
    let mut lower = BitMatrix::identity(n);
    let mut upper = BitMatrix::identity(n);
    for r in 0..n {
        for c in 0..r {
            lower.set(r, c, rng.gen_bool(0.5));
            upper.set(c, r, rng.gen_bool(0.5));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = BitMatrix::from_entries(n, n, &perm.iter().enumerate().map(|(i, &j)| (i, j)).collect::<Vec<_>>());
    p.mul(&lower).mul(&upper)
}

/// A random basis change on every degree of `fc`.
pub fn change_of_basis<R: Rng>(rng: &mut R, fc: &FilteredComplex) -> Vec<BitMatrix> {
    fc.complex().degrees().map(|k| invertible(rng, fc.complex().dim(k))).collect()
}

/// A random bounded filtered complex in degrees `0 ..= degrees - 1` and
/// filtration degrees `-width ..= 0`.
///
/// Every filtered complex over a field is a sum of one-dimensional pieces
/// and two-dimensional pieces `x ↦ y` with `y` in no higher a filtration
/// degree than `x`; this draws such a sum and then hides it under a
/// filtration-preserving and then an arbitrary basis change.
pub fn filtered_complex<R: Rng>(rng: &mut R, degrees: usize, max_dim: usize, width: i32) -> FilteredComplex {
    let degrees = degrees.max(1);
    let dims: Vec<usize> = (0..degrees).map(|_| rng.gen_range(0..=max_dim)).collect();
    let weights: Vec<Vec<i32>> = dims.iter().map(|&d| (0..d).map(|_| rng.gen_range(-width..=0)).collect()).collect();
    // pair generators of degree k with unused generators of degree k - 1
    let mut used: Vec<Vec<bool>> = dims.iter().map(|&d| vec![false; d]).collect();
    let mut maps = Vec::new();
    for k in 1..degrees {
        let mut m = BitMatrix::zeros(dims[k - 1], dims[k]);
        for x in 0..dims[k] {
            if used[k][x] || !rng.gen_bool(0.6) {
                continue;
            }
            let free: Vec<usize> =
                (0..dims[k - 1]).filter(|&y| !used[k - 1][y] && weights[k - 1][y] <= weights[k][x]).collect();
            if let Some(&y) = free.choose(rng) {
                used[k][x] = true;
                used[k - 1][y] = true;
                m.set(y, x, true);
            }
        }
        maps.push((k as i32, m));
    }
    let c = ChainComplex::new(0, dims.clone(), maps).expect("paired complex");
    // unipotent for the order by (weight, index), so it preserves the filtration
    let change: Vec<BitMatrix> = weights
        .iter()
        .map(|w| {
            let n = w.len();
            let mut a = BitMatrix::identity(n);
            for r in 0..n {
                for col in 0..n {
                    if (w[r], r) < (w[col], col) && rng.gen_bool(0.3) {
                        a.set(r, col, true);
                    }
                }
            }
            a
        })
        .collect();
    let c = c.conjugated(&change);
    let adapted = AdaptedComplex::new(c, weights).expect("paired complex is filtered");
    let fc = adapted.to_filtered();
    let outer = change_of_basis(rng, &fc);
    fc.change_basis(&outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_filtered_complexes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let fc = filtered_complex(&mut rng, 4, 5, 3);
            assert!(fc.validate().is_empty());
        }
    }

    #[test]
    fn invertible_is_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..12 {
            assert!(invertible(&mut rng, n).inverse().is_some());
        }
    }
}
