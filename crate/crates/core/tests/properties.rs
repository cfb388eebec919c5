//! Randomized invariants. Inputs come from seeded generators so that a
//! failing case is reproducible from the reported seed.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weightlab::checks::{convergence, deligne_comparison, page_recursion};
use weightlab::cubical::{is_acyclic, simple_filtered, CubicalDiagram};
use weightlab::euler::{
    chain_boundary, closure, euler_integral, incidence_boundary, link, open_boundary, pushforward_cf,
    pushforward_chain, restrict, CellChain,
};
use weightlab::exactalg::BitMatrix;
use weightlab::fcomplex::{pages, reindex, AdaptedComplex, ChainMap, FilteredComplex};
use weightlab::fixtures::torus_fold;
use weightlab::sampling;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_filtered(seed: u64) -> FilteredComplex {
    let mut r = rng(seed);
    let degrees = r.gen_range(1..=4);
    sampling::filtered_complex(&mut r, degrees, 5, 3)
}

fn dims(fc: &FilteredComplex) -> BTreeMap<i32, BTreeMap<(i32, i32), usize>> {
    pages(fc).unwrap().pages.iter().map(|(&r, p)| (r, p.dims())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pages_converge_to_homology(seed in any::<u64>()) {
        let fc = random_filtered(seed);
        let ps = pages(&fc).unwrap();
        prop_assert_eq!(convergence(&fc, &ps), Ok(()));
    }

    #[test]
    fn differentials_square_to_zero_and_pages_recurse(seed in any::<u64>()) {
        let ps = pages(&random_filtered(seed)).unwrap();
        prop_assert_eq!(page_recursion(&ps), Ok(()));
    }

    #[test]
    fn pages_ignore_the_basis(seed in any::<u64>()) {
        let fc = random_filtered(seed);
        let change = sampling::change_of_basis(&mut rng(seed ^ 0x9e37), &fc);
        prop_assert_eq!(dims(&fc), dims(&fc.change_basis(&change)));
    }

    #[test]
    fn deligne_shift_moves_pages(seed in any::<u64>()) {
        prop_assert_eq!(deligne_comparison(&random_filtered(seed)), Ok(()));
    }

    #[test]
    fn reindexing_keeps_total_degree(seed in any::<u64>()) {
        let ps = pages(&random_filtered(seed)).unwrap();
        let tilde = reindex(&ps);
        for (&r, page) in &ps.pages {
            let moved = &tilde.pages[&(r + 1)];
            prop_assert_eq!(moved.entries.len(), page.entries.len());
            for (&(p, q), e) in &page.entries {
                let (p1, q1) = (2 * p + q, -p);
                prop_assert_eq!(p1 + q1, p + q);
                prop_assert_eq!(moved.dim(p1, q1), e.dim);
            }
        }
    }

    #[test]
    fn adapted_first_page_matches(seed in any::<u64>()) {
        let fc = random_filtered(seed);
        let fast = AdaptedComplex::from_filtered(&fc).unwrap().first_page_dims();
        let slow = pages(&fc).unwrap().page(1).map(|p| p.dims()).unwrap_or_default();
        let nonzero = |m: BTreeMap<(i32, i32), usize>| m.into_iter().filter(|(_, d)| *d > 0).collect::<BTreeMap<_, _>>();
        prop_assert_eq!(nonzero(fast), nonzero(slow));
    }

    #[test]
    fn link_twice_is_twice_link(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = sampling::simplicial_complex(&mut r, 7, 6, 3);
        let phi = sampling::constructible_function(&mut r, &x, 5);
        let once = link(&x, &phi);
        prop_assert_eq!(link(&x, &once), once.scaled(2));
    }

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = sampling::simplicial_complex(&mut r, 7, 6, 3);
        let top = x.top_dim().unwrap();
        let k = r.gen_range(0..=top);
        let c = sampling::chain(&mut r, &x, k);
        let b = chain_boundary(&x, &c);
        prop_assert!(chain_boundary(&x, &b).is_zero());
        prop_assert_eq!(b, incidence_boundary(&x, &c));
    }

    #[test]
    fn boundary_commutes_with_open_restriction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = sampling::simplicial_complex(&mut r, 7, 6, 3);
        let k = r.gen_range(0..=x.top_dim().unwrap());
        let c = sampling::chain(&mut r, &x, k);
        let removed: Vec<usize> = (0..x.len()).filter(|_| r.gen_bool(0.2)).collect();
        let open: Vec<bool> = x.closure(removed).into_iter().map(|closed| !closed).collect();
        let u = restrict(&x, &c, &open).unwrap();
        let inside = open_boundary(&x, &u);
        prop_assert_eq!(&inside, &restrict(&x, &chain_boundary(&x, &c), &open).unwrap());
        prop_assert!(closure(&u).members.iter().all(|m| c.members.contains(m)));
    }

    #[test]
    fn fold_pushforwards_compose(k in 1usize..=3, a in 0usize..8, b in 0usize..8, seed in any::<u64>()) {
        let (x, f) = torus_fold(k, a % (1 << k));
        let (_, g) = torus_fold(k, b % (1 << k));
        let mut r = rng(seed);
        let phi = sampling::constructible_function(&mut r, &x, 4);
        let gf = f.then(&g);
        let stepwise = pushforward_cf(&g, &x, &x, &pushforward_cf(&f, &x, &x, &phi).unwrap()).unwrap();
        prop_assert_eq!(pushforward_cf(&gf, &x, &x, &phi).unwrap(), stepwise.clone());
        prop_assert_eq!(euler_integral(&x, &stepwise), euler_integral(&x, &phi));

        let degree = r.gen_range(0..=k);
        let c = sampling::chain(&mut r, &x, degree);
        let pushed = pushforward_chain(&g, &x, &x, &pushforward_chain(&f, &x, &x, &c).unwrap()).unwrap();
        prop_assert_eq!(pushforward_chain(&gf, &x, &x, &c).unwrap(), pushed);
    }

    #[test]
    fn swapping_square_indices_keeps_the_pages(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = sampling::filtered_complex(&mut r, 3, 4, 2);
        let b = sampling::filtered_complex(&mut r, 3, 4, 2);
        let d = identity_zero_square(&a, &b);
        let s = simple_filtered(&d).unwrap();
        let swapped = simple_filtered(&d.swap_indices(0, 1)).unwrap();
        prop_assert_eq!(is_acyclic(&s).unwrap(), is_acyclic(&swapped).unwrap());
        prop_assert_eq!(dims(&s), dims(&swapped));
    }
}

fn identity(c: &FilteredComplex) -> ChainMap {
    let c = c.complex();
    ChainMap { components: c.degrees().map(|k| (k, BitMatrix::identity(c.dim(k)))).collect() }
}

/// `A = A` along one side and `B = B` along the other, joined by zero maps.
fn identity_zero_square(a: &FilteredComplex, b: &FilteredComplex) -> CubicalDiagram {
    let objects = BTreeMap::from([(3, a.clone()), (1, a.clone()), (2, b.clone()), (0, b.clone())]);
    let maps = BTreeMap::from([
        ((3, 1), identity(a)),
        ((3, 2), ChainMap::zero()),
        ((1, 0), ChainMap::zero()),
        ((2, 0), identity(b)),
    ]);
    CubicalDiagram::new(1, objects, maps).unwrap()
}

#[test]
fn identity_square_is_acyclic() {
    let mut r = rng(11);
    for _ in 0..10 {
        let a = sampling::filtered_complex(&mut r, 3, 4, 2);
        let objects = BTreeMap::from([(3, a.clone()), (1, a.clone()), (2, FilteredComplex::zero()), (0, FilteredComplex::zero())]);
        let maps = BTreeMap::from([
            ((3, 1), identity(&a)),
            ((3, 2), ChainMap::zero()),
            ((1, 0), ChainMap::zero()),
            ((2, 0), ChainMap::zero()),
        ]);
        let d = CubicalDiagram::new(1, objects, maps).unwrap();
        assert!(is_acyclic(&simple_filtered(&d).unwrap()).unwrap());
    }
}

#[test]
fn empty_chain_has_empty_boundary() {
    let mut r = rng(3);
    let x = sampling::simplicial_complex(&mut r, 5, 4, 2);
    assert!(chain_boundary(&x, &CellChain::empty(1)).is_zero());
}
