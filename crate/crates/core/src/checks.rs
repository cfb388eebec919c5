//! Property suites over the fixture corpus, as run by `weightlab check`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cubical::{
    additivity_check, hyperres_weight_compare, is_acyclic, simple_filtered, skeleton_filtration, square_sequence,
};
use crate::euler::{
    chain_boundary, euler_integral, incidence_boundary, link, pushforward_cf, ConstructibleFunction,
};
use crate::fcomplex::{deligne_shift, differential_target, pages, AdaptedComplex, FilteredComplex, PageSet};
use crate::fixtures;
use crate::sampling;
use crate::toricfan::{fan_corpus, orbit_sum, smooth_complete_names, toric_cell_complex, toric_pages, Fan};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Toric,
    Euler,
    Fcomplex,
    Cubical,
    All,
    None,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "toric" => Suite::Toric,
            "euler" => Suite::Euler,
            "fcomplex" => Suite::Fcomplex,
            "cubical" => Suite::Cubical,
            "all" => Suite::All,
            "none" => Suite::None,
            other => return Err(format!("unknown suite {other:?}; expected toric, euler, fcomplex, cubical, all or none")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} [{}] {}", self.suite, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

struct Recorder {
    suite: &'static str,
    out: Vec<CheckOutcome>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Self { suite, out: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, result: Result<(), String>) {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        self.out.push(CheckOutcome { suite: self.suite, name: name.into(), passed, detail });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    match suite {
        Suite::Toric => toric_suite(),
        Suite::Euler => euler_suite(),
        Suite::Fcomplex => fcomplex_suite(),
        Suite::Cubical => cubical_suite(),
        Suite::All => [toric_suite(), euler_suite(), fcomplex_suite(), cubical_suite()].concat(),
        Suite::None => Vec::new(),
    }
}

/// Anti-diagonal sums of `E^∞` against the Betti numbers.
pub fn convergence(fc: &FilteredComplex, ps: &PageSet) -> Result<(), String> {
    for n in fc.complex().degrees() {
        let total: usize = ps.infinity.iter().filter(|((p, q), _)| p + q == n).map(|(_, d)| d).sum();
        let b = fc.complex().betti(n);
        ensure(total == b, || format!("degree {n}: Σ E^∞ = {total}, Betti = {b}"))?;
    }
    Ok(())
}

/// `d^r ∘ d^r = 0` and `dim E^{r+1} = dim H(E^r, d^r)` at every page.
pub fn page_recursion(ps: &PageSet) -> Result<(), String> {
    let rs: Vec<i32> = ps.pages.keys().copied().collect();
    for w in rs.windows(2) {
        let (r, next) = (w[0], w[1]);
        let page = &ps.pages[&r];
        for (&(p, q), d) in &page.differentials {
            let (tp, tq) = differential_target(r, p, q);
            if let Some(d2) = page.differentials.get(&(tp, tq)) {
                ensure(d2.mul(d).is_zero(), || format!("d^{r} d^{r} ≠ 0 at ({p},{q})"))?;
            }
        }
        let rank = |key: (i32, i32)| page.differentials.get(&key).map_or(0, |m| m.rank());
        let mut keys: Vec<(i32, i32)> = page.entries.keys().copied().collect();
        keys.extend(ps.pages[&next].entries.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        for (p, q) in keys {
            let source = (p + r, q - r + 1);
            let expected = page.dim(p, q) - rank((p, q)) - rank(source);
            let got = ps.pages[&next].dim(p, q);
            ensure(got == expected, || format!("E^{next}_({p},{q}) has dim {got}, homology of E^{r} gives {expected}"))?;
        }
    }
    Ok(())
}

/// `E^r_{p,q}(Dec F) ≅ E^{r+1}_{2p+q,-p}(F)` for every `r ≥ 1`.
pub fn deligne_comparison(fc: &FilteredComplex) -> Result<(), String> {
    let ours = pages(fc).map_err(|e| e.to_string())?;
    let shifted = pages(&deligne_shift(fc).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let last = shifted.last_page().unwrap_or(1).max(ours.last_page().unwrap_or(1)).max(1);
    for r in 1..=last {
        let a = shifted.page(r).map(|p| p.dims()).unwrap_or_default();
        let b = ours.page(r + 1).map(|p| p.dims()).unwrap_or_default();
        let mapped: std::collections::BTreeMap<(i32, i32), usize> =
            b.iter().map(|(&(x, y), &d)| ((-y, x + 2 * y), d)).collect();
        ensure(a == mapped, || format!("page {r}: shifted {a:?} vs {mapped:?}"))?;
    }
    Ok(())
}

fn toric_suite() -> Vec<CheckOutcome> {
    let mut rec = Recorder::new("toric");
    let smooth = smooth_complete_names();
    for (name, fan) in fan_corpus() {
        toric_fan_checks(&mut rec, &name, &fan, smooth.contains(&name.as_str()));
    }
    rec.out
}

fn toric_fan_checks(rec: &mut Recorder, name: &str, fan: &Fan, smooth_complete: bool) {
    let t = match toric_cell_complex(fan) {
        Ok(t) => t,
        Err(e) => return rec.check(format!("{name}: cell complex"), Err(e.to_string())),
    };
    rec.check(format!("{name}: ∂² = 0 and filtration valid"), {
        let d = t.filtration.validate();
        ensure(d.is_empty(), || format!("{d:?}"))
    });
    rec.check(format!("{name}: cells per degree"), {
        let expected: Vec<usize> = (0..=fan.lattice_rank()).map(|k| fan.cones_of_codim(k).count() << k).collect();
        let got: Vec<usize> = (0..=fan.lattice_rank()).map(|k| t.complex.dim(k as i32)).collect();
        ensure(expected == got, || format!("{got:?} vs {expected:?}"))
    });
    let (ps, report) = match toric_pages(fan) {
        Ok(x) => x,
        Err(e) => return rec.check(format!("{name}: pages"), Err(e.to_string())),
    };
    rec.check(format!("{name}: convergence"), convergence(&t.filtration, &ps));
    rec.check(format!("{name}: page recursion"), page_recursion(&ps));
    rec.check(format!("{name}: β equals the orbit sum"), {
        let beta = crate::fcomplex::virtual_poincare(&ps);
        let orbits = orbit_sum(fan);
        ensure(beta == orbits, || format!("β = {beta}, orbit sum = {orbits}"))
    });
    rec.check(format!("{name}: subgroup basis gives the same E¹"), {
        let generic = ps.page(1).map(|p| p.dims()).unwrap_or_default();
        let fast = t.adapted(fan).first_page_dims();
        ensure(generic == fast, || format!("{fast:?} vs {generic:?}"))
    });
    rec.check(
        format!("{name}: support triangle"),
        ensure(report.triangle_violations.is_empty(), || format!("{:?}", report.triangle_violations)),
    );
    if smooth_complete {
        rec.check(format!("{name}: pure"), ensure(report.is_pure, || "Ẽ² has entries off p' = 0".into()));
    }
    if fan.lattice_rank() <= 3 {
        rec.check(
            format!("{name}: collapses at Ẽ²"),
            ensure(report.collapse_page == Some(2), || format!("collapse at {:?}", report.collapse_page)),
        );
    }
}

fn euler_suite() -> Vec<CheckOutcome> {
    let mut rec = Recorder::new("euler");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut link_failures = Vec::new();
    let mut boundary_failures = Vec::new();
    let mut oracle_failures = Vec::new();
    let trials = 1000;
    for trial in 0..trials {
        let x = sampling::simplicial_complex(&mut rng, 7, 6, 3);
        let phi = sampling::constructible_function(&mut rng, &x, 5);
        let once = link(&x, &phi);
        if link(&x, &once) != once.scaled(2) {
            link_failures.push(trial);
        }
        let k = x.top_dim().unwrap_or(0);
        let c = sampling::chain(&mut rng, &x, k);
        let dc = chain_boundary(&x, &c);
        if !chain_boundary(&x, &dc).is_zero() {
            boundary_failures.push(trial);
        }
        if dc != incidence_boundary(&x, &c) {
            oracle_failures.push(trial);
        }
    }
    rec.check(format!("Λ∘Λ = 2Λ on {trials} random pairs"), ensure(link_failures.is_empty(), || format!("trials {link_failures:?}")));
    rec.check(format!("∂∂ = 0 on {trials} random chains"), ensure(boundary_failures.is_empty(), || format!("trials {boundary_failures:?}")));
    rec.check(
        format!("chain boundary matches the incidence oracle on {trials} chains"),
        ensure(oracle_failures.is_empty(), || format!("trials {oracle_failures:?}")),
    );
    for k in 1..=3 {
        rec.check(format!("fold pushforward on the {k}-torus, all S"), fold_check(k));
    }
    rec.out
}

/// `f_* 1 = 2^{k-|S|} 1_{A_S}` on the open torus for every `S`, plus the
/// Euler integral being preserved.
pub fn fold_check(k: usize) -> Result<(), String> {
    for keep in 0..1usize << k {
        let (x, f) = fixtures::torus_fold(k, keep);
        let one = ConstructibleFunction::constant(&x, 1);
        let pushed = pushforward_cf(&f, &x, &x, &one).map_err(|e| e.to_string())?;
        ensure(euler_integral(&x, &pushed) == euler_integral(&x, &one), || format!("S = {keep:b}: Euler integral changed"))?;
        let q = keep.count_ones() as usize;
        for c in 0..x.len() {
            let parts: Vec<&str> = x.label(c).split('×').collect();
            if parts.iter().any(|s| *s == "0" || *s == "inf") {
                continue;
            }
            let in_a = (0..k).all(|i| keep >> i & 1 == 1 || parts[i] == "+");
            let expected = if in_a { 1i64 << (k - q) } else { 0 };
            ensure(pushed.get(c) == expected, || {
                format!("S = {keep:b}, cell {}: f_*1 = {}, expected {expected}", x.label(c), pushed.get(c))
            })?;
        }
    }
    Ok(())
}

fn fcomplex_suite() -> Vec<CheckOutcome> {
    let mut rec = Recorder::new("fcomplex");
    let mut rng = ChaCha8Rng::seed_from_u64(0xf11);
    for i in 0..40 {
        let fc = sampling::filtered_complex(&mut rng, 4, 6, 3);
        let ps = match pages(&fc) {
            Ok(ps) => ps,
            Err(e) => {
                rec.check(format!("random #{i}: pages"), Err(e.to_string()));
                continue;
            }
        };
        rec.check(format!("random #{i}: convergence"), convergence(&fc, &ps));
        rec.check(format!("random #{i}: page recursion"), page_recursion(&ps));
        rec.check(format!("random #{i}: Deligne comparison"), deligne_comparison(&fc));
        rec.check(format!("random #{i}: basis change invariance"), {
            let moved = fc.change_basis(&sampling::change_of_basis(&mut rng, &fc));
            let a: Vec<_> = ps.pages.values().map(|p| p.dims()).collect();
            let b: Vec<_> = pages(&moved).map(|m| m.pages.values().map(|p| p.dims()).collect()).unwrap_or_default();
            ensure(a == b, || "page dimensions moved".into())
        });
        rec.check(format!("random #{i}: adapted basis E¹"), {
            let generic = ps.page(1).map(|p| p.dims()).unwrap_or_default();
            AdaptedComplex::from_filtered(&fc)
                .map_err(|e| e.to_string())
                .map(|a| a.first_page_dims())
                .and_then(|fast| ensure(fast == generic, || format!("{fast:?} vs {generic:?}")))
        });
    }
    rec.out
}

fn cubical_suite() -> Vec<CheckOutcome> {
    let mut rec = Recorder::new("cubical");
    let sq = fixtures::klein_square();
    rec.check("Klein square: homology sequence exact", {
        square_sequence(&sq.diagram).map_err(|e| e.to_string()).and_then(|rows| {
            ensure(rows.iter().all(|r| r.is_exact()), || format!("{rows:?}"))
        })
    });
    for (label, diagram) in [("Klein square", sq.diagram.clone()), ("Klein square, swapped", sq.diagram.swap_indices(0, 1))] {
        rec.check(format!("{label}: canonical simple complex acyclic"), {
            diagram
                .with_canonical_filtrations()
                .and_then(|d| simple_filtered(&d))
                .and_then(|s| is_acyclic(&s))
                .map_err(|e| e.to_string())
                .and_then(|a| ensure(a, || "E¹ ≠ 0".into()))
        });
    }
    rec.check("P¹ minus two points: additivity", {
        let (d, complement) = fixtures::p1_boundary_inclusion();
        additivity_check(&d, &complement)
            .map_err(|e| e.to_string())
            .and_then(|r| ensure(r.holds(), || format!("{:?}", r.mismatches)))
    });
    for (name, h, expected) in fixtures::hyperresolution_fixtures() {
        rec.check(format!("{name}: total Betti numbers"), {
            skeleton_filtration(&h).map_err(|e| e.to_string()).and_then(|f| {
                let b: Vec<usize> = f.complex().bettis().into_iter().map(|(_, b)| b).collect();
                let ps = pages(&f).map_err(|e| e.to_string())?;
                convergence(&f, &ps)?;
                ensure(b == expected, || format!("{b:?} vs {expected:?}"))
            })
        });
        rec.check(format!("{name}: Deligne comparison"), {
            hyperres_weight_compare(&h)
                .map_err(|e| e.to_string())
                .and_then(|r| ensure(r.holds(), || format!("{:?}", r.mismatches)))
        });
    }
    rec.out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn none_is_empty() {
        assert!(run_suite(Suite::None).is_empty());
    }

    #[test]
    fn cubical_suite_passes() {
        let out = run_suite(Suite::Cubical);
        assert!(out.iter().all(|o| o.passed), "{:?}", out.iter().filter(|o| !o.passed).collect::<Vec<_>>());
    }

    #[test]
    fn fold_small() {
        assert_eq!(fold_check(2), Ok(()));
    }
}
