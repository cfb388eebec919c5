use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::filtered::FilteredComplex;
use super::pages::{reindex, weight_coords, Indexing, PageSet};
use super::FcomplexError;

/// Induced filtration on homology, `𝒲_p H_n = im[H_n(F_p K) → H_n(K)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    /// For each degree, `(p, dim 𝒲_p H_n)` from one below the filtration range to its top.
    pub levels: BTreeMap<i32, Vec<(i32, usize)>>,
    pub betti: BTreeMap<i32, usize>,
}

impl WeightProfile {
    pub fn dim(&self, n: i32, p: i32) -> usize {
        let Some(levels) = self.levels.get(&n) else { return 0 };
        match levels.iter().rev().find(|(q, _)| *q <= p) {
            Some((_, d)) => *d,
            None => 0,
        }
    }

    /// `dim 𝒲_p H_n / 𝒲_{p-1} H_n`.
    pub fn graded(&self, n: i32, p: i32) -> usize {
        self.dim(n, p) - self.dim(n, p - 1)
    }
}

pub fn weight_profile(fc: &FilteredComplex) -> Result<WeightProfile, FcomplexError> {
    fc.ensure_valid()?;
    let c = fc.complex();
    let mut levels = BTreeMap::new();
    let mut betti = BTreeMap::new();
    let Some((p_min, p_max)) = fc.p_range().filter(|_| !c.is_empty()) else {
        return Ok(WeightProfile { levels, betti });
    };
    for n in c.degrees() {
        let cycles = c.cycles(n);
        let bounds = c.boundaries(n);
        betti.insert(n, cycles.dim() - bounds.dim());
        let row = (p_min - 1..=p_max)
            .map(|p| {
                let filtered_cycles = fc.level(p, n).intersect(&cycles).expect("same ambient");
                (p, filtered_cycles.sum(&bounds).expect("same ambient").dim() - bounds.dim())
            })
            .collect();
        levels.insert(n, row);
    }
    Ok(WeightProfile { levels, betti })
}

/// Laurent polynomial in `t` with integer coefficients.
///
/// `coeffs[i]` is the coefficient of `t^(low + i)`; both ends are trimmed of
/// zeros, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct Poly {
    low: i32,
    coeffs: Vec<i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · t^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::from_terms([(e, c)])
    }

    /// Coefficients of `1, t, t², …`.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        Self::normalized(0, coeffs)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut map: BTreeMap<i32, i64> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| *c != 0);
        let Some((&low, _)) = map.iter().next() else { return Self::zero() };
        let high = *map.keys().next_back().unwrap();
        let coeffs = (low..=high).map(|e| map.get(&e).copied().unwrap_or(0)).collect();
        Self::normalized(low, coeffs)
    }

    fn normalized(mut low: i32, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        coeffs.drain(..lead);
        low += lead as i32;
        if coeffs.is_empty() {
            low = 0;
        }
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.low;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn lowest_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// `(exponent, coefficient)` for every nonzero term, ascending.
    pub fn terms(&self) -> Vec<(i32, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.low + i as i32, c))
            .collect()
    }

    /// Dense coefficients of `t^0 ..= t^deg`; `None` when a negative power occurs.
    pub fn coefficients(&self) -> Option<Vec<i64>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        if self.low < 0 {
            return None;
        }
        let mut out = vec![0; self.low as usize];
        out.extend_from_slice(&self.coeffs);
        Some(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// `t - 1`.
    pub fn t_minus_one() -> Poly {
        Poly::from_coeffs(vec![-1, 1])
    }

    pub fn eval(&self, t: i64) -> Option<i64> {
        if self.low < 0 && t == 0 {
            return None;
        }
        let mut total = 0i64;
        for (e, c) in self.terms() {
            let pw = if e >= 0 { t.checked_pow(e as u32)? } else { return None };
            total = total.checked_add(c.checked_mul(pw)?)?;
        }
        Some(total)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::from_terms(self.terms().into_iter().chain(rhs.terms()))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_terms(self.terms().into_iter().map(|(e, c)| (e, -c)))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let a = self.terms();
        let b = rhs.terms();
        Poly::from_terms(a.iter().flat_map(|&(ea, ca)| b.iter().map(move |&(eb, cb)| (ea + eb, ca * cb))))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => f.write_str("t")?,
                (1, m) => write!(f, "{m}t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, m) => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// `β(X) = Σ_q β_q t^q` with `β_q = Σ_p (-1)^p dim Ẽ²_{p,q}`, the Euler
/// characteristics of the rows of the first-quadrant `E²` page.
pub fn virtual_poincare(ps: &PageSet) -> Poly {
    let tilde = match ps.indexing {
        Indexing::FirstQuadrant => ps.clone(),
        Indexing::Weight => reindex(ps),
    };
    let Some(page) = tilde.page(2) else {
        return Poly::zero();
    };
    Poly::from_terms(page.entries.iter().map(|(&(p, q), e)| {
        let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
        (q, sign * e.dim as i64)
    }))
}

/// The same polynomial read off the weight-indexed `E¹` dimensions, where
/// `E¹_{p,q}` contributes `(-1)^q t^{-p}`.
pub fn virtual_poincare_from_first_page(e1: &BTreeMap<(i32, i32), usize>) -> Poly {
    Poly::from_terms(e1.iter().map(|(&(p, q), &d)| {
        let sign = if q.rem_euclid(2) == 0 { 1 } else { -1 };
        (-p, sign * d as i64)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleViolation {
    /// Weight-indexed page and coordinates.
    pub r: i32,
    pub p: i32,
    pub q: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityReport {
    /// `Ẽ²_{p,q} = 0` for all `p ≠ 0`.
    pub is_pure: bool,
    /// Least `r' ≥ 2` with `Ẽ^{r'} = Ẽ^∞`.
    pub collapse_page: Option<i32>,
    /// Nonzero weight-indexed entries outside `p ≤ 0, -2p ≤ q ≤ d - p`.
    pub triangle_violations: Vec<TriangleViolation>,
}

pub fn in_support_triangle(p: i32, q: i32, d: i32) -> bool {
    p <= 0 && -2 * p <= q && q <= d - p
}

pub fn purity_collapse_report(ps: &PageSet, d: usize) -> PurityReport {
    let tilde = match ps.indexing {
        Indexing::FirstQuadrant => ps.clone(),
        Indexing::Weight => reindex(ps),
    };
    let is_pure = tilde
        .page(2)
        .is_none_or(|pg| pg.entries.keys().all(|&(p, _)| p == 0));
    let collapse_page = if tilde.is_empty() { Some(2) } else { tilde.collapse_page(2) };
    let mut triangle_violations = Vec::new();
    for (&r, pg) in &tilde.pages {
        for (&(p1, q1), e) in &pg.entries {
            let (p, q) = weight_coords(p1, q1);
            if !in_support_triangle(p, q, d as i32) {
                triangle_violations.push(TriangleViolation { r: r - 1, p, q, dim: e.dim });
            }
        }
    }
    PurityReport { is_pure, collapse_page, triangle_violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_display_and_arithmetic() {
        let cube = Poly::t_minus_one().pow(3);
        assert_eq!(cube.coefficients().unwrap(), vec![-1, 3, -3, 1]);
        assert_eq!(cube.to_string(), "-1 + 3t - 3t^2 + t^3");
        assert_eq!(Poly::from_coeffs(vec![1, 1, 1]).to_string(), "1 + t + t^2");
        assert_eq!(Poly::zero().to_string(), "0");
        let p1 = Poly::from_coeffs(vec![1, 1]);
        assert_eq!(&p1 * &p1, Poly::from_coeffs(vec![1, 2, 1]));
        assert_eq!(&p1 - &p1, Poly::zero());
        assert_eq!(Poly::from_coeffs(vec![0, 0, 0]), Poly::zero());
        assert_eq!(Poly::monomial(2, -1).to_string(), "2t^-1");
        assert_eq!(Poly::monomial(2, -1).coefficients(), None);
    }

    #[test]
    fn triangle_bounds() {
        assert!(in_support_triangle(0, 0, 2));
        assert!(in_support_triangle(-2, 4, 2));
        assert!(!in_support_triangle(1, 0, 2));
        assert!(!in_support_triangle(-1, 1, 2));
        assert!(!in_support_triangle(0, 3, 2));
    }

    #[test]
    fn empty_pages_have_zero_polynomial() {
        assert_eq!(virtual_poincare(&PageSet::empty(Indexing::Weight)), Poly::zero());
        let report = purity_collapse_report(&PageSet::empty(Indexing::Weight), 0);
        assert!(report.is_pure && report.triangle_violations.is_empty());
    }
}
