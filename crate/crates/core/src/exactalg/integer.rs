//! Exact integer matrices: Smith normal form and mod-2 lattice saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bits::BitVec;
use super::subspace::BitSubspace;

/// Integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

/// `u · m · v = d` with `u`, `v` unimodular, `d` diagonal with `d_i | d_{i+1}`.
/// `v_inv` is the inverse of `v`, kept because its leading rows span the
/// saturation of the row lattice.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Rows of small integers; `cols` must be given since `rows` may be empty.
    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let data: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "row length mismatch");
                r.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes must agree");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = val / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.data.iter_mut() {
            row.swap(a, b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let src_row = self.data[src].clone();
        for (d, s) in self.data[dst].iter_mut().zip(&src_row) {
            *d += k * s;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in self.data.iter_mut() {
            let s = row[src].clone();
            row[dst] += k * s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in self.data[r].iter_mut() {
            *x = -std::mem::take(x);
        }
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut u = IntMatrix::identity(r);
        let mut v = IntMatrix::identity(c);
        let mut v_inv = IntMatrix::identity(c);

        // column operations are mirrored on v (right) and inversely on v_inv (left)
        let col_swap = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, x: usize, y: usize| {
            a.swap_cols(x, y);
            v.swap_cols(x, y);
            vi.swap_rows(x, y);
        };
        let col_add = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
            a.add_col(dst, src, k);
            v.add_col(dst, src, k);
            vi.add_row(src, dst, &-k);
        };

        let mut t = 0;
        while t < r.min(c) {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a.data[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a.data[i][j].abs() < a.data[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            col_swap(&mut a, &mut v, &mut v_inv, t, pj);

            loop {
                for i in t + 1..r {
                    let q = a.data[i][t].div_floor(&a.data[t][t]);
                    let k = -q;
                    a.add_row(i, t, &k);
                    u.add_row(i, t, &k);
                }
                for j in t + 1..c {
                    let q = a.data[t][j].div_floor(&a.data[t][t]);
                    col_add(&mut a, &mut v, &mut v_inv, j, t, &-q);
                }
                // a smaller remainder in the pivot row/column restarts elimination
                let mut smaller: Option<(usize, usize)> = None;
                for i in t + 1..r {
                    if !a.data[i][t].is_zero() && smaller.is_none_or(|(si, sj)| a.data[i][t].abs() < a.data[si][sj].abs()) {
                        smaller = Some((i, t));
                    }
                }
                for j in t + 1..c {
                    if !a.data[t][j].is_zero() && smaller.is_none_or(|(si, sj)| a.data[t][j].abs() < a.data[si][sj].abs()) {
                        smaller = Some((t, j));
                    }
                }
                if let Some((si, sj)) = smaller {
                    if si != t {
                        a.swap_rows(t, si);
                        u.swap_rows(t, si);
                    } else {
                        col_swap(&mut a, &mut v, &mut v_inv, t, sj);
                    }
                    continue;
                }
                // enforce divisibility of the trailing block by the pivot
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.data[i][j].is_multiple_of(&a.data[t][t])));
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        a.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            if a.data[t][t].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        SmithForm {
            u,
            d: a,
            v,
            v_inv,
            rank: t,
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.smith_normal_form().rank
    }
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.data[i][i].clone()).collect()
    }
}

/// Mod-2 reduction of a basis of the saturated lattice `(ℚ-span of rows) ∩ ℤⁿ`.
///
/// With `u · rays · v = d`, the row lattice is spanned by `d_i` times the
/// first `rank` rows of `v⁻¹`, so those rows are a basis of the saturation.
/// They are part of a unimodular basis of ℤⁿ, hence stay independent mod 2.
pub fn saturate_mod2(rays: &IntMatrix, n: usize) -> BitSubspace {
    assert_eq!(rays.cols(), n, "ray matrix must have n columns");
    if rays.rows() == 0 {
        return BitSubspace::zero(n);
    }
    let snf = rays.smith_normal_form();
    let two = BigInt::from(2);
    let rows = (0..snf.rank).map(|i| {
        BitVec::from_bools(snf.v_inv.row(i).iter().map(|x| x.mod_floor(&two).is_one()))
    });
    let s = BitSubspace::span(n, rows);
    debug_assert_eq!(s.dim(), snf.rank);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &IntMatrix) -> SmithForm {
        let s = m.smith_normal_form();
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "u m v != d");
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken: {diag:?}");
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn small_smith_forms() {
        let s = check_smith(&IntMatrix::from_i64_rows(1, &[vec![2]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2)]);
        let s = check_smith(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        let s = check_smith(&IntMatrix::from_i64_rows(2, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_degenerate() {
        check_smith(&IntMatrix::from_i64_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        check_smith(&IntMatrix::from_i64_rows(2, &[vec![0, 0], vec![0, 0], vec![1, 1]]));
        let s = check_smith(&IntMatrix::from_i64_rows(3, &[vec![1, 1, 1], vec![2, 2, 2]]));
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn saturation_examples() {
        let s = saturate_mod2(&IntMatrix::from_i64_rows(2, &[vec![2, 0]]), 2);
        assert_eq!(s, BitSubspace::coordinate(2, [0]));
        assert!(saturate_mod2(&IntMatrix::from_i64_rows(2, &[]), 2).is_zero());
        // det = -2, so the rational span is everything and the saturation is ℤ²
        let m = IntMatrix::from_i64_rows(2, &[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.determinant(), BigInt::from(-2));
        assert_eq!(saturate_mod2(&m, 2), BitSubspace::full(2));
        let s = saturate_mod2(&IntMatrix::from_i64_rows(2, &[vec![1, 1]]), 2);
        assert_eq!(s, BitSubspace::span(2, [BitVec::from_ones(2, [0, 1])]));
    }
}
