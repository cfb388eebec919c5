use std::fmt;

use super::bits::BitVec;
use super::subspace::BitSubspace;
use super::DimensionError;

/// A dense matrix over GF(2), stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Matrix with a one at each listed `(row, col)`; repeated entries cancel.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for &(r, c) in entries {
            m.data[r].flip(c);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in col.ones() {
                m.data[i].set(j, true);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_bools((0..self.rows).map(|r| self.data[r].get(c)))
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().data
    }

    /// The `(row, col)` positions of the nonzero entries, row-major.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.ones().map(move |c| (r, c)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    /// `self · x`.
    pub fn apply(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols, "vector length does not match matrix columns");
        BitVec::from_bools(self.data.iter().map(|row| row.dot(x)))
    }

    pub fn try_mul(&self, other: &BitMatrix) -> Result<BitMatrix, DimensionError> {
        if self.cols != other.rows {
            return Err(DimensionError::new("matrix product", self.cols, other.rows));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        self.try_mul(other).expect("matrix shapes must agree")
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                out.data[c].set(r, true);
            }
        }
        out
    }

    /// Block matrix `[[a, 0], [0, b]]`.
    pub fn block_diagonal(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(a.rows + b.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in a.data[r].ones() {
                out.set(r, c, true);
            }
        }
        for r in 0..b.rows {
            for c in b.data[r].ones() {
                out.set(a.rows + r, a.cols + c, true);
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`, XOR-ing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &BitMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in block.data[r].ones() {
                self.data[r0 + r].flip(c0 + c);
            }
        }
    }

    /// Reduced row echelon form with lowest-index pivots. Returns the reduced rows
    /// (nonzero only) and the pivot column of each.
    fn rref(&self) -> (Vec<BitVec>, Vec<usize>) {
        let mut rows: Vec<BitVec> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for row in &self.data {
            let mut v = row.clone();
            for (p, r) in pivots.iter().zip(&rows) {
                if v.get(*p) {
                    v.xor_assign(r);
                }
            }
            if let Some(p) = v.lowest_one() {
                for r in rows.iter_mut() {
                    if r.get(p) {
                        r.xor_assign(&v);
                    }
                }
                let pos = pivots.partition_point(|&q| q < p);
                pivots.insert(pos, p);
                rows.insert(pos, v);
            }
        }
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank, kernel (in the column space) and image (in the row space).
    pub fn rank_kernel_image(&self) -> (usize, BitSubspace, BitSubspace) {
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel_basis = (0..self.cols).filter(|&f| !is_pivot[f]).map(|f| {
            let mut x = BitVec::unit(self.cols, f);
            for (p, r) in pivots.iter().zip(&rows) {
                if r.get(f) {
                    x.set(*p, true);
                }
            }
            x
        });
        let kernel = BitSubspace::span(self.cols, kernel_basis);
        let image = BitSubspace::span(self.rows, self.transpose().data);
        (pivots.len(), kernel, image)
    }

    pub fn kernel(&self) -> BitSubspace {
        self.rank_kernel_image().1
    }

    pub fn image(&self) -> BitSubspace {
        BitSubspace::span(self.rows, self.transpose().data)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut left = self.data.clone();
        let mut right = BitMatrix::identity(n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| left[r].get(col))?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            for r in 0..n {
                if r != col && left[r].get(col) {
                    let (lp, rp) = (left[col].clone(), right[col].clone());
                    left[r].xor_assign(&lp);
                    right[r].xor_assign(&rp);
                }
            }
        }
        Some(BitMatrix::from_rows(n, right))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_boundary() -> BitMatrix {
        // two edges, each with boundary v+ + v-
        BitMatrix::from_entries(2, 2, &[(0, 0), (1, 0), (0, 1), (1, 1)])
    }

    #[test]
    fn identity_has_full_rank_trivial_kernel() {
        let (rank, kernel, image) = BitMatrix::identity(2).rank_kernel_image();
        assert_eq!(rank, 2);
        assert_eq!(kernel.dim(), 0);
        assert_eq!(image, BitSubspace::full(2));
    }

    #[test]
    fn all_ones_rank_one() {
        let m = BitMatrix::from_entries(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let (rank, kernel, image) = m.rank_kernel_image();
        let ones = BitVec::from_ones(2, [0, 1]);
        assert_eq!(rank, 1);
        assert_eq!(kernel, BitSubspace::span(2, [ones.clone()]));
        assert_eq!(image, BitSubspace::span(2, [ones]));
    }

    #[test]
    fn circle_boundary_matches_enumeration() {
        let m = circle_boundary();
        let (rank, kernel, _) = m.rank_kernel_image();
        // enumerate the four edge chains and count those with zero boundary
        let cycles = (0u8..4)
            .filter(|bits| {
                let x = BitVec::from_bools([bits & 1 == 1, bits & 2 == 2]);
                m.apply(&x).is_zero()
            })
            .count();
        assert_eq!(cycles, 2);
        assert_eq!(rank, 1);
        assert_eq!(kernel.dim(), 1);
    }

    #[test]
    fn inverse_round_trips() {
        let m = BitMatrix::from_entries(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        assert!(circle_boundary().inverse().is_none());
    }

    #[test]
    fn product_shape_mismatch_is_an_error() {
        let a = BitMatrix::zeros(2, 3);
        assert!(a.try_mul(&BitMatrix::zeros(2, 2)).is_err());
    }
}
