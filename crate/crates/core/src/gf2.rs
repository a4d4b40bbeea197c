//! Dense linear algebra over GF(2).
//!
//! Matrices are stored row-major with each row packed into `u64` words, so
//! row addition is a word-wide XOR. Elimination is deterministic: the pivot
//! for each column is the topmost eligible row, and columns are scanned left
//! to right. Two row-equivalent matrices therefore always reduce to the same
//! RREF, which is what matroid equality relies on.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A dense matrix over the two-element field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD);
        Self {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. Every row must have the same
    /// length; any nonzero entry is read as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Gf2Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &e) in row.iter().enumerate() {
                if e != 0 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix whose column `j` is the bitmask `columns[j]` (bit `i`
    /// is the row-`i` entry).
    pub fn from_column_masks(rows: usize, columns: &[u64]) -> Self {
        assert!(rows <= WORD, "column masks hold at most 64 rows");
        Self::from_fn(rows, columns.len(), |i, j| columns[j] >> i & 1 == 1)
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
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        self.bits[i * self.words_per_row + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        let w = &mut self.bits[i * self.words_per_row + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        self.bits[i * self.words_per_row + j / WORD] ^= 1u64 << (j % WORD);
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// `row[dst] += row[src]`.
    pub fn add_row(&mut self, dst: usize, src: usize) {
        assert!(dst < self.rows && src < self.rows);
        if dst == src {
            // x + x = 0
            self.bits[dst * self.words_per_row..(dst + 1) * self.words_per_row].fill(0);
            return;
        }
        let w = self.words_per_row;
        let (d, s) = (dst * w, src * w);
        for k in 0..w {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        assert!(a < self.rows && b < self.rows);
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.bits.swap(a * w + k, b * w + k);
        }
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Column `j` as a bitmask over rows. Requires at most 64 rows.
    pub fn column_mask(&self, j: usize) -> u64 {
        assert!(self.rows <= WORD, "column masks hold at most 64 rows");
        (0..self.rows).fold(0, |acc, i| acc | (self.get(i, j) as u64) << i)
    }

    pub fn column_masks(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.column_mask(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// `(self | other)`.
    pub fn hconcat(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.rows != other.rows {
            return Err(Gf2Error::DimensionMismatch(format!(
                "cannot place {} rows beside {} rows",
                other.rows, self.rows
            )));
        }
        let c = self.cols;
        Ok(Self::from_fn(self.rows, c + other.cols, |i, j| {
            if j < c {
                self.get(i, j)
            } else {
                other.get(i, j - c)
            }
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self, Gf2Error> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Gf2Error::IndexOutOfRange {
                index: bad,
                len: self.cols,
            });
        }
        Ok(Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j])))
    }

    /// Keeps the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self, Gf2Error> {
        if let Some(&bad) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Gf2Error::IndexOutOfRange {
                index: bad,
                len: self.rows,
            });
        }
        let mut out = Self::zeros(rows.len(), self.cols);
        let w = self.words_per_row;
        for (dst, &src) in rows.iter().enumerate() {
            out.bits[dst * w..(dst + 1) * w].copy_from_slice(self.row_words(src));
        }
        Ok(out)
    }

    /// The submatrix on rows and columns `s`, in their relative order.
    /// `s` is sorted and deduplicated first.
    pub fn principal_submatrix(&self, s: &[usize]) -> Result<Self, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut idx = s.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&v| v >= self.rows) {
            return Err(Gf2Error::IndexOutOfRange {
                index: bad,
                len: self.rows,
            });
        }
        Ok(Self::from_fn(idx.len(), idx.len(), |i, j| self.get(idx[i], idx[j])))
    }

    /// Row-space dimension.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Reduced row-echelon form together with the (strictly increasing)
    /// pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        (m, pivots)
    }

    /// The RREF with its zero rows dropped; equal iff row spaces are equal.
    pub fn row_space_key(&self) -> Self {
        let (r, pivots) = self.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        r.select_rows(&keep).expect("pivot rows are in range")
    }

    fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(p, next);
            let start = if reduced { 0 } else { next + 1 };
            for r in start..self.rows {
                if r != next && self.get(r, col) {
                    self.add_row(r, next);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        Ok(())
    }
}

/// Rank of a set of vectors packed as `u64` bitmasks.
#[inline]
pub fn rank_of_masks(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; WORD];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let lead = (WORD - 1) - v.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = v;
                rank += 1;
                break;
            }
            v ^= basis[lead];
        }
    }
    rank
}

/// Incremental span of `u64` vectors that remembers, for each stored vector,
/// which inserted originals it is a combination of. Used to express a vector
/// in coordinates over an independent set.
#[derive(Debug, Clone, Default)]
pub struct SpanTracker {
    // (reduced vector, combination of original insertions, leading bit)
    rows: Vec<(u64, u64, u32)>,
}

impl SpanTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored vectors; returns the residual and the
    /// combination (over insertion indices) that was subtracted.
    pub fn reduce(&self, mut v: u64) -> (u64, u64) {
        let mut combo = 0;
        for &(r, c, lead) in &self.rows {
            if v >> lead & 1 == 1 {
                v ^= r;
                combo ^= c;
            }
        }
        (v, combo)
    }

    /// Inserts `v` if it is independent of what is stored; returns whether
    /// it was inserted. At most 64 vectors can be stored.
    pub fn insert(&mut self, v: u64) -> bool {
        let (res, combo) = self.reduce(v);
        if res == 0 {
            return false;
        }
        let idx = self.rows.len();
        debug_assert!(idx < WORD);
        let lead = res.trailing_zeros();
        self.rows.push((res, combo ^ (1u64 << idx), lead));
        true
    }

    /// Coordinates of `v` over the inserted vectors, if `v` is in their span.
    pub fn coordinates(&self, v: u64) -> Option<u64> {
        let (res, combo) = self.reduce(v);
        (res == 0).then_some(combo)
    }
}

/// Whether two equally long ordered lists of column vectors represent the
/// same binary matroid on their positions.
pub fn same_matroid_columns(a: &[u64], b: &[u64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut sa = SpanTracker::new();
    let mut sb = SpanTracker::new();
    // Basis positions chosen greedily in `a` must also be a greedy basis in
    // `b`, and every column must have identical coordinates.
    for (&x, &y) in a.iter().zip(b) {
        let (rx, cx) = sa.reduce(x);
        let (ry, cy) = sb.reduce(y);
        match (rx == 0, ry == 0) {
            (true, true) => {
                if cx != cy {
                    return false;
                }
            }
            (false, false) => {
                sa.insert(x);
                sb.insert(y);
            }
            _ => return false,
        }
    }
    true
}
