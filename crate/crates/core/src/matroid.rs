//! Binary matroids as column matroids of GF(2) matrices.
//!
//! A [`BinaryMatroid`] pairs an ordered list of ground labels with a
//! representing matrix, one column per label. Internally every column is
//! also cached as a `u64` row-bitmask, so the representation may have at most
//! 64 independent rows; all rank queries reduce to XOR-basis insertions.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::gf2::{rank_of_masks, same_matroid_columns, Gf2Error, Gf2Matrix, SpanTracker};

/// Default cap on the ground set for circuit enumeration.
pub const DEFAULT_CIRCUIT_LIMIT: usize = 18;
/// Default cap on the ground set for isomorphism search.
pub const DEFAULT_ISOMORPHISM_LIMIT: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("unknown ground element {0}")]
    UnknownLabel(String),
    #[error("duplicate ground element {0}")]
    DuplicateLabel(String),
    #[error("{labels} labels but the representation has {cols} columns")]
    ColumnCount { labels: usize, cols: usize },
    #[error("representation has rank {0}; at most 64 is supported")]
    RankTooLarge(usize),
    #[error("the given set is not a basis")]
    NotABasis,
    #[error("element {0} already lies in the basis")]
    ElementInBasis(String),
    #[error("ground set of size {size} exceeds the limit {limit}")]
    LimitExceeded { size: usize, limit: usize },
    #[error("matroids are on different ordered ground sets")]
    GroundMismatch,
    #[error("element {0} is both contracted and deleted")]
    Overlap(String),
    #[error("basis exchange needs a 1 at ({row}, {col})")]
    ZeroPivot { row: usize, col: usize },
    #[error(transparent)]
    Matrix(#[from] Gf2Error),
}

/// A binary matroid: ground labels plus a representing matrix.
#[derive(Clone)]
pub struct BinaryMatroid<L> {
    ground: Vec<L>,
    rep: Gf2Matrix,
    cols: Vec<u64>,
    index: HashMap<L, usize>,
}

impl<L: Clone + Eq + Hash + Debug> BinaryMatroid<L> {
    pub fn new(ground: Vec<L>, rep: Gf2Matrix) -> Result<Self, MatroidError> {
        if ground.len() != rep.cols() {
            return Err(MatroidError::ColumnCount {
                labels: ground.len(),
                cols: rep.cols(),
            });
        }
        let rep = if rep.rows() > 64 { rep.row_space_key() } else { rep };
        if rep.rows() > 64 {
            return Err(MatroidError::RankTooLarge(rep.rows()));
        }
        let mut index = HashMap::with_capacity(ground.len());
        for (i, l) in ground.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(MatroidError::DuplicateLabel(format!("{l:?}")));
            }
        }
        let cols = rep.column_masks();
        Ok(Self {
            ground,
            rep,
            cols,
            index,
        })
    }

    pub fn ground(&self) -> &[L] {
        &self.ground
    }

    pub fn rep(&self) -> &Gf2Matrix {
        &self.rep
    }

    /// Column bitmasks, in ground order.
    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn index_of(&self, label: &L) -> Result<usize, MatroidError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| MatroidError::UnknownLabel(format!("{label:?}")))
    }

    pub fn indices_of(&self, labels: &[L]) -> Result<Vec<usize>, MatroidError> {
        labels.iter().map(|l| self.index_of(l)).collect()
    }

    fn labels_of(&self, idx: impl IntoIterator<Item = usize>) -> Vec<L> {
        idx.into_iter().map(|i| self.ground[i].clone()).collect()
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> usize {
        rank_of_masks(self.cols.iter().copied())
    }

    pub fn rank_of(&self, s: &[L]) -> Result<usize, MatroidError> {
        Ok(self.rank_of_indices(&self.indices_of(s)?))
    }

    #[inline]
    pub fn rank_of_indices(&self, s: &[usize]) -> usize {
        rank_of_masks(s.iter().map(|&i| self.cols[i]))
    }

    /// Rank of the elements whose ground indices are the set bits of `s`.
    /// Only meaningful for ground sets of at most 64 elements.
    #[inline]
    pub fn rank_of_mask(&self, s: u64) -> usize {
        rank_of_masks(crate::graph::bits(s).map(|i| self.cols[i]))
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.cols[i] == 0
    }

    pub fn is_basis_indices(&self, b: &[usize]) -> bool {
        b.len() == self.rank() && self.rank_of_indices(b) == b.len()
    }

    /// `C(x, B)`: `x` together with the basis elements used to express `x`.
    pub fn fundamental_circuit(&self, x: &L, basis: &[L]) -> Result<Vec<L>, MatroidError> {
        let xi = self.index_of(x)?;
        let b = self.indices_of(basis)?;
        if b.contains(&xi) {
            return Err(MatroidError::ElementInBasis(format!("{x:?}")));
        }
        Ok(self.labels_of(self.fundamental_circuit_indices(xi, &b)?))
    }

    pub fn fundamental_circuit_indices(&self, x: usize, basis: &[usize]) -> Result<Vec<usize>, MatroidError> {
        if !self.is_basis_indices(basis) {
            return Err(MatroidError::NotABasis);
        }
        let mut span = SpanTracker::new();
        for &b in basis {
            span.insert(self.cols[b]);
        }
        let coords = span.coordinates(self.cols[x]).expect("a basis spans every column");
        let mut out: Vec<usize> = crate::graph::bits(coords).map(|k| basis[k]).collect();
        out.push(x);
        out.sort_unstable();
        Ok(out)
    }

    /// All circuits, with the default ground-size cap.
    pub fn circuits(&self) -> Result<Vec<Vec<L>>, MatroidError> {
        Ok(self
            .circuit_masks(DEFAULT_CIRCUIT_LIMIT)?
            .into_iter()
            .map(|c| self.labels_of(crate::graph::bits(c)))
            .collect())
    }

    /// All circuits as ground-index bitmasks, ordered by size then mask.
    ///
    /// Every cycle (a set of columns summing to zero) is a combination of the
    /// fundamental cycles of a greedy basis; circuits are the minimal
    /// nonempty cycles.
    pub fn circuit_masks(&self, limit: usize) -> Result<Vec<u64>, MatroidError> {
        let m = self.len();
        if m > limit || m > 64 {
            return Err(MatroidError::LimitExceeded { size: m, limit });
        }
        let mut span = SpanTracker::new();
        let mut basis = Vec::new();
        let mut kernel = Vec::new();
        for (j, &c) in self.cols.iter().enumerate() {
            match span.coordinates(c) {
                Some(coords) => {
                    let support = crate::graph::bits(coords).fold(1u64 << j, |acc, k| acc | 1u64 << basis[k]);
                    kernel.push(support);
                }
                None => {
                    span.insert(c);
                    basis.push(j);
                }
            }
        }
        let mut cycles = Vec::with_capacity((1usize << kernel.len()).saturating_sub(1));
        let mut acc = 0u64;
        // Gray-code walk over the cycle space
        for step in 1u64..(1u64 << kernel.len()) {
            acc ^= kernel[step.trailing_zeros() as usize];
            cycles.push(acc);
        }
        cycles.sort_unstable_by_key(|&c| (c.count_ones(), c));
        let mut circuits: Vec<u64> = Vec::new();
        for c in cycles {
            if !circuits.iter().any(|&k| k & !c == 0) {
                circuits.push(c);
            }
        }
        Ok(circuits)
    }

    /// `{e : r(S + e) = r(S)}`, in ground order.
    pub fn closure(&self, s: &[L]) -> Result<Vec<L>, MatroidError> {
        let idx = self.indices_of(s)?;
        Ok(self.labels_of(self.closure_indices(&idx)))
    }

    pub fn closure_indices(&self, s: &[usize]) -> Vec<usize> {
        let mut span = SpanTracker::new();
        for &i in s {
            span.insert(self.cols[i]);
        }
        (0..self.len())
            .filter(|&e| span.coordinates(self.cols[e]).is_some())
            .collect()
    }

    /// Contracts `contract` and deletes `delete`.
    ///
    /// Contracted columns are pivoted to unit vectors and their pivot rows
    /// dropped; a contracted column already in the span of earlier contracted
    /// columns has no pivot and is simply removed, which is the same as
    /// deleting it.
    pub fn minor(&self, contract: &[L], delete: &[L]) -> Result<Self, MatroidError> {
        let c = self.indices_of(contract)?;
        let d = self.indices_of(delete)?;
        if let Some(&bad) = c.iter().find(|i| d.contains(i)) {
            return Err(MatroidError::Overlap(format!("{:?}", self.ground[bad])));
        }
        let mut m = self.rep.clone();
        let mut pivot_rows: Vec<usize> = Vec::new();
        for &col in &c {
            let Some(p) = (0..m.rows()).find(|&r| !pivot_rows.contains(&r) && m.get(r, col)) else {
                continue;
            };
            for r in 0..m.rows() {
                if r != p && m.get(r, col) {
                    m.add_row(r, p);
                }
            }
            pivot_rows.push(p);
        }
        let keep_rows: Vec<usize> = (0..m.rows()).filter(|r| !pivot_rows.contains(r)).collect();
        let keep_cols: Vec<usize> = (0..self.len()).filter(|i| !c.contains(i) && !d.contains(i)).collect();
        let rep = m.select_rows(&keep_rows)?.select_columns(&keep_cols)?;
        Self::new(self.labels_of(keep_cols), rep)
    }

    /// The restriction to `s`, with ground in the order given.
    pub fn restrict(&self, s: &[L]) -> Result<Self, MatroidError> {
        let idx = self.indices_of(s)?;
        Self::new(s.to_vec(), self.rep.select_columns(&idx)?)
    }

    /// Same matrix, labels mapped through `f`.
    pub fn relabel<M: Clone + Eq + Hash + Debug>(&self, f: impl Fn(&L) -> M) -> Result<BinaryMatroid<M>, MatroidError> {
        BinaryMatroid::new(self.ground.iter().map(f).collect(), self.rep.clone())
    }

    /// Connected components with the default circuit cap.
    pub fn components(&self) -> Result<Vec<Vec<L>>, MatroidError> {
        Ok(self
            .component_indices(DEFAULT_CIRCUIT_LIMIT)?
            .into_iter()
            .map(|b| self.labels_of(b))
            .collect())
    }

    /// Finest partition of the ground set in which every circuit lies inside
    /// one block. Blocks are sorted and ordered by their smallest element.
    pub fn component_indices(&self, limit: usize) -> Result<Vec<Vec<usize>>, MatroidError> {
        let circuits = self.circuit_masks(limit)?;
        let mut parent: Vec<usize> = (0..self.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for c in circuits {
            let mut it = crate::graph::bits(c);
            let first = it.next().expect("circuits are nonempty");
            for e in it {
                let (a, b) = (find(&mut parent, first), find(&mut parent, e));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..self.len() {
            let r = find(&mut parent, e);
            blocks.entry(r).or_default().push(e);
        }
        Ok(blocks.into_values().collect())
    }

    /// A 7-element restriction isomorphic to the Fano matroid, if any.
    pub fn find_fano_restriction(&self) -> Result<Option<Vec<L>>, MatroidError> {
        Ok(self
            .find_fano_indices(DEFAULT_CIRCUIT_LIMIT)?
            .map(|idx| self.labels_of(idx)))
    }

    /// Searches for seven elements whose columns are exactly the nonzero
    /// vectors of some 3-dimensional column subspace.
    pub fn find_fano_indices(&self, limit: usize) -> Result<Option<Vec<usize>>, MatroidError> {
        let m = self.len();
        if m > limit {
            return Err(MatroidError::LimitExceeded { size: m, limit });
        }
        let mut first_with: HashMap<u64, usize> = HashMap::new();
        for (i, &c) in self.cols.iter().enumerate() {
            if c != 0 {
                first_with.entry(c).or_insert(i);
            }
        }
        let mut distinct: Vec<u64> = first_with.keys().copied().collect();
        distinct.sort_unstable();
        for (x, &a) in distinct.iter().enumerate() {
            for (y, &b) in distinct.iter().enumerate().skip(x + 1) {
                for &c in distinct.iter().skip(y + 1) {
                    if rank_of_masks([a, b, c]) < 3 {
                        continue;
                    }
                    let span = [a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c];
                    if let Some(mut found) = span
                        .iter()
                        .map(|v| first_with.get(v).copied())
                        .collect::<Option<Vec<usize>>>()
                    {
                        found.sort_unstable();
                        return Ok(Some(found));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Per-element isomorphism invariants: loop flag, size of the parallel
    /// class, and number of 3-element circuits through the element.
    pub fn element_signatures(&self) -> Vec<(bool, usize, usize)> {
        let m = self.len();
        let mut tri = vec![0usize; m];
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let (x, y, z) = (self.cols[a], self.cols[b], self.cols[c]);
                    if x != 0 && y != 0 && z != 0 && x != y && y != z && x != z && x ^ y ^ z == 0 {
                        tri[a] += 1;
                        tri[b] += 1;
                        tri[c] += 1;
                    }
                }
            }
        }
        (0..m)
            .map(|i| {
                let c = self.cols[i];
                let parallel = if c == 0 { 0 } else { self.cols.iter().filter(|&&d| d == c).count() };
                (c == 0, parallel, tri[i])
            })
            .collect()
    }
}

/// Whether two representations over the same ordered ground have the same
/// row space, i.e. define the same binary matroid.
pub fn equal_matroids<L: Clone + Eq + Hash + Debug>(
    m1: &BinaryMatroid<L>,
    m2: &BinaryMatroid<L>,
) -> Result<bool, MatroidError> {
    if m1.ground != m2.ground {
        return Err(MatroidError::GroundMismatch);
    }
    Ok(m1.rep.row_space_key() == m2.rep.row_space_key())
}

/// Basis exchange on the `A` part of a standard representation `(I | A)`:
/// with `a[j][k] = 1`, toggles `a[b][c]` for every `b != j`, `c != k` with
/// `a[j][c] = 1` and `a[b][k] = 1`. The result is the standard
/// representation for the basis obtained by swapping basis element `j` with
/// the element of column `k`, other elements keeping their positions.
pub fn basis_exchange(a: &Gf2Matrix, j: usize, k: usize) -> Result<Gf2Matrix, MatroidError> {
    if j >= a.rows() {
        return Err(Gf2Error::IndexOutOfRange { index: j, len: a.rows() }.into());
    }
    if k >= a.cols() {
        return Err(Gf2Error::IndexOutOfRange { index: k, len: a.cols() }.into());
    }
    if !a.get(j, k) {
        return Err(MatroidError::ZeroPivot { row: j, col: k });
    }
    let mut out = a.clone();
    for b in (0..a.rows()).filter(|&b| b != j && a.get(b, k)) {
        for c in (0..a.cols()).filter(|&c| c != k && a.get(j, c)) {
            out.toggle(b, c);
        }
    }
    Ok(out)
}

/// Searches for a rank-preserving bijection between the ground sets, given
/// as `result[i] = image of element i`. Uses the default size cap.
pub fn matroids_isomorphic<L, M>(m1: &BinaryMatroid<L>, m2: &BinaryMatroid<M>) -> Result<Option<Vec<usize>>, MatroidError>
where
    L: Clone + Eq + Hash + Debug,
    M: Clone + Eq + Hash + Debug,
{
    matroids_isomorphic_with_limit(m1, m2, DEFAULT_ISOMORPHISM_LIMIT)
}

/// Backtracking over images of a fixed basis of `m1`.
///
/// A binary matroid is determined by its fundamental circuits with respect
/// to one basis. So once a basis `B` is mapped onto a basis `B'` of `m2`, a
/// bijection exists iff the multisets of coordinate vectors of the remaining
/// elements (over `B` and `B'`) coincide. Partial basis maps are pruned by the
/// same test restricted to the span of the elements mapped so far, and
/// candidates are filtered by [`BinaryMatroid::element_signatures`].
pub fn matroids_isomorphic_with_limit<L, M>(
    m1: &BinaryMatroid<L>,
    m2: &BinaryMatroid<M>,
    limit: usize,
) -> Result<Option<Vec<usize>>, MatroidError>
where
    L: Clone + Eq + Hash + Debug,
    M: Clone + Eq + Hash + Debug,
{
    for m in [m1.len(), m2.len()] {
        if m > limit {
            return Err(MatroidError::LimitExceeded { size: m, limit });
        }
    }
    if m1.len() != m2.len() || m1.rank() != m2.rank() {
        return Ok(None);
    }
    let sig1 = m1.element_signatures();
    let sig2 = m2.element_signatures();
    let mut sorted1 = sig1.clone();
    let mut sorted2 = sig2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return Ok(None);
    }

    let mut span = SpanTracker::new();
    let mut basis1 = Vec::new();
    for (i, &c) in m1.cols.iter().enumerate() {
        if span.insert(c) {
            basis1.push(i);
        }
    }

    struct Search<'a> {
        cols1: &'a [u64],
        cols2: &'a [u64],
        sig1: &'a [(bool, usize, usize)],
        sig2: &'a [(bool, usize, usize)],
        basis1: &'a [usize],
        images: Vec<usize>,
    }

    // (coordinates over the mapped prefix, signature) for every element in
    // the span of the prefix, as a sorted multiset, plus the per-element
    // assignment for building the final bijection.
    fn profile(cols: &[u64], sig: &[(bool, usize, usize)], prefix: &[usize]) -> Vec<(u64, (bool, usize, usize), usize)> {
        let mut span = SpanTracker::new();
        for &b in prefix {
            span.insert(cols[b]);
        }
        let mut out: Vec<_> = cols
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| span.coordinates(c).map(|co| (co, sig[i], i)))
            .collect();
        out.sort_unstable();
        out
    }

    fn same_profile(a: &[(u64, (bool, usize, usize), usize)], b: &[(u64, (bool, usize, usize), usize)]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0 == y.0 && x.1 == y.1)
    }

    impl Search<'_> {
        fn run(&mut self) -> Option<Vec<usize>> {
            let k = self.images.len();
            if k == self.basis1.len() {
                let p1 = profile(self.cols1, self.sig1, self.basis1);
                let p2 = profile(self.cols2, self.sig2, &self.images);
                if !same_profile(&p1, &p2) {
                    return None;
                }
                let mut map = vec![usize::MAX; self.cols1.len()];
                for (a, b) in p1.iter().zip(&p2) {
                    map[a.2] = b.2;
                }
                return Some(map);
            }
            let target = self.basis1[k];
            for y in 0..self.cols2.len() {
                if self.sig2[y] != self.sig1[target] || self.images.contains(&y) {
                    continue;
                }
                self.images.push(y);
                let prefix1 = &self.basis1[..=k];
                let ok = rank_of_masks(self.images.iter().map(|&i| self.cols2[i])) == k + 1
                    && same_profile(
                        &profile(self.cols1, self.sig1, prefix1),
                        &profile(self.cols2, self.sig2, &self.images),
                    );
                if ok {
                    if let Some(found) = self.run() {
                        return Some(found);
                    }
                }
                self.images.pop();
            }
            None
        }
    }

    let mut search = Search {
        cols1: &m1.cols,
        cols2: &m2.cols,
        sig1: &sig1,
        sig2: &sig2,
        basis1: &basis1,
        images: Vec::new(),
    };
    let found = search.run();
    if let Some(map) = &found {
        let permuted: Vec<u64> = map.iter().map(|&j| m2.cols[j]).collect();
        debug_assert!(same_matroid_columns(&m1.cols, &permuted));
    }
    Ok(found)
}

/// Whether `map` (element `i` of `m1` to element `map[i]` of `m2`) preserves
/// the rank of every subset.
pub fn is_isomorphism<L, M>(m1: &BinaryMatroid<L>, m2: &BinaryMatroid<M>, map: &[usize]) -> bool
where
    L: Clone + Eq + Hash + Debug,
    M: Clone + Eq + Hash + Debug,
{
    if map.len() != m1.len() || m1.len() != m2.len() {
        return false;
    }
    let mut seen = vec![false; m2.len()];
    for &j in map {
        if j >= m2.len() || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    let permuted: Vec<u64> = map.iter().map(|&j| m2.cols[j]).collect();
    same_matroid_columns(&m1.cols, &permuted)
}
