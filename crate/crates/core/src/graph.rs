//! Looped simple graphs and their elementary operations.
//!
//! Vertices are the dense indices `0..n`. Adjacency is kept as one `u64`
//! neighbour mask per vertex, so graphs have at most 64 vertices. Loop status
//! lives only in the loop mask; the adjacency diagonal is always clear.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::gf2::Gf2Matrix;

pub const MAX_VERTICES: usize = 64;

/// Default vertex cap for brute-force canonical codes.
pub const DEFAULT_CANONICAL_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is not in a graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("an edge needs two distinct endpoints, got {0} twice")]
    SelfEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("{n} vertices exceeds the configured limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("adjacency matrix must be square and symmetric")]
    NotSymmetric,
}

/// A simple graph in which each vertex may carry a loop.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopedSimpleGraph {
    n: usize,
    adj: Vec<u64>,
    loops: u64,
}

/// Brute-force canonical form: the lexicographically least encoding over all
/// vertex relabelings. Equal codes iff the graphs are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u8>);

impl LoopedSimpleGraph {
    /// The edgeless, loopless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        Self {
            n,
            adj: vec![0; n],
            loops: 0,
        }
    }

    pub fn new(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(GraphError::SelfEdge(u));
            }
            if g.is_adjacent(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.toggle_edge(u, v);
        }
        for &v in loops {
            g.check(v)?;
            g.loops |= 1 << v;
        }
        Ok(g)
    }

    /// Reads a graph back from a symmetric adjacency matrix (diagonal = loops).
    pub fn from_adjacency_matrix(a: &Gf2Matrix) -> Result<Self, GraphError> {
        if !a.is_symmetric() {
            return Err(GraphError::NotSymmetric);
        }
        if a.rows() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(a.rows()));
        }
        let mut g = Self::empty(a.rows());
        for i in 0..a.rows() {
            if a.get(i, i) {
                g.loops |= 1 << i;
            }
            for j in 0..i {
                if a.get(i, j) {
                    g.toggle_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`, unlooped.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges, &[]).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` vertices, unlooped.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::new(n, &edges, &[]).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in 0..u {
                g.toggle_edge(u, v);
            }
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &edges, &[]).expect("star edges are valid")
    }

    /// Graph number `code` in the enumeration used by [`Self::all`]: the low
    /// `n(n-1)/2` bits select edges `(i, j)`, `j < i`, in row order; the next
    /// `n` bits are the loops.
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut g = Self::empty(n);
        let mut bit = 0;
        for i in 0..n {
            for j in 0..i {
                if code >> bit & 1 == 1 {
                    g.toggle_edge(i, j);
                }
                bit += 1;
            }
        }
        g.loops = (code >> bit) & mask(n);
        g
    }

    /// Every labelled looped simple graph on `n` vertices
    /// (`2^(n(n-1)/2 + n)` of them). Intended for `n <= 7`.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        let bits = n * (n - n.min(1)) / 2 + n;
        assert!(bits < 64, "too many graphs to enumerate");
        (0..1u64 << bits).map(move |c| Self::from_code(n, c))
    }

    /// Every labelled simple (loopless) graph on `n` vertices.
    pub fn all_simple(n: usize) -> impl Iterator<Item = Self> {
        let bits = n * (n - n.min(1)) / 2;
        (0..1u64 << bits).map(move |c| Self::from_code(n, c))
    }

    /// Uniformly random looped simple graph.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..i {
                if rng.gen::<bool>() {
                    g.toggle_edge(i, j);
                }
            }
            if rng.gen::<bool>() {
                g.loops |= 1 << i;
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn is_looped(&self, v: usize) -> bool {
        self.loops >> v & 1 == 1
    }

    /// Open neighbourhood of `v` as a bitmask.
    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn loop_mask(&self) -> u64 {
        self.loops
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn looped_vertices(&self) -> Vec<usize> {
        bits(self.loops).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u] & !mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_simple(&self) -> bool {
        self.loops == 0
    }

    fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    /// `A(G)`: symmetric, diagonal entries mark loops.
    pub fn adjacency_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                self.is_looped(i)
            } else {
                self.is_adjacent(i, j)
            }
        })
    }

    /// Row `v` of `A(G)` as a bitmask: neighbours plus `v` itself if looped.
    #[inline]
    pub fn adjacency_row(&self, v: usize) -> u64 {
        self.adj[v] | (self.loops & (1 << v))
    }

    /// Complements every adjacency between distinct neighbours of `v`.
    pub fn simple_local_complement(&self, v: usize) -> Result<Self, GraphError> {
        self.check(v)?;
        let mut g = self.clone();
        g.complement_within(self.adj[v]);
        Ok(g)
    }

    /// Simple local complement at `v`, then loop complement at each neighbour.
    pub fn nonsimple_local_complement(&self, v: usize) -> Result<Self, GraphError> {
        let mut g = self.simple_local_complement(v)?;
        g.loops ^= self.adj[v];
        Ok(g)
    }

    pub fn loop_complement(&self, v: usize) -> Result<Self, GraphError> {
        self.check(v)?;
        let mut g = self.clone();
        g.loops ^= 1 << v;
        Ok(g)
    }

    /// Edge pivot `((G_s^v)_s^w)_s^v` on the edge `vw`.
    pub fn edge_pivot(&self, v: usize, w: usize) -> Result<Self, GraphError> {
        self.check(v)?;
        self.check(w)?;
        if v == w || !self.is_adjacent(v, w) {
            return Err(GraphError::NotAdjacent(v, w));
        }
        self.simple_local_complement(v)?
            .simple_local_complement(w)?
            .simple_local_complement(v)
    }

    fn complement_within(&mut self, set: u64) {
        for u in bits(set) {
            self.adj[u] ^= set & !(1 << u);
        }
    }

    /// Deletes `v`; later vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.check(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced_subgraph(&keep))
    }

    /// Subgraph induced on `keep`, relabelled `0..keep.len()` in that order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Self {
        let mut g = Self::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            if self.is_looped(u) {
                g.loops |= 1 << i;
            }
            for (j, &w) in keep.iter().enumerate().take(i) {
                if self.is_adjacent(u, w) {
                    g.toggle_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            if self.is_looped(u) {
                g.loops |= 1 << perm[u];
            }
            for w in bits(self.adj[u]) {
                g.adj[perm[u]] |= 1 << perm[w];
            }
        }
        g
    }

    /// `self` on vertices `0..n`, `other` on `n..n+m`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.n;
        let mut g = Self::empty(n + other.n);
        g.adj[..n].copy_from_slice(&self.adj);
        for (i, &a) in other.adj.iter().enumerate() {
            g.adj[n + i] = a << n;
        }
        g.loops = self.loops | other.loops << n;
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let next = bits(frontier).fold(0, |acc, u| acc | self.adj[u]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            comps.push(bits(comp).collect());
        }
        comps
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v] == 0
    }

    /// Quadruples `(u, v, w, x)` of distinct unlooped vertices with
    /// `N(v) = {u, w}`, `N(w) = {v, x}` and `N(u) - {v} = N(x) - {w}`.
    pub fn find_matched_4paths(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for v in 0..self.n {
            if self.is_looped(v) || self.degree(v) != 2 {
                continue;
            }
            for w in self.neighbors(v) {
                if self.is_looped(w) || self.degree(w) != 2 {
                    continue;
                }
                let Some(u) = self.neighbors(v).find(|&t| t != w) else {
                    continue;
                };
                let Some(x) = self.neighbors(w).find(|&t| t != v) else {
                    continue;
                };
                if u == x || self.is_looped(u) || self.is_looped(x) {
                    continue;
                }
                if self.adj[u] & !(1 << v) == self.adj[x] & !(1 << w) {
                    out.push([u, v, w, x]);
                }
            }
        }
        out
    }

    /// Canonical code with the default vertex cap.
    pub fn canonical_code(&self) -> Result<CanonicalCode, GraphError> {
        self.canonical_code_with_limit(DEFAULT_CANONICAL_LIMIT)
    }

    /// Minimum, over all vertex permutations, of the upper-triangle adjacency
    /// bits followed by the loop bits.
    pub fn canonical_code_with_limit(&self, limit: usize) -> Result<CanonicalCode, GraphError> {
        if self.n > limit {
            return Err(GraphError::LimitExceeded { n: self.n, limit });
        }
        let n = self.n;
        let mut best: Option<Vec<bool>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut enc = Vec::with_capacity(n * n.saturating_sub(1) / 2 + n);
        // Heap's algorithm; `perm[i]` is the original vertex placed at slot i.
        let mut c = vec![0usize; n];
        let mut consider = |perm: &[usize], enc: &mut Vec<bool>| {
            enc.clear();
            for i in 0..n {
                for j in i + 1..n {
                    enc.push(self.is_adjacent(perm[i], perm[j]));
                }
            }
            enc.extend(perm.iter().map(|&v| self.is_looped(v)));
            if best.as_ref().is_none_or(|b| enc.as_slice() < b.as_slice()) {
                best = Some(enc.clone());
            }
        };
        consider(&perm, &mut enc);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                consider(&perm, &mut enc);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        let bits = best.unwrap_or_default();
        let mut bytes = vec![n as u8];
        bytes.extend(bits.chunks(8).map(|ch| {
            ch.iter()
                .enumerate()
                .fold(0u8, |acc, (k, &b)| acc | (b as u8) << (7 - k))
        }));
        Ok(CanonicalCode(bytes))
    }
}

impl fmt::Debug for LoopedSimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?}, loops={:?})",
            self.n,
            self.edges(),
            self.looped_vertices()
        )
    }
}

#[inline]
pub(crate) fn mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Indices of the set bits of `m`, ascending.
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}
