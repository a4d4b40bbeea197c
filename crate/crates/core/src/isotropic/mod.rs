//! The isotropic matroid `M(IAS(G))` of a looped simple graph.
//!
//! `IAS(G) = (I | A(G) | I + A(G))`. Its ground set `W(G)` has three
//! elements per vertex `v`: `v_φ` (column of `I`), `v_χ` (column of `A`) and
//! `v_ψ` (column of `I + A`). Ground elements are ordered all-φ, all-χ,
//! all-ψ, each block in vertex order, so ground index `flavor * n + v`
//! addresses the matrix column directly.

mod compatible;
mod rank_props;
mod s3;
mod triangulation;

use std::fmt;

use thiserror::Error;

use crate::gf2::Gf2Matrix;
use crate::graph::{GraphError, LoopedSimpleGraph};
use crate::matroid::{BinaryMatroid, MatroidError};

pub use compatible::{
    compose_iso, elementary_iso, find_compatible_iso, invert_iso, verify_compatible_iso, CompatibleIso, ElementaryMove,
};
pub use rank_props::{closure_meets_cell_at_most_once, strong_map_check, triangle_check, TriangleOutcome, STRONG_MAP_LIMIT};
pub use s3::S3Element;
pub use triangulation::{
    apply_ground_perm, bend_4path, bent_4path_automorphism, canonical_partition, canonicalize_triangulation,
    canonicalize_triangulation_with_limit, compatible_from_arbitrary, enumerate_triangulations, is_automorphism,
    is_triangulation, GroundPerm, Triangulation, CANONICALIZE_LIMIT, TRIANGULATION_LIMIT,
};

/// The isotropic matroid, labelled by [`GroundElement`]s.
pub type IsotropicMatroid = BinaryMatroid<GroundElement>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsotropicError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("graphs have {0} and {1} vertices")]
    SizeMismatch(usize, usize),
    #[error("{n} vertices exceeds the supported limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cells do not partition W(G) into 3-sets: {0}")]
    NotAPartition(String),
    /// A result the underlying theory guarantees did not hold; always a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// One of the three column blocks of `IAS(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// Column of `I`.
    Phi = 0,
    /// Column of `A(G)`.
    Chi = 1,
    /// Column of `I + A(G)`.
    Psi = 2,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Phi, Flavor::Chi, Flavor::Psi];

    pub fn from_index(i: usize) -> Flavor {
        Self::ALL[i]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Flavor::Phi => 'φ',
            Flavor::Chi => 'χ',
            Flavor::Psi => 'ψ',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Phi => "phi",
            Flavor::Chi => "chi",
            Flavor::Psi => "psi",
        }
    }

    /// The flavor that is neither `self` nor `other` (which must differ).
    pub fn third(self, other: Flavor) -> Flavor {
        debug_assert_ne!(self, other);
        Self::from_index(3 - self.index() - other.index())
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `v_φ`, `v_χ` or `v_ψ`. Ordered by flavor, then vertex, matching the
/// column order of `IAS(G)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundElement {
    pub flavor: Flavor,
    pub vertex: usize,
}

impl GroundElement {
    pub fn new(vertex: usize, flavor: Flavor) -> Self {
        Self { flavor, vertex }
    }

    pub fn phi(vertex: usize) -> Self {
        Self::new(vertex, Flavor::Phi)
    }

    pub fn chi(vertex: usize) -> Self {
        Self::new(vertex, Flavor::Chi)
    }

    pub fn psi(vertex: usize) -> Self {
        Self::new(vertex, Flavor::Psi)
    }

    /// Column index in `IAS(G)` for a graph on `n` vertices.
    #[inline]
    pub fn index(self, n: usize) -> usize {
        self.flavor.index() * n + self.vertex
    }

    #[inline]
    pub fn from_index(i: usize, n: usize) -> Self {
        Self::new(i % n, Flavor::from_index(i / n))
    }
}

impl fmt::Debug for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.vertex, self.flavor.symbol())
    }
}

impl fmt::Display for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.vertex, self.flavor.name())
    }
}

/// `W(G)` in column order.
pub fn ground_set(n: usize) -> Vec<GroundElement> {
    (0..3 * n).map(|i| GroundElement::from_index(i, n)).collect()
}

/// The matrix `(I | A(G) | I + A(G))`.
pub fn ias_matrix(g: &LoopedSimpleGraph) -> Gf2Matrix {
    let n = g.n();
    let a = g.adjacency_matrix();
    let i = Gf2Matrix::identity(n);
    let ia = i.add(&a).expect("square blocks of equal size");
    i.hconcat(&a).and_then(|m| m.hconcat(&ia)).expect("blocks have n rows")
}

/// `M(IAS(G))`.
pub fn ias(g: &LoopedSimpleGraph) -> IsotropicMatroid {
    BinaryMatroid::new(ground_set(g.n()), ias_matrix(g)).expect("W(G) labels are distinct")
}

/// The restricted isotropic matroid `M(IA(G))`, on the φ and χ elements.
pub fn restricted_ia(g: &LoopedSimpleGraph) -> IsotropicMatroid {
    let n = g.n();
    let rep = Gf2Matrix::identity(n).hconcat(&g.adjacency_matrix()).expect("blocks have n rows");
    BinaryMatroid::new(ground_set(n)[..2 * n].to_vec(), rep).expect("labels are distinct")
}

/// Column of `ground` in `IAS(G)` as a row bitmask.
#[inline]
pub fn ias_column(g: &LoopedSimpleGraph, e: GroundElement) -> u64 {
    let v = e.vertex;
    match e.flavor {
        Flavor::Phi => 1 << v,
        Flavor::Chi => g.adjacency_row(v),
        Flavor::Psi => g.adjacency_row(v) ^ (1 << v),
    }
}

/// A set of ground elements with at most one element per vertex.
///
/// Each vertex carries a vector of GF(2)²: φ is `(1, 0)`, χ is `(0, 1)`,
/// ψ is `(1, 1)` and "nothing" is `(0, 0)`. The two coordinates are stored
/// as vertex bitmasks, which turns `⊞` into a pair of XORs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubTransversal {
    n: usize,
    lo: u64,
    hi: u64,
}

fn flavor_bits(f: Flavor) -> (bool, bool) {
    match f {
        Flavor::Phi => (true, false),
        Flavor::Chi => (false, true),
        Flavor::Psi => (true, true),
    }
}

impl SubTransversal {
    /// Panics if `n` exceeds [`crate::graph::MAX_VERTICES`].
    pub fn empty(n: usize) -> Self {
        assert!(n <= crate::graph::MAX_VERTICES, "too many vertices");
        Self { n, lo: 0, hi: 0 }
    }

    pub fn from_selection(selection: Vec<Option<Flavor>>) -> Self {
        let mut s = Self::empty(selection.len());
        for (v, f) in selection.into_iter().enumerate() {
            s.set(v, f);
        }
        s
    }

    /// The selection `v ↦ φ` on `phi`, `v ↦ χ` on `chi`, `v ↦ ψ` on `psi`;
    /// the three masks must be disjoint subsets of `0..n`.
    pub fn from_masks(n: usize, phi: u64, chi: u64, psi: u64) -> Self {
        debug_assert!(phi & chi == 0 && chi & psi == 0 && phi & psi == 0);
        let s = Self::empty(n);
        Self {
            lo: (phi | psi) & crate::graph::mask(n),
            hi: (chi | psi) & crate::graph::mask(n),
            ..s
        }
    }

    /// Builds a sub-transversal from ground elements; fails if two share a
    /// vertex or a vertex is out of range.
    pub fn from_elements(n: usize, elems: &[GroundElement]) -> Result<Self, IsotropicError> {
        let mut s = Self::empty(n);
        for e in elems {
            if e.vertex >= n {
                return Err(GraphError::InvalidVertex { vertex: e.vertex, n }.into());
            }
            if s.get(e.vertex).is_some() {
                return Err(IsotropicError::Precondition(format!(
                    "vertex {} selected twice",
                    e.vertex
                )));
            }
            s.set(e.vertex, Some(e.flavor));
        }
        Ok(s)
    }

    /// Every choice of `none | φ | χ | ψ` per vertex, `4^n` in total.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        let m = crate::graph::mask(n);
        (0..1u64 << n).flat_map(move |lo| (0..1u64 << n).map(move |hi| Self { n, lo: lo & m, hi: hi & m }))
    }

    /// Every transversal (one element per vertex), `3^n` in total.
    pub fn all_transversals(n: usize) -> impl Iterator<Item = Self> {
        Self::all(n).filter(|s| s.is_transversal())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: usize) -> Option<Flavor> {
        assert!(v < self.n, "vertex {v} out of range");
        match (self.lo >> v & 1, self.hi >> v & 1) {
            (0, 0) => None,
            (1, 0) => Some(Flavor::Phi),
            (0, 1) => Some(Flavor::Chi),
            _ => Some(Flavor::Psi),
        }
    }

    pub fn set(&mut self, v: usize, flavor: Option<Flavor>) {
        assert!(v < self.n, "vertex {v} out of range");
        let (lo, hi) = flavor.map_or((false, false), flavor_bits);
        self.lo = self.lo & !(1 << v) | u64::from(lo) << v;
        self.hi = self.hi & !(1 << v) | u64::from(hi) << v;
    }

    pub fn selection(&self) -> Vec<Option<Flavor>> {
        (0..self.n).map(|v| self.get(v)).collect()
    }

    /// Vertices carrying `flavor`.
    pub fn vertices_with(&self, flavor: Flavor) -> u64 {
        match flavor {
            Flavor::Phi => self.lo & !self.hi,
            Flavor::Chi => self.hi & !self.lo,
            Flavor::Psi => self.lo & self.hi,
        }
    }

    /// Vertices carrying some element.
    pub fn support(&self) -> u64 {
        self.lo | self.hi
    }

    pub fn len(&self) -> usize {
        self.support().count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.support() == 0
    }

    pub fn is_transversal(&self) -> bool {
        self.support() == crate::graph::mask(self.n)
    }

    pub fn contains(&self, e: GroundElement) -> bool {
        e.vertex < self.n && self.get(e.vertex) == Some(e.flavor)
    }

    pub fn elements(&self) -> Vec<GroundElement> {
        let mut out: Vec<GroundElement> = Flavor::ALL
            .iter()
            .flat_map(|&f| crate::graph::bits(self.vertices_with(f)).map(move |v| GroundElement::new(v, f)))
            .collect();
        out.sort();
        out
    }

    /// Ground-index bitmask (index `flavor * n + v`); needs `3n ≤ 64`.
    pub fn ground_mask(&self) -> u64 {
        Flavor::ALL
            .iter()
            .fold(0, |acc, &f| acc | self.vertices_with(f) << (f.index() * self.n))
    }

    /// Sum of the selected columns of `IAS(G)`.
    pub fn column_sum(&self, g: &LoopedSimpleGraph) -> u64 {
        // φ and ψ both contribute e_v; χ and ψ both contribute the row of A
        let from_a = crate::graph::bits(self.hi).fold(0, |acc, v| acc ^ g.adjacency_row(v));
        self.lo ^ from_a
    }

    /// The sub-transversal sum `⊞`, vertex by vertex: an empty side copies
    /// the other, equal sides cancel, and two distinct flavors give the third.
    pub fn boxplus(&self, other: &Self) -> Result<Self, IsotropicError> {
        if self.n != other.n {
            return Err(IsotropicError::SizeMismatch(self.n, other.n));
        }
        Ok(Self {
            n: self.n,
            lo: self.lo ^ other.lo,
            hi: self.hi ^ other.hi,
        })
    }
}

impl fmt::Debug for SubTransversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}
