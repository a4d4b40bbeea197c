//! The delta-matroid `D(G)` and the transverse cycles of `IAS(G)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::gf2::rank_of_masks;
use crate::graph::{bits, mask, LoopedSimpleGraph};
use crate::isotropic::{ias_column, Flavor, GroundElement, SubTransversal};

/// Largest `n` accepted by the enumerations in this module.
pub const DELTA_LIMIT: usize = 12;

/// A transverse cycle: a sub-transversal whose columns sum to zero.
pub type TransverseCycle = SubTransversal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("{n} vertices exceeds the supported limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("vertex set {0:#b} is not contained in the ground set")]
    UnknownVertices(u64),
    #[error("sub-transversals live on {0} and {1} vertices")]
    SizeMismatch(usize, usize),
    #[error("no cycle of the form ζ_{0} among the inputs")]
    MissingZeta(usize),
    #[error("several cycles of the form ζ_{0} among the inputs")]
    AmbiguousZeta(usize),
    #[error("neighbourhoods read from the cycles are not symmetric")]
    Asymmetric,
}

fn check_limit(n: usize) -> Result<(), DeltaError> {
    if n > DELTA_LIMIT {
        return Err(DeltaError::LimitExceeded { n, limit: DELTA_LIMIT });
    }
    Ok(())
}

/// A set system on `0..n`, feasible sets stored as vertex bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeltaMatroid {
    n: usize,
    feasible: BTreeSet<u64>,
}

impl DeltaMatroid {
    /// Fails if a set mentions a vertex `>= n`.
    pub fn new(n: usize, feasible: impl IntoIterator<Item = u64>) -> Result<Self, DeltaError> {
        let feasible: BTreeSet<u64> = feasible.into_iter().collect();
        if let Some(&bad) = feasible.iter().find(|&&s| s & !mask(n) != 0) {
            return Err(DeltaError::UnknownVertices(bad));
        }
        Ok(Self { n, feasible })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn feasible(&self) -> &BTreeSet<u64> {
        &self.feasible
    }

    pub fn contains(&self, s: u64) -> bool {
        self.feasible.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.feasible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.feasible.is_empty()
    }

    /// Feasible sets as sorted vertex lists, ordered by size then content.
    pub fn sets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.feasible.iter().map(|&s| bits(s).collect()).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

impl fmt::Debug for DeltaMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sets()).finish()
    }
}

/// `D(G)`: vertex sets `S` with `A(G)[S]` nonsingular.
pub fn delta_matroid(g: &LoopedSimpleGraph) -> Result<DeltaMatroid, DeltaError> {
    let n = g.n();
    check_limit(n)?;
    let feasible = (0..1u64 << n).filter(|&s| {
        let rows = bits(s).map(|v| g.adjacency_row(v) & s);
        rank_of_masks(rows) == s.count_ones() as usize
    });
    DeltaMatroid::new(n, feasible)
}

/// `D(G)` read off `M(IAS(G))`: `S` is feasible when
/// `{s_χ : s ∈ S} ∪ {v_φ : v ∉ S}` is a basis.
pub fn delta_via_bases(g: &LoopedSimpleGraph) -> Result<DeltaMatroid, DeltaError> {
    let n = g.n();
    check_limit(n)?;
    let feasible = (0..1u64 << n).filter(|&s| {
        let cols = (0..n).map(|v| {
            let f = if s >> v & 1 == 1 { Flavor::Chi } else { Flavor::Phi };
            ias_column(g, GroundElement::new(v, f))
        });
        rank_of_masks(cols) == n
    });
    DeltaMatroid::new(n, feasible)
}

/// `{S Δ x : S ∈ d}`.
pub fn twist(d: &DeltaMatroid, x: u64) -> Result<DeltaMatroid, DeltaError> {
    if x & !mask(d.n) != 0 {
        return Err(DeltaError::UnknownVertices(x));
    }
    DeltaMatroid::new(d.n, d.feasible.iter().map(|&s| s ^ x))
}

/// Rebuilds a graph from its delta-matroid: `v` is looped iff `{v}` is
/// feasible; two looped vertices are adjacent iff `{v, w}` is infeasible,
/// any other pair iff `{v, w}` is feasible.
pub fn graph_from_delta(d: &DeltaMatroid) -> LoopedSimpleGraph {
    let n = d.n;
    let looped: Vec<usize> = (0..n).filter(|&v| d.contains(1 << v)).collect();
    let mut edges = Vec::new();
    for v in 0..n {
        for w in v + 1..n {
            let pair = d.contains(1 << v | 1 << w);
            let both = looped.contains(&v) && looped.contains(&w);
            if pair != both {
                edges.push((v, w));
            }
        }
    }
    LoopedSimpleGraph::new(n, &edges, &looped).expect("edges are distinct pairs of vertices")
}

/// The sub-transversal sum `⊞`.
pub fn boxplus(s: &SubTransversal, t: &SubTransversal) -> Result<SubTransversal, DeltaError> {
    s.boxplus(t).map_err(|_| DeltaError::SizeMismatch(s.n(), t.n()))
}

/// Every transverse cycle of `G`, sorted.
///
/// Each vertex takes its χ element, its ψ element, or neither of those. The
/// χ/ψ columns then fix a sum `s`; the choice extends to a cycle exactly
/// when `s` vanishes on the χ/ψ vertices, the φ elements of the other
/// vertices in `s` completing it.
pub fn transverse_cycles(g: &LoopedSimpleGraph) -> Result<Vec<TransverseCycle>, DeltaError> {
    let n = g.n();
    check_limit(n)?;
    let rows: Vec<u64> = (0..n).map(|v| g.adjacency_row(v)).collect();
    let mut out = Vec::with_capacity(1 << n);
    // chi, psi: vertices choosing that flavor; sum: their column sum
    fn walk(v: usize, chi: u64, psi: u64, sum: u64, rows: &[u64], out: &mut Vec<TransverseCycle>) {
        let n = rows.len();
        if v == n {
            if sum & (chi | psi) == 0 {
                out.push(SubTransversal::from_masks(n, sum, chi, psi));
            }
            return;
        }
        walk(v + 1, chi, psi, sum, rows, out);
        walk(v + 1, chi | 1 << v, psi, sum ^ rows[v], rows, out);
        walk(v + 1, chi, psi | 1 << v, sum ^ rows[v] ^ 1 << v, rows, out);
    }
    walk(0, 0, 0, 0, &rows, &mut out);
    out.sort();
    Ok(out)
}

/// `Φ(G) = {v_φ}`.
pub fn phi_transversal(n: usize) -> SubTransversal {
    SubTransversal::from_selection(vec![Some(Flavor::Phi); n])
}

/// `Ψ(G)`: `v_ψ` at looped vertices, `v_χ` at unlooped ones. These are the
/// elements whose column is `N(v)`.
pub fn psi_transversal(g: &LoopedSimpleGraph) -> SubTransversal {
    SubTransversal::from_selection((0..g.n()).map(|v| Some(open_flavor(g, v))).collect())
}

fn open_flavor(g: &LoopedSimpleGraph, v: usize) -> Flavor {
    if g.is_looped(v) {
        Flavor::Psi
    } else {
        Flavor::Chi
    }
}

/// The cycle `Ψ|X ⊞ Φ|N(X)`, where `N(X)` is the set of vertices with an
/// odd number of neighbours in `X`.
pub fn cycle_for_set(g: &LoopedSimpleGraph, x: u64) -> SubTransversal {
    let n = g.n();
    let odd = bits(x).fold(0, |acc, v| acc ^ g.neighbor_mask(v));
    let loops = g.loop_mask();
    let psi_part = SubTransversal::from_masks(n, 0, x & !loops, x & loops);
    let phi_part = SubTransversal::from_masks(n, odd, 0, 0);
    psi_part.boxplus(&phi_part).expect("same vertex set")
}

/// Every transverse cycle via the parametrization `X ↦ Ψ|X ⊞ Φ|N(X)`,
/// sorted.
pub fn cycles_by_formula(g: &LoopedSimpleGraph) -> Result<Vec<TransverseCycle>, DeltaError> {
    check_limit(g.n())?;
    let mut out: Vec<_> = (0..1u64 << g.n()).map(|x| cycle_for_set(g, x)).collect();
    out.sort();
    Ok(out)
}

/// Whether `s` matches the pattern of `ζ_v`: nonempty, at most the φ
/// element away from `v`, and `v_χ` or `v_ψ` at `v`.
pub fn fits_zeta(s: &SubTransversal, v: usize) -> bool {
    // χ and ψ are exactly the flavors with the second coordinate set
    s.vertices_with(Flavor::Chi) | s.vertices_with(Flavor::Psi) == 1 << v
}

/// The unique transverse cycle inside `{v_χ, v_ψ} ∪ {w_φ : w ≠ v}`.
pub fn zeta(g: &LoopedSimpleGraph, v: usize) -> Result<TransverseCycle, DeltaError> {
    if v >= g.n() {
        return Err(DeltaError::UnknownVertices(1u64.checked_shl(v as u32).unwrap_or(0)));
    }
    let mut found = Vec::new();
    for f in [Flavor::Chi, Flavor::Psi] {
        let col = ias_column(g, GroundElement::new(v, f));
        if col >> v & 1 == 0 {
            let mut s = SubTransversal::empty(g.n());
            s.set(v, Some(f));
            for w in bits(col) {
                s.set(w, Some(Flavor::Phi));
            }
            found.push(s);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one element")),
        0 => Err(DeltaError::MissingZeta(v)),
        _ => Err(DeltaError::AmbiguousZeta(v)),
    }
}

/// Reads the graph off its transverse cycles: `N(v) = {w : w_φ ∈ ζ_v}`
/// and `v` is looped iff `v_ψ ∈ ζ_v`.
pub fn graph_from_cycles(n: usize, cycles: &[TransverseCycle]) -> Result<LoopedSimpleGraph, DeltaError> {
    check_limit(n)?;
    if let Some(c) = cycles.iter().find(|c| c.n() != n) {
        return Err(DeltaError::SizeMismatch(n, c.n()));
    }
    let mut adj = vec![0u64; n];
    let mut looped = Vec::new();
    for v in 0..n {
        let mut matches = cycles.iter().filter(|c| fits_zeta(c, v));
        let z = matches.next().ok_or(DeltaError::MissingZeta(v))?;
        if matches.any(|c| c != z) {
            return Err(DeltaError::AmbiguousZeta(v));
        }
        if z.get(v) == Some(Flavor::Psi) {
            looped.push(v);
        }
        adj[v] = (0..n)
            .filter(|&w| w != v && z.get(w) == Some(Flavor::Phi))
            .fold(0, |acc, w| acc | 1 << w);
    }
    let mut edges = Vec::new();
    for v in 0..n {
        for w in bits(adj[v]) {
            if adj[w] >> v & 1 == 0 {
                return Err(DeltaError::Asymmetric);
            }
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Ok(LoopedSimpleGraph::new(n, &edges, &looped).expect("validated above"))
}
