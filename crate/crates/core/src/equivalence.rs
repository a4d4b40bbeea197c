//! Orbits of a graph under four families of local moves, and the
//! equivalence relations they generate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{CanonicalCode, GraphError, LoopedSimpleGraph};

/// Largest `n` accepted by [`orbit`] and [`equivalent`].
pub const ORBIT_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{n} vertices exceeds the orbit limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("unknown move set {0:?}; expected loops, pivots, ppt or full-local")]
    UnknownMoveSet(String),
}

/// Which moves generate the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSet {
    /// Loop complementation at any vertex.
    LoopsOnly,
    /// Edge pivots on any edge.
    PivotsOnly,
    /// Non-simple local complementation at looped vertices, and pivots on
    /// edges with both ends unlooped.
    Ppt,
    /// Non-simple local complementation and loop complementation anywhere.
    FullLocal,
}

impl MoveSet {
    pub const ALL: [MoveSet; 4] = [MoveSet::LoopsOnly, MoveSet::PivotsOnly, MoveSet::Ppt, MoveSet::FullLocal];

    pub fn name(self) -> &'static str {
        match self {
            MoveSet::LoopsOnly => "loops",
            MoveSet::PivotsOnly => "pivots",
            MoveSet::Ppt => "ppt",
            MoveSet::FullLocal => "full-local",
        }
    }

    /// Every graph one move away from `g`.
    pub fn neighbors(self, g: &LoopedSimpleGraph) -> Result<Vec<LoopedSimpleGraph>, GraphError> {
        let n = g.n();
        let mut out = Vec::new();
        match self {
            MoveSet::LoopsOnly => {
                for v in 0..n {
                    out.push(g.loop_complement(v)?);
                }
            }
            MoveSet::PivotsOnly => {
                for (v, w) in g.edges() {
                    out.push(g.edge_pivot(v, w)?);
                }
            }
            MoveSet::Ppt => {
                for v in g.looped_vertices() {
                    out.push(g.nonsimple_local_complement(v)?);
                }
                for (v, w) in g.edges() {
                    if !g.is_looped(v) && !g.is_looped(w) {
                        out.push(g.edge_pivot(v, w)?);
                    }
                }
            }
            MoveSet::FullLocal => {
                for v in 0..n {
                    out.push(g.nonsimple_local_complement(v)?);
                    out.push(g.loop_complement(v)?);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MoveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveSet {
    type Err = EquivalenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "loops" | "loops-only" => Ok(MoveSet::LoopsOnly),
            "pivots" | "pivots-only" => Ok(MoveSet::PivotsOnly),
            "ppt" => Ok(MoveSet::Ppt),
            "full-local" | "full" => Ok(MoveSet::FullLocal),
            other => Err(EquivalenceError::UnknownMoveSet(other.to_string())),
        }
    }
}

/// The isomorphism classes reachable from `g`, each with the first graph
/// found in it. Levels are expanded in code order, so the result is
/// deterministic.
pub fn orbit_representatives(
    g: &LoopedSimpleGraph,
    moves: MoveSet,
) -> Result<BTreeMap<CanonicalCode, LoopedSimpleGraph>, EquivalenceError> {
    let n = g.n();
    if n > ORBIT_LIMIT {
        return Err(EquivalenceError::LimitExceeded { n, limit: ORBIT_LIMIT });
    }
    let mut seen = BTreeMap::new();
    let mut frontier = BTreeMap::new();
    frontier.insert(g.canonical_code()?, g.clone());
    while !frontier.is_empty() {
        let mut next = BTreeMap::new();
        for (code, h) in frontier {
            if seen.contains_key(&code) {
                continue;
            }
            for k in moves.neighbors(&h)? {
                let c = k.canonical_code()?;
                if !seen.contains_key(&c) {
                    next.entry(c).or_insert(k);
                }
            }
            seen.insert(code, h);
        }
        frontier = next;
    }
    Ok(seen)
}

/// Canonical codes of every graph reachable from `g` by `moves`.
pub fn orbit(g: &LoopedSimpleGraph, moves: MoveSet) -> Result<BTreeSet<CanonicalCode>, EquivalenceError> {
    Ok(orbit_representatives(g, moves)?.into_keys().collect())
}

/// Whether `g2` is isomorphic to a graph reachable from `g1` by `moves`.
pub fn equivalent(g1: &LoopedSimpleGraph, g2: &LoopedSimpleGraph, moves: MoveSet) -> Result<bool, EquivalenceError> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    let target = g2.canonical_code()?;
    Ok(orbit(g1, moves)?.contains(&target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotropic::{find_compatible_iso, S3Element};

    fn looped_k1() -> LoopedSimpleGraph {
        LoopedSimpleGraph::new(1, &[], &[0]).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let k1 = LoopedSimpleGraph::empty(1);
        let o = orbit(&k1, MoveSet::LoopsOnly).unwrap();
        let expected: BTreeSet<_> = [k1.canonical_code().unwrap(), looped_k1().canonical_code().unwrap()].into();
        assert_eq!(o, expected);

        let p4 = LoopedSimpleGraph::path(4);
        let c4 = LoopedSimpleGraph::cycle(4);
        assert!(orbit(&p4, MoveSet::PivotsOnly).unwrap().contains(&c4.canonical_code().unwrap()));

        let triangle = LoopedSimpleGraph::complete(3);
        assert!(orbit(&LoopedSimpleGraph::path(3), MoveSet::FullLocal)
            .unwrap()
            .contains(&triangle.canonical_code().unwrap()));
        assert!(orbit(&LoopedSimpleGraph::empty(9), MoveSet::LoopsOnly).is_err());
    }

    #[test]
    fn equivalent_examples() {
        let p4 = LoopedSimpleGraph::path(4);
        assert!(equivalent(&p4, &p4, MoveSet::Ppt).unwrap());
        assert!(equivalent(&p4, &LoopedSimpleGraph::cycle(4), MoveSet::PivotsOnly).unwrap());
        assert!(!equivalent(&looped_k1(), &LoopedSimpleGraph::empty(1), MoveSet::PivotsOnly).unwrap());
        assert!(!equivalent(&p4, &LoopedSimpleGraph::path(3), MoveSet::FullLocal).unwrap());
    }

    #[test]
    fn move_set_names_round_trip() {
        for m in MoveSet::ALL {
            assert_eq!(m.name().parse::<MoveSet>().unwrap(), m);
        }
        assert!("bogus".parse::<MoveSet>().is_err());
    }

    /// One representative per isomorphism class of looped simple graphs.
    fn classes(n: usize) -> Vec<LoopedSimpleGraph> {
        let mut by_code = BTreeMap::new();
        for g in LoopedSimpleGraph::all(n) {
            by_code.entry(g.canonical_code().unwrap()).or_insert(g);
        }
        by_code.into_values().collect()
    }

    fn phi_chi_only(_: usize, s: S3Element) -> bool {
        s == S3Element::IDENTITY || s == S3Element::PHI_CHI
    }

    #[test]
    fn orbits_match_compatible_isomorphisms() {
        for n in 1..=3 {
            let reps = classes(n);
            for a in &reps {
                let full = orbit(a, MoveSet::FullLocal).unwrap();
                let ppt = orbit(a, MoveSet::Ppt).unwrap();
                for b in &reps {
                    let code = b.canonical_code().unwrap();
                    let any = find_compatible_iso(a, b, |_, _| true).unwrap().is_some();
                    assert_eq!(full.contains(&code), any, "{a:?} {b:?}");
                    let restricted = find_compatible_iso(a, b, phi_chi_only).unwrap().is_some();
                    assert_eq!(ppt.contains(&code), restricted, "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn orbits_partition_the_classes() {
        for moves in MoveSet::ALL {
            let reps = classes(3);
            for a in &reps {
                let oa = orbit(a, moves).unwrap();
                for b in &reps {
                    if oa.contains(&b.canonical_code().unwrap()) {
                        assert_eq!(orbit(b, moves).unwrap(), oa, "{moves} {a:?} {b:?}");
                    }
                }
            }
        }
    }
}
