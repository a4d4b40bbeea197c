use crate::graph::LoopedSimpleGraph;
use crate::matroid::is_isomorphism;

use super::compatible::{cell_search, verify_compatible_iso, CompatibleIso};
use super::{ias, ias_column, Flavor, GroundElement, IsotropicError};

/// Largest `n` accepted by [`enumerate_triangulations`].
pub const TRIANGULATION_LIMIT: usize = 5;

/// Largest `n` accepted by default by [`canonicalize_triangulation`] and
/// [`compatible_from_arbitrary`].
pub const CANONICALIZE_LIMIT: usize = 4;

/// A permutation of ground indices: element `i` goes to `perm[i]`.
pub type GroundPerm = Vec<usize>;

/// A partition of `W(G)` into 3-element cells. Cells are kept sorted, each
/// internally and as a list, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n: usize,
    cells: Vec<[GroundElement; 3]>,
}

impl Triangulation {
    /// Checks that `cells` partitions the `3n` ground elements.
    pub fn new(n: usize, cells: Vec<[GroundElement; 3]>) -> Result<Self, IsotropicError> {
        let mut seen = vec![false; 3 * n];
        for cell in &cells {
            for e in cell {
                if e.vertex >= n {
                    return Err(IsotropicError::NotAPartition(format!("{e} is not in W(G)")));
                }
                if std::mem::replace(&mut seen[e.index(n)], true) {
                    return Err(IsotropicError::NotAPartition(format!("{e} appears twice")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(IsotropicError::NotAPartition(format!(
                "{} is not covered",
                GroundElement::from_index(i, n)
            )));
        }
        Ok(Self::normalized(n, cells))
    }

    fn normalized(n: usize, mut cells: Vec<[GroundElement; 3]>) -> Self {
        for c in &mut cells {
            c.sort();
        }
        cells.sort();
        Self { n, cells }
    }

    fn from_index_cells(n: usize, cells: impl IntoIterator<Item = [usize; 3]>) -> Self {
        let cells = cells
            .into_iter()
            .map(|c| c.map(|i| GroundElement::from_index(i, n)))
            .collect();
        Self::normalized(n, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[[GroundElement; 3]] {
        &self.cells
    }

    pub fn index_cells(&self) -> Vec<[usize; 3]> {
        self.cells.iter().map(|c| c.map(|e| e.index(self.n))).collect()
    }

    pub fn contains_cell(&self, cell: [GroundElement; 3]) -> bool {
        let mut c = cell;
        c.sort();
        self.cells.binary_search(&c).is_ok()
    }

    /// Number of non-canonical cells.
    pub fn index(&self) -> usize {
        self.cells.iter().filter(|c| !is_canonical_cell(c)).count()
    }

    pub fn is_canonical(&self) -> bool {
        self.index() == 0
    }
}

fn is_canonical_cell(c: &[GroundElement; 3]) -> bool {
    c[0].vertex == c[1].vertex && c[1].vertex == c[2].vertex
}

fn canonical_cell(v: usize) -> [GroundElement; 3] {
    Flavor::ALL.map(|f| GroundElement::new(v, f))
}

/// The cells `{v_φ, v_χ, v_ψ}`.
pub fn canonical_partition(g: &LoopedSimpleGraph) -> Triangulation {
    Triangulation::normalized(g.n(), (0..g.n()).map(canonical_cell).collect())
}

/// Image of `p` under a ground permutation.
pub fn apply_ground_perm(p: &Triangulation, perm: &[usize]) -> Triangulation {
    Triangulation::from_index_cells(p.n, p.index_cells().into_iter().map(|c| c.map(|i| perm[i])))
}

/// Whether `perm` is an automorphism of `M(IAS(g))`.
pub fn is_automorphism(g: &LoopedSimpleGraph, perm: &[usize]) -> bool {
    let m = ias(g);
    is_isomorphism(&m, &m, perm)
}

/// A 3-circuit, or a loop with two parallel non-loops: the columns sum to
/// zero and are not all zero.
fn valid_cell(cols: &[u64], c: [usize; 3]) -> bool {
    let [a, b, d] = c.map(|i| cols[i]);
    a ^ b ^ d == 0 && (a | b | d) != 0
}

/// Whether every cell of `p` is a 3-element circuit of `M(IAS(g))` or a
/// loop plus two parallel non-loops.
pub fn is_triangulation(g: &LoopedSimpleGraph, p: &Triangulation) -> Result<bool, IsotropicError> {
    if p.n != g.n() {
        return Err(IsotropicError::SizeMismatch(g.n(), p.n));
    }
    let cols = ias_columns(g);
    Ok(p.index_cells().into_iter().all(|c| valid_cell(&cols, c)))
}

fn ias_columns(g: &LoopedSimpleGraph) -> Vec<u64> {
    let n = g.n();
    (0..3 * n).map(|i| ias_column(g, GroundElement::from_index(i, n))).collect()
}

/// Every triangulation of `W(g)`, sorted, by exact cover over valid cells.
pub fn enumerate_triangulations(g: &LoopedSimpleGraph) -> Result<Vec<Triangulation>, IsotropicError> {
    let n = g.n();
    if n > TRIANGULATION_LIMIT {
        return Err(IsotropicError::LimitExceeded {
            n,
            limit: TRIANGULATION_LIMIT,
        });
    }
    let cols = ias_columns(g);
    let size = 3 * n;
    // cells_from[i]: valid cells whose smallest element is i
    let mut cells_from: Vec<Vec<[usize; 3]>> = vec![Vec::new(); size];
    for a in 0..size {
        for b in a + 1..size {
            for c in b + 1..size {
                if valid_cell(&cols, [a, b, c]) {
                    cells_from[a].push([a, b, c]);
                }
            }
        }
    }
    fn cover(
        covered: u64,
        size: usize,
        cells_from: &[Vec<[usize; 3]>],
        chosen: &mut Vec<[usize; 3]>,
        out: &mut Vec<Vec<[usize; 3]>>,
    ) {
        let first = (!covered).trailing_zeros() as usize;
        if first >= size {
            out.push(chosen.clone());
            return;
        }
        for &c in &cells_from[first] {
            let m = (1u64 << c[1]) | (1u64 << c[2]);
            if covered & m == 0 {
                chosen.push(c);
                cover(covered | m | (1 << c[0]), size, cells_from, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut raw = Vec::new();
    cover(0, size, &cells_from, &mut Vec::new(), &mut raw);
    let mut out: Vec<Triangulation> = raw.into_iter().map(|cells| Triangulation::from_index_cells(n, cells)).collect();
    out.sort();
    Ok(out)
}

fn check_matched_4path(g: &LoopedSimpleGraph, quad: [usize; 4]) -> Result<(), IsotropicError> {
    if !g.find_matched_4paths().contains(&quad) {
        return Err(IsotropicError::Precondition(format!("{quad:?} is not a matched 4-path")));
    }
    Ok(())
}

fn bent_cells([u, v, w, x]: [usize; 4]) -> [[GroundElement; 3]; 4] {
    use GroundElement as E;
    [
        [E::phi(u), E::chi(v), E::phi(w)],
        [E::phi(v), E::chi(w), E::phi(x)],
        [E::psi(u), E::psi(v), E::chi(x)],
        [E::chi(u), E::psi(w), E::psi(x)],
    ]
}

/// Replaces the canonical cells of the matched 4-path `(u, v, w, x)` by
/// `{u_φ,v_χ,w_φ}`, `{v_φ,w_χ,x_φ}`, `{u_ψ,v_ψ,x_χ}`, `{u_χ,w_ψ,x_ψ}`.
pub fn bend_4path(g: &LoopedSimpleGraph, p: &Triangulation, quad: [usize; 4]) -> Result<Triangulation, IsotropicError> {
    check_matched_4path(g, quad)?;
    if p.n != g.n() {
        return Err(IsotropicError::SizeMismatch(g.n(), p.n));
    }
    let canon: Vec<_> = quad.iter().map(|&t| canonical_cell(t)).collect();
    if let Some(t) = canon.iter().find(|c| !p.contains_cell(**c)) {
        return Err(IsotropicError::Precondition(format!(
            "canonical cell of vertex {} is not in the partition",
            t[0].vertex
        )));
    }
    let mut cells: Vec<_> = p.cells.iter().copied().filter(|c| !canon.contains(c)).collect();
    cells.extend(bent_cells(quad));
    Ok(Triangulation::normalized(p.n, cells))
}

/// The involution
/// `(u_φ x_φ)(u_χ v_φ)(u_ψ w_χ)(v_χ x_ψ)(v_ψ w_ψ)(w_φ x_χ)`,
/// an automorphism of `M(IAS(g))` taking the bent 4-path back to the
/// canonical cells.
pub fn bent_4path_automorphism(g: &LoopedSimpleGraph, quad: [usize; 4]) -> Result<GroundPerm, IsotropicError> {
    check_matched_4path(g, quad)?;
    let n = g.n();
    let [u, v, w, x] = quad;
    use GroundElement as E;
    let pairs = [
        (E::phi(u), E::phi(x)),
        (E::chi(u), E::phi(v)),
        (E::psi(u), E::chi(w)),
        (E::chi(v), E::psi(x)),
        (E::psi(v), E::psi(w)),
        (E::phi(w), E::chi(x)),
    ];
    let mut perm: GroundPerm = (0..3 * n).collect();
    for (a, b) in pairs {
        perm.swap(a.index(n), b.index(n));
    }
    Ok(perm)
}

fn compose(first: &[usize], then: &[usize]) -> GroundPerm {
    first.iter().map(|&i| then[i]).collect()
}

/// An automorphism `α` of `M(IAS(g))` with `α(p)` canonical, for `n ≤ 4`.
pub fn canonicalize_triangulation(g: &LoopedSimpleGraph, p: &Triangulation) -> Result<GroundPerm, IsotropicError> {
    canonicalize_triangulation_with_limit(g, p, CANONICALIZE_LIMIT)
}

/// Reduces `p` by swapping parallel elements into incomplete canonical
/// cells and by unbending bent 4-paths, then finishes with a search for a
/// cell-preserving automorphism onto the canonical partition.
pub fn canonicalize_triangulation_with_limit(
    g: &LoopedSimpleGraph,
    p: &Triangulation,
    limit: usize,
) -> Result<GroundPerm, IsotropicError> {
    let n = g.n();
    if n > limit {
        return Err(IsotropicError::LimitExceeded { n, limit });
    }
    if !is_triangulation(g, p)? {
        return Err(IsotropicError::Precondition("not a triangulation".into()));
    }
    let cols = ias_columns(g);
    let quads = g.find_matched_4paths();
    let mut total: GroundPerm = (0..3 * n).collect();
    let mut current = p.clone();
    while !current.is_canonical() {
        if let Some(step) = parallel_swap(&current, &cols).or_else(|| unbend(g, &current, &quads)) {
            current = apply_ground_perm(&current, &step);
            total = compose(&total, &step);
        } else {
            break;
        }
    }
    if !current.is_canonical() {
        let canon = canonical_partition(g).index_cells();
        let step = cell_search(&cols, &current.index_cells(), &cols, &canon, |_, _, _| true).ok_or_else(|| {
            IsotropicError::InvariantViolation(format!("no automorphism makes {current:?} canonical"))
        })?;
        total = compose(&total, &step);
    }
    if !is_automorphism(g, &total) || !apply_ground_perm(p, &total).is_canonical() {
        return Err(IsotropicError::InvariantViolation("canonicalizing map failed verification".into()));
    }
    Ok(total)
}

/// A cell `{v_a, v_b, y}` with `y` parallel to `v_c` (the third element of
/// `v`): the transposition `(y v_c)`.
fn parallel_swap(p: &Triangulation, cols: &[u64]) -> Option<GroundPerm> {
    let n = p.n;
    for cell in &p.cells {
        if is_canonical_cell(cell) {
            continue;
        }
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let (a, b, y) = (cell[i], cell[j], cell[k]);
            if a.vertex != b.vertex {
                continue;
            }
            let z = GroundElement::new(a.vertex, a.flavor.third(b.flavor));
            if cols[y.index(n)] == cols[z.index(n)] {
                let mut perm: GroundPerm = (0..3 * n).collect();
                perm.swap(y.index(n), z.index(n));
                return Some(perm);
            }
        }
    }
    None
}

fn unbend(g: &LoopedSimpleGraph, p: &Triangulation, quads: &[[usize; 4]]) -> Option<GroundPerm> {
    let quad = quads.iter().find(|q| bent_cells(**q).iter().all(|c| p.contains_cell(*c)))?;
    bent_4path_automorphism(g, *quad).ok()
}

/// Turns an arbitrary matroid isomorphism `γ: M(IAS(g1)) → M(IAS(g2))`
/// (by ground index) into a compatible one, `α ∘ γ` with `α` canonicalizing
/// the image of the canonical partition of `g1`.
pub fn compatible_from_arbitrary(
    g1: &LoopedSimpleGraph,
    g2: &LoopedSimpleGraph,
    gamma: &[usize],
) -> Result<CompatibleIso, IsotropicError> {
    let n = g1.n();
    if g2.n() != n {
        return Err(IsotropicError::SizeMismatch(n, g2.n()));
    }
    if n > CANONICALIZE_LIMIT {
        return Err(IsotropicError::LimitExceeded {
            n,
            limit: CANONICALIZE_LIMIT,
        });
    }
    if !is_isomorphism(&ias(g1), &ias(g2), gamma) {
        return Err(IsotropicError::Precondition("γ is not a matroid isomorphism".into()));
    }
    let image = apply_ground_perm(&canonical_partition(g1), gamma);
    let alpha = canonicalize_triangulation(g2, &image)?;
    let beta = compose(gamma, &alpha);
    let iso = CompatibleIso::from_ground_map(n, &beta)
        .ok_or_else(|| IsotropicError::InvariantViolation("composite is not compatible".into()))?;
    if !verify_compatible_iso(g1, g2, &iso)? {
        return Err(IsotropicError::InvariantViolation("composite is not an isomorphism".into()));
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::matroids_isomorphic;
    use GroundElement as E;

    fn p4() -> LoopedSimpleGraph {
        LoopedSimpleGraph::path(4)
    }

    #[test]
    fn canonical_partition_is_a_triangulation() {
        for n in 0..=6 {
            for g in LoopedSimpleGraph::all(n) {
                let p = canonical_partition(&g);
                assert_eq!(p.cells().len(), n);
                assert!(is_triangulation(&g, &p).unwrap());
            }
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Triangulation::new(1, vec![[E::phi(0), E::chi(0), E::chi(0)]]).is_err());
        assert!(Triangulation::new(2, vec![canonical_cell(0)]).is_err());
        assert!(Triangulation::new(1, vec![[E::phi(0), E::chi(0), E::psi(1)]]).is_err());
        assert!(Triangulation::new(1, vec![canonical_cell(0)]).is_ok());
        let g = LoopedSimpleGraph::path(2);
        let p = Triangulation::new(1, vec![canonical_cell(0)]).unwrap();
        assert!(is_triangulation(&g, &p).is_err());
    }

    fn p3_swapped() -> Triangulation {
        // a = 0 is pendant on b = 1, so a_χ and b_φ are parallel
        Triangulation::new(
            3,
            vec![
                [E::phi(0), E::phi(1), E::psi(0)],
                [E::chi(0), E::chi(1), E::psi(1)],
                canonical_cell(2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn p3_parallel_swap_is_a_triangulation() {
        let g = LoopedSimpleGraph::path(3);
        assert!(is_triangulation(&g, &p3_swapped()).unwrap());
        let flat = Triangulation::new(
            3,
            vec![
                [E::phi(0), E::phi(1), E::phi(2)],
                [E::chi(0), E::chi(1), E::chi(2)],
                [E::psi(0), E::psi(1), E::psi(2)],
            ],
        )
        .unwrap();
        assert!(!is_triangulation(&g, &flat).unwrap());
    }

    /// All partitions of `0..size` into 3-sets, straight recursion.
    fn all_3_partitions(size: usize) -> Vec<Vec<[usize; 3]>> {
        fn go(rest: Vec<usize>, acc: &mut Vec<[usize; 3]>, out: &mut Vec<Vec<[usize; 3]>>) {
            if rest.is_empty() {
                out.push(acc.clone());
                return;
            }
            let a = rest[0];
            for i in 1..rest.len() {
                for j in i + 1..rest.len() {
                    let next: Vec<usize> = rest.iter().enumerate().filter(|&(k, _)| k != 0 && k != i && k != j).map(|(_, &e)| e).collect();
                    acc.push([a, rest[i], rest[j]]);
                    go(next, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        go((0..size).collect(), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        assert_eq!(all_3_partitions(6).len(), 10);
        assert_eq!(all_3_partitions(9).len(), 280);
        for n in 1..=3 {
            let partitions = all_3_partitions(3 * n);
            for g in LoopedSimpleGraph::all(n) {
                let mut brute: Vec<Triangulation> = partitions
                    .iter()
                    .map(|cells| Triangulation::from_index_cells(n, cells.iter().copied()))
                    .filter(|p| is_triangulation(&g, p).unwrap())
                    .collect();
                brute.sort();
                assert_eq!(enumerate_triangulations(&g).unwrap(), brute, "{g:?}");
            }
        }
        assert_eq!(enumerate_triangulations(&LoopedSimpleGraph::empty(1)).unwrap().len(), 1);
        assert!(enumerate_triangulations(&LoopedSimpleGraph::path(6)).is_err());
    }

    #[test]
    fn bending_p4() {
        let g = p4();
        let canon = canonical_partition(&g);
        let bent = bend_4path(&g, &canon, [0, 1, 2, 3]).unwrap();
        let expected = Triangulation::new(
            4,
            vec![
                [E::phi(0), E::chi(1), E::phi(2)],
                [E::phi(1), E::chi(2), E::phi(3)],
                [E::psi(0), E::psi(1), E::chi(3)],
                [E::chi(0), E::psi(2), E::psi(3)],
            ],
        )
        .unwrap();
        assert_eq!(bent, expected);
        assert!(is_triangulation(&g, &bent).unwrap());
        assert_eq!(bent.index(), canon.index() + 4);
        assert!(enumerate_triangulations(&g).unwrap().contains(&bent));
        assert!(bend_4path(&g, &bent, [0, 1, 2, 3]).is_err());
        assert!(bend_4path(&g, &canon, [0, 1, 3, 2]).is_err());
    }

    #[test]
    fn bending_every_matched_4path() {
        for n in 4..=6 {
            for g in LoopedSimpleGraph::all(n) {
                let canon = canonical_partition(&g);
                for quad in g.find_matched_4paths() {
                    let bent = bend_4path(&g, &canon, quad).unwrap();
                    assert!(is_triangulation(&g, &bent).unwrap());
                    assert_eq!(bent.index(), 4);
                    let alpha = bent_4path_automorphism(&g, quad).unwrap();
                    assert!(is_automorphism(&g, &alpha));
                    assert_eq!(apply_ground_perm(&bent, &alpha), canon);
                    assert_eq!(compose(&alpha, &alpha), (0..3 * n).collect::<Vec<_>>());
                }
            }
        }
    }

    /// The fundamental circuit table for the eight χ/ψ elements of a matched
    /// 4-path, written out row by row.
    #[test]
    fn alpha_preserves_the_fundamental_circuit_table() {
        // P4, C5 (u and x share the neighbour 4) and P4 plus a common
        // neighbour of u and x carrying a loop and a pendant
        let graphs = [
            p4(),
            LoopedSimpleGraph::cycle(5),
            LoopedSimpleGraph::new(6, &[(0, 1), (1, 2), (2, 3), (0, 4), (3, 4), (4, 5)], &[4]).unwrap(),
        ];
        for g in graphs {
            let n = g.n();
            let m = ias(&g);
            let (u, v, w, x) = (0, 1, 2, 3);
            let alpha = bent_4path_automorphism(&g, [u, v, w, x]).unwrap();
            let img = |e: E| E::from_index(alpha[e.index(n)], n);
            let phi: Vec<E> = (0..n).map(E::phi).collect();
            let alpha_phi: Vec<E> = phi.iter().map(|&e| img(e)).collect();
            let nbr_phi = |t: usize, skip: usize| -> Vec<E> { g.neighbors(t).filter(|&s| s != skip).map(E::phi).collect() };
            let set = |mut v: Vec<E>| {
                v.sort();
                v.dedup();
                v
            };
            let rows: Vec<(E, Vec<E>, E, Vec<E>)> = vec![
                (E::chi(u), set([nbr_phi(u, usize::MAX), vec![E::chi(u)]].concat()), E::phi(v), set([nbr_phi(u, v), vec![E::chi(u), E::phi(v)]].concat())),
                (E::psi(u), set([nbr_phi(u, usize::MAX), vec![E::phi(u), E::psi(u)]].concat()), E::chi(w), set([nbr_phi(u, v), vec![E::chi(w), E::phi(x), E::chi(u)]].concat())),
                (E::chi(v), set(vec![E::phi(u), E::chi(v), E::phi(w)]), E::psi(x), set(vec![E::phi(x), E::chi(x), E::psi(x)])),
                (E::psi(v), set(vec![E::phi(u), E::phi(v), E::psi(v), E::phi(w)]), E::psi(w), set(vec![E::chi(u), E::psi(w), E::phi(x), E::chi(x)])),
                (E::chi(w), set(vec![E::phi(v), E::chi(w), E::phi(x)]), E::psi(u), set(vec![E::phi(u), E::chi(u), E::psi(u)])),
                (E::psi(w), set(vec![E::phi(v), E::phi(w), E::psi(w), E::phi(x)]), E::psi(v), set(vec![E::phi(u), E::chi(u), E::psi(v), E::chi(x)])),
                (E::chi(x), set([nbr_phi(x, usize::MAX), vec![E::chi(x)]].concat()), E::phi(w), set([nbr_phi(x, w), vec![E::chi(x), E::phi(w)]].concat())),
                (E::psi(x), set([nbr_phi(x, usize::MAX), vec![E::phi(x), E::psi(x)]].concat()), E::chi(v), set([nbr_phi(x, w), vec![E::phi(u), E::chi(v), E::chi(x)]].concat())),
            ];
            for (z, circuit, alpha_z, image_circuit) in rows {
                assert_eq!(m.fundamental_circuit(&z, &phi).unwrap(), circuit, "C({z:?}, Φ)");
                assert_eq!(img(z), alpha_z);
                assert_eq!(set(circuit.iter().map(|&e| img(e)).collect()), image_circuit);
                assert_eq!(m.fundamental_circuit(&alpha_z, &alpha_phi).unwrap(), image_circuit);
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        let g = LoopedSimpleGraph::path(3);
        let id: GroundPerm = (0..9).collect();
        assert_eq!(canonicalize_triangulation(&g, &canonical_partition(&g)).unwrap(), id);
        let mut swap = id.clone();
        swap.swap(E::chi(0).index(3), E::phi(1).index(3));
        assert_eq!(canonicalize_triangulation(&g, &p3_swapped()).unwrap(), swap);

        let g = p4();
        let bent = bend_4path(&g, &canonical_partition(&g), [0, 1, 2, 3]).unwrap();
        assert_eq!(
            canonicalize_triangulation(&g, &bent).unwrap(),
            bent_4path_automorphism(&g, [0, 1, 2, 3]).unwrap()
        );
        assert!(canonicalize_triangulation(&LoopedSimpleGraph::path(5), &canonical_partition(&LoopedSimpleGraph::path(5))).is_err());
    }

    #[test]
    fn canonicalize_every_triangulation_up_to_four_vertices() {
        for n in 0..=4 {
            for g in LoopedSimpleGraph::all(n) {
                for p in enumerate_triangulations(&g).unwrap() {
                    let alpha = canonicalize_triangulation(&g, &p).unwrap();
                    assert!(is_automorphism(&g, &alpha));
                    assert!(apply_ground_perm(&p, &alpha).is_canonical());
                }
            }
        }
    }

    #[test]
    fn compatible_from_arbitrary_examples() {
        let g = LoopedSimpleGraph::path(3);
        let id: GroundPerm = (0..9).collect();
        assert_eq!(compatible_from_arbitrary(&g, &g, &id).unwrap(), CompatibleIso::identity(3));
        // a compatible iso followed by a parallel swap
        let (h, i) = super::super::elementary_iso(&g, super::super::ElementaryMove::Pivot(0, 1)).unwrap();
        let mut gamma = i.ground_map();
        let parallel: Vec<(usize, usize)> = (0..9)
            .flat_map(|a| (a + 1..9).map(move |b| (a, b)))
            .filter(|&(a, b)| ias_column(&h, E::from_index(a, 3)) == ias_column(&h, E::from_index(b, 3)))
            .collect();
        let (a, b) = parallel[0];
        for t in gamma.iter_mut() {
            if *t == a {
                *t = b;
            } else if *t == b {
                *t = a;
            }
        }
        assert!(CompatibleIso::from_ground_map(3, &gamma).is_none());
        let iso = compatible_from_arbitrary(&g, &h, &gamma).unwrap();
        assert!(verify_compatible_iso(&g, &h, &iso).unwrap());
        let mut bad = id.clone();
        bad.swap(0, 1);
        assert!(compatible_from_arbitrary(&g, &g, &bad).is_err());
    }

    #[test]
    fn compatible_from_found_isomorphisms() {
        for n in 1..=3 {
            let graphs: Vec<_> = LoopedSimpleGraph::all(n).collect();
            for g1 in &graphs {
                for g2 in &graphs {
                    if let Some(gamma) = matroids_isomorphic(&ias(g1), &ias(g2)).unwrap() {
                        let iso = compatible_from_arbitrary(g1, g2, &gamma).unwrap();
                        assert!(verify_compatible_iso(g1, g2, &iso).unwrap());
                    }
                }
            }
        }
    }
}
