//! Exhaustive and seeded-random property sweeps over small graphs. Each
//! suite checks one family of identities and reports how many cases it
//! examined and the first few that failed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delta::{
    cycles_by_formula, delta_matroid, delta_via_bases, fits_zeta, graph_from_cycles, graph_from_delta, transverse_cycles,
    twist, zeta,
};
use crate::equivalence::{orbit, MoveSet};
use crate::gf2::rank_of_masks;
use crate::graph::{bits, CanonicalCode, LoopedSimpleGraph};
use crate::isotropic::{
    apply_ground_perm, bend_4path, bent_4path_automorphism, canonical_partition, canonicalize_triangulation,
    closure_meets_cell_at_most_once, compatible_from_arbitrary, elementary_iso, enumerate_triangulations,
    find_compatible_iso, ias, ias_column, ias_matrix, is_automorphism, is_triangulation, strong_map_check,
    triangle_check, verify_compatible_iso, ElementaryMove, Flavor, GroundElement, S3Element, SubTransversal,
    CANONICALIZE_LIMIT,
};
use crate::matroid::{basis_exchange, matroids_isomorphic};
use crate::polynomials::{interlace_q, interlace_via_section, principal_rank};

/// Failures kept per report.
const FAILURE_CAP: usize = 20;

/// The property families that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Pivot,
    Elementary,
    Minors,
    Connectivity,
    Delta,
    Twist,
    Cycles,
    Triangle,
    Triangulations,
    Compatible,
    Fano,
    Interlace,
    RankIdentity,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Pivot,
        Suite::Elementary,
        Suite::Minors,
        Suite::Connectivity,
        Suite::Delta,
        Suite::Twist,
        Suite::Cycles,
        Suite::Triangle,
        Suite::Triangulations,
        Suite::Compatible,
        Suite::Fano,
        Suite::Interlace,
        Suite::RankIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pivot => "pivot",
            Suite::Elementary => "elementary",
            Suite::Minors => "minors",
            Suite::Connectivity => "connectivity",
            Suite::Delta => "delta",
            Suite::Twist => "twist",
            Suite::Cycles => "cycles",
            Suite::Triangle => "triangle",
            Suite::Triangulations => "triangulations",
            Suite::Compatible => "compatible",
            Suite::Fano => "fano",
            Suite::Interlace => "interlace",
            Suite::RankIdentity => "rank-identity",
        }
    }

    /// The largest `n` the suite is normally run at.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Pivot | Suite::Minors | Suite::Delta | Suite::Cycles | Suite::RankIdentity => 6,
            Suite::Elementary | Suite::Connectivity | Suite::Twist | Suite::Fano | Suite::Interlace => 5,
            Suite::Triangle | Suite::Triangulations | Suite::Compatible => 4,
        }
    }

    /// Hard upper bound on `max_n`.
    pub fn max_n_limit(self) -> usize {
        match self {
            Suite::Compatible | Suite::Triangulations => CANONICALIZE_LIMIT,
            Suite::Triangle => 5,
            Suite::Elementary | Suite::Connectivity | Suite::Twist | Suite::Fano | Suite::Interlace => 6,
            Suite::Pivot | Suite::Minors | Suite::Delta | Suite::Cycles | Suite::RankIdentity => 7,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_n: usize,
    pub cases: u64,
    pub failure_count: u64,
    /// The first failures, in the order found.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, max_n: usize) -> Self {
        Self {
            suite,
            max_n,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < FAILURE_CAP {
            self.failures.push(msg);
        }
    }

    /// Unwraps `r`, recording an error as a failure.
    fn get<T, E: fmt::Display>(&mut self, r: Result<T, E>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(t) => Some(t),
            Err(e) => {
                self.cases += 1;
                self.fail(format!("{}: {e}", context()));
                None
            }
        }
    }
}

/// Runs `suite` for every `n` up to `config.max_n`.
pub fn run_suite(suite: Suite, config: SuiteConfig) -> Result<SuiteReport, String> {
    if config.max_n > suite.max_n_limit() {
        return Err(format!(
            "suite {suite} supports max-n up to {}, got {}",
            suite.max_n_limit(),
            config.max_n
        ));
    }
    let mut r = SuiteReport::new(suite, config.max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let max_n = config.max_n;
    match suite {
        Suite::Pivot => pivot(&mut r, max_n, &mut rng),
        Suite::Elementary => elementary(&mut r, max_n),
        Suite::Minors => minors(&mut r, max_n, &mut rng),
        Suite::Connectivity => connectivity(&mut r, max_n),
        Suite::Delta => delta(&mut r, max_n),
        Suite::Twist => twist_moves(&mut r, max_n),
        Suite::Cycles => cycles(&mut r, max_n),
        Suite::Triangle => triangle(&mut r, max_n),
        Suite::Triangulations => triangulations(&mut r, max_n),
        Suite::Compatible => compatible(&mut r, max_n),
        Suite::Fano => fano(&mut r, max_n),
        Suite::Interlace => interlace(&mut r, max_n, &mut rng),
        Suite::RankIdentity => rank_identity(&mut r, max_n),
    }
    Ok(r)
}

/// Every labelled looped simple graph with at most `max_n` vertices.
fn all_graphs(max_n: usize) -> impl Iterator<Item = LoopedSimpleGraph> {
    (0..=max_n).flat_map(LoopedSimpleGraph::all)
}

/// Exhaustive below five vertices, 1000 seeded random graphs per size above.
fn pivot(r: &mut SuiteReport, max_n: usize, rng: &mut ChaCha8Rng) {
    let check = |r: &mut SuiteReport, g: &LoopedSimpleGraph| {
        for (v, w) in g.edges() {
            let chain = |a: usize, b: usize| {
                g.simple_local_complement(a)
                    .and_then(|h| h.simple_local_complement(b))
                    .and_then(|h| h.simple_local_complement(a))
            };
            let (Some(vw), Some(wv)) = (r.get(chain(v, w), || format!("{g:?}")), r.get(chain(w, v), || format!("{g:?}")))
            else {
                continue;
            };
            r.check(vw == wv, || format!("pivot on {v}-{w} depends on the order in {g:?}"));
            let pivoted = g.edge_pivot(v, w).ok();
            r.check(pivoted.as_ref() == Some(&vw), || format!("edge_pivot({v},{w}) disagrees on {g:?}"));
        }
    };
    for g in all_graphs(max_n.min(4)) {
        check(r, &g);
    }
    for n in 5..=max_n {
        for _ in 0..1000 {
            check(r, &LoopedSimpleGraph::random(n, rng));
        }
    }
}

fn elementary(r: &mut SuiteReport, max_n: usize) {
    for g in all_graphs(max_n) {
        let n = g.n();
        let mut moves: Vec<ElementaryMove> = (0..n)
            .flat_map(|v| [ElementaryMove::LoopComplement(v), ElementaryMove::LocalComplement(v)])
            .collect();
        for (v, w) in g.edges() {
            moves.push(ElementaryMove::Pivot(v, w));
            moves.push(ElementaryMove::Pivot(w, v));
        }
        for mv in moves {
            let Some((h, iso)) = r.get(elementary_iso(&g, mv), || format!("{mv:?} on {g:?}")) else {
                continue;
            };
            let ok = verify_compatible_iso(&g, &h, &iso).unwrap_or(false);
            r.check(ok, || format!("{mv:?} on {g:?} gives an invalid isomorphism"));
        }
        let m = ias_matrix(&g);
        let tail: Vec<usize> = (n..3 * n).collect();
        let Some(as_part) = r.get(m.select_columns(&tail), || format!("{g:?}")) else {
            continue;
        };
        for v in 0..n {
            let mut order: Vec<usize> = (0..3 * n).collect();
            order.swap(n + v, 2 * n + v);
            let swapped = m.select_columns(&order).ok();
            let h = g.loop_complement(v).expect("vertex in range");
            r.check(swapped == Some(ias_matrix(&h)), || format!("loop complement at {v} on {g:?}"));

            // v_χ is column v of (A | I+A), v_ψ is column n + v
            let k = if g.is_looped(v) { v } else { n + v };
            let exchanged = basis_exchange(&as_part, v, k).ok();
            let h = g.nonsimple_local_complement(v).expect("vertex in range");
            let expected = ias_matrix(&h).select_columns(&tail).ok();
            r.check(exchanged == expected, || format!("basis exchange at {v} on {g:?}"));
        }
    }
}

fn shift(v: usize, removed: usize) -> usize {
    if v > removed {
        v - 1
    } else {
        v
    }
}

/// Compares `(M(IAS(g)) / contract) − (rest of the cell of v)` with
/// `M(IAS(h))` through `label`, on every subset or on `samples` random ones.
#[allow(clippy::too_many_arguments)]
fn compare_minor(
    r: &mut SuiteReport,
    g: &LoopedSimpleGraph,
    v: usize,
    contract: Flavor,
    h: &LoopedSimpleGraph,
    label: impl Fn(GroundElement) -> GroundElement,
    samples: Option<usize>,
    rng: &mut ChaCha8Rng,
    what: &str,
) {
    let contracted = GroundElement::new(v, contract);
    let deleted: Vec<GroundElement> = Flavor::ALL
        .iter()
        .filter(|&&f| f != contract)
        .map(|&f| GroundElement::new(v, f))
        .collect();
    let Some(minor) = r.get(ias(g).minor(&[contracted], &deleted), || format!("{what} minor of {g:?}")) else {
        return;
    };
    let target = ias(h);
    let Some(map) = r.get(
        minor.ground().iter().map(|&e| target.index_of(&label(e))).collect::<Result<Vec<_>, _>>(),
        || format!("{what} labels on {g:?}"),
    ) else {
        return;
    };
    let len = minor.len();
    let image = |s: u64| bits(s).fold(0u64, |acc, i| acc | 1 << map[i]);
    let compare = |r: &mut SuiteReport, s: u64| {
        r.check(minor.rank_of_mask(s) == target.rank_of_mask(image(s)), || {
            format!("{what} minor at {v} of {g:?} differs on subset {s:#x}")
        });
    };
    match samples {
        None => (0..1u64 << len).for_each(|s| compare(r, s)),
        Some(count) => (0..count).for_each(|_| compare(r, rng.gen_range(0..1u64 << len))),
    }
}

/// Vertex deletion and the local complement and pivot minor identities.
/// Every subset for graphs up to four vertices; above that, ten seeded
/// random graphs per size with 1000 random subsets per identity.
fn minors(r: &mut SuiteReport, max_n: usize, rng: &mut ChaCha8Rng) {
    let one_graph = |r: &mut SuiteReport, g: &LoopedSimpleGraph, rng: &mut ChaCha8Rng, sampled: bool| {
        for v in 0..g.n() {
            let samples = sampled.then_some(1000);
            let plain = |e: GroundElement| GroundElement::new(shift(e.vertex, v), e.flavor);
            let h = g.delete_vertex(v).expect("vertex in range");
            compare_minor(r, g, v, Flavor::Phi, &h, plain, samples, rng, "deletion");

            let h = g.nonsimple_local_complement(v).and_then(|h| h.delete_vertex(v)).expect("vertex in range");
            let c = if g.is_looped(v) { Flavor::Chi } else { Flavor::Psi };
            compare_minor(r, g, v, c, &h, plain, samples, rng, "local complement");

            for w in g.neighbors(v).collect::<Vec<_>>() {
                let Some((pivoted, iso)) = r.get(elementary_iso(g, ElementaryMove::Pivot(v, w)), || format!("{g:?}")) else {
                    continue;
                };
                let h = pivoted.delete_vertex(v).expect("vertex in range");
                let c = if g.is_looped(v) { Flavor::Psi } else { Flavor::Chi };
                let through = |e: GroundElement| {
                    let img = iso.image(e);
                    GroundElement::new(shift(img.vertex, v), img.flavor)
                };
                compare_minor(r, g, v, c, &h, through, samples, rng, "pivot");
            }
        }
    };
    for g in all_graphs(max_n.min(4)) {
        one_graph(r, &g, rng, false);
    }
    for n in 5..=max_n {
        for _ in 0..10 {
            let g = LoopedSimpleGraph::random(n, rng);
            one_graph(r, &g, rng, true);
        }
    }
}

/// The expected components: one block per connected component with at
/// least two vertices; a loop and a parallel pair per isolated vertex.
fn expected_components(g: &LoopedSimpleGraph) -> BTreeSet<Vec<GroundElement>> {
    let mut out = BTreeSet::new();
    for comp in g.connected_components() {
        if let [v] = comp[..] {
            let (zero, rest): (Vec<GroundElement>, Vec<GroundElement>) = Flavor::ALL
                .iter()
                .map(|&f| GroundElement::new(v, f))
                .partition(|&e| ias_column(g, e) == 0);
            out.insert(zero);
            out.insert(rest);
        } else {
            let mut block: Vec<GroundElement> = comp
                .iter()
                .flat_map(|&v| Flavor::ALL.map(|f| GroundElement::new(v, f)))
                .collect();
            block.sort();
            out.insert(block);
        }
    }
    out
}

fn connectivity(r: &mut SuiteReport, max_n: usize) {
    for g in all_graphs(max_n) {
        let Some(comps) = r.get(ias(&g).components(), || format!("{g:?}")) else {
            continue;
        };
        let found: BTreeSet<Vec<GroundElement>> = comps
            .into_iter()
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        r.check(found == expected_components(&g), || format!("components of {g:?}"));
    }
}

fn delta(r: &mut SuiteReport, max_n: usize) {
    for g in all_graphs(max_n) {
        let (Some(d), Some(b)) = (r.get(delta_matroid(&g), || format!("{g:?}")), r.get(delta_via_bases(&g), || format!("{g:?}")))
        else {
            continue;
        };
        r.check(d == b, || format!("feasible sets disagree on {g:?}"));
        r.check(graph_from_delta(&d) == g, || format!("round trip of {g:?}"));
    }
}

/// PPT moves fix ψ, so they twist the delta-matroid by the vertices they move.
fn twist_moves(r: &mut SuiteReport, max_n: usize) {
    for g in all_graphs(max_n) {
        let n = g.n();
        let Some(d) = r.get(delta_matroid(&g), || format!("{g:?}")) else {
            continue;
        };
        let mut moves: Vec<ElementaryMove> = g.looped_vertices().into_iter().map(ElementaryMove::LocalComplement).collect();
        for (v, w) in g.edges() {
            if !g.is_looped(v) && !g.is_looped(w) {
                moves.push(ElementaryMove::Pivot(v, w));
            }
        }
        for mv in moves {
            let Some((h, iso)) = r.get(elementary_iso(&g, mv), || format!("{mv:?} on {g:?}")) else {
                continue;
            };
            r.check(iso.f.iter().all(|s| s.apply(Flavor::Psi) == Flavor::Psi), || {
                format!("{mv:?} on {g:?} moves ψ")
            });
            let x = (0..n).filter(|&v| iso.f[v] != S3Element::IDENTITY).fold(0, |a, v| a | 1 << v);
            let ok = matches!((delta_matroid(&h), twist(&d, x)), (Ok(a), Ok(b)) if a == b);
            r.check(ok, || format!("{mv:?} on {g:?} is not a twist"));
        }
    }
}

fn cycles(r: &mut SuiteReport, max_n: usize) {
    for g in all_graphs(max_n) {
        let n = g.n();
        let (Some(walk), Some(formula)) = (
            r.get(transverse_cycles(&g), || format!("{g:?}")),
            r.get(cycles_by_formula(&g), || format!("{g:?}")),
        ) else {
            continue;
        };
        r.check(walk.len() == 1 << n, || format!("{g:?} has {} cycles", walk.len()));
        r.check(walk == formula, || format!("formula disagrees on {g:?}"));
        for v in 0..n {
            let shaped = walk.iter().filter(|c| fits_zeta(c, v)).count();
            let z = zeta(&g, v).ok();
            r.check(shaped == 1 && z.is_some_and(|z| fits_zeta(&z, v) && walk.contains(&z)), || {
                format!("ζ at {v} of {g:?}: {shaped} candidates")
            });
        }
        let back = graph_from_cycles(n, &walk).ok();
        r.check(back.as_ref() == Some(&g), || format!("round trip of {g:?}"));
    }
}

fn triangle(r: &mut SuiteReport, max_n: usize) {
    for n in 1..=max_n {
        let transversals: Vec<SubTransversal> = SubTransversal::all_transversals(n).collect();
        let mut pairs = Vec::new();
        for s in &transversals {
            for t in &transversals {
                if (0..n).all(|v| s.get(v) != t.get(v)) {
                    pairs.push((*s, *t));
                }
            }
        }
        let subs: Vec<SubTransversal> = SubTransversal::all(n).collect();
        for g in LoopedSimpleGraph::all(n) {
            for s in &subs {
                if s.len() + 1 == n {
                    let v = (0..n).find(|&v| s.get(v).is_none()).expect("one vertex missing");
                    let ok = triangle_check(&g, s, v).is_ok_and(|out| {
                        Flavor::ALL
                            .iter()
                            .all(|&f| out.ranks[f.index()] == out.base_rank + usize::from(f != out.flavor))
                    });
                    r.check(ok, || format!("triangle at {v} for {s:?} in {g:?}"));
                }
                r.check(closure_meets_cell_at_most_once(&g, s), || format!("closure of {s:?} in {g:?}"));
            }
            for (s, t) in &pairs {
                let ok = strong_map_check(&g, s, t).unwrap_or(false);
                r.check(ok, || format!("strong map {s:?} to {t:?} in {g:?}"));
            }
        }
    }
}

type CircuitRow = (GroundElement, Vec<GroundElement>, GroundElement, Vec<GroundElement>);

/// Fundamental circuits with respect to `Φ` of the eight χ/ψ elements of
/// a matched 4-path, each with its image under the bending automorphism
/// and the image circuit, which is the fundamental circuit of the image
/// with respect to the image of `Φ`.
pub fn bent_circuit_table(g: &LoopedSimpleGraph, quad: [usize; 4]) -> Vec<CircuitRow> {
    use GroundElement as E;
    let [u, v, w, x] = quad;
    let nbr_phi = |t: usize, skip: Option<usize>| -> Vec<E> { g.neighbors(t).filter(|&s| Some(s) != skip).map(E::phi).collect() };
    let set = |parts: Vec<Vec<E>>| {
        let mut out: Vec<E> = parts.concat();
        out.sort();
        out.dedup();
        out
    };
    vec![
        (E::chi(u), set(vec![nbr_phi(u, None), vec![E::chi(u)]]), E::phi(v), set(vec![nbr_phi(u, Some(v)), vec![E::chi(u), E::phi(v)]])),
        (
            E::psi(u),
            set(vec![nbr_phi(u, None), vec![E::phi(u), E::psi(u)]]),
            E::chi(w),
            set(vec![nbr_phi(u, Some(v)), vec![E::chi(w), E::phi(x), E::chi(u)]]),
        ),
        (E::chi(v), set(vec![vec![E::phi(u), E::chi(v), E::phi(w)]]), E::psi(x), set(vec![vec![E::phi(x), E::chi(x), E::psi(x)]])),
        (
            E::psi(v),
            set(vec![vec![E::phi(u), E::phi(v), E::psi(v), E::phi(w)]]),
            E::psi(w),
            set(vec![vec![E::chi(u), E::psi(w), E::phi(x), E::chi(x)]]),
        ),
        (E::chi(w), set(vec![vec![E::phi(v), E::chi(w), E::phi(x)]]), E::psi(u), set(vec![vec![E::phi(u), E::chi(u), E::psi(u)]])),
        (
            E::psi(w),
            set(vec![vec![E::phi(v), E::phi(w), E::psi(w), E::phi(x)]]),
            E::psi(v),
            set(vec![vec![E::phi(u), E::chi(u), E::psi(v), E::chi(x)]]),
        ),
        (E::chi(x), set(vec![nbr_phi(x, None), vec![E::chi(x)]]), E::phi(w), set(vec![nbr_phi(x, Some(w)), vec![E::chi(x), E::phi(w)]])),
        (
            E::psi(x),
            set(vec![nbr_phi(x, None), vec![E::phi(x), E::psi(x)]]),
            E::chi(v),
            set(vec![nbr_phi(x, Some(w)), vec![E::phi(u), E::chi(v), E::chi(x)]]),
        ),
    ]
}

/// Checks the bending automorphism of `quad` against the circuit table.
fn check_circuit_table(r: &mut SuiteReport, g: &LoopedSimpleGraph, quad: [usize; 4]) {
    let n = g.n();
    let m = ias(g);
    let Some(alpha) = r.get(bent_4path_automorphism(g, quad), || format!("{quad:?} in {g:?}")) else {
        return;
    };
    let img = |e: GroundElement| GroundElement::from_index(alpha[e.index(n)], n);
    let phi: Vec<GroundElement> = (0..n).map(GroundElement::phi).collect();
    let alpha_phi: Vec<GroundElement> = phi.iter().map(|&e| img(e)).collect();
    for (z, circuit, alpha_z, image_circuit) in bent_circuit_table(g, quad) {
        let found = m.fundamental_circuit(&z, &phi).ok();
        r.check(found.as_ref() == Some(&circuit), || format!("C({z:?}, Φ) in {g:?}"));
        r.check(img(z) == alpha_z, || format!("α({z:?}) in {g:?}"));
        let mut mapped: Vec<GroundElement> = circuit.iter().map(|&e| img(e)).collect();
        mapped.sort();
        r.check(mapped == image_circuit, || format!("α(C({z:?}, Φ)) in {g:?}"));
        let found = m.fundamental_circuit(&alpha_z, &alpha_phi).ok();
        r.check(found.as_ref() == Some(&image_circuit), || format!("C(α({z:?}), α(Φ)) in {g:?}"));
    }
}

/// Bending every matched 4-path, the circuit table, and canonicalizing
/// every triangulation.
fn triangulations(r: &mut SuiteReport, max_n: usize) {
    let fixed = [
        LoopedSimpleGraph::cycle(5),
        LoopedSimpleGraph::new(6, &[(0, 1), (1, 2), (2, 3), (0, 4), (3, 4), (4, 5)], &[4]).expect("valid graph"),
    ];
    for g in all_graphs(max_n).chain(fixed) {
        let n = g.n();
        let canonical = canonical_partition(&g);
        for quad in g.find_matched_4paths() {
            let Some(bent) = r.get(bend_4path(&g, &canonical, quad), || format!("{quad:?} in {g:?}")) else {
                continue;
            };
            r.check(is_triangulation(&g, &bent).unwrap_or(false), || format!("bent {quad:?} in {g:?}"));
            if let Ok(alpha) = bent_4path_automorphism(&g, quad) {
                r.check(is_automorphism(&g, &alpha), || format!("α for {quad:?} in {g:?}"));
                r.check((0..3 * n).all(|i| alpha[alpha[i]] == i), || format!("α for {quad:?} is not an involution"));
                r.check(apply_ground_perm(&canonical, &alpha) == bent, || format!("α does not bend {quad:?} in {g:?}"));
            }
            check_circuit_table(r, &g, quad);
        }
        if n <= max_n.min(CANONICALIZE_LIMIT) {
            let Some(all) = r.get(enumerate_triangulations(&g), || format!("{g:?}")) else {
                continue;
            };
            for p in all {
                let ok = canonicalize_triangulation(&g, &p)
                    .is_ok_and(|alpha| is_automorphism(&g, &alpha) && apply_ground_perm(&p, &alpha).is_canonical());
                r.check(ok, || format!("canonicalizing {p:?} in {g:?}"));
            }
        }
    }
}

fn phi_chi_only(_: usize, s: S3Element) -> bool {
    s == S3Element::IDENTITY || s == S3Element::PHI_CHI
}

/// One graph per isomorphism class, with its code.
fn class_representatives(n: usize, simple: bool) -> Vec<(CanonicalCode, LoopedSimpleGraph)> {
    let mut by_code = std::collections::BTreeMap::new();
    let graphs: Box<dyn Iterator<Item = LoopedSimpleGraph>> = if simple {
        Box::new(LoopedSimpleGraph::all_simple(n))
    } else {
        Box::new(LoopedSimpleGraph::all(n))
    };
    for g in graphs {
        by_code.entry(g.canonical_code().expect("small graph")).or_insert(g);
    }
    by_code.into_iter().collect()
}

/// Matroid isomorphism against full-local equivalence, and the PPT and
/// pivot relations against compatible isomorphisms with `f(v) ∈ {1, (φχ)}`.
/// Every relation involved is invariant under relabelling vertices, so
/// one graph per isomorphism class covers every labelled pair.
fn compatible(r: &mut SuiteReport, max_n: usize) {
    for n in 1..=max_n {
        let reps = class_representatives(n, false);
        for (_, a) in &reps {
            let (Ok(full), Ok(ppt)) = (orbit(a, MoveSet::FullLocal), orbit(a, MoveSet::Ppt)) else {
                r.fail(format!("orbit of {a:?}"));
                continue;
            };
            let ma = ias(a);
            for (code, b) in &reps {
                let Some(gamma) = r.get(matroids_isomorphic(&ma, &ias(b)), || format!("{a:?} {b:?}")) else {
                    continue;
                };
                r.check(gamma.is_some() == full.contains(code), || {
                    format!("matroid isomorphism vs full-local orbit for {a:?} and {b:?}")
                });
                if let Some(gamma) = gamma {
                    let ok = compatible_from_arbitrary(a, b, &gamma).is_ok_and(|i| verify_compatible_iso(a, b, &i).unwrap_or(false));
                    r.check(ok, || format!("no compatible isomorphism from {a:?} to {b:?}"));
                }
                let restricted = find_compatible_iso(a, b, phi_chi_only).ok().flatten();
                r.check(restricted.is_some() == ppt.contains(code), || {
                    format!("PPT orbit vs restricted isomorphism for {a:?} and {b:?}")
                });
            }
        }
        let simple = class_representatives(n, true);
        for (_, a) in &simple {
            let Ok(pivots) = orbit(a, MoveSet::PivotsOnly) else {
                r.fail(format!("orbit of {a:?}"));
                continue;
            };
            for (code, b) in &simple {
                let restricted = find_compatible_iso(a, b, phi_chi_only).ok().flatten();
                r.check(restricted.is_some() == pivots.contains(code), || {
                    format!("pivot orbit vs restricted isomorphism for {a:?} and {b:?}")
                });
            }
        }
    }
}

/// The seven nonzero vectors of GF(2)^3 as column masks.
const FANO_COLUMNS: [u64; 7] = [0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

fn fano(r: &mut SuiteReport, max_n: usize) {
    let p3 = LoopedSimpleGraph::path(3);
    match ias(&p3).find_fano_restriction() {
        Ok(Some(found)) => {
            let mut cols: Vec<u64> = found.iter().map(|&e| ias_column(&p3, e)).collect();
            cols.sort_unstable();
            let mut expected = FANO_COLUMNS.to_vec();
            expected.sort_unstable();
            r.check(cols == expected, || format!("Fano columns {cols:?} on P3"));
        }
        other => r.fail(format!("no Fano restriction on P3: {other:?}")),
    }
    for g in all_graphs(max_n) {
        let largest = g.connected_components().iter().map(Vec::len).max().unwrap_or(0);
        let Some(found) = r.get(ias(&g).find_fano_restriction(), || format!("{g:?}")) else {
            continue;
        };
        if largest <= 2 {
            r.check(found.is_none(), || format!("Fano restriction in {g:?}"));
        } else if g.n() == 3 {
            r.check(found.is_some(), || format!("no Fano restriction in connected {g:?}"));
        }
    }
}

/// Direct and section computations of `q` on every graph up to `max_n`,
/// plus 100 seeded random graphs on eight vertices.
fn interlace(r: &mut SuiteReport, max_n: usize, rng: &mut ChaCha8Rng) {
    let check = |r: &mut SuiteReport, g: &LoopedSimpleGraph| {
        let (Some(direct), Some(section)) = (
            r.get(interlace_q(g), || format!("{g:?}")),
            r.get(interlace_via_section(g), || format!("{g:?}")),
        ) else {
            return;
        };
        r.check(direct == section, || format!("q differs on {g:?}: {direct} vs {section}"));
    };
    for g in all_graphs(max_n) {
        check(r, &g);
    }
    for _ in 0..100 {
        check(r, &LoopedSimpleGraph::random(8, rng));
    }
}

/// `r(T) = n − |S| + r(A[S])` for the φ/χ transversal with χ exactly on `S`.
fn rank_identity(r: &mut SuiteReport, max_n: usize) {
    for g in all_graphs(max_n) {
        let n = g.n();
        let phi: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
        let chi: Vec<u64> = (0..n).map(|v| ias_column(&g, GroundElement::chi(v))).collect();
        for s in 0..1u64 << n {
            let rank = rank_of_masks((0..n).map(|v| if s >> v & 1 == 1 { chi[v] } else { phi[v] }));
            r.check(rank == n - s.count_ones() as usize + principal_rank(&g, s), || {
                format!("rank identity on {s:#b} in {g:?}")
            });
        }
    }
}
