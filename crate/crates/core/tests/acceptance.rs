//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines appear in `cargo test` output; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use isomat_core::graph::LoopedSimpleGraph;
use isomat_core::isotropic::{ias, ias_column};
use isomat_core::poly::{MultiPoly, Var};
use isomat_core::polynomials::{interlace_q, interlace_via_section};
use isomat_core::verify::{run_suite, Suite, SuiteConfig};

const SEED: u64 = 20_240_601;

type Criterion = Box<dyn Fn() -> Outcome>;

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(list: &[(Suite, usize)]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for &(suite, max_n) in list {
        match run_suite(suite, SuiteConfig { max_n, seed: SEED }) {
            Ok(rep) => {
                ok &= rep.ok();
                parts.push(format!("{suite} n<={max_n}: {} cases", rep.cases));
                for f in rep.failures.iter().take(3) {
                    parts.push(format!("  failure: {f}"));
                }
                if rep.failure_count > 0 {
                    parts.push(format!("  {} failures", rep.failure_count));
                }
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{suite}: {e}"));
            }
        }
    }
    Outcome {
        ok,
        detail: parts.join("; "),
    }
}

fn and(mut a: Outcome, ok: bool, what: &str) -> Outcome {
    a.ok &= ok;
    a.detail.push_str(&format!("; {what}: {}", if ok { "ok" } else { "FAILED" }));
    a
}

/// GF(2) rank as log2 of the number of distinct sums of rows.
fn rank_by_span(rows: &[u64]) -> u32 {
    let mut span = std::collections::BTreeSet::new();
    for c in 0..1u64 << rows.len() {
        let mut acc = 0;
        for (i, &r) in rows.iter().enumerate() {
            if c >> i & 1 == 1 {
                acc ^= r;
            }
        }
        span.insert(acc);
    }
    span.len().trailing_zeros()
}

/// q(G) from the subset definition with its own rank routine, evaluated on
/// an integer grid so the comparison needs no polynomial arithmetic.
fn q_value_by_subsets(adj: &[Vec<bool>], x: i128, y: i128) -> i128 {
    let n = adj.len();
    let mut total = 0;
    for s in 0..1u64 << n {
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let rows: Vec<u64> = members
            .iter()
            .map(|&a| members.iter().enumerate().filter(|(_, &b)| adj[a][b]).fold(0, |m, (j, _)| m | 1 << j))
            .collect();
        let r = rank_by_span(&rows);
        total += (x - 1).pow(r) * (y - 1).pow(members.len() as u32 - r);
    }
    total
}

fn interlace_examples() -> bool {
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let one = MultiPoly::one();
    let k1 = LoopedSimpleGraph::empty(1);
    let k1_looped = LoopedSimpleGraph::new(1, &[], &[0]).unwrap();
    let k2 = LoopedSimpleGraph::path(2);
    let k2_expected = one.clone() + (y.clone() - one.clone()).scale(2) + (x.clone() - one).pow(2);
    let k2_adj = vec![vec![false, true], vec![true, false]];
    let grid_ok = (-3..=3).all(|a| (-3..=3).all(|b| q_value_by_subsets(&k2_adj, a, b) == k2_expected.evaluate([a, b, 0, 0, 0])));
    grid_ok
        && interlace_q(&k1).unwrap() == y
        && interlace_q(&k1_looped).unwrap() == x
        && interlace_q(&k2).unwrap() == k2_expected
        && interlace_via_section(&k2).unwrap() == k2_expected
}

/// The 3×7 matrix displayed for the Fano submatroid, row by row.
const FANO_ROWS: [[u8; 7]; 3] = [[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]];

fn fano_matches_displayed_matrix() -> bool {
    let p3 = LoopedSimpleGraph::path(3);
    let Ok(Some(found)) = ias(&p3).find_fano_restriction() else {
        return false;
    };
    let mut found_cols: Vec<u64> = found.iter().map(|&e| ias_column(&p3, e)).collect();
    let mut displayed: Vec<u64> = (0..7)
        .map(|j| (0..3).fold(0, |m, i| m | u64::from(FANO_ROWS[i][j]) << i))
        .collect();
    found_cols.sort_unstable();
    displayed.sort_unstable();
    found_cols == displayed
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 pivot well-definedness", Box::new(|| suites(&[(Suite::Pivot, 6)]))),
        ("2 elementary isomorphisms", Box::new(|| suites(&[(Suite::Elementary, 5)]))),
        ("3 minors", Box::new(|| suites(&[(Suite::Minors, 6)]))),
        ("4 connectivity", Box::new(|| suites(&[(Suite::Connectivity, 5)]))),
        ("5 delta-matroid", Box::new(|| suites(&[(Suite::Delta, 6), (Suite::Twist, 5)]))),
        ("6 transverse cycles", Box::new(|| suites(&[(Suite::Cycles, 6)]))),
        ("7 triangle property", Box::new(|| suites(&[(Suite::Triangle, 4)]))),
        ("8 triangulations", Box::new(|| suites(&[(Suite::Triangulations, 4)]))),
        ("9 compatible completeness", Box::new(|| suites(&[(Suite::Compatible, 4)]))),
        (
            "10 Fano",
            Box::new(|| and(suites(&[(Suite::Fano, 5)]), fano_matches_displayed_matrix(), "displayed matrix")),
        ),
        (
            "11 interlace",
            Box::new(|| {
                and(
                    suites(&[(Suite::Interlace, 5), (Suite::RankIdentity, 6)]),
                    interlace_examples(),
                    "K1, looped K1, K2",
                )
            }),
        ),
    ];
    let mut all_ok = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let out = run();
        all_ok &= out.ok;
        println!(
            "{} criterion {name} ({:.1}s): {}",
            if out.ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
