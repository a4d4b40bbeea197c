use crate::gf2::rank_of_masks;
use crate::graph::LoopedSimpleGraph;

use super::{ias_column, Flavor, GroundElement, IsotropicError, SubTransversal};

/// Largest `n` accepted by [`strong_map_check`].
pub const STRONG_MAP_LIMIT: usize = 20;

/// Result of [`triangle_check`]: the one flavor whose element lies in the
/// span of the sub-transversal, with the ranks of all three extensions in
/// φ, χ, ψ order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleOutcome {
    pub flavor: Flavor,
    pub base_rank: usize,
    pub ranks: [usize; 3],
}

fn columns(g: &LoopedSimpleGraph, s: &SubTransversal) -> Vec<u64> {
    s.elements().into_iter().map(|e| ias_column(g, e)).collect()
}

/// For a sub-transversal `s` covering every vertex but `v`: exactly one of
/// `v_φ, v_χ, v_ψ` keeps the rank of `s`, the other two raise it by one.
pub fn triangle_check(
    g: &LoopedSimpleGraph,
    s: &SubTransversal,
    v: usize,
) -> Result<TriangleOutcome, IsotropicError> {
    let n = g.n();
    if s.n() != n {
        return Err(IsotropicError::SizeMismatch(n, s.n()));
    }
    if v >= n || s.get(v).is_some() || s.len() + 1 != n {
        return Err(IsotropicError::Precondition(format!(
            "sub-transversal must cover every vertex except {v}"
        )));
    }
    let base = columns(g, s);
    let base_rank = rank_of_masks(base.iter().copied());
    let ranks = Flavor::ALL.map(|f| {
        rank_of_masks(base.iter().copied().chain([ias_column(g, GroundElement::new(v, f))]))
    });
    let keep: Vec<Flavor> = Flavor::ALL.into_iter().filter(|f| ranks[f.index()] == base_rank).collect();
    match keep.as_slice() {
        [f] => Ok(TriangleOutcome {
            flavor: *f,
            base_rank,
            ranks,
        }),
        _ => Err(IsotropicError::InvariantViolation(format!(
            "{} of the three extensions at vertex {v} keep rank {base_rank}",
            keep.len()
        ))),
    }
}

/// Whether at most one element of each cell `{v_φ, v_χ, v_ψ}` with `v`
/// outside `s` lies in the closure of `s`.
pub fn closure_meets_cell_at_most_once(g: &LoopedSimpleGraph, s: &SubTransversal) -> bool {
    let base = columns(g, s);
    let r = rank_of_masks(base.iter().copied());
    (0..g.n()).filter(|&v| s.get(v).is_none()).all(|v| {
        Flavor::ALL
            .iter()
            .filter(|&&f| rank_of_masks(base.iter().copied().chain([ias_column(g, GroundElement::new(v, f))])) == r)
            .count()
            <= 1
    })
}

/// For disjoint transversals `s` and `t`, whether `v_s ↦ v_t` is a strong
/// map from `M|s` to the dual of `M|t`: every `v_s` in the closure of
/// `A_s` has `v_t` in the dual closure of `A_t`, using
/// `r*(X) = |X| + r(t − X) − r(t)`.
pub fn strong_map_check(g: &LoopedSimpleGraph, s: &SubTransversal, t: &SubTransversal) -> Result<bool, IsotropicError> {
    let n = g.n();
    if s.n() != n || t.n() != n {
        return Err(IsotropicError::SizeMismatch(n, s.n().min(t.n())));
    }
    if n > STRONG_MAP_LIMIT {
        return Err(IsotropicError::LimitExceeded {
            n,
            limit: STRONG_MAP_LIMIT,
        });
    }
    if !s.is_transversal() || !t.is_transversal() {
        return Err(IsotropicError::Precondition("both arguments must be transversals".into()));
    }
    if (0..n).any(|v| s.get(v) == t.get(v)) {
        return Err(IsotropicError::Precondition("transversals must be disjoint".into()));
    }
    let col = |x: &SubTransversal, v: usize| ias_column(g, GroundElement::new(v, x.get(v).expect("transversal")));
    let s_cols: Vec<u64> = (0..n).map(|v| col(s, v)).collect();
    let t_cols: Vec<u64> = (0..n).map(|v| col(t, v)).collect();
    let rank_table = |cols: &[u64]| -> Vec<usize> {
        (0..1u64 << n)
            .map(|a| rank_of_masks(crate::graph::bits(a).map(|v| cols[v])))
            .collect()
    };
    let rs = rank_table(&s_cols);
    let rt = rank_table(&t_cols);
    let full = (1u64 << n) - 1;
    let dual = |x: u64| x.count_ones() as usize + rt[(full & !x) as usize] - rt[full as usize];
    for a in 0..=full {
        for v in (0..n).filter(|&v| a >> v & 1 == 0) {
            let av = a | 1 << v;
            if rs[av as usize] == rs[a as usize] && dual(av) != dual(a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroundElement as E;

    #[test]
    fn triangle_examples() {
        let p3 = LoopedSimpleGraph::path(3);
        let s = SubTransversal::from_elements(3, &[E::phi(0), E::phi(1)]).unwrap();
        let out = triangle_check(&p3, &s, 2).unwrap();
        assert_eq!(out.flavor, Flavor::Chi);
        assert_eq!(out.ranks, [3, 2, 3]);
        assert_eq!(out.base_rank, 2);

        let k1 = LoopedSimpleGraph::empty(1);
        let out = triangle_check(&k1, &SubTransversal::empty(1), 0).unwrap();
        assert_eq!(out.flavor, Flavor::Chi);
        assert_eq!(out.ranks, [1, 0, 1]);

        assert!(triangle_check(&p3, &s, 1).is_err());
        assert!(triangle_check(&p3, &SubTransversal::empty(3), 2).is_err());
    }

    #[test]
    fn triangle_uniqueness_exhaustive() {
        for n in 1..=5 {
            for g in LoopedSimpleGraph::all(n) {
                for s in SubTransversal::all(n).filter(|s| s.len() + 1 == n) {
                    let v = (0..n).find(|&v| s.get(v).is_none()).unwrap();
                    let out = triangle_check(&g, &s, v).unwrap();
                    for f in Flavor::ALL {
                        let expect = out.base_rank + usize::from(f != out.flavor);
                        assert_eq!(out.ranks[f.index()], expect);
                    }
                }
            }
        }
    }

    #[test]
    fn closure_meets_each_cell_at_most_once() {
        for n in 1..=4 {
            for g in LoopedSimpleGraph::all(n) {
                for s in SubTransversal::all(n) {
                    assert!(closure_meets_cell_at_most_once(&g, &s));
                }
            }
        }
    }

    fn disjoint_pairs(n: usize) -> Vec<(SubTransversal, SubTransversal)> {
        let all: Vec<_> = SubTransversal::all_transversals(n).collect();
        let mut out = Vec::new();
        for s in &all {
            for t in &all {
                if (0..n).all(|v| s.get(v) != t.get(v)) {
                    out.push((*s, *t));
                }
            }
        }
        out
    }

    #[test]
    fn strong_map_exhaustive() {
        for n in 1..=4 {
            let pairs = disjoint_pairs(n);
            assert_eq!(pairs.len(), 6usize.pow(n as u32));
            for g in LoopedSimpleGraph::all(n) {
                for (s, t) in &pairs {
                    assert!(strong_map_check(&g, s, t).unwrap(), "{g:?} {s:?} {t:?}");
                }
            }
        }
    }

    #[test]
    fn strong_map_rejects_bad_input() {
        let g = LoopedSimpleGraph::path(2);
        let s = SubTransversal::from_elements(2, &[E::phi(0), E::phi(1)]).unwrap();
        let t = SubTransversal::from_elements(2, &[E::chi(0), E::phi(1)]).unwrap();
        assert!(strong_map_check(&g, &s, &t).is_err());
        let partial = SubTransversal::from_elements(2, &[E::chi(0)]).unwrap();
        assert!(strong_map_check(&g, &s, &partial).is_err());
    }

    #[test]
    fn strong_map_on_k1() {
        for looped in [false, true] {
            let g = LoopedSimpleGraph::new(1, &[], if looped { &[0] } else { &[] }).unwrap();
            for (s, t) in disjoint_pairs(1) {
                assert!(strong_map_check(&g, &s, &t).unwrap());
            }
        }
    }
}
