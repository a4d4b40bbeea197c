//! Subset expansions of rank functions: the Tutte expansion, the
//! parametrized rank polynomial, its section on transversals, and the
//! two-variable interlace polynomial `q(G)`.

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::gf2::rank_of_masks;
use crate::graph::{bits, LoopedSimpleGraph};
use crate::isotropic::{ias_column, Flavor, GroundElement};
use crate::matroid::BinaryMatroid;
use crate::poly::{MultiPoly, Var};

/// Largest ground set accepted by the subset expansions.
pub const SUBSET_LIMIT: usize = 12;
/// Largest `n` accepted by the transversal section.
pub const SECTION_LIMIT: usize = 12;
/// Largest `n` accepted by [`interlace_q`].
pub const INTERLACE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("size {size} exceeds the supported limit {limit}")]
    LimitExceeded { size: usize, limit: usize },
    #[error("parameters cover {got} elements, expected {expected}")]
    ParameterCount { expected: usize, got: usize },
    #[error("unknown parameter preset {0:?}")]
    UnknownPreset(String),
    /// A result the underlying theory guarantees did not hold; always a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

fn check(size: usize, limit: usize) -> Result<(), PolyError> {
    if size > limit {
        return Err(PolyError::LimitExceeded { size, limit });
    }
    Ok(())
}

/// Two parameters `a(w)`, `b(w)` per ground element, by ground index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamAssignment {
    a: Vec<MultiPoly>,
    b: Vec<MultiPoly>,
}

impl ParamAssignment {
    pub fn new(a: Vec<MultiPoly>, b: Vec<MultiPoly>) -> Result<Self, PolyError> {
        if a.len() != b.len() {
            return Err(PolyError::ParameterCount {
                expected: a.len(),
                got: b.len(),
            });
        }
        Ok(Self { a, b })
    }

    /// `a ≡ b ≡ 1` on `len` elements.
    pub fn ones(len: usize) -> Self {
        Self {
            a: vec![MultiPoly::one(); len],
            b: vec![MultiPoly::one(); len],
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> (MultiPoly, MultiPoly)) -> Self {
        let (a, b) = (0..len).map(&mut f).unzip();
        Self { a, b }
    }

    /// Parameters on `W(G)` chosen per ground element.
    pub fn for_ground(n: usize, mut f: impl FnMut(GroundElement) -> (MultiPoly, MultiPoly)) -> Self {
        Self::from_fn(3 * n, |i| f(GroundElement::from_index(i, n)))
    }

    /// `a(v_φ) = 1`, `a(v_χ) = x − 1`, `a(v_ψ) = 0`, `b ≡ 1`.
    pub fn interlace(n: usize) -> Self {
        Self::for_ground(n, |e| {
            let a = match e.flavor {
                Flavor::Phi => MultiPoly::one(),
                Flavor::Chi => MultiPoly::var(Var::X) - MultiPoly::one(),
                Flavor::Psi => MultiPoly::zero(),
            };
            (a, MultiPoly::one())
        })
    }

    /// `a(v_ψ) = 0`, everything else 1: only φ/χ transversals contribute.
    pub fn restricted(n: usize) -> Self {
        Self::for_ground(n, |e| {
            let a = if e.flavor == Flavor::Psi {
                MultiPoly::zero()
            } else {
                MultiPoly::one()
            };
            (a, MultiPoly::one())
        })
    }

    /// `ones`, `interlace` or `restricted` on `W(G)` for `n` vertices.
    pub fn preset(name: &str, n: usize) -> Result<Self, PolyError> {
        match name {
            "ones" => Ok(Self::ones(3 * n)),
            "interlace" => Ok(Self::interlace(n)),
            "restricted" => Ok(Self::restricted(n)),
            other => Err(PolyError::UnknownPreset(other.to_string())),
        }
    }

    pub const PRESETS: [&'static str; 3] = ["ones", "interlace", "restricted"];

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self, i: usize) -> &MultiPoly {
        &self.a[i]
    }

    pub fn b(&self, i: usize) -> &MultiPoly {
        &self.b[i]
    }
}

fn sz(corank: usize, nullity: usize) -> MultiPoly {
    let mut e = [0; 5];
    e[Var::S as usize] = corank as u32;
    e[Var::Z as usize] = nullity as u32;
    MultiPoly::monomial(1, e)
}

/// `Σ_T s^{r(W) − r(T)} z^{|T| − r(T)}` over all subsets `T`.
pub fn tutte_subset_expansion<L>(m: &BinaryMatroid<L>) -> Result<MultiPoly, PolyError>
where
    L: Clone + Eq + Hash + Debug,
{
    let len = m.len();
    check(len, SUBSET_LIMIT)?;
    let full = m.rank();
    // counts[corank][nullity]
    let mut counts = vec![vec![0i128; len + 1]; full + 1];
    for t in 0..1u64 << len {
        let r = m.rank_of_mask(t);
        counts[full - r][t.count_ones() as usize - r] += 1;
    }
    let mut out = MultiPoly::zero();
    for (corank, row) in counts.iter().enumerate() {
        for (nullity, &c) in row.iter().enumerate() {
            out = out + sz(corank, nullity).scale(c);
        }
    }
    Ok(out)
}

/// `Σ_T (∏_{t∈T} a(t)) (∏_{w∉T} b(w)) s^{r(W) − r(T)} z^{|T| − r(T)}`.
pub fn parametrized_rank_poly<L>(m: &BinaryMatroid<L>, p: &ParamAssignment) -> Result<MultiPoly, PolyError>
where
    L: Clone + Eq + Hash + Debug,
{
    let len = m.len();
    check(len, SUBSET_LIMIT)?;
    if p.len() != len {
        return Err(PolyError::ParameterCount {
            expected: len,
            got: p.len(),
        });
    }
    let full = m.rank();
    let cols = m.columns();
    let mut out = MultiPoly::zero();
    let mut chosen = Vec::with_capacity(len);
    fn walk(
        i: usize,
        weight: MultiPoly,
        chosen: &mut Vec<u64>,
        cols: &[u64],
        p: &ParamAssignment,
        full: usize,
        out: &mut MultiPoly,
    ) {
        if weight.is_zero() {
            return;
        }
        if i == cols.len() {
            let r = rank_of_masks(chosen.iter().copied());
            *out = std::mem::take(out) + &weight * &sz(full - r, chosen.len() - r);
            return;
        }
        chosen.push(cols[i]);
        walk(i + 1, &weight * p.a(i), chosen, cols, p, full, out);
        chosen.pop();
        walk(i + 1, &weight * p.b(i), chosen, cols, p, full, out);
    }
    walk(0, MultiPoly::one(), &mut chosen, cols, p, full, &mut out);
    Ok(out)
}

/// The transversal section
/// `Σ_T (∏_{t∈T} a(t)) (∏_{w∉T} b(w)) u^{n − r(T)}` over transversals `T`
/// of `W(G)`; `u` stands for `s·z`.
pub fn transversal_section(g: &LoopedSimpleGraph, p: &ParamAssignment) -> Result<MultiPoly, PolyError> {
    let n = g.n();
    check(n, SECTION_LIMIT)?;
    if p.len() != 3 * n {
        return Err(PolyError::ParameterCount {
            expected: 3 * n,
            got: p.len(),
        });
    }
    // factor[v][ι] = a(v_ι) · b of the other two elements of v
    let factor: Vec<[MultiPoly; 3]> = (0..n)
        .map(|v| {
            Flavor::ALL.map(|f| {
                Flavor::ALL.iter().fold(MultiPoly::one(), |acc, &h| {
                    let i = GroundElement::new(v, h).index(n);
                    &acc * if h == f { p.a(i) } else { p.b(i) }
                })
            })
        })
        .collect();
    let column: Vec<[u64; 3]> = (0..n)
        .map(|v| Flavor::ALL.map(|f| ias_column(g, GroundElement::new(v, f))))
        .collect();
    let mut out = MultiPoly::zero();
    let mut chosen = Vec::with_capacity(n);
    fn walk(
        v: usize,
        weight: MultiPoly,
        chosen: &mut Vec<u64>,
        factor: &[[MultiPoly; 3]],
        column: &[[u64; 3]],
        out: &mut MultiPoly,
    ) {
        if weight.is_zero() {
            return;
        }
        let n = factor.len();
        if v == n {
            let r = rank_of_masks(chosen.iter().copied());
            *out = std::mem::take(out) + &weight * &MultiPoly::var_pow(Var::U, (n - r) as u32);
            return;
        }
        for f in 0..3 {
            chosen.push(column[v][f]);
            walk(v + 1, &weight * &factor[v][f], chosen, factor, column, out);
            chosen.pop();
        }
    }
    walk(0, MultiPoly::one(), &mut chosen, &factor, &column, &mut out);
    Ok(out)
}

/// Rank of the principal submatrix `A(G)[S]`.
pub fn principal_rank(g: &LoopedSimpleGraph, s: u64) -> usize {
    rank_of_masks(bits(s).map(|v| g.adjacency_row(v) & s))
}

/// `Σ_{S ⊆ V} (x − 1)^{r(A[S])} (y − 1)^{|S| − r(A[S])}`.
pub fn interlace_q(g: &LoopedSimpleGraph) -> Result<MultiPoly, PolyError> {
    let n = g.n();
    check(n, INTERLACE_LIMIT)?;
    // counts[rank][nullity]
    let mut counts = vec![vec![0i128; n + 1]; n + 1];
    for s in 0..1u64 << n {
        let r = principal_rank(g, s);
        counts[r][s.count_ones() as usize - r] += 1;
    }
    Ok(expand_rank_nullity(&counts))
}

/// `Σ counts[r][k] (x − 1)^r (y − 1)^k`.
fn expand_rank_nullity(counts: &[Vec<i128>]) -> MultiPoly {
    let one = MultiPoly::one();
    let xm = MultiPoly::var(Var::X) - one.clone();
    let ym = MultiPoly::var(Var::Y) - one;
    let size = counts.len();
    let xp: Vec<MultiPoly> = (0..size).map(|k| xm.pow(k as u32)).collect();
    let yp: Vec<MultiPoly> = (0..size).map(|k| ym.pow(k as u32)).collect();
    let mut out = MultiPoly::zero();
    for (r, row) in counts.iter().enumerate() {
        for (k, &c) in row.iter().enumerate() {
            if c != 0 {
                out = out + (&xp[r] * &yp[k]).scale(c);
            }
        }
    }
    out
}

/// `q(G)` from the transversal section over φ/χ transversals.
///
/// With `a(v_φ) = 1`, `a(v_χ) = x` (marking the χ vertices `S`),
/// `a(v_ψ) = 0` and `b ≡ 1`, a term `x^i u^e` counts transversals with
/// `|S| = i` and `n − r(T) = e`. Since `r(T) = n − |S| + r(A[S])`, such a
/// transversal contributes `(x − 1)^{i − e} (y − 1)^e` to `q(G)`.
pub fn interlace_via_section(g: &LoopedSimpleGraph) -> Result<MultiPoly, PolyError> {
    let n = g.n();
    check(n, SECTION_LIMIT)?;
    let marker = ParamAssignment::for_ground(n, |e| {
        let a = match e.flavor {
            Flavor::Phi => MultiPoly::one(),
            Flavor::Chi => MultiPoly::var(Var::X),
            Flavor::Psi => MultiPoly::zero(),
        };
        (a, MultiPoly::one())
    });
    let section = transversal_section(g, &marker)?;
    let mut counts = vec![vec![0i128; n + 1]; n + 1];
    for (e, &c) in section.terms() {
        let (size, nullity) = (e[Var::X as usize] as usize, e[Var::U as usize] as usize);
        if size < nullity {
            return Err(PolyError::InvariantViolation(format!(
                "transversal with {size} χ elements has nullity {nullity}"
            )));
        }
        counts[size - nullity][nullity] += c;
    }
    Ok(expand_rank_nullity(&counts))
}

/// `q(G)` at `x = 2`: `Σ_S (y − 1)^{|S| − r(A[S])}`.
pub fn vertex_nullity_specialization(g: &LoopedSimpleGraph) -> Result<MultiPoly, PolyError> {
    Ok(interlace_q(g)?.substitute(Var::X, &MultiPoly::constant(2)))
}
