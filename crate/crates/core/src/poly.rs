//! Sparse multivariate polynomials with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The variables a [`MultiPoly`] may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    /// Stands for the product `s·z` on transversals.
    U = 2,
    S = 3,
    Z = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::X, Var::Y, Var::U, Var::S, Var::Z];

    pub fn name(self) -> &'static str {
        ["x", "y", "u", "s", "z"][self as usize]
    }
}

pub type Exponents = [u32; 5];

/// `Σ c · x^a y^b u^c s^d z^e` with `i128` coefficients. Zero terms are
/// never stored. Arithmetic panics on coefficient overflow rather than
/// wrapping.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, i128>,
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("polynomial coefficient overflow")
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::monomial(c, [0; 5])
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, k: u32) -> Self {
        let mut e = [0; 5];
        e[v as usize] = k;
        Self::monomial(1, e)
    }

    pub fn monomial(c: i128, e: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// Adds `c · x^e` in place.
    pub fn add_term(&mut self, e: Exponents, c: i128) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot = checked(slot.checked_add(c));
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, i128> {
        &self.terms
    }

    pub fn coefficient(&self, e: Exponents) -> i128 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v as usize]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: i128) -> Self {
        let mut out = Self::zero();
        for (&e, &k) in &self.terms {
            out.add_term(e, checked(k.checked_mul(c)));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> Self {
        let mut powers: Vec<MultiPoly> = vec![Self::one()];
        let mut out = Self::zero();
        for (&e, &c) in &self.terms {
            let k = e[v as usize] as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            let mut rest = e;
            rest[v as usize] = 0;
            out = out + &powers[k] * &Self::monomial(c, rest);
        }
        out
    }

    /// Evaluates at integer values of all five variables.
    pub fn evaluate(&self, values: [i128; 5]) -> i128 {
        self.terms.iter().fold(0i128, |acc, (e, &c)| {
            let term = e.iter().zip(values).fold(c, |t, (&k, x)| checked(t.checked_mul(checked(x.checked_pow(k)))));
            checked(acc.checked_add(term))
        })
    }

    /// Whether every coefficient is nonnegative.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(-1)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() - rhs.clone()
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                let mut e = *a;
                for i in 0..5 {
                    e[i] = e[i].checked_add(b[i]).expect("exponent overflow");
                }
                out.add_term(e, checked(ca.checked_mul(cb)));
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl From<i128> for MultiPoly {
    fn from(c: i128) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing lexicographic order of `(x, y, u, s, z)`
    /// exponents, e.g. `x^2 - 2*x + 2*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, &c)) in self.terms.iter().rev().enumerate() {
            let factors: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[**v as usize] > 0)
                .map(|v| match e[*v as usize] {
                    1 => v.name().to_string(),
                    k => format!("{}^{k}", v.name()),
                })
                .collect();
            let mag = c.unsigned_abs();
            let body = match (mag, factors.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => factors.join("*"),
                (_, false) => format!("{mag}*{}", factors.join("*")),
            };
            match (i, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
