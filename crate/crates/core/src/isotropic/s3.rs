use std::fmt;

use super::Flavor;

/// A permutation of the three flavors `{φ, χ, ψ}`.
///
/// Products compose right to left, as functions: `(a * b)(ι) = a(b(ι))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct S3Element([u8; 3]);

impl S3Element {
    pub const IDENTITY: Self = Self([0, 1, 2]);
    /// `(φχ)`
    pub const PHI_CHI: Self = Self([1, 0, 2]);
    /// `(φψ)`
    pub const PHI_PSI: Self = Self([2, 1, 0]);
    /// `(χψ)`
    pub const CHI_PSI: Self = Self([0, 2, 1]);
    /// `(φχψ)`: φ→χ→ψ→φ
    pub const PHI_CHI_PSI: Self = Self([1, 2, 0]);
    /// `(φψχ)`: φ→ψ→χ→φ
    pub const PHI_PSI_CHI: Self = Self([2, 0, 1]);

    pub const ALL: [Self; 6] = [
        Self::IDENTITY,
        Self::PHI_CHI,
        Self::PHI_PSI,
        Self::CHI_PSI,
        Self::PHI_CHI_PSI,
        Self::PHI_PSI_CHI,
    ];

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(a: Flavor, b: Flavor) -> Self {
        let mut img = [0, 1, 2];
        img.swap(a.index(), b.index());
        Self(img)
    }

    /// Builds the permutation sending `Flavor::ALL[i]` to `images[i]`;
    /// `None` if `images` is not a permutation.
    pub fn from_images(images: [Flavor; 3]) -> Option<Self> {
        let img = images.map(|f| f.index() as u8);
        let distinct = img[0] != img[1] && img[1] != img[2] && img[0] != img[2];
        distinct.then_some(Self(img))
    }

    #[inline]
    pub fn apply(self, f: Flavor) -> Flavor {
        Flavor::from_index(self.0[f.index()] as usize)
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0u8; 3];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Self(inv)
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn is_transposition(self) -> bool {
        self.0.iter().enumerate().filter(|&(i, &j)| i as u8 == j).count() == 1
    }

    /// ASCII name: `1`, `(phi chi)`, `(phi chi psi)`, ...
    pub fn name(self) -> String {
        self.cycle_string(|f| f.name(), " ")
    }

    fn cycle_string(self, sym: impl Fn(Flavor) -> &'static str, sep: &str) -> String {
        if self.is_identity() {
            return "1".into();
        }
        let mut out = String::new();
        let mut seen = [false; 3];
        for start in 0..3 {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(sym(Flavor::from_index(i)));
                i = self.0[i] as usize;
            }
            out.push('(');
            out.push_str(&cycle.join(sep));
            out.push(')');
        }
        out
    }
}

impl std::ops::Mul for S3Element {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self(rhs.0.map(|i| self.0[i as usize]))
    }
}

impl fmt::Display for S3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const GREEK: [&str; 3] = ["φ", "χ", "ψ"];
        f.write_str(&self.cycle_string(|fl| GREEK[fl.index()], ""))
    }
}

impl fmt::Debug for S3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Flavor::*;

    #[test]
    fn group_axioms() {
        for a in S3Element::ALL {
            assert_eq!(a * S3Element::IDENTITY, a);
            assert_eq!(S3Element::IDENTITY * a, a);
            assert_eq!(a * a.inverse(), S3Element::IDENTITY);
            for b in S3Element::ALL {
                assert!(S3Element::ALL.contains(&(a * b)));
                for c in S3Element::ALL {
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
    }

    #[test]
    fn notation() {
        // (φχ)(χψ) is the 3-cycle (ψφχ) = (φχψ)
        assert_eq!(S3Element::PHI_CHI * S3Element::CHI_PSI, S3Element::PHI_CHI_PSI);
        assert_eq!(S3Element::PHI_CHI_PSI.apply(Psi), Phi);
        assert_eq!(S3Element::PHI_CHI_PSI.inverse(), S3Element::PHI_PSI_CHI);
        assert_eq!(S3Element::transposition(Chi, Psi), S3Element::CHI_PSI);
        assert_eq!(S3Element::PHI_CHI_PSI.to_string(), "(φχψ)");
        assert_eq!(S3Element::CHI_PSI.name(), "(chi psi)");
        assert_eq!(S3Element::IDENTITY.to_string(), "1");
        assert_eq!(S3Element::from_images([Chi, Phi, Psi]), Some(S3Element::PHI_CHI));
        assert_eq!(S3Element::from_images([Chi, Chi, Psi]), None);
    }

    #[test]
    fn pivot_composition_from_the_local_complement_moves() {
        // unlooped pivot vertex: (χψ)·(φχ)·1·(φψ) = (φχ)
        let unlooped = S3Element::CHI_PSI * S3Element::PHI_CHI * S3Element::IDENTITY * S3Element::PHI_PSI;
        assert_eq!(unlooped, S3Element::PHI_CHI);
        // looped pivot vertex: (χψ)·(φψ)·1·(φχ) = (φψ)
        let looped = S3Element::CHI_PSI * S3Element::PHI_PSI * S3Element::IDENTITY * S3Element::PHI_CHI;
        assert_eq!(looped, S3Element::PHI_PSI);
    }

    #[test]
    fn transpositions_are_self_inverse() {
        for t in [S3Element::PHI_CHI, S3Element::PHI_PSI, S3Element::CHI_PSI] {
            assert!(t.is_transposition());
            assert_eq!(t.inverse(), t);
        }
        assert!(!S3Element::PHI_CHI_PSI.is_transposition());
    }
}
