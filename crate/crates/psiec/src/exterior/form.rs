//! Basis monomials and symbolic forms over the three bases in play:
//! spatial `dx^i`, frequency Cartesian `d/dxi^i`, and the orthonormal
//! spherical frequency frame with the radial vector last.

use super::coeff::Coeff;
use std::collections::BTreeMap;

/// Which basis a monomial's indices refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceTag {
    /// `dx^1, ..., dx^n`
    SpatialX,
    /// `d/dxi^1, ..., d/dxi^n`
    FreqCartesian,
    /// 2D: `(tangent, radial)`; 3D: `(theta, phi, radial)`. Ordered so the
    /// full wedge is positively oriented; radial is always the last slot.
    FreqSpherical,
}

/// Ordered multi-index as a bitset over `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub u8);

impl Monomial {
    pub const EMPTY: Monomial = Monomial(0);

    pub fn full(n: u8) -> Monomial {
        Monomial((1u8 << n) - 1)
    }

    pub fn from_indices(idx: &[u8]) -> Monomial {
        let mut bits = 0u8;
        for &i in idx {
            assert!(bits & (1 << i) == 0, "repeated index");
            bits |= 1 << i;
        }
        Monomial(bits)
    }

    pub fn indices(&self) -> Vec<u8> {
        (0..8).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn degree(&self) -> u8 {
        self.0.count_ones() as u8
    }

    pub fn contains(&self, i: u8) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn complement(&self, n: u8) -> Monomial {
        Monomial(!self.0 & ((1 << n) - 1))
    }

    /// Wedge of two ordered monomials: `None` if they share an index,
    /// otherwise the merged monomial with the permutation sign.
    pub fn wedge(&self, other: &Monomial) -> Option<(i8, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // inversions: pairs (i in self, j in other) with i > j
        let mut sign = 1i8;
        for i in self.indices() {
            let below = other.0 & ((1u8 << i) - 1);
            if below.count_ones() % 2 == 1 {
                sign = -sign;
            }
        }
        Some((sign, Monomial(self.0 | other.0)))
    }

    /// Sign of the permutation `(self indices, complement indices)` relative
    /// to the identity `(0, 1, ..., n-1)`.
    pub fn complement_sign(&self, n: u8) -> i8 {
        self.wedge(&self.complement(n)).expect("complement is disjoint").0
    }

    /// Removes index `i` (which must be present) with the anti-derivation
    /// sign `(-1)^{position}`.
    pub fn remove(&self, i: u8) -> (i8, Monomial) {
        assert!(self.contains(i));
        let pos = (self.0 & ((1u8 << i) - 1)).count_ones();
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        (sign, Monomial(self.0 & !(1 << i)))
    }
}

/// Exterior-algebra element with exact coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicForm {
    pub dim: u8,
    pub tag: SpaceTag,
    pub terms: BTreeMap<Monomial, Coeff>,
}

impl SymbolicForm {
    pub fn zero(dim: u8, tag: SpaceTag) -> Self {
        SymbolicForm { dim, tag, terms: BTreeMap::new() }
    }

    pub fn monomial(dim: u8, tag: SpaceTag, mono: Monomial, coeff: Coeff) -> Self {
        let mut f = Self::zero(dim, tag);
        f.add_term(mono, coeff);
        f
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree when homogeneous.
    pub fn degree(&self) -> Option<u8> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn scaled(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.dim, self.tag);
        for (m, v) in &self.terms {
            out.add_term(*m, c * v);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.tag, other.tag);
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(*m, v.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&(-Coeff::one())))
    }

    /// Anti-symmetrized product within one space.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.tag, other.tag, "wedge requires matching space tags");
        let mut out = Self::zero(self.dim, self.tag);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = ma.wedge(mb) {
                    out.add_term(m, (ca * cb).scaled(sign as i64, 1));
                }
            }
        }
        out
    }
}

/// Element of the tensor product of two exterior algebras with the graded
/// multiplication rule `(a (x) b)(c (x) d) = (-1)^{deg(c) deg(b)} (a^c) (x) (b^d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedForm {
    pub dim: u8,
    pub terms: BTreeMap<(Monomial, Monomial), Coeff>,
}

impl MixedForm {
    pub fn zero(dim: u8) -> Self {
        MixedForm { dim, terms: BTreeMap::new() }
    }

    pub fn unit(dim: u8) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(Monomial::EMPTY, Monomial::EMPTY, Coeff::one());
        f
    }

    pub fn add_term(&mut self, first: Monomial, second: Monomial, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((first, second)) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), ca) in &self.terms {
            for ((c, d), cb) in &other.terms {
                let (s1, first) = match a.wedge(c) {
                    Some(v) => v,
                    None => continue,
                };
                let (s2, second) = match b.wedge(d) {
                    Some(v) => v,
                    None => continue,
                };
                let parity = (c.degree() * b.degree()) % 2;
                let sign = (s1 * s2) as i64 * if parity == 1 { -1 } else { 1 };
                out.add_term(first, second, (ca * cb).scaled(sign, 1));
            }
        }
        out
    }

    pub fn scaled(&self, num: i64, den: i64) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, c.scaled(num, den));
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let e1 = Monomial::from_indices(&[0]);
        let e2 = Monomial::from_indices(&[1]);
        assert_eq!(e1.wedge(&e2), Some((1, Monomial::from_indices(&[0, 1]))));
        assert_eq!(e2.wedge(&e1), Some((-1, Monomial::from_indices(&[0, 1]))));
        assert_eq!(e1.wedge(&e1), None);
        let e13 = Monomial::from_indices(&[0, 2]);
        assert_eq!(e13.wedge(&e2), Some((-1, Monomial::full(3))));
    }

    #[test]
    fn antisymmetry_in_forms() {
        let dx1 = SymbolicForm::monomial(2, SpaceTag::SpatialX, Monomial::from_indices(&[0]), Coeff::one());
        assert!(dx1.wedge(&dx1).is_zero());
    }

    #[test]
    fn remove_sign_is_antiderivation_position() {
        let m = Monomial::from_indices(&[0, 1, 2]);
        assert_eq!(m.remove(0).0, 1);
        assert_eq!(m.remove(1).0, -1);
        assert_eq!(m.remove(2).0, 1);
    }

    #[test]
    fn complement_sign() {
        // (1,3) then (2): permutation (0,2,1) has sign -1
        let m = Monomial::from_indices(&[0, 2]);
        assert_eq!(m.complement_sign(3), -1);
        let m2 = Monomial::from_indices(&[1, 2]);
        assert_eq!(m2.complement_sign(3), 1);
    }
}
