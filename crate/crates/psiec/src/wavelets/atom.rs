//! Differential r-form wavelet atoms and the per-atom operators.

use super::table::{family_count, FormType, FreqDescriptor, FreqTable, TypeKey};
use crate::exterior::{exterior_derivative_freq, hodge, Coeff, SymbolicForm};
use crate::polarlet::ScalarAtom;

/// Full index of a differential form wavelet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormAtom {
    pub scalar: ScalarAtom,
    pub degree: u8,
    pub form_type: FormType,
    /// 1-based family index.
    pub family: u8,
}

impl FormAtom {
    pub fn new(scalar: ScalarAtom, degree: u8, form_type: FormType, family: u8) -> Self {
        FormAtom { scalar, degree, form_type, family }
    }

    pub fn key(&self) -> TypeKey {
        TypeKey { degree: self.degree, form_type: self.form_type, family: self.family }
    }

    pub fn descriptor<'t>(&self, table: &'t FreqTable) -> &'t FreqDescriptor {
        table.get(&self.key())
    }
}

/// Exterior derivative on atoms: co-exact atoms map to the exact atom one
/// degree up with identical scalar index and family; exact atoms map to
/// zero.
pub fn exterior_derivative_atom(atom: &FormAtom) -> Option<FormAtom> {
    match atom.form_type {
        FormType::Exact => None,
        FormType::CoExact => Some(FormAtom {
            scalar: atom.scalar.clone(),
            degree: atom.degree + 1,
            form_type: FormType::Exact,
            family: atom.family,
        }),
    }
}

/// A weighted atom descriptor: `sign * |xi|^{weight_shift}` times the atom.
/// Not itself a frame atom; the weight records the departure.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAtom {
    pub atom: FormAtom,
    pub weight_shift: i8,
    pub sign: i8,
}

/// Hodge dual of an atom: the dual type (degree `n - r`, flipped kind,
/// flipped family where two exist) scaled by `sign |xi|^{weight_shift}`.
/// The sign is found by symbolic matching against the table.
pub fn hodge_atom(table: &FreqTable, atom: &FormAtom) -> WeightedAtom {
    let n = table.dim;
    let dual_key = TypeKey {
        degree: n - atom.degree,
        form_type: atom.form_type.flipped(),
        family: if family_count(n, atom.degree, atom.form_type) == 2 {
            3 - atom.family
        } else {
            1
        },
    };
    let starred = hodge(&atom.descriptor(table).symbolic(n));
    let dual = table.get(&dual_key).symbolic(n);
    let weight_shift = 2 * (dual_key.form_type.grade() as i8) - 1;
    for sign in [1i8, -1] {
        let candidate =
            dual.scaled(&Coeff::integer(sign as i64)).scaled(&Coeff::norm_pow(weight_shift));
        if candidate == starred {
            return WeightedAtom {
                atom: FormAtom {
                    scalar: atom.scalar.clone(),
                    degree: dual_key.degree,
                    form_type: dual_key.form_type,
                    family: dual_key.family,
                },
                weight_shift,
                sign,
            };
        }
    }
    unreachable!("hodge image not in the table, construction is broken");
}

/// Laplace-de Rham image: the same atom with a `+|xi|^2` radial weight
/// (the symbol is verified symbolically in the table tests).
pub fn laplacian_atom(atom: &FormAtom) -> WeightedAtom {
    WeightedAtom { atom: atom.clone(), weight_shift: 2, sign: 1 }
}

/// Derivative symbol applied to the atom's descriptor (used by integration
/// tests; construction already verifies the chain).
pub fn chain_image_symbolic(table: &FreqTable, atom: &FormAtom) -> SymbolicForm {
    exterior_derivative_freq(&atom.descriptor(table).symbolic(table.dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Monomial;

    fn atom(dim: u8, degree: u8, ft: FormType, family: u8) -> FormAtom {
        FormAtom::new(ScalarAtom::new(0, vec![0; dim as usize], 0), degree, ft, family)
    }

    #[test]
    fn chain_structure() {
        let a = atom(2, 0, FormType::CoExact, 1);
        let d = exterior_derivative_atom(&a).unwrap();
        assert_eq!(d.degree, 1);
        assert_eq!(d.form_type, FormType::Exact);
        assert!(exterior_derivative_atom(&d).is_none());
    }

    #[test]
    fn hodge_examples() {
        let t3 = FreqTable::build(3).unwrap();
        // co-exact 0-form maps to the weighted volume type with sign +1
        let h = hodge_atom(&t3, &atom(3, 0, FormType::CoExact, 1));
        assert_eq!(h.atom.degree, 3);
        assert_eq!(h.atom.form_type, FormType::Exact);
        assert_eq!(h.sign, 1);
        assert_eq!(h.weight_shift, -1);
        // family flip on the paired types
        let h2 = hodge_atom(&t3, &atom(3, 1, FormType::CoExact, 1));
        assert_eq!(h2.atom.degree, 2);
        assert_eq!(h2.atom.family, 2);
    }

    #[test]
    fn hodge_2d_pairs() {
        let t2 = FreqTable::build(2).unwrap();
        let h = hodge_atom(&t2, &atom(2, 1, FormType::Exact, 1));
        assert_eq!(h.atom.degree, 1);
        assert_eq!(h.atom.form_type, FormType::CoExact);
        assert_eq!(h.weight_shift, 1);
    }

    #[test]
    fn hodge_involution_sign() {
        // star star = (-1)^{r(n-r)} with the weights cancelling
        for dim in [2u8, 3] {
            let t = FreqTable::build(dim).unwrap();
            for key in super::super::table::type_keys(dim) {
                let a = atom(dim, key.degree, key.form_type, key.family);
                let h1 = hodge_atom(&t, &a);
                let h2 = hodge_atom(&t, &h1.atom);
                assert_eq!(h2.atom.key(), a.key());
                assert_eq!(h1.weight_shift + h2.weight_shift, 0, "{key:?}");
                let r = key.degree as i32;
                let want = if (r * (dim as i32 - r)) % 2 == 0 { 1 } else { -1 };
                assert_eq!((h1.sign * h2.sign) as i32, want, "{key:?}");
            }
        }
    }

    #[test]
    fn laplacian_keeps_type() {
        let l = laplacian_atom(&atom(3, 2, FormType::Exact, 2));
        assert_eq!(l.atom.key(), atom(3, 2, FormType::Exact, 2).key());
        assert_eq!(l.weight_shift, 2);
    }

    #[test]
    fn chain_image_shape() {
        let t3 = FreqTable::build(3).unwrap();
        let img = chain_image_symbolic(&t3, &atom(3, 1, FormType::CoExact, 2));
        // image is the (2, d, 2) descriptor: phi-monomial
        assert_eq!(img.terms.len(), 1);
        assert!(img.terms.contains_key(&Monomial::from_indices(&[1])));
    }
}
