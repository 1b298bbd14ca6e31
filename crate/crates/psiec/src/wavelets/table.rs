//! The frequency-domain table of differential r-form wavelet types.
//!
//! Each type `(r, nu, a)` pairs the scalar window with a unit phase, a
//! radial weight `|xi|^{-|nu|}`, and a monomial in the orthonormal spherical
//! frequency frame (radial vector last). The table is pinned by four
//! constraints, checked at construction:
//!   1. the interior product with `i xi` maps each co-exact type onto the
//!      exact type one degree up, with coefficient one, and annihilates
//!      exact types (tangential monomials);
//!   2. exact types are tangential, co-exact types carry the radial leg;
//!   3. co-exact types carry the `1/|xi|` weight so their graded Sobolev
//!      norm matches the image type's `L^2` norm;
//!   4. every type is real-valued in space, which forces the phase to be
//!      real or imaginary according to the antipodal parity of the monomial.

use crate::exterior::{exterior_derivative_freq, Coeff, Monomial, SpaceTag, SymbolicForm};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Exact (`d`) or co-exact (`delta`) type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormType {
    Exact,
    CoExact,
}

impl FormType {
    /// `|nu|`: the Sobolev grade of the type.
    pub fn grade(&self) -> u8 {
        match self {
            FormType::Exact => 0,
            FormType::CoExact => 1,
        }
    }

    pub fn flipped(&self) -> FormType {
        match self {
            FormType::Exact => FormType::CoExact,
            FormType::CoExact => FormType::Exact,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FormType::Exact => "d",
            FormType::CoExact => "delta",
        }
    }
}

/// Key of a wavelet type within one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeKey {
    pub degree: u8,
    pub form_type: FormType,
    /// 1-based family index within `A_{n,r,nu}`.
    pub family: u8,
}

/// Frequency descriptor of one wavelet type.
#[derive(Debug, Clone)]
pub struct FreqDescriptor {
    /// Radial weight power `q`: the descriptor carries `|xi|^{-q}`.
    pub weight_power: u8,
    /// Exact unit phase.
    pub phase: Coeff,
    /// Monomial in the spherical frequency frame, degree `n - r`.
    pub monomial: Monomial,
}

impl FreqDescriptor {
    /// The descriptor as a symbolic frequency form (weight included).
    pub fn symbolic(&self, dim: u8) -> SymbolicForm {
        let coeff = &self.phase * &Coeff::norm_pow(-(self.weight_power as i8));
        SymbolicForm::monomial(dim, SpaceTag::FreqSpherical, self.monomial, coeff)
    }
}

/// How many families a type has.
pub fn family_count(dim: u8, degree: u8, form_type: FormType) -> u8 {
    if dim == 3
        && ((degree == 1 && form_type == FormType::CoExact)
            || (degree == 2 && form_type == FormType::Exact))
    {
        2
    } else {
        1
    }
}

/// Types present in dimension `n`: degree 0 is co-exact only, degree `n`
/// exact only.
pub fn type_keys(dim: u8) -> Vec<TypeKey> {
    let mut keys = Vec::new();
    for degree in 0..=dim {
        for form_type in [FormType::Exact, FormType::CoExact] {
            if degree == 0 && form_type == FormType::Exact {
                continue;
            }
            if degree == dim && form_type == FormType::CoExact {
                continue;
            }
            for family in 1..=family_count(dim, degree, form_type) {
                keys.push(TypeKey { degree, form_type, family });
            }
        }
    }
    keys
}

/// The full table for one dimension.
#[derive(Debug, Clone)]
pub struct FreqTable {
    pub dim: u8,
    entries: BTreeMap<TypeKey, FreqDescriptor>,
}

/// Antipodal parity of a spherical-frame monomial: the sign its Cartesian
/// minor functions pick up under `omega -> -omega`.
fn monomial_parity(dim: u8, mono: Monomial) -> i8 {
    // leg parities: 2D (tangent, radial) both odd; 3D theta even, phi and
    // radial odd
    let leg = |i: u8| -> i8 {
        if dim == 2 {
            -1
        } else if i == 0 {
            1
        } else {
            -1
        }
    };
    mono.indices().iter().map(|&i| leg(i)).product()
}

impl FreqTable {
    pub fn build(dim: u8) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let volume = Monomial::full(dim);
        match dim {
            2 => {
                // anchored entries; tangent index 0, radial index 1
                entries.insert(
                    TypeKey { degree: 0, form_type: FormType::CoExact, family: 1 },
                    FreqDescriptor { weight_power: 1, phase: Coeff::one(), monomial: volume },
                );
                entries.insert(
                    TypeKey { degree: 1, form_type: FormType::Exact, family: 1 },
                    FreqDescriptor {
                        weight_power: 0,
                        phase: Coeff::i(),
                        monomial: Monomial::from_indices(&[0]),
                    },
                );
                entries.insert(
                    TypeKey { degree: 1, form_type: FormType::CoExact, family: 1 },
                    FreqDescriptor {
                        weight_power: 1,
                        phase: Coeff::i(),
                        monomial: Monomial::from_indices(&[1]),
                    },
                );
                entries.insert(
                    TypeKey { degree: 2, form_type: FormType::Exact, family: 1 },
                    FreqDescriptor {
                        weight_power: 0,
                        phase: Coeff::one(),
                        monomial: Monomial::EMPTY,
                    },
                );
            }
            3 => {
                // frame order (theta, phi, radial)
                entries.insert(
                    TypeKey { degree: 0, form_type: FormType::CoExact, family: 1 },
                    FreqDescriptor { weight_power: 1, phase: Coeff::one(), monomial: volume },
                );
                entries.insert(
                    TypeKey { degree: 1, form_type: FormType::Exact, family: 1 },
                    FreqDescriptor {
                        weight_power: 0,
                        phase: Coeff::i(),
                        monomial: Monomial::from_indices(&[0, 1]),
                    },
                );
                entries.insert(
                    TypeKey { degree: 1, form_type: FormType::CoExact, family: 1 },
                    FreqDescriptor {
                        weight_power: 1,
                        phase: Coeff::i(),
                        monomial: Monomial::from_indices(&[0, 2]),
                    },
                );
                entries.insert(
                    TypeKey { degree: 1, form_type: FormType::CoExact, family: 2 },
                    FreqDescriptor {
                        weight_power: 1,
                        phase: -Coeff::one(),
                        monomial: Monomial::from_indices(&[1, 2]),
                    },
                );
                entries.insert(
                    TypeKey { degree: 2, form_type: FormType::Exact, family: 1 },
                    FreqDescriptor {
                        weight_power: 0,
                        phase: Coeff::one(),
                        monomial: Monomial::from_indices(&[0]),
                    },
                );
                entries.insert(
                    TypeKey { degree: 2, form_type: FormType::Exact, family: 2 },
                    FreqDescriptor {
                        weight_power: 0,
                        phase: Coeff::i(),
                        monomial: Monomial::from_indices(&[1]),
                    },
                );
                entries.insert(
                    TypeKey { degree: 2, form_type: FormType::CoExact, family: 1 },
                    FreqDescriptor {
                        weight_power: 1,
                        phase: -Coeff::i(),
                        monomial: Monomial::from_indices(&[2]),
                    },
                );
                entries.insert(
                    TypeKey { degree: 3, form_type: FormType::Exact, family: 1 },
                    FreqDescriptor { weight_power: 0, phase: Coeff::one(), monomial: Monomial::EMPTY },
                );
            }
            _ => return Err(Error::Degree(format!("dimension {dim} unsupported"))),
        }
        let table = FreqTable { dim, entries };
        table.verify()?;
        Ok(table)
    }

    pub fn get(&self, key: &TypeKey) -> &FreqDescriptor {
        self.entries
            .get(key)
            .unwrap_or_else(|| panic!("no table entry for {key:?} in dim {}", self.dim))
    }

    pub fn keys(&self) -> impl Iterator<Item = &TypeKey> {
        self.entries.keys()
    }

    /// Checks the four construction constraints.
    fn verify(&self) -> Result<()> {
        let radial_leg = self.dim - 1;
        for (key, desc) in &self.entries {
            if desc.monomial.degree() != self.dim - key.degree {
                return Err(Error::TableConstruction(format!(
                    "{key:?}: monomial degree mismatch"
                )));
            }
            // tangential / radial split
            let has_radial = desc.monomial.contains(radial_leg);
            match key.form_type {
                FormType::Exact if has_radial => {
                    return Err(Error::TableConstruction(format!("{key:?}: exact with radial leg")))
                }
                FormType::CoExact if !has_radial => {
                    return Err(Error::TableConstruction(format!(
                        "{key:?}: co-exact without radial leg"
                    )))
                }
                _ => {}
            }
            // Sobolev weight
            if desc.weight_power != key.form_type.grade() {
                return Err(Error::TableConstruction(format!("{key:?}: wrong weight")));
            }
            // realness: real phase for even monomials, imaginary for odd
            let parity = monomial_parity(self.dim, desc.monomial);
            let (re, im) = desc
                .phase
                .as_constant()
                .ok_or_else(|| Error::TableConstruction(format!("{key:?}: non-unit phase")))?;
            let re0 = *re.numer() == 0;
            let im0 = *im.numer() == 0;
            let ok = (parity == 1 && !re0 && im0) || (parity == -1 && re0 && !im0);
            if !ok {
                return Err(Error::TableConstruction(format!(
                    "{key:?}: phase violates spatial realness"
                )));
            }
            // chain map under the derivative symbol of the dimension
            let image = exterior_derivative_freq(&desc.symbolic(self.dim));
            match key.form_type {
                FormType::Exact => {
                    if !image.is_zero() {
                        return Err(Error::TableConstruction(format!(
                            "{key:?}: exact type not annihilated"
                        )));
                    }
                }
                FormType::CoExact => {
                    let target = TypeKey {
                        degree: key.degree + 1,
                        form_type: FormType::Exact,
                        family: key.family,
                    };
                    let expect = self.get(&target).symbolic(self.dim);
                    if image != expect {
                        return Err(Error::TableConstruction(format!(
                            "{key:?}: chain image does not match {target:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
