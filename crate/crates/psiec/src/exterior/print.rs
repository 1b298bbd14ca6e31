//! Deterministic plain-text rendering of symbolic forms, used by the
//! `tables` command. Monomials print in bitset order, coefficients in key
//! order, so output is byte-identical across runs.

use super::coeff::Coeff;
use super::form::{Monomial, SpaceTag, SymbolicForm};
use std::fmt::Write;

fn basis_names(tag: SpaceTag, dim: u8) -> Vec<String> {
    match tag {
        SpaceTag::SpatialX => (1..=dim).map(|i| format!("dx{i}")).collect(),
        SpaceTag::FreqCartesian => (1..=dim).map(|i| format!("Dxi{i}")).collect(),
        SpaceTag::FreqSpherical => {
            if dim == 2 {
                vec!["Dth".into(), "Dr".into()]
            } else {
                vec!["Dth".into(), "Dph".into(), "Dr".into()]
            }
        }
    }
}

pub fn format_monomial(tag: SpaceTag, dim: u8, mono: Monomial) -> String {
    if mono == Monomial::EMPTY {
        return "1".into();
    }
    let names = basis_names(tag, dim);
    mono.indices().iter().map(|&i| names[i as usize].clone()).collect::<Vec<_>>().join("^")
}

pub fn format_coeff(c: &Coeff) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (key, (re, im)) in c.terms() {
        let mut s = String::new();
        let re_zero = *re.numer() == 0;
        let im_zero = *im.numer() == 0;
        if !re_zero && !im_zero {
            write!(s, "({re}{}{}i)", if *im.numer() >= 0 { "+" } else { "" }, im).unwrap();
        } else if !re_zero {
            write!(s, "{re}").unwrap();
        } else {
            match (*im.numer(), *im.denom()) {
                (1, 1) => s.push('i'),
                (-1, 1) => s.push_str("-i"),
                _ => write!(s, "{im}i").unwrap(),
            }
        }
        for (p, &e) in key.xi_exp.iter().enumerate() {
            if e == 1 {
                write!(s, " xi{}", p + 1).unwrap();
            } else if e > 1 {
                write!(s, " xi{}^{}", p + 1, e).unwrap();
            }
        }
        if key.norm_pow != 0 {
            if key.norm_pow == 1 {
                s.push_str(" |xi|");
            } else {
                write!(s, " |xi|^{}", key.norm_pow).unwrap();
            }
        }
        if let Some(id) = key.sym {
            write!(s, " f{}", id + 1).unwrap();
        }
        parts.push(s);
    }
    parts.join(" + ")
}

pub fn format_form(form: &SymbolicForm) -> String {
    if form.is_zero() {
        return "0".into();
    }
    form.terms
        .iter()
        .map(|(m, c)| {
            let cs = format_coeff(c);
            let ms = format_monomial(form.tag, form.dim, *m);
            if ms == "1" {
                cs
            } else if cs == "1" {
                ms
            } else if cs == "-1" {
                format!("-{ms}")
            } else {
                format!("({cs}) {ms}")
            }
        })
        .collect::<Vec<_>>()
        .join("  +  ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::coeff::Coeff;

    #[test]
    fn deterministic_rendering() {
        let mut f = SymbolicForm::zero(3, SpaceTag::FreqSpherical);
        f.add_term(Monomial::from_indices(&[0, 2]), &Coeff::i() * &Coeff::norm_pow(-1));
        f.add_term(Monomial::from_indices(&[1]), Coeff::integer(-1));
        let s = format_form(&f);
        assert_eq!(s, "-Dph  +  (i |xi|^-1) Dth^Dr");
    }
}
