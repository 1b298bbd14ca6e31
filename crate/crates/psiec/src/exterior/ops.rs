//! Frequency-domain operators on symbolic forms: the Fourier transform of
//! the form bases, interior product with `i xi`, Hodge dual, codifferential,
//! and the Laplace-de Rham symbol.

use super::coeff::Coeff;
use super::form::{MixedForm, Monomial, SpaceTag, SymbolicForm};

/// Expansion of the form-basis exponential `sum_a (e_q (x) f_q)^a / a!`
/// truncated at degree `n` (higher powers vanish).
pub fn form_basis_exponential(dim: u8) -> MixedForm {
    let mut linear = MixedForm::zero(dim);
    for q in 0..dim {
        let m = Monomial::from_indices(&[q]);
        linear.add_term(m, m, Coeff::one());
    }
    let mut total = MixedForm::unit(dim);
    let mut power = MixedForm::unit(dim);
    let mut factorial = 1i64;
    for a in 1..=dim as i64 {
        power = power.wedge(&linear);
        factorial *= a;
        total = total.plus(&power.scaled(1, factorial));
    }
    total
}

/// Fourier transform of a spatial form via the exponential expansion: keep
/// the terms whose spatial part completes to the volume form.
pub fn ft_form(form: &SymbolicForm) -> SymbolicForm {
    assert_eq!(form.tag, SpaceTag::SpatialX);
    let n = form.dim;
    let exp = form_basis_exponential(n);
    let full = Monomial::full(n);
    let mut out = SymbolicForm::zero(n, SpaceTag::FreqCartesian);
    for (mx, c) in &form.terms {
        for ((ex, exi), ec) in &exp.terms {
            if let Some((sign, merged)) = mx.wedge(ex) {
                if merged == full {
                    out.add_term(*exi, (c * ec).scaled(sign as i64, 1));
                }
            }
        }
    }
    out
}

/// Inverse Fourier transform via the mirrored expansion (frequency slot
/// first, global minus sign).
pub fn ift_form(form: &SymbolicForm) -> SymbolicForm {
    assert_eq!(form.tag, SpaceTag::FreqCartesian);
    let n = form.dim;
    let exp = form_basis_exponential(n);
    let full = Monomial::full(n);
    let mut out = SymbolicForm::zero(n, SpaceTag::SpatialX);
    for (mxi, c) in &form.terms {
        for ((exi, ex), ec) in &exp.terms {
            if let Some((sign, merged)) = mxi.wedge(exi) {
                if merged == full {
                    out.add_term(*ex, (c * ec).scaled(-(sign as i64), 1));
                }
            }
        }
    }
    out
}

/// Closed-form image of one spatial basis monomial: complement monomial with
/// sign `(-1)^{(n-r)(n-r-1)/2} sgn(sigma)`.
pub fn ft_basis(dim: u8, mono: Monomial) -> (i8, Monomial) {
    let r = mono.degree();
    let k = (dim - r) as i32;
    let swap_sign = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
    (swap_sign * mono.complement_sign(dim), mono.complement(dim))
}

/// Interior product with the frequency position vector `i xi` (the exterior
/// derivative under the Fourier transform). In the Cartesian basis every leg
/// contracts against `i xi_p`; in the spherical frame only the radial leg
/// survives and contributes `i |xi|`.
pub fn interior_xi(form: &SymbolicForm) -> SymbolicForm {
    let n = form.dim;
    let mut out = SymbolicForm::zero(n, form.tag);
    match form.tag {
        SpaceTag::SpatialX => panic!("interior_xi acts on frequency forms"),
        SpaceTag::FreqCartesian => {
            for (m, c) in &form.terms {
                for p in m.indices() {
                    let (sign, rest) = m.remove(p);
                    let factor = &Coeff::i() * &Coeff::xi(p as usize);
                    out.add_term(rest, (c * &factor).scaled(sign as i64, 1));
                }
            }
        }
        SpaceTag::FreqSpherical => {
            let radial = n - 1;
            for (m, c) in &form.terms {
                if m.contains(radial) {
                    let (sign, rest) = m.remove(radial);
                    let factor = &Coeff::i() * &Coeff::norm_pow(1);
                    out.add_term(rest, (c * &factor).scaled(sign as i64, 1));
                }
            }
        }
    }
    out
}

/// Euclidean Hodge dual in the basis order of the tag (all three bases are
/// treated as oriented orthonormal frames).
pub fn hodge(form: &SymbolicForm) -> SymbolicForm {
    let n = form.dim;
    let mut out = SymbolicForm::zero(n, form.tag);
    for (m, c) in &form.terms {
        let sign = m.complement_sign(n);
        out.add_term(m.complement(n), c.scaled(sign as i64, 1));
    }
    out
}

/// Dimension sign relating the exterior-derivative symbol to the interior
/// product under the tabulated form-basis transform: `dhat = eps_n i_{i xi}`
/// with `eps_2 = -1` and `eps_3 = +1`. (Checked against the transform of
/// coordinate derivatives degree by degree.)
pub fn derivative_sign(dim: u8) -> i64 {
    if dim == 2 {
        -1
    } else {
        1
    }
}

/// Symbol of the exterior derivative on frequency forms.
pub fn exterior_derivative_freq(form: &SymbolicForm) -> SymbolicForm {
    interior_xi(form).scaled(&Coeff::integer(derivative_sign(form.dim)))
}

/// Codifferential in frequency space,
/// `(-1)^{n (rho + 1) + 1} hodge(interior_xi(hodge(.)))` where `rho` is the
/// spatial degree of the form acted on (`rho = n - frequency degree`). The
/// prefactor matches the spatial codifferential sign once the derivative
/// sign above is accounted for; it is pinned by `delta delta = 0` and the
/// Laplace-de Rham symbol `+|xi|^2`, both checked exhaustively in tests.
pub fn codifferential(form: &SymbolicForm) -> SymbolicForm {
    if form.is_zero() {
        return SymbolicForm::zero(form.dim, form.tag);
    }
    let freq_deg = form
        .degree()
        .expect("codifferential requires a homogeneous form");
    let n = form.dim as i32;
    let rho = n - freq_deg as i32;
    let s = if (n * (rho + 1) + 1) % 2 == 0 { 1 } else { -1 };
    hodge(&interior_xi(&hodge(form))).scaled(&Coeff::integer(s))
}

/// `d delta + delta d` on a frequency form.
pub fn laplace_symbol(form: &SymbolicForm) -> SymbolicForm {
    let a = exterior_derivative_freq(&codifferential(form));
    let b = codifferential(&exterior_derivative_freq(form));
    a.plus(&b)
}
