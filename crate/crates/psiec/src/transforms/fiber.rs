//! Fiber integration: integrating a 3D form wavelet along a lattice axis
//! yields a 2D form wavelet whose angular window is the restriction of the
//! 3D one to the orthogonal frequency plane.

use crate::specfun::normalized_assoc_legendre_all;
use crate::wavelets::{FormAtom, FormContext, FormType};
use crate::windows::AngularWindow2;
use crate::{Error, Result};
use num_complex::Complex64;

/// Parameters of the restricted 2D atom produced by integrating a 3D atom
/// along the `x3` axis.
#[derive(Debug, Clone)]
pub struct RestrictedAtom {
    /// Angular coefficients of the restricted window (already scaled by the
    /// level and transform constants, relative to the plain 2D conventions).
    pub beta: Vec<Complex64>,
    pub max_harmonic: i32,
    /// Level carried over from the 3D atom.
    pub level: i32,
    /// In-plane translation (the `x3` shift integrates out).
    pub shift: [i32; 2],
    /// Degree and type of the restricted atom.
    pub degree: u8,
    pub form_type: FormType,
}

impl RestrictedAtom {
    /// The restricted window as a single-orientation 2D angular window.
    pub fn window(&self) -> AngularWindow2 {
        AngularWindow2::from_coefficients(self.beta.clone())
    }
}

/// Restriction of a co-exact 2-form atom along the third axis:
/// `beta_m = -2^{-j/2} sum_l kappa_lm Nbar_l^m(0)`.
///
/// Only the radial-monomial types restrict within this table; the degree
/// must be at least one and the axis a lattice axis (rotate the window first
/// for a general direction).
pub fn fiber_integrate(ctx: &FormContext, atom: &FormAtom) -> Result<RestrictedAtom> {
    if ctx.dim() != 3 {
        return Err(Error::Degree("fiber integration starts from 3D atoms".into()));
    }
    if atom.degree == 0 {
        return Err(Error::Degree(
            "a 0-form has nothing to pair with the fiber tangent".into(),
        ));
    }
    if !(atom.degree == 2 && atom.form_type == FormType::CoExact) {
        return Err(Error::Degree(
            "restriction is implemented for the radial co-exact 2-form type".into(),
        ));
    }
    let w3 = match &ctx.scalar.windows {
        crate::polarlet::Windows::Three(w) => w,
        _ => unreachable!(),
    };
    let lmax = w3.angular.max_degree;
    let leg0 = normalized_assoc_legendre_all(lmax, 0.0);
    let nm = lmax as i32;
    let mut beta = vec![Complex64::default(); (2 * nm + 1) as usize];
    let scale = -(2.0_f64.powf(-(atom.scalar.level_eff() as f64) / 2.0));
    for m in -nm..=nm {
        let mut acc = Complex64::default();
        for l in (m.unsigned_abs()..=lmax).step_by(1) {
            let kap = w3.angular.kappa(atom.scalar.orient, l, m);
            if kap.norm_sqr() == 0.0 {
                continue;
            }
            let ma = m.unsigned_abs() as usize;
            let mut nb = leg0[l as usize][ma];
            if m < 0 && ma % 2 == 1 {
                nb = -nb;
            }
            acc += kap * nb;
        }
        beta[(m + nm) as usize] = scale * acc;
    }
    Ok(RestrictedAtom {
        beta,
        max_harmonic: nm,
        level: atom.scalar.level,
        shift: [atom.scalar.shift[0], atom.scalar.shift[1]],
        degree: atom.degree - 1,
        form_type: atom.form_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarlet::ScalarAtom;
    use crate::windows::{Angular2Kind, Angular3Kind, RadialWindowKind, WindowConfig};

    #[test]
    fn isotropic_restricts_to_single_term() {
        let cfg = WindowConfig {
            radial: RadialWindowKind::Smooth,
            angular2d: Angular2Kind::Isotropic,
            angular3d: Angular3Kind::Isotropic,
        };
        let ctx = FormContext::new(&cfg, 3).unwrap();
        let atom = FormAtom::new(
            ScalarAtom::new(0, vec![0, 0, 0], 0),
            2,
            FormType::CoExact,
            1,
        );
        let r = fiber_integrate(&ctx, &atom).unwrap();
        assert_eq!(r.max_harmonic, 0);
        assert_eq!(r.beta.len(), 1);
        // kappa_00 Nbar_0^0(0) = sqrt(4 pi) / sqrt(4 pi) = 1, scaled by -1
        assert!((r.beta[0].re + 1.0).abs() < 1e-12, "{:?}", r.beta[0]);
    }

    #[test]
    fn degree_zero_rejected() {
        let cfg = WindowConfig {
            radial: RadialWindowKind::Smooth,
            angular2d: Angular2Kind::Isotropic,
            angular3d: Angular3Kind::Isotropic,
        };
        let ctx = FormContext::new(&cfg, 3).unwrap();
        let atom = FormAtom::new(
            ScalarAtom::new(0, vec![0, 0, 0], 0),
            0,
            FormType::CoExact,
            1,
        );
        assert!(fiber_integrate(&ctx, &atom).is_err());
    }

    #[test]
    fn restricted_window_keeps_even_harmonics() {
        let cfg = WindowConfig {
            radial: RadialWindowKind::Smooth,
            angular2d: Angular2Kind::Isotropic,
            angular3d: Angular3Kind::CosPower { power: 1 },
        };
        let ctx = FormContext::new(&cfg, 3).unwrap();
        let atom = FormAtom::new(
            ScalarAtom::new(1, vec![0, 0, 0], 3),
            2,
            FormType::CoExact,
            1,
        );
        let r = fiber_integrate(&ctx, &atom).unwrap();
        for m in -r.max_harmonic..=r.max_harmonic {
            if m % 2 != 0 {
                assert!(r.beta[(m + r.max_harmonic) as usize].norm() < 1e-14);
            }
        }
    }
}
