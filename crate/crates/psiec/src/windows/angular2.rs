//! Angular localization in the plane: Fourier-series windows per level and
//! orientation, with the orientation-matrix admissibility check.
//!
//! Real-valued wavelets in space need antipodally even windows, so only even
//! harmonics are populated.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Kind of 2D angular window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Angular2Kind {
    /// `beta_n = delta_{n0}`, one orientation.
    Isotropic,
    /// `cos^{2p}` window about the orientation axis; harmonics `|n| <= 2p`.
    CosPower { power: u32 },
}

/// Per-level angular window set in 2D.
///
/// Orientation `t` carries coefficients `beta_n^t = beta_n e^{-i n t 2 pi / T}`.
#[derive(Debug, Clone)]
pub struct AngularWindow2 {
    /// Mother coefficients `beta_n` for `n in [-max_harmonic, max_harmonic]`.
    beta: Vec<Complex64>,
    pub max_harmonic: i32,
    pub orientations: usize,
}

impl AngularWindow2 {
    pub fn isotropic() -> Self {
        AngularWindow2 { beta: vec![Complex64::new(1.0, 0.0)], max_harmonic: 0, orientations: 1 }
    }

    /// `cos^{2p}` window, normalized so the orientation sum is admissible
    /// with `T = 4p + 1` orientations.
    pub fn cos_power(power: u32) -> Self {
        let n_max = 2 * power as i32;
        let orientations = (2 * n_max + 1) as usize;
        let mut beta = vec![Complex64::default(); (2 * n_max + 1) as usize];
        // cos^{2p} t = 2^{-2p} sum_k C(2p, k) e^{i (2k - 2p) t}
        let tp = 2 * power;
        let mut binom = vec![0.0_f64; (tp + 1) as usize];
        binom[0] = 1.0;
        for i in 1..=tp as usize {
            for j in (1..=i).rev() {
                binom[j] += binom[j - 1];
            }
        }
        let scale = 0.5_f64.powi(tp as i32);
        for k in 0..=tp as usize {
            let n = 2 * k as i32 - tp as i32;
            beta[(n + n_max) as usize] = Complex64::new(scale * binom[k], 0.0);
        }
        let mut w = AngularWindow2 { beta, max_harmonic: n_max, orientations };
        w.normalize();
        w
    }

    /// Window from raw coefficients (odd-length, centered), one orientation.
    pub fn from_coefficients(beta: Vec<Complex64>) -> Self {
        assert!(beta.len() % 2 == 1, "coefficients must span [-N, N]");
        let n_max = (beta.len() / 2) as i32;
        AngularWindow2 { beta, max_harmonic: n_max, orientations: 1 }
    }

    pub fn from_kind(kind: Angular2Kind) -> Self {
        match kind {
            Angular2Kind::Isotropic => Self::isotropic(),
            Angular2Kind::CosPower { power } => Self::cos_power(power),
        }
    }

    /// Scales so that `T sum_n |beta_n|^2 = 1` (unit orientation-matrix trace).
    pub fn normalize(&mut self) {
        let e: f64 = self.beta.iter().map(|b| b.norm_sqr()).sum();
        let s = 1.0 / (e * self.orientations as f64).sqrt();
        for b in self.beta.iter_mut() {
            *b *= s;
        }
    }

    pub fn beta(&self, n: i32) -> Complex64 {
        if n.abs() > self.max_harmonic {
            Complex64::default()
        } else {
            self.beta[(n + self.max_harmonic) as usize]
        }
    }

    /// Coefficient of orientation `t`.
    pub fn beta_oriented(&self, n: i32, t: usize) -> Complex64 {
        let rot = -(n as f64) * self.angle(t);
        self.beta(n) * Complex64::from_polar(1.0, rot)
    }

    pub fn angle(&self, t: usize) -> f64 {
        2.0 * std::f64::consts::PI * t as f64 / self.orientations as f64
    }

    /// Window value `sum_n beta_n^t e^{i n theta}`.
    pub fn eval(&self, t: usize, theta: f64) -> Complex64 {
        let mut acc = Complex64::default();
        for n in -self.max_harmonic..=self.max_harmonic {
            acc += self.beta_oriented(n, t) * Complex64::from_polar(1.0, n as f64 * theta);
        }
        acc
    }

    /// Applies a global rotation to every orientation.
    pub fn rotated(&self, angle: f64) -> Self {
        let mut out = self.clone();
        for n in -self.max_harmonic..=self.max_harmonic {
            out.beta[(n + self.max_harmonic) as usize] =
                self.beta(n) * Complex64::from_polar(1.0, -(n as f64) * angle);
        }
        out
    }
}

/// Diagnostics of the 2D admissibility check.
#[derive(Debug, Clone)]
pub struct Admissibility2 {
    pub pass: bool,
    /// Largest off-diagonal entry of `U^H U`.
    pub max_off_diagonal: f64,
    /// `|tr(U^H U) - 1|`.
    pub trace_deviation: f64,
    /// Harmonic pair of the worst off-diagonal entry.
    pub worst_pair: Option<(i32, i32)>,
}

/// Checks that the orientation matrix `U_{t,n} = beta_n^t` has diagonal
/// `U^H U` with unit trace.
pub fn admissibility_2d(window: &AngularWindow2, tol: f64) -> Admissibility2 {
    let nm = window.max_harmonic;
    let mut max_off = 0.0_f64;
    let mut worst = None;
    let mut trace = 0.0_f64;
    for n1 in -nm..=nm {
        for n2 in -nm..=nm {
            let mut acc = Complex64::default();
            for t in 0..window.orientations {
                acc += window.beta_oriented(n1, t).conj() * window.beta_oriented(n2, t);
            }
            if n1 == n2 {
                trace += acc.re;
            } else if acc.norm() > max_off {
                max_off = acc.norm();
                worst = Some((n1, n2));
            }
        }
    }
    let trace_dev = (trace - 1.0).abs();
    Admissibility2 {
        pass: max_off <= tol && trace_dev <= tol,
        max_off_diagonal: max_off,
        trace_deviation: trace_dev,
        worst_pair: if max_off > tol { worst } else { None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn isotropic_passes() {
        let w = AngularWindow2::isotropic();
        let d = admissibility_2d(&w, 1e-12);
        assert!(d.pass, "{d:?}");
    }

    #[test]
    fn cos_power_window_passes() {
        // N = 2 harmonics, T = 5 orientations
        let w = AngularWindow2::cos_power(1);
        assert_eq!(w.max_harmonic, 2);
        assert_eq!(w.orientations, 5);
        let d = admissibility_2d(&w, 1e-12);
        assert!(d.pass, "{d:?}");
    }

    #[test]
    fn too_few_orientations_fail_off_diagonal() {
        let mut w = AngularWindow2::cos_power(1);
        w.orientations = 2;
        w.normalize();
        let d = admissibility_2d(&w, 1e-12);
        assert!(!d.pass);
        assert!(d.max_off_diagonal > 1e-3);
        assert!(d.worst_pair.is_some());
    }

    #[test]
    fn unnormalized_fails_trace() {
        let mut w = AngularWindow2::cos_power(1);
        for n in -w.max_harmonic..=w.max_harmonic {
            let i = (n + w.max_harmonic) as usize;
            w.beta[i] *= 2.0;
        }
        let d = admissibility_2d(&w, 1e-12);
        assert!(!d.pass);
        assert_abs_diff_eq!(d.trace_deviation, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn window_is_real_on_grid() {
        let w = AngularWindow2::cos_power(2);
        for t in 0..w.orientations {
            for i in 0..64 {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / 64.0;
                assert!(w.eval(t, theta).im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn orientation_sum_resolves_identity_pointwise() {
        // sum_t |gamma_t(theta)|^2 = 1 for an admissible set
        let w = AngularWindow2::cos_power(2);
        for i in 0..97 {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / 97.0;
            let s: f64 = (0..w.orientations).map(|t| w.eval(t, theta).norm_sqr()).sum();
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rotation_preserves_admissibility() {
        let w = AngularWindow2::cos_power(1).rotated(0.37);
        let d = admissibility_2d(&w, 1e-12);
        assert!(d.pass, "{d:?}");
    }

    #[test]
    fn only_even_harmonics() {
        let w = AngularWindow2::cos_power(2);
        for n in -w.max_harmonic..=w.max_harmonic {
            if n % 2 != 0 {
                assert_eq!(w.beta(n).norm(), 0.0);
            }
        }
    }
}
