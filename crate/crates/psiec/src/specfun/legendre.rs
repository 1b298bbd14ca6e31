//! Orthonormal complex spherical harmonics.
//!
//! `y_lm(theta, phi) = Nbar_l^m(cos theta) e^{i m phi}` with the fully
//! normalized associated Legendre functions `Nbar` (Condon-Shortley phase
//! included), orthonormal under the `S^2` measure `sin(theta) dtheta dphi`.

use num_complex::Complex64;

/// Index of a spherical harmonic, `l >= 0`, `|m| <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphIndex {
    pub l: u32,
    pub m: i32,
}

impl SphIndex {
    pub fn new(l: u32, m: i32) -> Self {
        assert!(m.unsigned_abs() <= l, "|m| <= l required");
        SphIndex { l, m }
    }
    /// Flat index into an `(L+1)^2` coefficient vector.
    pub fn flat(&self) -> usize {
        (self.l * self.l) as usize + (self.l as i32 + self.m) as usize
    }
}

/// All fully normalized `Nbar_l^m(x)` for `0 <= m <= l <= lmax` at `x = cos(theta)`.
///
/// Layout: `out[l][m]`. Stable to high degree.
pub fn normalized_assoc_legendre_all(lmax: u32, x: f64) -> Vec<Vec<f64>> {
    let lmax = lmax as usize;
    let mut p = vec![Vec::new(); lmax + 1];
    for (l, row) in p.iter_mut().enumerate() {
        row.resize(l + 1, 0.0);
    }
    let s = (1.0 - x * x).max(0.0).sqrt();
    p[0][0] = (1.0 / (4.0 * std::f64::consts::PI)).sqrt();
    // diagonal: Nbar_m^m, Condon-Shortley sign
    for m in 1..=lmax {
        let f = -((2.0 * m as f64 + 1.0) / (2.0 * m as f64)).sqrt();
        p[m][m] = f * s * p[m - 1][m - 1];
    }
    // first off-diagonal
    for m in 0..lmax {
        p[m + 1][m] = (2.0 * m as f64 + 3.0).sqrt() * x * p[m][m];
    }
    // upward in l
    for m in 0..=lmax {
        for l in (m + 2)..=lmax {
            let lf = l as f64;
            let mf = m as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((2.0 * lf + 1.0) * ((lf - 1.0) * (lf - 1.0) - mf * mf))
                / ((2.0 * lf - 3.0) * (lf * lf - mf * mf)))
                .sqrt();
            p[l][m] = a * x * p[l - 1][m] - b * p[l - 2][m];
        }
    }
    p
}

/// `Nbar_l^m` extended to negative orders, `Nbar_l^{-m} = (-1)^m Nbar_l^m`.
pub fn normalized_assoc_legendre(l: u32, m: i32, x: f64) -> f64 {
    let table = normalized_assoc_legendre_all(l, x);
    let ma = m.unsigned_abs() as usize;
    let v = table[l as usize][ma];
    if m < 0 && ma % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Orthonormal complex spherical harmonic `y_lm(theta, phi)`.
pub fn sph_harm(idx: SphIndex, theta: f64, phi: f64) -> Complex64 {
    let nb = normalized_assoc_legendre(idx.l, idx.m, theta.cos());
    nb * Complex64::from_polar(1.0, idx.m as f64 * phi)
}

/// All `y_lm` with `l <= lmax` at one direction, flat `(L+1)^2` layout.
pub fn sph_harm_all(lmax: u32, theta: f64, phi: f64) -> Vec<Complex64> {
    let tab = normalized_assoc_legendre_all(lmax, theta.cos());
    let mut out = vec![Complex64::default(); ((lmax + 1) * (lmax + 1)) as usize];
    for l in 0..=lmax {
        for m in -(l as i32)..=(l as i32) {
            let ma = m.unsigned_abs() as usize;
            let mut v = tab[l as usize][ma];
            if m < 0 && ma % 2 == 1 {
                v = -v;
            }
            out[SphIndex::new(l, m).flat()] = v * Complex64::from_polar(1.0, m as f64 * phi);
        }
    }
    out
}

/// Zonal rotation coefficient: rotating a zonal `y_{l0}` profile so its pole
/// points at `lambda = (theta, phi)` multiplies the `(l, m)` coefficient by
/// `sqrt(4 pi / (2l+1)) y_lm^*(lambda)`.
pub fn wigner_zonal(l: u32, m: i32, lambda_theta: f64, lambda_phi: f64) -> Complex64 {
    let c = (4.0 * std::f64::consts::PI / (2.0 * l as f64 + 1.0)).sqrt();
    c * sph_harm(SphIndex::new(l, m), lambda_theta, lambda_phi).conj()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Newton from the Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            let (p, dp) = legendre_pn(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pn(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_pn(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0_f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Quadrature rule over `S^2`, exact for integrands of harmonic degree
/// `<= deg`: Gauss-Legendre in `cos(theta)` times uniform trapezoid in `phi`.
pub struct SphereQuadrature {
    /// (theta, phi, weight) triples; weights sum to `4 pi`.
    pub nodes: Vec<(f64, f64, f64)>,
}

impl SphereQuadrature {
    pub fn with_degree(deg: u32) -> Self {
        let n_theta = (deg as usize) / 2 + 2;
        let n_phi = deg as usize + 2;
        let (xs, ws) = gauss_legendre(n_theta);
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        for (x, w) in xs.iter().zip(ws.iter()) {
            let theta = x.acos();
            for k in 0..n_phi {
                nodes.push((theta, k as f64 * dphi, w * dphi));
            }
        }
        SphereQuadrature { nodes }
    }

    pub fn integrate<F: Fn(f64, f64) -> Complex64>(&self, f: F) -> Complex64 {
        let mut acc = Complex64::default();
        for &(t, p, w) in &self.nodes {
            acc += w * f(t, p);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    #[test]
    fn y00_is_constant() {
        let v = sph_harm(SphIndex::new(0, 0), 0.7, 1.3);
        assert_abs_diff_eq!(v.re, 1.0 / (4.0 * std::f64::consts::PI).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn y32_normalized_by_quadrature_oracle() {
        // Gauss-Legendre x trapezoid oracle for the S^2 norm
        let q = SphereQuadrature::with_degree(8);
        let n = q.integrate(|t, p| {
            let y = sph_harm(SphIndex::new(3, 2), t, p);
            y * y.conj()
        });
        assert_abs_diff_eq!(n.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(n.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn orthonormality_sample() {
        let q = SphereQuadrature::with_degree(10);
        let pairs = [((2, 1), (2, 1), 1.0), ((2, 1), (3, 1), 0.0), ((4, -2), (4, 2), 0.0)];
        for ((l1, m1), (l2, m2), want) in pairs {
            let v = q.integrate(|t, p| {
                sph_harm(SphIndex::new(l1, m1), t, p) * sph_harm(SphIndex::new(l2, m2), t, p).conj()
            });
            assert_abs_diff_eq!(v.re, want, epsilon = 1e-12);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn addition_theorem_l2() {
        // sum_m y_lm(w) y_lm^*(w) = (2l+1)/(4 pi)
        for &(t, p) in &[(0.3, 1.0), (1.9, 4.2), (2.8, 0.1)] {
            let mut acc = Complex64::default();
            for m in -2..=2 {
                let y = sph_harm(SphIndex::new(2, m), t, p);
                acc += y * y.conj();
            }
            assert_abs_diff_eq!(acc.re, 5.0 / (4.0 * std::f64::consts::PI), epsilon = 1e-13);
        }
    }

    #[test]
    fn addition_theorem_cross_points_to_l8() {
        // P_l(x1 . x2) = 4pi/(2l+1) sum_m y_lm(w1) y_lm^*(w2)
        let w1 = (0.7_f64, 2.1_f64);
        let w2 = (2.2_f64, 5.5_f64);
        let d1 = [w1.0.sin() * w1.1.cos(), w1.0.sin() * w1.1.sin(), w1.0.cos()];
        let d2 = [w2.0.sin() * w2.1.cos(), w2.0.sin() * w2.1.sin(), w2.0.cos()];
        let dot = d1[0] * d2[0] + d1[1] * d2[1] + d1[2] * d2[2];
        for l in 0..=8_u32 {
            let (p, _) = super::legendre_pn(l as usize, dot);
            let mut acc = Complex64::default();
            for m in -(l as i32)..=(l as i32) {
                acc += sph_harm(SphIndex::new(l, m), w1.0, w1.1)
                    * sph_harm(SphIndex::new(l, m), w2.0, w2.1).conj();
            }
            let lhs = 4.0 * std::f64::consts::PI / (2.0 * l as f64 + 1.0) * acc;
            assert_abs_diff_eq!(lhs.re, p, epsilon = 1e-10);
            assert_abs_diff_eq!(lhs.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn wigner_zonal_north_pole_only_m0() {
        for m in -3..=3 {
            let v = wigner_zonal(3, m, 0.0, 0.0);
            if m == 0 {
                assert!(v.norm() > 0.9);
            } else {
                assert_abs_diff_eq!(v.norm(), 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn wigner_zonal_rotates_zonal_profile() {
        // rotate y_{l0} to lambda, evaluate at lambda: equals value at north pole
        let l = 4u32;
        let lam = (1.1, 2.7);
        let north = sph_harm(SphIndex::new(l, 0), 0.0, 0.0).re;
        let mut acc = Complex64::default();
        for m in -(l as i32)..=(l as i32) {
            acc += wigner_zonal(l, m, lam.0, lam.1) * sph_harm(SphIndex::new(l, m), lam.0, lam.1);
        }
        assert_abs_diff_eq!(acc.re, north, epsilon = 1e-12);
        assert_abs_diff_eq!(acc.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn wigner_zonal_phase_shift_invariance() {
        let v1 = wigner_zonal(5, 2, 0.9, 0.4).norm();
        let v2 = wigner_zonal(5, 2, 0.9, 0.4 + 2.0 * std::f64::consts::PI).norm();
        assert_abs_diff_eq!(v1, v2, epsilon = 1e-13);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(6);
        // x^10 over [-1,1] = 2/11
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert_abs_diff_eq!(v, 2.0 / 11.0, epsilon = 1e-14);
    }
}
