//! Evaluation engine for differential form wavelets: frequency components in
//! the Cartesian basis and closed-form spatial components.
//!
//! The spherical-frame monomials are realized by concrete orthonormal frame
//! fields. In 2D the frame `(tangent, radial)` with `tangent = (sin, -cos)`
//! is canonical. In 3D the tangent pair of orientation `t` is the standard
//! frame conjugated by a rotation that moves its polar singularities onto an
//! axis perpendicular to the window center, where directional windows
//! vanish.

use super::atom::FormAtom;
use super::table::{FreqTable, TypeKey};
use crate::exterior::{ift_form, Coeff, Monomial, SpaceTag, SymbolicForm};
use crate::grid::Grid;
use crate::par::{map_indexed, ExecMode};
use crate::polarlet::{ScalarContext, Windows};
use crate::specfun::{sph_harm_all, SphereQuadrature, SphIndex};
use crate::windows::WindowConfig;
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::Mutex;

/// Ordered Cartesian monomials of one degree (lexicographic index tuples).
pub fn cartesian_monomials(dim: u8, degree: u8) -> Vec<Monomial> {
    let mut out: Vec<Monomial> =
        (0..(1u8 << dim)).map(Monomial).filter(|m| m.degree() == degree).collect();
    out.sort_by_key(|m| m.indices());
    out
}

/// Sign-carrying map from frequency Cartesian monomials to spatial ones
/// under the inverse transform of the form bases.
pub fn inverse_basis_map(dim: u8) -> HashMap<Monomial, (Monomial, i8)> {
    let mut map = HashMap::new();
    for bits in 0..(1u8 << dim) {
        let mono = Monomial(bits);
        let f = SymbolicForm::monomial(dim, SpaceTag::FreqCartesian, mono, Coeff::one());
        let image = ift_form(&f);
        assert_eq!(image.terms.len(), 1);
        let (m, c) = image.terms.iter().next().unwrap();
        let (re, im) = c.as_constant().expect("unit image");
        assert_eq!(*im.numer(), 0);
        map.insert(mono, (*m, *re.numer() as i8));
    }
    map
}

#[derive(Debug, Clone, Copy)]
pub struct Rot3(pub [[f64; 3]; 3]);

impl Rot3 {
    pub fn identity() -> Self {
        Rot3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// `R_z(phi) R_y(theta + pi/2)`: takes the pole to an axis perpendicular
    /// to the direction `(theta, phi)`.
    pub fn frame_for_center(theta: f64, phi: f64) -> Self {
        let b = theta + std::f64::consts::FRAC_PI_2;
        let (sb, cb) = (b.sin(), b.cos());
        let (sp, cp) = (phi.sin(), phi.cos());
        // rows of Rz(phi) * Ry(b)
        Rot3([
            [cp * cb, -sp, cp * sb],
            [sp * cb, cp, sp * sb],
            [-sb, 0.0, cb],
        ])
    }

    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn apply_transpose(&self, v: &[f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
            m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
            m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2],
        ]
    }
}

/// Standard spherical frame at a unit direction, with a deterministic
/// completion on the polar axis.
fn standard_frame(u: &[f64; 3]) -> [[f64; 3]; 3] {
    let s = (u[0] * u[0] + u[1] * u[1]).sqrt();
    if s > 1e-12 {
        let ct = u[2];
        let (cp, sp) = (u[0] / s, u[1] / s);
        let theta_hat = [ct * cp, ct * sp, -s];
        let phi_hat = [-sp, cp, 0.0];
        [theta_hat, phi_hat, *u]
    } else {
        // on the axis: continue the phi = 0 limit
        let sgn = if u[2] >= 0.0 { 1.0 } else { -1.0 };
        [[sgn, 0.0, 0.0], [0.0, 1.0, 0.0], *u]
    }
}

/// Windows, the type table, frames, and the caches for spatial evaluation.
pub struct FormContext {
    pub table: FreqTable,
    pub scalar: ScalarContext,
    /// Per-orientation frame rotations (3D only).
    frames: Vec<Rot3>,
    /// Truncation degree for 3D window-times-frame expansions.
    pub proj_degree: u32,
    proj_cache: Mutex<HashMap<(TypeKey, usize, Monomial), Vec<Complex64>>>,
    inverse_map: HashMap<Monomial, (Monomial, i8)>,
}

impl FormContext {
    pub fn new(config: &WindowConfig, dim: usize) -> Result<Self> {
        let scalar = ScalarContext::new(config, dim)?;
        Self::from_scalar(scalar)
    }

    pub fn from_scalar(scalar: ScalarContext) -> Result<Self> {
        let dim = scalar.dim() as u8;
        let table = FreqTable::build(dim)?;
        let frames = match &scalar.windows {
            Windows::Two(_) => Vec::new(),
            Windows::Three(w) => w
                .angular
                .orientations
                .iter()
                .map(|o| Rot3::frame_for_center(o.center.0, o.center.1))
                .collect(),
        };
        let proj_degree = 36;
        let inverse_map = inverse_basis_map(dim);
        Ok(FormContext {
            table,
            scalar,
            frames,
            proj_degree,
            proj_cache: Mutex::new(HashMap::new()),
            inverse_map,
        })
    }

    /// Builds the Hankel caches needed by spatial evaluation on grids of the
    /// given extent and maximum level.
    pub fn build_spatial_tables(&mut self, extent: f64, max_level: i32, mode: ExecMode) -> Result<()> {
        let dim = self.scalar.dim();
        let rmax = extent * (dim as f64).sqrt() * 2.0_f64.powi(max_level.max(0)) / 2.0 + 12.0;
        let max_order = if dim == 2 {
            self.scalar.windows.max_angular() as usize + 2
        } else {
            self.proj_degree as usize
        };
        self.scalar.build_spatial_tables(rmax, max_order, &[0, 1, -1, -2], mode)
    }

    pub fn dim(&self) -> usize {
        self.scalar.dim()
    }

    /// Frame vectors of orientation `t` at a unit frequency direction, rows
    /// in the order of the spherical monomial basis.
    pub fn frame_vectors_3d(&self, t: usize, dir: &[f64; 3]) -> [[f64; 3]; 3] {
        let rot = self.frames.get(t).copied().unwrap_or_else(Rot3::identity);
        let u = rot.apply_transpose(dir);
        let sf = standard_frame(&u);
        [rot.apply(&sf[0]), rot.apply(&sf[1]), rot.apply(&sf[2])]
    }

    /// Minor of the frame wedge: component of the wedge of the frame vectors
    /// in `mono` on the Cartesian monomial `cart`.
    pub fn minor(&self, t: usize, mono: Monomial, cart: Monomial, dir: &[f64]) -> f64 {
        debug_assert_eq!(mono.degree(), cart.degree());
        match self.dim() {
            2 => {
                let (c, s) = (dir[0], dir[1]);
                // frame rows: tangent (s, -c), radial (c, s)
                let frame = [[s, -c], [c, s]];
                let rows = mono.indices();
                let cols = cart.indices();
                match rows.len() {
                    0 => 1.0,
                    1 => frame[rows[0] as usize][cols[0] as usize],
                    2 => {
                        let a = frame[rows[0] as usize];
                        let b = frame[rows[1] as usize];
                        a[cols[0] as usize] * b[cols[1] as usize]
                            - a[cols[1] as usize] * b[cols[0] as usize]
                    }
                    _ => unreachable!(),
                }
            }
            3 => {
                let d = [dir[0], dir[1], dir[2]];
                let frame = self.frame_vectors_3d(t, &d);
                let rows = mono.indices();
                let cols = cart.indices();
                match rows.len() {
                    0 => 1.0,
                    1 => frame[rows[0] as usize][cols[0] as usize],
                    2 => {
                        let a = frame[rows[0] as usize];
                        let b = frame[rows[1] as usize];
                        a[cols[0] as usize] * b[cols[1] as usize]
                            - a[cols[1] as usize] * b[cols[0] as usize]
                    }
                    3 => {
                        let m: Vec<[f64; 3]> =
                            rows.iter().map(|&r| frame[r as usize]).collect();
                        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
                    }
                    _ => unreachable!(),
                }
            }
            _ => unreachable!(),
        }
    }

    /// Cartesian monomial order of the frequency components of an atom type.
    pub fn freq_monomials(&self, key: &TypeKey) -> Vec<Monomial> {
        cartesian_monomials(self.dim() as u8, self.dim() as u8 - key.degree)
    }

    /// Cartesian monomial order of the spatial components.
    pub fn spatial_monomials(&self, degree: u8) -> Vec<Monomial> {
        cartesian_monomials(self.dim() as u8, degree)
    }

    /// Frequency-domain components of an atom at one point, ordered like
    /// [`Self::freq_monomials`].
    pub fn eval_freq(&self, atom: &FormAtom, xi: &[f64]) -> Vec<Complex64> {
        let key = atom.key();
        let monos = self.freq_monomials(&key);
        let desc = atom.descriptor(&self.table);
        let mut out = vec![Complex64::default(); monos.len()];
        let rho = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        if rho == 0.0 {
            return out;
        }
        let scalar = self.scalar.eval_freq(&atom.scalar, xi);
        if scalar == Complex64::default() {
            return out;
        }
        let phase = desc.phase.eval(&[0.0; 3], &|_| Complex64::default());
        let weighted = scalar * phase * rho.powi(-(desc.weight_power as i32));
        let dir: Vec<f64> = xi.iter().map(|v| v / rho).collect();
        for (k, mono) in monos.iter().enumerate() {
            let m = self.minor(atom.scalar.orient, desc.monomial, *mono, &dir);
            out[k] = weighted * m;
        }
        out
    }

    /// Angular expansion coefficients of `window_t * minor` for 3D spatial
    /// evaluation, cached per `(type, orientation, cartesian monomial)`.
    fn projection(&self, key: &TypeKey, t: usize, cart: Monomial) -> Vec<Complex64> {
        if let Some(hit) = self.proj_cache.lock().unwrap().get(&(*key, t, cart)) {
            return hit.clone();
        }
        let lmax = self.proj_degree;
        let win_deg = self.scalar.windows.max_angular();
        let quad = SphereQuadrature::with_degree(2 * lmax + win_deg + 8);
        let desc = self.table.get(key);
        let w3 = match &self.scalar.windows {
            Windows::Three(w) => w,
            _ => unreachable!("projection is a 3D path"),
        };
        let mut coeffs = vec![Complex64::default(); ((lmax + 1) * (lmax + 1)) as usize];
        for &(theta, phi, w) in &quad.nodes {
            let dir = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
            let g = w3.angular.eval(t, theta, phi);
            if g.norm_sqr() < 1e-28 {
                continue;
            }
            let m = self.minor(t, desc.monomial, cart, &dir);
            if m == 0.0 {
                continue;
            }
            let ys = sph_harm_all(lmax, theta, phi);
            let f = g * m * w;
            for (i, y) in ys.iter().enumerate() {
                coeffs[i] += f * y.conj();
            }
        }
        self.proj_cache.lock().unwrap().insert((*key, t, cart), coeffs.clone());
        coeffs
    }

    /// Spatial components of an atom at one point, ordered like
    /// [`Self::spatial_monomials`] for the atom's degree. Components are
    /// complex so realness can be asserted by the caller; the imaginary
    /// parts cancel structurally.
    pub fn eval_space(&self, atom: &FormAtom, x: &[f64]) -> Result<Vec<Complex64>> {
        self.eval_space_weighted(atom, x, 0)
    }

    /// Spatial components with an extra radial weight `|xi|^{extra_weight}`
    /// in the frequency descriptor (used by the Laplace-de Rham image, where
    /// `extra_weight = 2`).
    pub fn eval_space_weighted(
        &self,
        atom: &FormAtom,
        x: &[f64],
        extra_weight: i32,
    ) -> Result<Vec<Complex64>> {
        let n = self.dim();
        let key = atom.key();
        let desc = atom.descriptor(&self.table);
        let q = desc.weight_power as i32 - extra_weight;
        if atom.scalar.level < 0 && q >= n as i32 {
            return Err(Error::SingularWeight { power: q });
        }
        let spatial_monos = self.spatial_monomials(atom.degree);
        let mut out = vec![Complex64::default(); spatial_monos.len()];
        let phase = desc.phase.eval(&[0.0; 3], &|_| Complex64::default());
        let jf = 2.0_f64.powi(atom.scalar.level_eff());
        let y: Vec<f64> =
            x.iter().zip(atom.scalar.shift.iter()).map(|(&xi, &k)| jf * xi - k as f64).collect();
        let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let tables = self.scalar.tables()?;
        let table = if atom.scalar.level < 0 { &tables.scaling } else { &tables.band };
        // 2^{n j / 2 - j q} (2 pi)^{-n}
        let c = 2.0_f64
            .powf(n as f64 * atom.scalar.level_eff() as f64 / 2.0
                - (atom.scalar.level_eff() * q) as f64)
            * (2.0 * std::f64::consts::PI).powf(-(n as f64));
        match &self.scalar.windows {
            Windows::Two(w) => {
                let theta = if r > 0.0 { y[1].atan2(y[0]) } else { 0.0 };
                for cart in self.freq_monomials(&key) {
                    let (target, sign) = self.inverse_map[&cart];
                    let series = minor_series_2d(desc.monomial, cart);
                    let mut acc = Complex64::default();
                    let nm = if atom.scalar.level < 0 { 0 } else { w.angular.max_harmonic };
                    for mw in -nm..=nm {
                        let beta = if atom.scalar.level < 0 {
                            Complex64::new(1.0, 0.0)
                        } else {
                            w.angular.beta_oriented(mw, atom.scalar.orient)
                        };
                        if beta.norm_sqr() == 0.0 {
                            continue;
                        }
                        for (shift, coef) in &series {
                            let m = mw + shift;
                            let h = table.eval(m, q, r)?;
                            acc += super::super::polarlet::atom::ipow(m)
                                * beta
                                * coef
                                * Complex64::from_polar(1.0, m as f64 * theta)
                                * h;
                        }
                    }
                    let slot = spatial_monos.iter().position(|m| *m == target).unwrap();
                    out[slot] +=
                        acc * phase * c * 2.0 * std::f64::consts::PI * sign as f64;
                }
            }
            Windows::Three(_) => {
                let lmax = self.proj_degree;
                let (theta, phi) = if r > 0.0 {
                    ((y[2] / r).clamp(-1.0, 1.0).acos(), y[1].atan2(y[0]))
                } else {
                    (0.0, 0.0)
                };
                let ys = sph_harm_all(lmax, theta, phi);
                for cart in self.freq_monomials(&key) {
                    let (target, sign) = self.inverse_map[&cart];
                    let coeffs = self.projection(&key, atom.scalar.orient, cart);
                    let mut acc = Complex64::default();
                    for l in 0..=lmax {
                        let h = table.eval(l as i32, q, r)?;
                        if h == 0.0 {
                            continue;
                        }
                        let il = super::super::polarlet::atom::ipow(l as i32);
                        for m in -(l as i32)..=(l as i32) {
                            let a = coeffs[SphIndex::new(l, m).flat()];
                            if a.norm_sqr() < 1e-30 {
                                continue;
                            }
                            acc += il * a * ys[SphIndex::new(l, m).flat()] * h;
                        }
                    }
                    let slot = spatial_monos.iter().position(|m| *m == target).unwrap();
                    out[slot] += acc * phase * c * 4.0 * std::f64::consts::PI * sign as f64;
                }
            }
        }
        Ok(out)
    }

    /// Spatial samples of all components over a grid.
    pub fn eval_space_grid(
        &self,
        atom: &FormAtom,
        grid: &Grid,
        mode: ExecMode,
    ) -> Result<Vec<Vec<Complex64>>> {
        // warm the projection caches outside the parallel region
        if self.dim() == 3 {
            for cart in self.freq_monomials(&atom.key()) {
                let _ = self.projection(&atom.key(), atom.scalar.orient, cart);
            }
        }
        let rows = map_indexed(mode, grid.len(), |i| self.eval_space(atom, &grid.x(i)));
        let n_comp = self.spatial_monomials(atom.degree).len();
        let mut out = vec![vec![Complex64::default(); grid.len()]; n_comp];
        for (i, row) in rows.into_iter().enumerate() {
            let row = row?;
            for (c, v) in row.into_iter().enumerate() {
                out[c][i] = v;
            }
        }
        Ok(out)
    }
}

/// Fourier series of the 2D frame minors: map from harmonic shift to
/// coefficient.
fn minor_series_2d(mono: Monomial, cart: Monomial) -> Vec<(i32, Complex64)> {
    let half = Complex64::new(0.5, 0.0);
    let ihalf = Complex64::new(0.0, 0.5);
    // tangent = (sin, -cos), radial = (cos, sin)
    let component = |row: u8, col: u8| -> Vec<(i32, Complex64)> {
        match (row, col) {
            // sin = -i/2 e^{i t} + i/2 e^{-i t}
            (0, 0) | (1, 1) => vec![(1, -ihalf), (-1, ihalf)],
            // -cos
            (0, 1) => vec![(1, -half), (-1, -half)],
            // cos
            (1, 0) => vec![(1, half), (-1, half)],
            _ => unreachable!(),
        }
    };
    let rows = mono.indices();
    let cols = cart.indices();
    match rows.len() {
        0 => vec![(0, Complex64::new(1.0, 0.0))],
        1 => component(rows[0], cols[0]),
        2 => {
            // determinant of the full frame is identically one
            vec![(0, Complex64::new(1.0, 0.0))]
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarlet::ScalarAtom;
    use crate::wavelets::table::FormType;
    use crate::windows::{Angular2Kind, Angular3Kind, RadialWindowKind};

    fn config(a2: Angular2Kind, a3: Angular3Kind) -> WindowConfig {
        WindowConfig { radial: RadialWindowKind::Smooth, angular2d: a2, angular3d: a3 }
    }

    #[test]
    fn frame_vectors_orthonormal_and_oriented() {
        let cfg = config(Angular2Kind::Isotropic, Angular3Kind::CosPower { power: 1 });
        let ctx = FormContext::new(&cfg, 3).unwrap();
        for t in [0usize, 3, 7] {
            for dir in [[0.3_f64, -0.5, 0.81], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]] {
                let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
                let d = [dir[0] / n, dir[1] / n, dir[2] / n];
                let f = ctx.frame_vectors_3d(t, &d);
                for i in 0..3 {
                    for j in 0..3 {
                        let dot: f64 = (0..3).map(|k| f[i][k] * f[j][k]).sum();
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!((dot - want).abs() < 1e-12, "t {t} i {i} j {j}");
                    }
                }
                // radial slot holds the direction itself
                for k in 0..3 {
                    assert!((f[2][k] - d[k]).abs() < 1e-12);
                }
                // positively oriented
                let det = f[0][0] * (f[1][1] * f[2][2] - f[1][2] * f[2][1])
                    - f[0][1] * (f[1][0] * f[2][2] - f[1][2] * f[2][0])
                    + f[0][2] * (f[1][0] * f[2][1] - f[1][1] * f[2][0]);
                assert!((det - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn frame_singularity_perpendicular_to_center() {
        let cfg = config(Angular2Kind::Isotropic, Angular3Kind::CosPower { power: 2 });
        let ctx = FormContext::new(&cfg, 3).unwrap();
        let w3 = match &ctx.scalar.windows {
            Windows::Three(w) => w.clone(),
            _ => unreachable!(),
        };
        for (t, o) in w3.angular.orientations.iter().enumerate() {
            let rot = ctx.frames[t];
            let sing = rot.apply(&[0.0, 0.0, 1.0]);
            let (ct, cp) = o.center;
            let c = [ct.sin() * cp.cos(), ct.sin() * cp.sin(), ct.cos()];
            let dot = sing[0] * c[0] + sing[1] * c[1] + sing[2] * c[2];
            assert!(dot.abs() < 1e-10, "orientation {t}: dot {dot}");
            // window vanishes on the singular axis
            let theta = sing[2].clamp(-1.0, 1.0).acos();
            let phi = sing[1].atan2(sing[0]);
            assert!(w3.angular.eval(t, theta, phi).norm() < 1e-12);
        }
    }

    #[test]
    fn chain_identity_on_frequency_components() {
        // i |xi| contraction of the co-exact components equals the exact
        // atom's components pointwise, for every family and random points
        let cfg = config(Angular2Kind::CosPower { power: 1 }, Angular3Kind::CosPower { power: 1 });
        for dim in [2usize, 3] {
            let ctx = FormContext::new(&cfg, dim).unwrap();
            let keys: Vec<TypeKey> = ctx.table.keys().copied().collect();
            for key in keys {
                if key.form_type != FormType::CoExact {
                    continue;
                }
                let scalar = ScalarAtom::new(1, vec![1; dim], 2 % ctx.scalar.windows.orientations());
                let atom = FormAtom::new(scalar.clone(), key.degree, key.form_type, key.family);
                let datom = FormAtom::new(scalar, key.degree + 1, FormType::Exact, key.family);
                let pts: Vec<Vec<f64>> = if dim == 2 {
                    vec![vec![2.2, 1.1], vec![-3.0, 2.4], vec![0.3, -4.4]]
                } else {
                    vec![vec![2.0, 1.0, 2.5], vec![-1.2, 3.0, 0.4]]
                };
                for xi in pts {
                    let rho = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
                    let lower = ctx.eval_freq(&atom, &xi);
                    let upper = ctx.eval_freq(&datom, &xi);
                    // contract i xi against the components: for each upper
                    // monomial K', sum over K = K' + p of lower_K * i xi_p * sign
                    let lower_monos = ctx.freq_monomials(&atom.key());
                    let upper_monos = ctx.freq_monomials(&datom.key());
                    let eps = crate::exterior::derivative_sign(dim as u8) as f64;
                    for (ui, um) in upper_monos.iter().enumerate() {
                        let mut acc = Complex64::default();
                        for (li, lm) in lower_monos.iter().enumerate() {
                            for p in lm.indices() {
                                let (sign, rest) = lm.remove(p);
                                if rest == *um {
                                    acc += lower[li]
                                        * Complex64::new(0.0, xi[p as usize])
                                        * (eps * sign as f64);
                                }
                            }
                        }
                        let diff = (acc - upper[ui]).norm();
                        let scale = upper[ui].norm().max(1e-12);
                        assert!(
                            diff / scale < 1e-10 || diff < 1e-12,
                            "dim {dim} {key:?} rho {rho} comp {ui}: {acc} vs {}",
                            upper[ui]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn minor_series_matches_pointwise_2d() {
        let cfg = config(Angular2Kind::Isotropic, Angular3Kind::Isotropic);
        let ctx = FormContext::new(&cfg, 2).unwrap();
        for mono_bits in [1u8, 2] {
            let mono = Monomial(mono_bits);
            for cart_bits in [1u8, 2] {
                let cart = Monomial(cart_bits);
                let series = minor_series_2d(mono, cart);
                for &theta in &[0.3_f64, 1.9, 4.4] {
                    let dir = [theta.cos(), theta.sin()];
                    let direct = ctx.minor(0, mono, cart, &dir);
                    let mut acc = Complex64::default();
                    for (s, c) in &series {
                        acc += c * Complex64::from_polar(1.0, *s as f64 * theta);
                    }
                    assert!((acc.re - direct).abs() < 1e-13);
                    assert!(acc.im.abs() < 1e-13);
                }
            }
        }
    }
}
