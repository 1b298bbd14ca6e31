//! Characteristic forms of simple 2D shapes and the weak Stokes pairing.
//!
//! The disc and circle have closed-form Fourier profiles (Bessel), so the
//! pairings against wavelet atoms reduce to one-dimensional radial
//! quadratures after expanding the translation phase in Bessel kernels.
//! The square is rasterized. Pairings are the integrals
//! `int psi ^ chi` with `chi` the characteristic form of the region or the
//! boundary current.

use crate::exterior::Monomial;
use crate::fftn;
use crate::grid::Grid;
use crate::par::{map_indexed, ExecMode};
use crate::polarlet::ScalarAtom;
use crate::specfun::{bessel_j_all, gauss_legendre};
use crate::wavelets::{FormAtom, FormContext, FormType};
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Supported shapes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacteristicShape {
    Disc { center: [f64; 2], radius: f64 },
    Square { center: [f64; 2], side: f64 },
    /// `x1 > 0`, boundary along the `x2` axis.
    Halfspace,
}

/// Angular series (harmonic shift -> coefficient) times a radial profile.
struct PolarFunction<'a> {
    series: Vec<(i32, Complex64)>,
    radial: Box<dyn Fn(f64) -> f64 + 'a>,
    support: (f64, f64),
    center: [f64; 2],
}

/// `int fhat(xi) conj(ghat(xi)) d xi` for two polar-separated functions.
fn polar_pair(f: &PolarFunction, g: &PolarFunction) -> Complex64 {
    let y = [f.center[0] - g.center[0], f.center[1] - g.center[1]];
    let s = (y[0] * y[0] + y[1] * y[1]).sqrt();
    let theta_y = if s > 0.0 { y[1].atan2(y[0]) } else { 0.0 };
    let lo = f.support.0.max(g.support.0);
    let hi = f.support.1.min(g.support.1);
    if lo >= hi {
        return Complex64::default();
    }
    let mut mmax = 0;
    for (mf, _) in &f.series {
        for (mg, _) in &g.series {
            mmax = mmax.max((mg - mf).unsigned_abs() as usize);
        }
    }
    // radial integrals for all needed kernel orders
    let (gx, gw) = gauss_legendre(16);
    let osc = s + 40.0; // J1(R rho) from shape radials oscillates too; bounded by support
    let panels = (((hi - lo) * osc / (2.0 * std::f64::consts::PI)).ceil() as usize).max(8);
    let mut ints = vec![0.0; mmax + 1];
    let pw = (hi - lo) / panels as f64;
    for i in 0..panels {
        let c = lo + (i as f64 + 0.5) * pw;
        let h = 0.5 * pw;
        for (&x, &w) in gx.iter().zip(gw.iter()) {
            let rho = c + h * x;
            let fr = (f.radial)(rho);
            let gr = (g.radial)(rho);
            if fr == 0.0 || gr == 0.0 {
                continue;
            }
            let base = w * h * fr * gr * rho;
            let kv = if s * rho > 0.0 {
                bessel_j_all(mmax, s * rho)
            } else {
                let mut v = vec![0.0; mmax + 1];
                v[0] = 1.0;
                v
            };
            for (m, k) in kv.iter().enumerate() {
                ints[m] += base * k;
            }
        }
    }
    let mut acc = Complex64::default();
    for (mf, cf) in &f.series {
        for (mg, cg) in &g.series {
            let mu = mg - mf;
            let radial = if mu >= 0 {
                ints[mu as usize]
            } else {
                let v = ints[(-mu) as usize];
                if mu % 2 == 0 {
                    v
                } else {
                    -v
                }
            };
            let phase = crate::polarlet::atom::ipow(-mu)
                * Complex64::from_polar(1.0, -(mu as f64) * theta_y);
            acc += cf * cg.conj() * phase * radial;
        }
    }
    2.0 * std::f64::consts::PI * acc
}

/// Spatial-component polar representations of a 2D form atom: per spatial
/// monomial, the angular series with the type phase and basis-map sign
/// folded in. The radial part (shared) is `c_j rho^{-w} h_j(rho)`.
fn atom_components_2d<'c>(
    ctx: &'c FormContext,
    atom: &FormAtom,
) -> Result<Vec<(Monomial, PolarFunction<'c>)>> {
    if ctx.dim() != 2 {
        return Err(Error::Degree("2D path".into()));
    }
    let desc = atom.descriptor(&ctx.table);
    let key = atom.key();
    let phase = desc.phase.eval(&[0.0; 3], &|_| Complex64::default());
    let q = desc.weight_power as i32;
    let level = atom.scalar.level;
    // the lowpass band of co-exact types is fine here: the 1/rho weight is
    // cancelled by the polar measure inside the pairing quadrature
    let cj = ctx.scalar.freq_norm(level);
    let radial_prof = ctx.scalar.windows.radial().clone();
    let support = radial_prof.level_support(level);
    let center = atom.scalar.center();
    let w2 = match &ctx.scalar.windows {
        crate::polarlet::Windows::Two(w) => w.clone(),
        _ => unreachable!(),
    };
    let inverse = crate::wavelets::inverse_basis_map(2);
    let mut out = Vec::new();
    for cart in ctx.freq_monomials(&key) {
        let (target, sign) = inverse[&cart];
        let minor = minor_series_2d_pub(desc.monomial, cart);
        // window series convolved with the minor series
        let mut series: BTreeMap<i32, Complex64> = BTreeMap::new();
        let nm = if level < 0 { 0 } else { w2.angular.max_harmonic };
        for mw in -nm..=nm {
            let beta = if level < 0 {
                Complex64::new(1.0, 0.0)
            } else {
                w2.angular.beta_oriented(mw, atom.scalar.orient)
            };
            if beta.norm_sqr() == 0.0 {
                continue;
            }
            for (shift, coef) in &minor {
                let m = mw + shift;
                *series.entry(m).or_default() += beta * coef * phase * sign as f64;
            }
        }
        let rp = radial_prof.clone();
        let radial = Box::new(move |rho: f64| {
            if rho <= 0.0 {
                return 0.0;
            }
            cj * rho.powi(-q) * rp.level_window(level, rho)
        });
        out.push((
            target,
            PolarFunction {
                series: series.into_iter().filter(|(_, c)| c.norm_sqr() > 0.0).collect(),
                radial,
                support,
                center: [center[0], center[1]],
            },
        ))
    }
    Ok(out)
}

// re-exported series used by the evaluation engine; duplicated here to keep
// the pairing self-contained
fn minor_series_2d_pub(mono: Monomial, cart: Monomial) -> Vec<(i32, Complex64)> {
    let half = Complex64::new(0.5, 0.0);
    let ihalf = Complex64::new(0.0, 0.5);
    let component = |row: u8, col: u8| -> Vec<(i32, Complex64)> {
        match (row, col) {
            (0, 0) | (1, 1) => vec![(1, -ihalf), (-1, ihalf)],
            (0, 1) => vec![(1, -half), (-1, -half)],
            (1, 0) => vec![(1, half), (-1, half)],
            _ => unreachable!(),
        }
    };
    let rows = mono.indices();
    let cols = cart.indices();
    match rows.len() {
        0 => vec![(0, Complex64::new(1.0, 0.0))],
        1 => component(rows[0], cols[0]),
        2 => vec![(0, Complex64::new(1.0, 0.0))],
        _ => unreachable!(),
    }
}

/// `int psi_atom ^ chi_boundary` for the circle current of a disc: the
/// atom must be a 1-form.
pub fn boundary_pairing_disc(
    ctx: &FormContext,
    atom: &FormAtom,
    center: [f64; 2],
    radius: f64,
) -> Result<f64> {
    if atom.degree != 1 {
        return Err(Error::Degree("boundary pairing needs a 1-form atom".into()));
    }
    let comps = atom_components_2d(ctx, atom)?;
    // chi components: c_k = -i R J1(R rho) * (cos, sin)_k, support all rho
    let series_cos = vec![
        (1, Complex64::new(0.5, 0.0)),
        (-1, Complex64::new(0.5, 0.0)),
    ];
    let series_sin = vec![
        (1, Complex64::new(0.0, -0.5)),
        (-1, Complex64::new(0.0, 0.5)),
    ];
    let radial = move |rho: f64| radius * crate::specfun::bessel_j(1, radius * rho);
    // wedge: p1 c2 - p2 c1, with every chi carrying the -i factor
    let mut acc = Complex64::default();
    for (mono, p) in &comps {
        let (kser, sgn) = match mono.indices()[0] {
            0 => (series_sin.clone(), 1.0),
            1 => (series_cos.clone(), -1.0),
            _ => unreachable!(),
        };
        // conj of (-i f) contributes +i conj(f)
        let chi = PolarFunction {
            series: kser,
            radial: Box::new(radial),
            support: p.support,
            center,
        };
        let v = polar_pair(p, &chi);
        acc += sgn * v * Complex64::new(0.0, -1.0).conj();
    }
    // the outward-normal current pairs to the clockwise line integral;
    // Stokes wants the induced (counter-clockwise) orientation
    Ok(-acc.re)
}

/// `int psi_atom ^ chi_interior` for a disc: the atom must be a 2-form
/// (volume) atom.
pub fn interior_pairing_disc(
    ctx: &FormContext,
    atom: &FormAtom,
    center: [f64; 2],
    radius: f64,
) -> Result<f64> {
    if atom.degree != 2 || ctx.dim() != 2 {
        return Err(Error::Degree("interior pairing needs a 2D volume atom".into()));
    }
    let comps = atom_components_2d(ctx, atom)?;
    let (_, p) = &comps[0];
    let radial = move |rho: f64| {
        if rho == 0.0 {
            0.0
        } else {
            radius * crate::specfun::bessel_j(1, radius * rho) / rho
        }
    };
    let chi = PolarFunction {
        series: vec![(0, Complex64::new(1.0, 0.0))],
        radial: Box::new(radial),
        support: p.support,
        center,
    };
    Ok(polar_pair(p, &chi).re)
}

/// `int psi_atom ^ chi_boundary` for the halfspace `x1 > 0`: a line current
/// along the `x2` axis; reduces to a 1D integral over the `xi_1` line.
pub fn boundary_pairing_halfspace(ctx: &FormContext, atom: &FormAtom) -> Result<f64> {
    if atom.degree != 1 {
        return Err(Error::Degree("boundary pairing needs a 1-form atom".into()));
    }
    let comps = atom_components_2d(ctx, atom)?;
    // -int p2(0, x2) dx2 = -int p2hat(xi1, 0) dxi1
    let p2 = comps
        .iter()
        .find(|(m, _)| m.indices()[0] == 1)
        .map(|(_, p)| p)
        .expect("dx2 component");
    let (lo, hi) = p2.support;
    let (gx, gw) = gauss_legendre(32);
    let mut acc = Complex64::default();
    // two half-lines theta = 0 and theta = pi
    for (theta, dirsign) in [(0.0_f64, 1.0), (std::f64::consts::PI, -1.0)] {
        let mut ang = Complex64::default();
        for (m, c) in &p2.series {
            ang += c * Complex64::from_polar(1.0, *m as f64 * theta);
        }
        let panels = 24;
        let pw = (hi - lo) / panels as f64;
        for i in 0..panels {
            let cmid = lo + (i as f64 + 0.5) * pw;
            let h = 0.5 * pw;
            for (&x, &w) in gx.iter().zip(gw.iter()) {
                let rho = cmid + h * x;
                let f = (p2.radial)(rho);
                if f == 0.0 {
                    continue;
                }
                // translation phase e^{-i xi . x_c} along the line
                let phase = Complex64::from_polar(1.0, -dirsign * rho * p2.center[0]);
                acc += w * h * ang * f * phase;
            }
        }
    }
    Ok(-(acc.re))
}

/// Coefficients of a shape's characteristic form against every atom of one
/// type over a translation range.
pub struct ShapeCoefficients {
    pub entries: BTreeMap<FormAtom, f64>,
}

/// Enumerates atoms of one type with centers inside `[-extent/2, extent/2]^2`.
pub fn atoms_in_box(
    ctx: &FormContext,
    degree: u8,
    form_type: FormType,
    family: u8,
    levels: std::ops::RangeInclusive<i32>,
    extent: f64,
) -> Vec<FormAtom> {
    let mut out = Vec::new();
    for level in levels {
        if level < 0 && form_type == FormType::CoExact {
            continue;
        }
        let spacing = 2.0_f64.powi(-level.max(0));
        let half = (extent / 2.0 / spacing).floor() as i32;
        let orients = if level < 0 { 1 } else { ctx.scalar.windows.orientations() };
        for k1 in -half..=half {
            for k2 in -half..=half {
                for t in 0..orients {
                    out.push(FormAtom::new(
                        ScalarAtom::new(level, vec![k1, k2], t),
                        degree,
                        form_type,
                        family,
                    ));
                }
            }
        }
    }
    out
}

/// Characteristic coefficients for a shape; `boundary` selects the boundary
/// current (paired with 1-form atoms) over the interior (volume atoms).
pub fn characteristic_coefficients(
    ctx: &FormContext,
    shape: CharacteristicShape,
    boundary: bool,
    atoms: &[FormAtom],
    mode: ExecMode,
) -> Result<ShapeCoefficients> {
    let values = map_indexed(mode, atoms.len(), |i| -> Result<f64> {
        let atom = &atoms[i];
        match (shape, boundary) {
            (CharacteristicShape::Disc { center, radius }, true) => {
                boundary_pairing_disc(ctx, atom, center, radius)
            }
            (CharacteristicShape::Disc { center, radius }, false) => {
                interior_pairing_disc(ctx, atom, center, radius)
            }
            (CharacteristicShape::Halfspace, true) => boundary_pairing_halfspace(ctx, atom),
            _ => Err(Error::Config("unsupported shape/boundary combination".into())),
        }
    });
    let mut entries = BTreeMap::new();
    for (atom, v) in atoms.iter().zip(values.into_iter()) {
        entries.insert(atom.clone(), v?);
    }
    Ok(ShapeCoefficients { entries })
}

/// Rasterized interior pairing for squares: Riemann sum in frequency.
pub fn interior_pairing_square_grid(
    ctx: &FormContext,
    atom: &FormAtom,
    center: [f64; 2],
    side: f64,
    grid: &Grid,
) -> Result<f64> {
    let mut chi: Vec<Complex64> = (0..grid.len())
        .map(|i| {
            let x = grid.x(i);
            let inside = (x[0] - center[0]).abs() <= side / 2.0
                && (x[1] - center[1]).abs() <= side / 2.0;
            Complex64::new(if inside { 1.0 } else { 0.0 }, 0.0)
        })
        .collect();
    fftn::spatial_to_freq(grid, &mut chi);
    let mut acc = Complex64::default();
    for i in 0..grid.len() {
        let xi = grid.xi(i);
        let a = ctx.eval_freq(atom, &xi);
        acc += a[0] * chi[i].conj();
    }
    Ok((acc * grid.cell_volume_freq()).re)
}

/// Per-level Stokes sums for a co-exact coefficient set against a disc.
#[derive(Debug, Clone)]
pub struct StokesReport {
    /// `(level, boundary partial sum, interior partial sum)` cumulative in
    /// level order.
    pub levels: Vec<(i32, f64, f64)>,
}

/// Pairing coefficients of one whole band against an arranged
/// characteristic field: one inverse FFT per band.
///
/// `arranged[k]` must hold, for the k-th frequency monomial `K` of the
/// atom type, the characteristic component complementary to the spatial
/// monomial of `K` with the wedge sign folded in.
fn band_pairings(
    ctx: &FormContext,
    grid: &Grid,
    key: crate::wavelets::TypeKey,
    level: i32,
    orient: usize,
    arranged: &[Vec<Complex64>],
    mode: ExecMode,
) -> Result<Vec<f64>> {
    let desc = ctx.table.get(&key);
    let grade = desc.weight_power as i32;
    let phase_conj = desc.phase.eval(&[0.0; 3], &|_| Complex64::default()).conj();
    let monos = ctx.freq_monomials(&key);
    let q: Vec<Complex64> = map_indexed(mode, grid.len(), |i| {
        let xi = grid.xi(i);
        let rho2: f64 = xi.iter().map(|v| v * v).sum();
        if rho2 == 0.0 {
            return Complex64::default();
        }
        let rho = rho2.sqrt();
        let dir: Vec<f64> = xi.iter().map(|v| v / rho).collect();
        let mut acc = Complex64::default();
        for (k, mono) in monos.iter().enumerate() {
            let m = ctx.minor(orient, desc.monomial, *mono, &dir);
            if m != 0.0 {
                acc += arranged[k][i] * m;
            }
        }
        acc * phase_conj * rho.powi(-grade)
    });
    let band = crate::polarlet::analyze_band_hat(&ctx.scalar, grid, &q, level, orient, mode)?;
    // chi-tilde = conj(analysis of Q); the result is real
    Ok(band.values.iter().map(|v| v.re).collect())
}

/// Arranged spectral components of the disc's characteristic forms on a
/// grid: `(boundary arranged for the co-exact 1-form type, interior
/// arranged for the volume type)`.
fn disc_arranged_fields(
    ctx: &FormContext,
    grid: &Grid,
    center: [f64; 2],
    radius: f64,
    mode: ExecMode,
) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
    let inverse = crate::wavelets::inverse_basis_map(2);
    let key_delta =
        crate::wavelets::TypeKey { degree: 1, form_type: FormType::CoExact, family: 1 };
    let monos = ctx.freq_monomials(&key_delta);
    // boundary current for the induced (counter-clockwise) orientation:
    // chi = -delta_{S_R} n_i dx^i, so chihat_1 = +i R J1 cos, chihat_2 = +i R J1 sin;
    // wedge arrangement: X_{dx1} = +chihat_2, X_{dx2} = -chihat_1
    let mut boundary = Vec::new();
    for mono in &monos {
        let (target, sign) = inverse[mono];
        let comp = target.indices()[0];
        let col: Vec<Complex64> = map_indexed(mode, grid.len(), |i| {
            let xi = grid.xi(i);
            let rho = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
            if rho == 0.0 {
                return Complex64::default();
            }
            let j1 = crate::specfun::bessel_j(1, radius * rho);
            let dirc = xi[0] / rho;
            let dirs = xi[1] / rho;
            let phase =
                Complex64::from_polar(1.0, -(xi[0] * center[0] + xi[1] * center[1]));
            let chi = Complex64::new(0.0, radius * j1) * phase;
            let arranged = match comp {
                0 => chi * dirs,        //  +chihat_2
                1 => -(chi * dirc),     //  -chihat_1
                _ => unreachable!(),
            };
            arranged * sign as f64
        });
        boundary.push(col);
    }
    // interior: 0-form indicator, single volume component, sign +1
    let interior: Vec<Complex64> = map_indexed(mode, grid.len(), |i| {
        let xi = grid.xi(i);
        let rho = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
        let phase = Complex64::from_polar(1.0, -(xi[0] * center[0] + xi[1] * center[1]));
        if rho == 0.0 {
            // chihat at zero frequency: area / (2 pi) under the unitary convention
            return Complex64::new(radius * radius / 2.0, 0.0) * phase;
        }
        Complex64::new(radius * crate::specfun::bessel_j(1, radius * rho) / rho, 0.0) * phase
    });
    (boundary, vec![interior])
}

/// Accumulates `sum alpha_s chi_s` level by level on both sides of the weak
/// Stokes identity; the coefficients are those of the co-exact (r-1)-form
/// expansion, reused verbatim on the exact r-form side. Pairings are
/// computed bandwise on the supplied grid.
pub fn stokes_residual(
    ctx: &FormContext,
    grid: &Grid,
    coeffs: &crate::transforms::FrameCoefficients,
    shape: CharacteristicShape,
    mode: ExecMode,
) -> Result<StokesReport> {
    let (center, radius) = match shape {
        CharacteristicShape::Disc { center, radius } => (center, radius),
        _ => return Err(Error::Config("level sums are for the disc".into())),
    };
    let key_delta =
        crate::wavelets::TypeKey { degree: 1, form_type: FormType::CoExact, family: 1 };
    let key_d = crate::wavelets::TypeKey { degree: 2, form_type: FormType::Exact, family: 1 };
    let bands = coeffs
        .parts
        .get(&key_delta)
        .ok_or_else(|| Error::Config("coefficients lack the co-exact 1-form part".into()))?;
    let (boundary_field, interior_field) = disc_arranged_fields(ctx, grid, center, radius, mode);
    let mut levels: Vec<i32> = bands.iter().map(|b| b.level).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut report = Vec::new();
    let mut acc_b = 0.0;
    let mut acc_i = 0.0;
    for &level in &levels {
        for band in bands.iter().filter(|b| b.level == level) {
            let chi_b =
                band_pairings(ctx, grid, key_delta, band.level, band.orient, &boundary_field, mode)?;
            let chi_i =
                band_pairings(ctx, grid, key_d, band.level, band.orient, &interior_field, mode)?;
            for ((&alpha, b), v) in band.values.iter().zip(chi_b.iter()).zip(chi_i.iter()) {
                acc_b += alpha * b;
                acc_i += alpha * v;
            }
        }
        report.push((level, acc_b, acc_i));
    }
    Ok(StokesReport { levels: report })
}
