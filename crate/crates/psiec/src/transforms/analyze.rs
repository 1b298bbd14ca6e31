//! Analysis and synthesis of sampled form fields in the wavelet frames.
//!
//! Coefficients are graded inner products (`L^2` for exact types, the
//! derivative-weighted product for co-exact ones). The weights cancel
//! against the descriptor weights, so every band reduces to a scalar band
//! analysis of a projected, `|xi|^{|nu|}`-weighted component field. The
//! lowpass band of co-exact types is handled the same way; its `1/|xi|`
//! never appears bare, and the DC bin is zero for every field in the
//! frame's graded spaces.

use super::field::{SampledFormField, SpectralFormField};
use crate::exterior::ft_basis;
use crate::grid::Grid;
use crate::specfun::RadialKernel;
use crate::par::{for_each_mut, map_indexed, ExecMode};
use crate::polarlet::{analyze_band_hat, lattice_size, translate_sum, BandCoefficients};
use crate::wavelets::{FormContext, FormType, TypeKey};
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Coefficient lattice of one band of one type.
#[derive(Debug, Clone)]
pub struct FormBand {
    pub level: i32,
    pub orient: usize,
    pub lattice_n: usize,
    pub values: Vec<f64>,
}

impl FormBand {
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Frame coefficients of a sampled form field, split by type (the
/// exact/co-exact sub-maps realize the Hodge-Helmholtz split).
#[derive(Debug, Clone)]
pub struct FrameCoefficients {
    pub dim: u8,
    pub degree: u8,
    pub jmax: i32,
    pub parts: BTreeMap<TypeKey, Vec<FormBand>>,
    /// Fraction of field energy outside the frame cover.
    pub leakage: f64,
    /// Largest imaginary residue seen when realizing coefficients.
    pub max_imag: f64,
}

impl FrameCoefficients {
    pub fn energy_of(&self, form_type: FormType) -> f64 {
        self.parts
            .iter()
            .filter(|(k, _)| k.form_type == form_type)
            .map(|(_, bands)| bands.iter().map(|b| b.energy()).sum::<f64>())
            .sum()
    }

    pub fn total_energy(&self) -> f64 {
        self.energy_of(FormType::Exact) + self.energy_of(FormType::CoExact)
    }
}

/// Type keys participating in the frame of a given degree.
pub fn degree_keys(ctx: &FormContext, degree: u8) -> Vec<TypeKey> {
    ctx.table.keys().filter(|k| k.degree == degree).copied().collect()
}

/// For each frequency monomial of the transform of a degree-r form, the
/// index of the spatial component whose scalar transform carries it and the
/// basis-map sign: `F(alpha_J dx^J) = sign alphahat_J (freq monomial)`.
pub fn freq_component_map(dim: u8, degree: u8) -> Vec<(usize, f64)> {
    let spatial = crate::wavelets::cartesian_monomials(dim, degree);
    let freq = crate::wavelets::cartesian_monomials(dim, dim - degree);
    freq.iter()
        .map(|k| {
            // invert the basis map: find J with F(dx^J) = sign K
            for (j, m) in spatial.iter().enumerate() {
                let (sign, image) = ft_basis(dim, *m);
                if image == *k {
                    return (j, sign as f64);
                }
            }
            unreachable!("basis map is a bijection")
        })
        .collect()
}

fn projected_band_field(
    ctx: &FormContext,
    spectral: &SpectralFormField,
    key: &TypeKey,
    orient: usize,
    mode: ExecMode,
) -> Vec<Complex64> {
    let desc = ctx.table.get(key);
    let grade = key.form_type.grade() as i32;
    let phase_conj = desc
        .phase
        .eval(&[0.0; 3], &|_| Complex64::default())
        .conj();
    let monos = ctx.freq_monomials(key);
    let cmap = freq_component_map(spectral.grid.dim as u8, key.degree);
    let grid = &spectral.grid;
    map_indexed(mode, grid.len(), |i| {
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
                let (j, sign) = cmap[k];
                acc += spectral.comps[j][i] * (sign * m);
            }
        }
        acc * phase_conj * rho.powi(grade)
    })
}

/// Analysis of a spatial form field against every type of its degree.
pub fn analyze(
    ctx: &FormContext,
    field: &SampledFormField,
    jmax: i32,
    mode: ExecMode,
) -> Result<FrameCoefficients> {
    let spectral = field.to_spectral();
    analyze_spectral(ctx, &spectral, jmax, mode)
}

pub fn analyze_spectral(
    ctx: &FormContext,
    spectral: &SpectralFormField,
    jmax: i32,
    mode: ExecMode,
) -> Result<FrameCoefficients> {
    let grid = &spectral.grid;
    let mut parts = BTreeMap::new();
    let mut max_imag = 0.0_f64;
    for key in degree_keys(ctx, spectral.degree) {
        let mut bands = Vec::new();
        for level in -1..=jmax {
            let orients = if level < 0 { 1 } else { ctx.scalar.windows.orientations() };
            for t in 0..orients {
                let q = projected_band_field(ctx, spectral, &key, t, mode);
                let band: BandCoefficients =
                    analyze_band_hat(&ctx.scalar, grid, &q, level, t, mode)?;
                let mut values = Vec::with_capacity(band.values.len());
                for v in &band.values {
                    max_imag = max_imag.max(v.im.abs());
                    values.push(v.re);
                }
                bands.push(FormBand { level, orient: t, lattice_n: band.lattice_n, values });
            }
        }
        parts.insert(key, bands);
    }
    // leakage against the scalar cover
    let mut total = 0.0;
    let mut covered = 0.0;
    for c in &spectral.comps {
        for (i, v) in c.iter().enumerate() {
            let e = v.norm_sqr();
            total += e;
            let xi = grid.xi(i);
            let rho = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
            let mut cover = ctx.scalar.windows.radial().scaling.eval(rho).powi(2);
            for level in 0..=jmax {
                cover += ctx.scalar.windows.radial().band_at_level(level, rho).powi(2);
            }
            covered += e * cover.min(1.0);
        }
    }
    let leakage = if total > 0.0 { (total - covered).max(0.0) / total } else { 0.0 };
    Ok(FrameCoefficients {
        dim: grid.dim as u8,
        degree: spectral.degree,
        jmax,
        parts,
        leakage,
        max_imag,
    })
}

/// Synthesis back to a spectral field.
pub fn synthesize_spectral(
    ctx: &FormContext,
    coeffs: &FrameCoefficients,
    grid: &Grid,
    mode: ExecMode,
) -> Result<SpectralFormField> {
    let mut out = SpectralFormField::zeros(grid.clone(), coeffs.degree);
    for (key, bands) in &coeffs.parts {
        let desc = ctx.table.get(key);
        let grade = key.form_type.grade() as i32;
        let phase = desc.phase.eval(&[0.0; 3], &|_| Complex64::default());
        let monos = ctx.freq_monomials(key);
        let cmap = freq_component_map(grid.dim as u8, key.degree);
        for band in bands {
            let values: Vec<Complex64> =
                band.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            let s = translate_sum(grid, band.level, band.lattice_n, &values)?;
            for (k, mono) in monos.iter().enumerate() {
                let (j, sign) = cmap[k];
                let comp = &mut out.comps[j];
                let level = band.level;
                let orient = band.orient;
                for_each_mut(mode, comp, |i, a| {
                    let xi = grid.xi(i);
                    let rho2: f64 = xi.iter().map(|v| v * v).sum();
                    if rho2 == 0.0 {
                        return;
                    }
                    let rho = rho2.sqrt();
                    let p = ctx.scalar.profile(level, orient, &xi);
                    if p == Complex64::default() {
                        return;
                    }
                    let dir: Vec<f64> = xi.iter().map(|v| v / rho).collect();
                    let m = ctx.minor(orient, desc.monomial, *mono, &dir);
                    if m != 0.0 {
                        *a += s[i] * p * phase * (sign * m) * rho.powi(-grade);
                    }
                });
            }
        }
    }
    Ok(out)
}

pub fn synthesize(
    ctx: &FormContext,
    coeffs: &FrameCoefficients,
    grid: &Grid,
    mode: ExecMode,
) -> Result<SampledFormField> {
    Ok(synthesize_spectral(ctx, coeffs, grid, mode)?.to_spatial())
}

/// Round-trip report for a form field.
#[derive(Debug, Clone)]
pub struct FormRoundTrip {
    pub rel_error: f64,
    pub leakage: f64,
    /// Coefficient energy over the graded field energy, per type present.
    pub parseval_ratio: f64,
    pub max_imag: f64,
}

pub fn roundtrip_form(
    ctx: &FormContext,
    field: &SampledFormField,
    jmax: i32,
    mode: ExecMode,
) -> Result<FormRoundTrip> {
    let spectral = field.to_spectral();
    let coeffs = analyze_spectral(ctx, &spectral, jmax, mode)?;
    let back = synthesize_spectral(ctx, &coeffs, &field.grid, mode)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (ca, cb) in back.comps.iter().zip(spectral.comps.iter()) {
        for (a, b) in ca.iter().zip(cb.iter()) {
            num += (a - b).norm_sqr();
            den += b.norm_sqr();
        }
    }
    // graded Parseval: exact part against L2 energy, co-exact against the
    // derivative-weighted energy; for a field of pure type this is exactly
    // the coefficient energy
    let e_exact = coeffs.energy_of(FormType::Exact);
    let e_coexact = coeffs.energy_of(FormType::CoExact);
    let graded = {
        // split the field by tangential/radial projection per point
        let mut l2_exact = 0.0;
        let mut h1_coexact = 0.0;
        let grid = &field.grid;
        let nfreq = ctx.dim() - field.degree as usize;
        let radial_leg = (ctx.dim() - 1) as u8;
        let _ = nfreq;
        for i in 0..grid.len() {
            let xi = grid.xi(i);
            let rho2: f64 = xi.iter().map(|v| v * v).sum();
            if rho2 == 0.0 {
                continue;
            }
            let rho = rho2.sqrt();
            let dir: Vec<f64> = xi.iter().map(|v| v / rho).collect();
            // project the component vector on the exact/coexact monomial span
            for key in degree_keys(ctx, field.degree) {
                let desc = ctx.table.get(&key);
                let monos = ctx.freq_monomials(&key);
                let cmap = freq_component_map(grid.dim as u8, key.degree);
                let mut proj = Complex64::default();
                for (k, mono) in monos.iter().enumerate() {
                    let m = ctx.minor(0, desc.monomial, *mono, &dir);
                    let (j, sign) = cmap[k];
                    proj += spectral.comps[j][i] * (sign * m);
                }
                let e = proj.norm_sqr() * grid.cell_volume_freq();
                if key.form_type == FormType::Exact {
                    l2_exact += e;
                } else {
                    h1_coexact += e * rho2;
                }
            }
            let _ = radial_leg;
        }
        l2_exact + h1_coexact
    };
    let coeff_energy = e_exact + e_coexact;
    Ok(FormRoundTrip {
        rel_error: if den > 0.0 { (num / den).sqrt() } else { 0.0 },
        leakage: coeffs.leakage,
        parseval_ratio: if graded > 0.0 { coeff_energy / graded } else { 1.0 },
        max_imag: coeffs.max_imag,
    })
}

/// Random form field bandlimited to the frame cover, built from white noise
/// shaped by the exact partition and projected on one type's monomial span.
pub fn random_typed_field(
    ctx: &FormContext,
    grid: &Grid,
    degree: u8,
    form_type: FormType,
    jmax: i32,
    seed: u64,
) -> Result<SampledFormField> {
    use rand::{Rng, SeedableRng};
    let _ = lattice_size(grid, jmax)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let keys: Vec<TypeKey> =
        degree_keys(ctx, degree).into_iter().filter(|k| k.form_type == form_type).collect();
    if keys.is_empty() {
        return Err(Error::Degree(format!(
            "no {form_type:?} types at degree {degree} in dim {}",
            grid.dim
        )));
    }
    let mut spectral = SpectralFormField::zeros(grid.clone(), degree);
    let n = grid.n;
    let radial = ctx.scalar.windows.radial();
    // random coefficients against the type monomials, hermitian-symmetrized
    let mut raw: Vec<Vec<Complex64>> =
        vec![vec![Complex64::default(); grid.len()]; keys.len()];
    for (i, row) in raw.iter_mut().enumerate() {
        let _ = i;
        for v in row.iter_mut() {
            *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    for i in 0..grid.len() {
        let xi = grid.xi(i);
        let rho = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        if rho == 0.0 {
            continue;
        }
        let mut cover = radial.scaling.eval(rho).powi(2);
        for level in 0..=jmax {
            cover += radial.band_at_level(level, rho).powi(2);
        }
        if cover < 1.0 - 1e-11 {
            continue;
        }
        let idx = grid.unravel(i);
        let neg: Vec<usize> = idx.iter().map(|&k| (n - k) % n).collect();
        if neg.iter().any(|&k| k == 0) {
            continue;
        }
        let j = grid.ravel(&neg);
        let dir: Vec<f64> = xi.iter().map(|v| v / rho).collect();
        let dir_neg: Vec<f64> = dir.iter().map(|v| -v).collect();
        for (ki, key) in keys.iter().enumerate() {
            let desc = ctx.table.get(key);
            let phase = desc.phase.eval(&[0.0; 3], &|_| Complex64::default());
            // hermitian pair of scalar amplitudes
            let a = 0.5 * (raw[ki][i] + raw[ki][j].conj());
            let monos = ctx.freq_monomials(key);
            let cmap = freq_component_map(grid.dim as u8, degree);
            for (k, mono) in monos.iter().enumerate() {
                let m = ctx.minor(0, desc.monomial, *mono, &dir);
                let m_neg = ctx.minor(0, desc.monomial, *mono, &dir_neg);
                let (jc, sign) = cmap[k];
                spectral.comps[jc][i] += a * phase * (sign * m);
                spectral.comps[jc][j] += a.conj() * phase * (sign * m_neg);
            }
        }
    }
    // zero anything that would alias: wipe the unpaired rows
    for i in 0..grid.len() {
        let idx = grid.unravel(i);
        if idx.iter().any(|&k| k == 0) {
            for c in spectral.comps.iter_mut() {
                c[i] = Complex64::default();
            }
        }
    }
    Ok(spectral.to_spatial())
}
