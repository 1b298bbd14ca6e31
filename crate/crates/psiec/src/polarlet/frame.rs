//! Scalar tight-frame analysis and synthesis on periodic grids.
//!
//! Inner products are taken in the frequency domain: one inverse FFT per
//! band and orientation yields all translation coefficients of that band at
//! once, since level-`j` atoms sit on the lattice `2^{-j} Z^n` which embeds
//! in the grid whenever `2^j dx` divides the lattice spacing.

use super::atom::ScalarContext;
use crate::fftn;
use crate::specfun::RadialKernel;
use crate::grid::Grid;
use crate::par::{map_indexed, ExecMode};
use crate::{Error, Result};
use num_complex::Complex64;

/// Coefficients of one band: all lattice translations of one orientation.
#[derive(Debug, Clone)]
pub struct BandCoefficients {
    pub level: i32,
    pub orient: usize,
    /// Lattice points per axis.
    pub lattice_n: usize,
    /// Row-major over the lattice, centered like the grid.
    pub values: Vec<Complex64>,
}

/// Scalar frame coefficients for levels `-1 ..= jmax`.
#[derive(Debug, Clone)]
pub struct ScalarCoefficients {
    pub bands: Vec<BandCoefficients>,
    /// Fraction of input energy outside the frame's frequency cover.
    pub leakage: f64,
}

impl ScalarCoefficients {
    pub fn energy(&self) -> f64 {
        self.bands.iter().map(|b| b.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sum()
    }
}

/// Number of lattice points per axis at a level.
pub fn lattice_size(grid: &Grid, level: i32) -> Result<usize> {
    let spacing = 2.0_f64.powi(-level.max(0));
    let ratio = spacing / grid.dx();
    if (ratio - ratio.round()).abs() > 1e-9 || ratio < 1.0 {
        return Err(Error::GridMismatch(format!(
            "level {level} lattice spacing {spacing} incompatible with dx {}",
            grid.dx()
        )));
    }
    let n = grid.extent / spacing;
    if (n - n.round()).abs() > 1e-9 {
        return Err(Error::GridMismatch(format!(
            "extent {} not an integer multiple of lattice spacing {spacing}",
            grid.extent
        )));
    }
    Ok(n.round() as usize)
}

/// Grid stride between adjacent lattice points of a level.
pub fn lattice_stride(grid: &Grid, level: i32) -> Result<usize> {
    let spacing = 2.0_f64.powi(-level.max(0));
    Ok((spacing / grid.dx()).round() as usize)
}

/// Analysis of a frequency-domain field against one band: returns the
/// coefficient lattice.
pub fn analyze_band_hat(
    ctx: &ScalarContext,
    grid: &Grid,
    field_hat: &[Complex64],
    level: i32,
    orient: usize,
    mode: ExecMode,
) -> Result<BandCoefficients> {
    let lattice_n = lattice_size(grid, level)?;
    let stride = lattice_stride(grid, level)?;
    // multiply by the conjugate band profile
    let mut work = map_indexed(mode, grid.len(), |i| {
        let xi = grid.xi(i);
        field_hat[i] * ctx.profile(level, orient, &xi).conj()
    });
    fftn::freq_to_spatial(grid, &mut work);
    let scale = (2.0 * std::f64::consts::PI).powf(grid.dim as f64 / 2.0);
    // subsample at lattice points (lattice index 0 = grid index 0, both centered)
    let mut values = vec![Complex64::default(); lattice_n.pow(grid.dim as u32)];
    let dims = grid.dim;
    for (flat, v) in values.iter_mut().enumerate() {
        let mut rem = flat;
        let mut gidx = vec![0usize; dims];
        for d in (0..dims).rev() {
            gidx[d] = (rem % lattice_n) * stride;
            rem /= lattice_n;
        }
        *v = work[grid.ravel(&gidx)] * scale;
    }
    Ok(BandCoefficients { level, orient, lattice_n, values })
}

/// The translate sum `S(xi) = sum_k alpha_k e^{-i xi x_k}` of a coefficient
/// lattice, sampled on the grid frequencies.
pub fn translate_sum(
    grid: &Grid,
    level: i32,
    lattice_n: usize,
    values: &[Complex64],
) -> Result<Vec<Complex64>> {
    let stride = lattice_stride(grid, level)?;
    let mut impulses = vec![Complex64::default(); grid.len()];
    let dims = grid.dim;
    for (flat, v) in values.iter().enumerate() {
        let mut rem = flat;
        let mut gidx = vec![0usize; dims];
        for d in (0..dims).rev() {
            gidx[d] = (rem % lattice_n) * stride;
            rem /= lattice_n;
        }
        impulses[grid.ravel(&gidx)] = *v;
    }
    fftn::spatial_to_freq(grid, &mut impulses);
    // spatial_to_freq carries dx^n (2 pi)^{-n/2}; the translate sum needs bare phases
    let undo = (2.0 * std::f64::consts::PI).powf(grid.dim as f64 / 2.0) / grid.cell_volume();
    for v in impulses.iter_mut() {
        *v *= undo;
    }
    Ok(impulses)
}

/// Adds one band's synthesis to a frequency-domain accumulator.
pub fn synthesize_band_hat(
    ctx: &ScalarContext,
    grid: &Grid,
    band: &BandCoefficients,
    acc: &mut [Complex64],
    mode: ExecMode,
) -> Result<()> {
    let s = translate_sum(grid, band.level, band.lattice_n, &band.values)?;
    let level = band.level;
    let orient = band.orient;
    crate::par::for_each_mut(mode, acc, |i, a| {
        let xi = grid.xi(i);
        let p = ctx.profile(level, orient, &xi);
        if p != Complex64::default() {
            *a += s[i] * p;
        }
    });
    Ok(())
}

/// Levels `-1 ..= jmax`, with the scaling band first.
pub fn level_range(jmax: i32) -> Vec<i32> {
    (-1..=jmax).collect()
}

/// Full analysis of a frequency-domain field.
pub fn analyze_hat(
    ctx: &ScalarContext,
    grid: &Grid,
    field_hat: &[Complex64],
    jmax: i32,
    mode: ExecMode,
) -> Result<ScalarCoefficients> {
    let mut bands = Vec::new();
    for level in level_range(jmax) {
        let orients = if level < 0 { 1 } else { ctx.windows.orientations() };
        for t in 0..orients {
            bands.push(analyze_band_hat(ctx, grid, field_hat, level, t, mode)?);
        }
    }
    // leakage: energy where the squared cover falls below one
    let mut covered = 0.0;
    let mut total = 0.0;
    for (i, v) in field_hat.iter().enumerate() {
        let e = v.norm_sqr();
        total += e;
        let xi = grid.xi(i);
        let rho = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut cover = ctx.windows.radial().scaling.eval(rho).powi(2);
        for level in 0..=jmax {
            cover += ctx.windows.radial().band_at_level(level, rho).powi(2);
        }
        covered += e * cover.min(1.0);
    }
    let leakage = if total > 0.0 { (total - covered).max(0.0) / total } else { 0.0 };
    Ok(ScalarCoefficients { bands, leakage })
}

/// Synthesis back to a frequency-domain field.
pub fn synthesize_hat(
    ctx: &ScalarContext,
    grid: &Grid,
    coeffs: &ScalarCoefficients,
    mode: ExecMode,
) -> Result<Vec<Complex64>> {
    let mut acc = vec![Complex64::default(); grid.len()];
    for band in &coeffs.bands {
        synthesize_band_hat(ctx, grid, band, &mut acc, mode)?;
    }
    Ok(acc)
}

/// Round-trip report for a spatial field.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub rel_error: f64,
    pub leakage: f64,
    /// `sum |coeff|^2 / ||f||^2`, one for a tight frame on covered fields.
    pub parseval_ratio: f64,
}

/// Analyzes and re-synthesizes a spatial field, reporting the relative
/// `L^2` error.
pub fn roundtrip(
    ctx: &ScalarContext,
    grid: &Grid,
    field: &[f64],
    jmax: i32,
    mode: ExecMode,
) -> Result<RoundTrip> {
    let mut hat: Vec<Complex64> = field.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fftn::spatial_to_freq(grid, &mut hat);
    let coeffs = analyze_hat(ctx, grid, &hat, jmax, mode)?;
    let back = synthesize_hat(ctx, grid, &coeffs, mode)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (a, b) in back.iter().zip(hat.iter()) {
        num += (a - b).norm_sqr();
        den += b.norm_sqr();
    }
    let field_energy: f64 = hat.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.cell_volume_freq();
    let coeff_energy = coeffs.energy();
    Ok(RoundTrip {
        rel_error: if den > 0.0 { (num / den).sqrt() } else { 0.0 },
        leakage: coeffs.leakage,
        parseval_ratio: if field_energy > 0.0 { coeff_energy / field_energy } else { 1.0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::{Angular2Kind, Angular3Kind, RadialWindowKind, WindowConfig};
    use rand::{Rng, SeedableRng};

    fn smooth_config(a2: Angular2Kind, a3: Angular3Kind) -> WindowConfig {
        WindowConfig { radial: RadialWindowKind::Smooth, angular2d: a2, angular3d: a3 }
    }

    /// Random field bandlimited to the frame cover by shaping white noise
    /// with the squared partition (which is exactly one inside the cover).
    fn random_covered_field(
        ctx: &ScalarContext,
        grid: &Grid,
        jmax: i32,
        seed: u64,
    ) -> Vec<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut hat = vec![Complex64::default(); grid.len()];
        for (i, v) in hat.iter_mut().enumerate() {
            let xi = grid.xi(i);
            let rho = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
            let mut cover = ctx.windows.radial().scaling.eval(rho).powi(2);
            for level in 0..=jmax {
                cover += ctx.windows.radial().band_at_level(level, rho).powi(2);
            }
            if cover > 1.0 - 1e-11 {
                *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        // hermitian symmetrize for a real field
        let n = grid.n;
        let mut sym = hat.clone();
        for i in 0..grid.len() {
            let idx = grid.unravel(i);
            let neg: Vec<usize> = idx.iter().map(|&k| (n - k) % n).collect();
            if neg.iter().any(|&k| k == 0) {
                sym[i] = Complex64::default();
                continue;
            }
            let j = grid.ravel(&neg);
            sym[i] = 0.5 * (hat[i] + hat[j].conj());
        }
        let mut field = sym;
        fftn::freq_to_spatial(grid, &mut field);
        field.iter().map(|v| v.re).collect()
    }

    #[test]
    fn zero_field_roundtrip() {
        let cfg = smooth_config(Angular2Kind::Isotropic, Angular3Kind::Isotropic);
        let ctx = ScalarContext::new(&cfg, 2).unwrap();
        let grid = Grid::new(2, 64, 8.0).unwrap();
        let field = vec![0.0; grid.len()];
        let r = roundtrip(&ctx, &grid, &field, 2, ExecMode::auto()).unwrap();
        assert_eq!(r.rel_error, 0.0);
    }

    #[test]
    fn isotropic_2d_roundtrip_j4() {
        let cfg = smooth_config(Angular2Kind::Isotropic, Angular3Kind::Isotropic);
        let ctx = ScalarContext::new(&cfg, 2).unwrap();
        let grid = Grid::new(2, 256, 16.0).unwrap();
        let field = random_covered_field(&ctx, &grid, 3, 7);
        let r = roundtrip(&ctx, &grid, &field, 3, ExecMode::auto()).unwrap();
        assert!(r.rel_error < 1e-6, "rel {}", r.rel_error);
        assert!(r.leakage < 1e-9, "leakage {}", r.leakage);
        assert!((r.parseval_ratio - 1.0).abs() < 1e-6, "parseval {}", r.parseval_ratio);
    }

    #[test]
    fn directional_2d_roundtrip() {
        let cfg = smooth_config(Angular2Kind::CosPower { power: 1 }, Angular3Kind::Isotropic);
        let ctx = ScalarContext::new(&cfg, 2).unwrap();
        let grid = Grid::new(2, 128, 16.0).unwrap();
        let field = random_covered_field(&ctx, &grid, 2, 13);
        let r = roundtrip(&ctx, &grid, &field, 2, ExecMode::auto()).unwrap();
        assert!(r.rel_error < 1e-6, "rel {}", r.rel_error);
        assert!((r.parseval_ratio - 1.0).abs() < 1e-6, "parseval {}", r.parseval_ratio);
    }

    #[test]
    fn directional_3d_roundtrip() {
        let cfg = smooth_config(Angular2Kind::Isotropic, Angular3Kind::CosPower { power: 1 });
        let ctx = ScalarContext::new(&cfg, 3).unwrap();
        let grid = Grid::new(3, 32, 8.0).unwrap();
        let field = random_covered_field(&ctx, &grid, 1, 23);
        let r = roundtrip(&ctx, &grid, &field, 1, ExecMode::auto()).unwrap();
        assert!(r.rel_error < 1e-6, "rel {}", r.rel_error);
        assert!((r.parseval_ratio - 1.0).abs() < 1e-6, "parseval {}", r.parseval_ratio);
    }

    #[test]
    fn single_atom_coefficient_roundtrip() {
        // analysis of a synthesized atom reproduces the atom after synthesis
        let cfg = smooth_config(Angular2Kind::Isotropic, Angular3Kind::Isotropic);
        let ctx = ScalarContext::new(&cfg, 2).unwrap();
        let grid = Grid::new(2, 64, 8.0).unwrap();
        let atom = super::super::atom::ScalarAtom::new(1, vec![2, -1], 0);
        let hat: Vec<Complex64> = (0..grid.len()).map(|i| ctx.eval_freq(&atom, &grid.xi(i))).collect();
        let coeffs = analyze_hat(&ctx, &grid, &hat, 2, ExecMode::auto()).unwrap();
        let back = synthesize_hat(&ctx, &grid, &coeffs, ExecMode::auto()).unwrap();
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in back.iter().zip(hat.iter()) {
            num += (a - b).norm_sqr();
            den += b.norm_sqr();
        }
        assert!((num / den).sqrt() < 1e-10);
    }
}
