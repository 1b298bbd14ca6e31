//! Independent verification oracles used by the test suites.
//!
//! These deliberately avoid the closed-form spatial evaluation paths: fields
//! are produced by sampling frequency-domain profiles and applying the FFT,
//! so closed forms can be checked against them.

use crate::fftn;
use crate::grid::Grid;
use crate::par::{map_indexed, ExecMode};
use crate::{Error, Result};
use num_complex::Complex64;

/// Inverse-FFT oracle on an enlarged periodization box, restricted to the
/// target grid. The enlarged box pushes wrap-around images far away, so the
/// result approximates the non-periodic field on the target region.
///
/// `factor` multiplies both the extent and the point count, keeping the
/// spacing identical; target grid points coincide with a subset of the
/// enlarged grid.
pub fn freq_to_spatial_oracle<F>(
    target: &Grid,
    factor: usize,
    profile: F,
    mode: ExecMode,
) -> Result<Vec<Complex64>>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let big = Grid::new(target.dim, target.n * factor, target.extent * factor as f64)?;
    if (big.dx() - target.dx()).abs() > 1e-12 {
        return Err(Error::GridMismatch("oracle grid spacing mismatch".into()));
    }
    let mut data = map_indexed(mode, big.len(), |i| profile(&big.xi(i)));
    fftn::freq_to_spatial(&big, &mut data);
    // extract the centered sub-box
    let off = (big.n - target.n) / 2;
    let mut out = vec![Complex64::default(); target.len()];
    for (flat, v) in out.iter_mut().enumerate() {
        let idx = target.unravel(flat);
        let big_idx: Vec<usize> = idx.iter().map(|&i| i + off).collect();
        *v = data[big.ravel(&big_idx)];
    }
    Ok(out)
}

/// Relative `L^2` distance between two complex sample sets.
pub fn rel_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        num += (x - y).norm_sqr();
        den += y.norm_sqr();
    }
    if den == 0.0 {
        return if num == 0.0 { 0.0 } else { f64::INFINITY };
    }
    (num / den).sqrt()
}
