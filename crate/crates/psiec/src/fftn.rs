//! FFTs between centered spatial and centered frequency grids.
//!
//! The transforms approximate the unitary continuous Fourier transform by
//! its Riemann sum on the grid: `spatial_to_freq` maps samples `f(x_j)` to
//! samples `fhat(xi_k)` with the `(2 pi)^{-n/2}` convention, and
//! `freq_to_spatial` inverts it exactly.

use crate::grid::Grid;
use crate::par::{for_each_mut, ExecMode};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::sync::Arc;

fn checkerboard(grid: &Grid, data: &mut [Complex64]) {
    // multiply by (-1)^{sum of axis indices}; valid shift phase since n % 4 == 0
    for_each_mut(ExecMode::auto(), data, |flat, v| {
        let idx = grid_unravel_sum(grid, flat);
        if idx % 2 == 1 {
            *v = -*v;
        }
    });
}

fn grid_unravel_sum(grid: &Grid, mut flat: usize) -> usize {
    let mut s = 0;
    for _ in 0..grid.dim {
        s += flat % grid.n;
        flat /= grid.n;
    }
    s
}

fn dft_all_axes(grid: &Grid, data: &mut [Complex64], inverse: bool) {
    let n = grid.n;
    let mut planner = FftPlanner::new();
    let fft: Arc<dyn rustfft::Fft<f64>> =
        if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    for axis in 0..grid.dim {
        let stride = n.pow((grid.dim - 1 - axis) as u32);
        let lines = data.len() / n;
        // gather lines, transform, scatter
        let mut scratch: Vec<Vec<Complex64>> = Vec::new();
        let line_starts: Vec<usize> = (0..lines)
            .map(|l| {
                let block = l / stride;
                let offset = l % stride;
                block * stride * n + offset
            })
            .collect();
        scratch.resize_with(lines, || vec![Complex64::default(); n]);
        for (l, buf) in scratch.iter_mut().enumerate() {
            let start = line_starts[l];
            for (i, b) in buf.iter_mut().enumerate() {
                *b = data[start + i * stride];
            }
        }
        let fft_ref = &fft;
        for_each_mut(ExecMode::auto(), &mut scratch, |_, buf| {
            fft_ref.process(buf);
        });
        for (l, buf) in scratch.iter().enumerate() {
            let start = line_starts[l];
            for (i, b) in buf.iter().enumerate() {
                data[start + i * stride] = *b;
            }
        }
    }
}

/// Centered DFT: `out[k] = sum_j in[j] e^{-2 pi i (j - n/2)(k - n/2) / n}` per axis.
pub fn dft_centered(grid: &Grid, data: &mut [Complex64], inverse: bool) {
    checkerboard(grid, data);
    dft_all_axes(grid, data, inverse);
    checkerboard(grid, data);
}

/// Samples of the unitary Fourier transform from spatial samples.
pub fn spatial_to_freq(grid: &Grid, data: &mut [Complex64]) {
    dft_centered(grid, data, false);
    let s = grid.cell_volume() * (2.0 * std::f64::consts::PI).powf(-(grid.dim as f64) / 2.0);
    for v in data.iter_mut() {
        *v *= s;
    }
}

/// Spatial samples from samples of the unitary Fourier transform.
pub fn freq_to_spatial(grid: &Grid, data: &mut [Complex64]) {
    dft_centered(grid, data, true);
    let s = grid.cell_volume_freq() * (2.0 * std::f64::consts::PI).powf(-(grid.dim as f64) / 2.0);
    for v in data.iter_mut() {
        *v *= s;
    }
}
