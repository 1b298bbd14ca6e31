//! Centered periodic grids shared by the sampled-field machinery.
//!
//! Axis `i` samples `x = (idx - n/2) * dx` with `dx = extent / n`; the
//! matching frequency axis samples `xi = (idx - n/2) * 2 pi / extent`.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub dim: usize,
    /// Points per axis (equal on all axes, power of two).
    pub n: usize,
    /// Physical extent per axis.
    pub extent: f64,
}

impl Grid {
    pub fn new(dim: usize, n: usize, extent: f64) -> Result<Self> {
        if !(n.is_power_of_two() && n >= 4) {
            return Err(Error::Config(format!("grid size {n} must be a power of two >= 4")));
        }
        if !(extent > 0.0) {
            return Err(Error::Config("grid extent must be positive".into()));
        }
        if !(2..=3).contains(&dim) {
            return Err(Error::Config(format!("dimension {dim} unsupported")));
        }
        Ok(Grid { dim, n, extent })
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.extent / self.n as f64
    }

    pub fn dxi(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.extent
    }

    /// Nyquist frequency magnitude per axis.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.dx()
    }

    /// Spatial coordinate of a flat index.
    pub fn x(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat).iter().map(|&i| (i as f64 - (self.n / 2) as f64) * self.dx()).collect()
    }

    /// Frequency coordinate of a flat index (centered layout).
    pub fn xi(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat).iter().map(|&i| (i as f64 - (self.n / 2) as f64) * self.dxi()).collect()
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.dim];
        for d in (0..self.dim).rev() {
            idx[d] = flat % self.n;
            flat /= self.n;
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        let mut flat = 0;
        for &i in idx {
            flat = flat * self.n + i;
        }
        flat
    }

    /// Cell volume `dx^dim`.
    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(self.dim as i32)
    }

    /// Frequency cell volume `dxi^dim`.
    pub fn cell_volume_freq(&self) -> f64 {
        self.dxi().powi(self.dim as i32)
    }
}
