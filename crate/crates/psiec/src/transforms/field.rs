//! Grid-sampled differential forms and their pointwise operations.

use crate::exterior::Monomial;
use crate::fftn;
use crate::grid::Grid;
use crate::wavelets::cartesian_monomials;
use crate::{Error, Result};
use num_complex::Complex64;

/// Real spatial samples of an r-form: one array per ordered multi-index,
/// component order given by [`cartesian_monomials`].
#[derive(Debug, Clone)]
pub struct SampledFormField {
    pub grid: Grid,
    pub degree: u8,
    pub comps: Vec<Vec<f64>>,
}

/// Complex frequency samples of an r-form (components indexed like the
/// spatial field of the same degree).
#[derive(Debug, Clone)]
pub struct SpectralFormField {
    pub grid: Grid,
    pub degree: u8,
    pub comps: Vec<Vec<Complex64>>,
}

impl SampledFormField {
    pub fn zeros(grid: Grid, degree: u8) -> Self {
        let n_comp = cartesian_monomials(grid.dim as u8, degree).len();
        let len = grid.len();
        SampledFormField { grid, degree, comps: vec![vec![0.0; len]; n_comp] }
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        cartesian_monomials(self.grid.dim as u8, self.degree)
    }

    pub fn to_spectral(&self) -> SpectralFormField {
        let comps = self
            .comps
            .iter()
            .map(|c| {
                let mut buf: Vec<Complex64> =
                    c.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                fftn::spatial_to_freq(&self.grid, &mut buf);
                buf
            })
            .collect();
        SpectralFormField { grid: self.grid.clone(), degree: self.degree, comps }
    }

    pub fn energy(&self) -> f64 {
        self.comps
            .iter()
            .map(|c| c.iter().map(|v| v * v).sum::<f64>())
            .sum::<f64>()
            * self.grid.cell_volume()
    }

    /// Pointwise check of grid compatibility.
    pub fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("fields on different grids".into()));
        }
        Ok(())
    }
}

impl SpectralFormField {
    pub fn zeros(grid: Grid, degree: u8) -> Self {
        let n_comp = cartesian_monomials(grid.dim as u8, degree).len();
        let len = grid.len();
        SpectralFormField { grid, degree, comps: vec![vec![Complex64::default(); len]; n_comp] }
    }

    pub fn to_spatial(&self) -> SampledFormField {
        let comps = self
            .comps
            .iter()
            .map(|c| {
                let mut buf = c.clone();
                fftn::freq_to_spatial(&self.grid, &mut buf);
                buf.iter().map(|v| v.re).collect()
            })
            .collect();
        SampledFormField { grid: self.grid.clone(), degree: self.degree, comps }
    }

    /// Largest imaginary residue after inverse transform (realness check).
    pub fn max_imag_after_inverse(&self) -> f64 {
        let mut worst = 0.0_f64;
        for c in &self.comps {
            let mut buf = c.clone();
            fftn::freq_to_spatial(&self.grid, &mut buf);
            for v in buf {
                worst = worst.max(v.im.abs());
            }
        }
        worst
    }

    /// Graded energy `int |xi|^{2 s} |field|^2`.
    pub fn graded_energy(&self, s: i32) -> f64 {
        let mut acc = 0.0;
        for c in &self.comps {
            for (i, v) in c.iter().enumerate() {
                let xi = self.grid.xi(i);
                let rho2: f64 = xi.iter().map(|v| v * v).sum();
                if rho2 == 0.0 && s < 0 {
                    continue;
                }
                acc += v.norm_sqr() * rho2.powi(s);
            }
        }
        acc * self.grid.cell_volume_freq()
    }
}

/// `L^2` pairing of two same-degree spatial fields (Euclidean contraction
/// over ordered multi-indices).
pub fn plancherel_pair_spatial(a: &SampledFormField, b: &SampledFormField) -> Result<f64> {
    a.check_same_grid(b)?;
    if a.degree != b.degree {
        return Err(Error::Degree("pairing requires equal degrees".into()));
    }
    let mut acc = 0.0;
    for (ca, cb) in a.comps.iter().zip(b.comps.iter()) {
        for (x, y) in ca.iter().zip(cb.iter()) {
            acc += x * y;
        }
    }
    Ok(acc * a.grid.cell_volume())
}

/// Frequency-side pairing `int sum_J a_J conj(b_J) dxi` (real part).
pub fn plancherel_pair_freq(a: &SpectralFormField, b: &SpectralFormField) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch("fields on different grids".into()));
    }
    if a.degree != b.degree {
        return Err(Error::Degree("pairing requires equal degrees".into()));
    }
    let mut acc = Complex64::default();
    for (ca, cb) in a.comps.iter().zip(b.comps.iter()) {
        for (x, y) in ca.iter().zip(cb.iter()) {
            acc += x * y.conj();
        }
    }
    Ok((acc * a.grid.cell_volume_freq()).re)
}

/// Pointwise exterior product of sampled forms.
pub fn wedge_sampled(a: &SampledFormField, b: &SampledFormField) -> Result<SampledFormField> {
    a.check_same_grid(b)?;
    let dim = a.grid.dim as u8;
    let degree = a.degree + b.degree;
    if degree > dim {
        return Err(Error::Degree(format!(
            "wedge degree {} exceeds dimension {dim}",
            degree
        )));
    }
    let monos_a = a.monomials();
    let monos_b = b.monomials();
    let monos_out = cartesian_monomials(dim, degree);
    let mut out = SampledFormField::zeros(a.grid.clone(), degree);
    for (ia, ma) in monos_a.iter().enumerate() {
        for (ib, mb) in monos_b.iter().enumerate() {
            if let Some((sign, m)) = ma.wedge(mb) {
                let slot = monos_out.iter().position(|x| *x == m).unwrap();
                let s = sign as f64;
                for i in 0..a.grid.len() {
                    out.comps[slot][i] += s * a.comps[ia][i] * b.comps[ib][i];
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid2() -> Grid {
        Grid::new(2, 16, 4.0).unwrap()
    }

    #[test]
    fn wedge_antisymmetry_odd_degree() {
        let grid = grid2();
        let mut a = SampledFormField::zeros(grid, 1);
        for i in 0..a.grid.len() {
            a.comps[0][i] = (i as f64 * 0.1).sin();
            a.comps[1][i] = (i as f64 * 0.07).cos();
        }
        let w = wedge_sampled(&a, &a).unwrap();
        for c in &w.comps {
            for v in c {
                assert_eq!(*v, 0.0);
            }
        }
    }

    #[test]
    fn wedge_degree_overflow() {
        let grid = grid2();
        let a = SampledFormField::zeros(grid.clone(), 1);
        let b = SampledFormField::zeros(grid, 2);
        assert!(wedge_sampled(&a, &b).is_err());
    }

    #[test]
    fn orthogonal_components_pair_to_zero() {
        let grid = grid2();
        let mut a = SampledFormField::zeros(grid.clone(), 1);
        let mut b = SampledFormField::zeros(grid, 1);
        for i in 0..a.grid.len() {
            a.comps[0][i] = 1.0;
            b.comps[1][i] = 2.0;
        }
        assert_eq!(plancherel_pair_spatial(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn spatial_freq_pairing_agree() {
        let grid = Grid::new(2, 32, 8.0).unwrap();
        let mut a = SampledFormField::zeros(grid.clone(), 1);
        let mut b = SampledFormField::zeros(grid, 1);
        for i in 0..a.grid.len() {
            let x = a.grid.x(i);
            let g = (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp();
            a.comps[0][i] = g * x[1];
            a.comps[1][i] = g;
            b.comps[0][i] = g * x[0];
            b.comps[1][i] = g * 0.3;
        }
        let s = plancherel_pair_spatial(&a, &b).unwrap();
        let f = plancherel_pair_freq(&a.to_spectral(), &b.to_spectral()).unwrap();
        assert!((s - f).abs() < 1e-10 * s.abs().max(1.0), "{s} vs {f}");
    }

    #[test]
    fn volume_wedge_reduces_to_product() {
        // 2-form wedge 1-form in R^3 with only the dx1^dx2 and dx3 slots
        let grid = Grid::new(3, 8, 4.0).unwrap();
        let mut a = SampledFormField::zeros(grid.clone(), 2);
        let mut b = SampledFormField::zeros(grid, 1);
        // component order for degree 2: [dx12, dx13, dx23]
        for i in 0..a.grid.len() {
            a.comps[0][i] = (i % 7) as f64;
            b.comps[2][i] = (i % 5) as f64;
        }
        let w = wedge_sampled(&a, &b).unwrap();
        assert_eq!(w.comps.len(), 1);
        for i in 0..w.comps[0].len() {
            assert_eq!(w.comps[0][i], ((i % 7) * (i % 5)) as f64);
        }
    }
}
