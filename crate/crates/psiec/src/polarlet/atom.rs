//! Scalar polar wavelet atoms: frequency evaluation from the windows and
//! closed-form spatial evaluation through cached Hankel transforms.

use crate::grid::Grid;
use crate::par::{map_indexed, ExecMode};
use crate::specfun::{sph_harm_all, HankelKind, HankelTable, SphIndex};
use crate::windows::{WindowConfig, WindowSet2, WindowSet3};
use crate::{Error, Result};
use num_complex::Complex64;

/// Index of a scalar atom: dyadic level (`-1` is the scaling band),
/// translation on the level lattice, orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarAtom {
    pub level: i32,
    pub shift: Vec<i32>,
    pub orient: usize,
}

impl ScalarAtom {
    pub fn new(level: i32, shift: Vec<i32>, orient: usize) -> Self {
        if level < 0 {
            assert_eq!(orient, 0, "scaling atoms are isotropic");
        }
        ScalarAtom { level, shift, orient }
    }

    /// Effective dyadic exponent; the scaling band lives on the unit lattice.
    pub fn level_eff(&self) -> i32 {
        self.level.max(0)
    }

    /// Lattice spacing `2^{-j}`.
    pub fn spacing(&self) -> f64 {
        2.0_f64.powi(-self.level_eff())
    }

    pub fn center(&self) -> Vec<f64> {
        self.shift.iter().map(|&k| k as f64 * self.spacing()).collect()
    }
}

/// Dimension-erased window set.
#[derive(Debug, Clone)]
pub enum Windows {
    Two(WindowSet2),
    Three(WindowSet3),
}

impl Windows {
    pub fn dim(&self) -> usize {
        match self {
            Windows::Two(_) => 2,
            Windows::Three(_) => 3,
        }
    }

    pub fn orientations(&self) -> usize {
        match self {
            Windows::Two(w) => w.angular.orientations,
            Windows::Three(w) => w.angular.orientations.len(),
        }
    }

    pub fn radial(&self) -> &crate::windows::RadialProfile {
        match self {
            Windows::Two(w) => &w.radial,
            Windows::Three(w) => &w.radial,
        }
    }

    /// Angular window value at a unit direction.
    pub fn angular(&self, t: usize, dir: &[f64]) -> Complex64 {
        match self {
            Windows::Two(w) => {
                let theta = dir[1].atan2(dir[0]);
                w.angular.eval(t, theta)
            }
            Windows::Three(w) => {
                let theta = dir[2].clamp(-1.0, 1.0).acos();
                let phi = dir[1].atan2(dir[0]);
                w.angular.eval(t, theta, phi)
            }
        }
    }

    /// Largest angular index (harmonic order / degree) present.
    pub fn max_angular(&self) -> u32 {
        match self {
            Windows::Two(w) => w.angular.max_harmonic as u32,
            Windows::Three(w) => w.angular.max_degree,
        }
    }
}

/// Hankel caches backing spatial evaluation.
pub struct SpatialTables {
    pub band: HankelTable,
    pub scaling: HankelTable,
}

/// Windows plus (optionally) the Hankel caches needed for spatial
/// evaluation; frequency-domain work never builds the caches.
pub struct ScalarContext {
    pub windows: Windows,
    tables: Option<SpatialTables>,
}

impl ScalarContext {
    /// Frequency-only context.
    pub fn new(config: &WindowConfig, dim: usize) -> Result<Self> {
        let windows = match dim {
            2 => Windows::Two(config.build_2d()),
            3 => Windows::Three(config.build_3d()),
            _ => return Err(Error::Config(format!("dimension {dim} unsupported"))),
        };
        Ok(ScalarContext { windows, tables: None })
    }

    /// Context around explicitly constructed windows.
    pub fn from_windows(windows: Windows) -> Self {
        ScalarContext { windows, tables: None }
    }

    /// Builds caches suitable for a grid of the given extent and maximum
    /// level: the largest radius seen by an atom is the grid diameter scaled
    /// by `2^{jmax}`, plus slack for off-grid shifts.
    pub fn build(
        config: &WindowConfig,
        dim: usize,
        extent: f64,
        max_level: i32,
        max_order: usize,
        qs: &[i32],
        mode: ExecMode,
    ) -> Result<Self> {
        let rmax = extent * (dim as f64).sqrt() * 2.0_f64.powi(max_level.max(0)) / 2.0 + 12.0;
        let mut ctx = Self::new(config, dim)?;
        ctx.build_spatial_tables(rmax, max_order, qs, mode)?;
        Ok(ctx)
    }

    pub fn build_spatial_tables(
        &mut self,
        rmax: f64,
        max_order: usize,
        qs: &[i32],
        mode: ExecMode,
    ) -> Result<()> {
        let dim = self.dim();
        let kind = if dim == 2 { HankelKind::Polar } else { HankelKind::Spherical };
        let radial = self.windows.radial().clone();
        let band = HankelTable::build(&radial.band, kind, max_order, qs, rmax, 0.02, mode)?;
        // the scaling band only keeps weights that stay integrable against
        // the measure at zero
        let qs_scaling: Vec<i32> = qs.iter().copied().filter(|&q| q < dim as i32).collect();
        let qs_scaling = if qs_scaling.is_empty() { vec![0] } else { qs_scaling };
        let scaling =
            HankelTable::build(&radial.scaling, kind, max_order, &qs_scaling, rmax, 0.02, mode)?;
        self.tables = Some(SpatialTables { band, scaling });
        Ok(())
    }

    pub fn tables(&self) -> Result<&SpatialTables> {
        self.tables
            .as_ref()
            .ok_or_else(|| Error::Config("spatial tables not built for this context".into()))
    }

    pub fn dim(&self) -> usize {
        self.windows.dim()
    }

    /// `2^{-n j / 2} (2 pi)^{-n/2}`, the frequency-side normalization.
    pub fn freq_norm(&self, level: i32) -> f64 {
        let n = self.dim() as f64;
        2.0_f64.powf(-n * level.max(0) as f64 / 2.0)
            * (2.0 * std::f64::consts::PI).powf(-n / 2.0)
    }

    /// Band profile at a frequency point, without the translation phase.
    pub fn profile(&self, level: i32, orient: usize, xi: &[f64]) -> Complex64 {
        let rho = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        let radial = self.windows.radial().level_window(level, rho);
        if radial == 0.0 {
            return Complex64::default();
        }
        let c = self.freq_norm(level);
        if level < 0 || rho == 0.0 {
            return Complex64::new(c * radial, 0.0);
        }
        let dir: Vec<f64> = xi.iter().map(|v| v / rho).collect();
        c * radial * self.windows.angular(orient, &dir)
    }

    /// Full frequency-domain atom value.
    pub fn eval_freq(&self, atom: &ScalarAtom, xi: &[f64]) -> Complex64 {
        let p = self.profile(atom.level, atom.orient, xi);
        if p == Complex64::default() {
            return p;
        }
        let dot: f64 = xi.iter().zip(atom.center().iter()).map(|(a, b)| a * b).sum();
        p * Complex64::from_polar(1.0, -dot)
    }

    /// Spatial atom value; exact cancellation makes it real, the imaginary
    /// part is returned for the realness diagnostics.
    pub fn eval_space(&self, atom: &ScalarAtom, x: &[f64]) -> Result<Complex64> {
        let n = self.dim();
        let jf = 2.0_f64.powi(atom.level_eff());
        let y: Vec<f64> = x
            .iter()
            .zip(atom.shift.iter())
            .map(|(&xi, &k)| jf * xi - k as f64)
            .collect();
        let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let tables = self.tables()?;
        let table = if atom.level < 0 { &tables.scaling } else { &tables.band };
        // spatial normalization: 2^{n j / 2} (2 pi)^{-n/2} x (angular transform factor)
        let c = 2.0_f64.powf(n as f64 * atom.level_eff() as f64 / 2.0)
            * (2.0 * std::f64::consts::PI).powf(-(n as f64));
        match &self.windows {
            Windows::Two(w) => {
                let theta = if r > 0.0 { y[1].atan2(y[0]) } else { 0.0 };
                let mut acc = Complex64::default();
                if atom.level < 0 {
                    acc += Complex64::new(table.eval(0, 0, r)?, 0.0);
                } else {
                    let nm = w.angular.max_harmonic;
                    for m in -nm..=nm {
                        let beta = w.angular.beta_oriented(m, atom.orient);
                        if beta.norm_sqr() == 0.0 {
                            continue;
                        }
                        let h = table.eval(m, 0, r)?;
                        acc += ipow(m) * beta * Complex64::from_polar(1.0, m as f64 * theta) * h;
                    }
                }
                Ok(acc * c * 2.0 * std::f64::consts::PI)
            }
            Windows::Three(w) => {
                let mut acc = Complex64::default();
                if atom.level < 0 || r == 0.0 {
                    let zonal = if atom.level < 0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        // only l = 0 survives at the origin
                        w.angular.kappa(atom.orient, 0, 0)
                            * (1.0 / (4.0 * std::f64::consts::PI).sqrt())
                    };
                    acc += zonal * table.eval(0, 0, r)?;
                } else {
                    let dir = [y[0] / r, y[1] / r, y[2] / r];
                    let theta = dir[2].clamp(-1.0, 1.0).acos();
                    let phi = dir[1].atan2(dir[0]);
                    let lmax = w.angular.max_degree;
                    let ys = sph_harm_all(lmax, theta, phi);
                    for l in 0..=lmax {
                        let h = table.eval(l as i32, 0, r)?;
                        if h == 0.0 {
                            continue;
                        }
                        let il = ipow(l as i32);
                        for m in -(l as i32)..=(l as i32) {
                            let kap = w.angular.kappa(atom.orient, l, m);
                            if kap.norm_sqr() == 0.0 {
                                continue;
                            }
                            acc += il * kap * ys[SphIndex::new(l, m).flat()] * h;
                        }
                    }
                }
                Ok(acc * c * 4.0 * std::f64::consts::PI)
            }
        }
    }

    /// Spatial samples over a whole grid.
    pub fn eval_space_grid(
        &self,
        atom: &ScalarAtom,
        grid: &Grid,
        mode: ExecMode,
    ) -> Result<Vec<Complex64>> {
        let vals = map_indexed(mode, grid.len(), |i| self.eval_space(atom, &grid.x(i)));
        vals.into_iter().collect()
    }
}

pub fn ipow(k: i32) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}
