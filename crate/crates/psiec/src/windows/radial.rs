//! Radial frequency windows: a wavelet band `h(rho)` supported away from
//! zero plus a scaling (lowpass) window `g(rho)`, tied together by the
//! Calderon partition `g(rho)^2 + sum_{j>=0} h(2^{-j} rho)^2 = 1`.

use crate::specfun::RadialKernel;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which closed-form window pair to use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RadialWindowKind {
    /// Log-cosine band `cos((pi/2) log2(2 rho / pi))` on `(pi/4, pi)`.
    Steerable,
    /// Indicator of `(pi/2, pi]`; exact dyadic tiling, poor spatial decay.
    Box,
    /// Band built from the C-infinity auxiliary step; infinitely flat at the
    /// band edges, so the spatial kernels decay faster than any polynomial.
    Smooth,
}

fn aux_step(t: f64) -> f64 {
    // monotone 0 -> 1 on [0,1], all derivatives vanish at both ends,
    // and s(t) + s(1-t) = 1 exactly
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / t).exp();
    let b = (-1.0 / (1.0 - t)).exp();
    a / (a + b)
}

/// Wavelet band window `h(rho)` in mother units (support inside `(pi/4, pi]`).
#[derive(Debug, Clone)]
pub struct BandWindow {
    pub kind: RadialWindowKind,
}

impl RadialKernel for BandWindow {
    fn eval(&self, rho: f64) -> f64 {
        match self.kind {
            RadialWindowKind::Steerable => {
                if rho > PI / 4.0 && rho < PI {
                    ((PI / 2.0) * (2.0 * rho / PI).log2()).cos()
                } else {
                    0.0
                }
            }
            RadialWindowKind::Box => {
                if rho > PI / 2.0 && rho <= PI {
                    1.0
                } else {
                    0.0
                }
            }
            RadialWindowKind::Smooth => {
                let u = (2.0 * rho / PI).log2();
                if u > -1.0 && u < 0.0 {
                    aux_step(u + 1.0).sqrt()
                } else if u >= 0.0 && u < 1.0 {
                    aux_step(1.0 - u).sqrt()
                } else {
                    0.0
                }
            }
        }
    }

    fn support(&self) -> (f64, f64) {
        match self.kind {
            RadialWindowKind::Box => (PI / 2.0, PI),
            _ => (PI / 4.0, PI),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![PI / 2.0]
    }
}

/// Scaling (lowpass) window `g(rho)`, the Calderon complement of the bands.
#[derive(Debug, Clone)]
pub struct ScalingWindow {
    pub kind: RadialWindowKind,
}

impl RadialKernel for ScalingWindow {
    fn eval(&self, rho: f64) -> f64 {
        match self.kind {
            RadialWindowKind::Steerable => {
                if rho <= PI / 4.0 {
                    1.0
                } else if rho < PI / 2.0 {
                    ((PI / 2.0) * (4.0 * rho / PI).log2()).cos()
                } else {
                    0.0
                }
            }
            RadialWindowKind::Box => {
                if rho <= PI / 2.0 {
                    1.0
                } else {
                    0.0
                }
            }
            RadialWindowKind::Smooth => {
                if rho <= PI / 4.0 {
                    1.0
                } else if rho < PI / 2.0 {
                    aux_step(1.0 - (4.0 * rho / PI).log2()).sqrt()
                } else {
                    0.0
                }
            }
        }
    }

    fn support(&self) -> (f64, f64) {
        (0.0, PI / 2.0)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![PI / 4.0]
    }
}

/// Paired radial windows with band arithmetic helpers.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    pub kind: RadialWindowKind,
    pub band: BandWindow,
    pub scaling: ScalingWindow,
}

impl RadialProfile {
    pub fn new(kind: RadialWindowKind) -> Self {
        RadialProfile { kind, band: BandWindow { kind }, scaling: ScalingWindow { kind } }
    }

    /// Steerable-pyramid pair (the default band construction).
    pub fn steerable() -> Self {
        Self::new(RadialWindowKind::Steerable)
    }

    /// `h(2^{-j} rho)`, zero outside the dyadically scaled support.
    pub fn band_at_level(&self, level: i32, rho: f64) -> f64 {
        self.band.eval(rho * 2.0_f64.powi(-level))
    }

    /// Window of the scalar atom at `level` (`level = -1` is the scaling
    /// window in mother units).
    pub fn level_window(&self, level: i32, rho: f64) -> f64 {
        if level < 0 {
            self.scaling.eval(rho)
        } else {
            self.band_at_level(level, rho)
        }
    }

    /// Frequency support of the level window.
    pub fn level_support(&self, level: i32) -> (f64, f64) {
        if level < 0 {
            self.scaling.support()
        } else {
            let (a, b) = self.band.support();
            let s = 2.0_f64.powi(level);
            (a * s, b * s)
        }
    }

    /// Squared-window partition `g(rho)^2 + sum_j h(2^{-j} rho)^2` with every
    /// band whose support reaches `rho` included.
    pub fn partition_value(&self, rho: f64) -> f64 {
        let mut acc = self.scaling.eval(rho).powi(2);
        let (lo, _) = self.band.support();
        let jmax = (rho / lo).log2().ceil() as i32 + 1;
        for j in 0..=jmax.max(1) {
            acc += self.band_at_level(j, rho).powi(2);
        }
        acc
    }
}

/// Maximum Calderon-partition residual over a radius grid.
///
/// Bands `j = 0..` up to every band touching the grid are included, so the
/// residual measures the partition quality itself rather than truncation.
pub fn calderon_check(profile: &RadialProfile, grid: &[f64]) -> f64 {
    let mut worst = 0.0_f64;
    for &rho in grid {
        worst = worst.max((profile.partition_value(rho) - 1.0).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
    }

    #[test]
    fn steerable_band_values() {
        let p = RadialProfile::steerable();
        assert_abs_diff_eq!(p.band.eval(PI / 2.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.band.eval(PI / 4.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.band.eval(PI), 0.0, epsilon = 1e-15);
        assert_eq!(p.band.eval(PI / 4.0 - 1e-12), 0.0);
        assert_eq!(p.band.eval(PI + 1e-12), 0.0);
    }

    #[test]
    fn steerable_partition_of_unity() {
        let p = RadialProfile::steerable();
        let residual = calderon_check(&p, &grid(0.1, PI, 2000));
        assert!(residual < 1e-10, "residual {residual}");
    }

    #[test]
    fn steerable_partition_wide_band() {
        let p = RadialProfile::steerable();
        let residual = calderon_check(&p, &grid(0.1, 64.0 * PI, 8000));
        assert!(residual < 1e-10, "residual {residual}");
    }

    #[test]
    fn box_partition_exact() {
        let p = RadialProfile::new(RadialWindowKind::Box);
        let residual = calderon_check(&p, &grid(0.01, 8.0 * PI, 4097));
        assert!(residual < 1e-14, "residual {residual}");
    }

    #[test]
    fn smooth_partition_of_unity() {
        let p = RadialProfile::new(RadialWindowKind::Smooth);
        let residual = calderon_check(&p, &grid(0.1, 16.0 * PI, 4000));
        assert!(residual < 1e-12, "residual {residual}");
    }

    #[test]
    fn scaled_band_breaks_partition() {
        // h := 0.5 h gives residual about 0.75 at the band peak
        let p = RadialProfile::steerable();
        let mut worst = 0.0_f64;
        for &rho in &grid(0.3, PI, 500) {
            let mut acc = p.scaling.eval(rho).powi(2);
            for j in 0..4 {
                acc += (0.5 * p.band_at_level(j, rho)).powi(2);
            }
            worst = worst.max((acc - 1.0).abs());
        }
        assert_abs_diff_eq!(worst, 0.75, epsilon = 1e-6);
    }

    #[test]
    fn support_containment() {
        let p = RadialProfile::new(RadialWindowKind::Smooth);
        let (a, b) = p.band.support();
        assert_eq!(p.band.eval(a * 0.999), 0.0);
        assert_eq!(p.band.eval(b * 1.001), 0.0);
        assert_eq!(p.scaling.eval(PI / 2.0 + 1e-9), 0.0);
    }
}
