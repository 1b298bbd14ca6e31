//! Hankel transforms of compactly supported radial frequency windows.
//!
//! Polar (2D): `h_m^{(q)}(r) = int rho^{-q} h(rho) J_m(rho r) rho drho`.
//! Spherical (3D): `h_l^{(q)}(r) = int rho^{-q} h(rho) j_l(rho r) rho^2 drho`.
//!
//! The transforms appear inside per-sample evaluation loops, so they are
//! precomputed on a uniform radius grid and interpolated (4-point Lagrange).

use super::bessel::{bessel_j_all, spherical_bessel_all};
use super::legendre::gauss_legendre;
use crate::par::{map_indexed, ExecMode};
use crate::{Error, Result};
use std::collections::HashMap;

/// A radial frequency window with compact support.
pub trait RadialKernel: Sync {
    fn eval(&self, rho: f64) -> f64;
    /// Support interval; evaluation outside returns zero.
    fn support(&self) -> (f64, f64);
    /// Interior points where the window is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HankelKind {
    /// `J_m` kernel, weight `rho`.
    Polar,
    /// `j_l` kernel, weight `rho^2`.
    Spherical,
}

fn panels(kernel: &dyn RadialKernel, r: f64, refine: usize) -> Vec<(f64, f64)> {
    let (a, b) = kernel.support();
    let mut cuts = vec![a, b];
    for c in kernel.breakpoints() {
        if c > a && c < b {
            cuts.push(c);
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // one Gauss panel per oscillation period is already spectrally exact
        let n = (((hi - lo) * r / (2.0 * std::f64::consts::PI)).ceil() as usize + 2) * refine;
        let step = (hi - lo) / n as f64;
        for i in 0..n {
            out.push((lo + i as f64 * step, lo + (i + 1) as f64 * step));
        }
    }
    out
}

/// One quadrature sweep producing all orders `0..=max_order` for all weights
/// `qs` at a single radius.
fn sweep(
    kernel: &dyn RadialKernel,
    kind: HankelKind,
    max_order: usize,
    qs: &[i32],
    r: f64,
    refine: usize,
) -> Vec<Vec<f64>> {
    let (gx, gw) = gauss_legendre(12);
    let mut acc = vec![vec![0.0; max_order + 1]; qs.len()];
    for (lo, hi) in panels(kernel, r, refine) {
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        for (&x, &w) in gx.iter().zip(gw.iter()) {
            let rho = c + h * x;
            let hv = kernel.eval(rho);
            if hv == 0.0 {
                continue;
            }
            let kvals = match kind {
                HankelKind::Polar => {
                    if rho * r > 0.0 {
                        bessel_j_all(max_order, rho * r)
                    } else {
                        let mut v = vec![0.0; max_order + 1];
                        v[0] = 1.0;
                        v
                    }
                }
                HankelKind::Spherical => {
                    if rho * r > 0.0 {
                        spherical_bessel_all(max_order, rho * r)
                    } else {
                        let mut v = vec![0.0; max_order + 1];
                        v[0] = 1.0;
                        v
                    }
                }
            };
            let base = match kind {
                HankelKind::Polar => rho,
                HankelKind::Spherical => rho * rho,
            };
            for (qi, &q) in qs.iter().enumerate() {
                let weight = w * h * hv * base * rho.powi(-q);
                for (m, kv) in kvals.iter().enumerate() {
                    acc[qi][m] += weight * kv;
                }
            }
        }
    }
    acc
}

/// Direct evaluation of a single transform, adaptively refined to an
/// absolute tolerance of `1e-9`.
pub fn hankel_profile(
    kernel: &dyn RadialKernel,
    kind: HankelKind,
    order: i32,
    q: i32,
    r: f64,
) -> Result<f64> {
    check_weight(kernel, q)?;
    let (m, sign) = fold_order(kind, order);
    let mut prev = sweep(kernel, kind, m, &[q], r, 1)[0][m];
    for refine in [2usize, 4, 8] {
        let cur = sweep(kernel, kind, m, &[q], r, refine)[0][m];
        if (cur - prev).abs() < 1e-10 * (1.0 + cur.abs()) {
            return Ok(sign * cur);
        }
        prev = cur;
    }
    Ok(sign * prev)
}

fn check_weight(kernel: &dyn RadialKernel, q: i32) -> Result<()> {
    if q > 0 && kernel.support().0 <= 0.0 {
        return Err(Error::SingularWeight { power: q });
    }
    Ok(())
}

/// Table-building variant: with the polar/spherical measure included the
/// integrand is only singular at zero for `q >= dim`, so weights below that
/// are allowed even on windows supported at zero.
fn check_weight_table(kernel: &dyn RadialKernel, kind: HankelKind, q: i32) -> Result<()> {
    let dim = match kind {
        HankelKind::Polar => 2,
        HankelKind::Spherical => 3,
    };
    if q >= dim && kernel.support().0 <= 0.0 {
        return Err(Error::SingularWeight { power: q });
    }
    Ok(())
}

fn fold_order(kind: HankelKind, order: i32) -> (usize, f64) {
    match kind {
        HankelKind::Polar => {
            // J_{-m} = (-1)^m J_m
            let m = order.unsigned_abs() as usize;
            let sign = if order < 0 && m % 2 == 1 { -1.0 } else { 1.0 };
            (m, sign)
        }
        HankelKind::Spherical => {
            assert!(order >= 0, "spherical order must be nonnegative");
            (order as usize, 1.0)
        }
    }
}

/// Cached transforms on a uniform radius grid.
pub struct HankelTable {
    kind: HankelKind,
    max_order: usize,
    rmax: f64,
    dr: f64,
    /// `values[q][m][node]`
    values: HashMap<i32, Vec<Vec<f64>>>,
}

impl HankelTable {
    /// Builds tables for all orders `0..=max_order` and the given weight
    /// powers over `r` in `[0, rmax]`.
    pub fn build(
        kernel: &dyn RadialKernel,
        kind: HankelKind,
        max_order: usize,
        qs: &[i32],
        rmax: f64,
        dr: f64,
        mode: ExecMode,
    ) -> Result<Self> {
        for &q in qs {
            check_weight_table(kernel, kind, q)?;
        }
        let n = (rmax / dr).ceil() as usize + 4;
        let rows = map_indexed(mode, n, |i| {
            let r = i as f64 * dr;
            sweep(kernel, kind, max_order, qs, r, 1)
        });
        let mut values: HashMap<i32, Vec<Vec<f64>>> = HashMap::new();
        for (qi, &q) in qs.iter().enumerate() {
            let mut per_order = vec![vec![0.0; n]; max_order + 1];
            for (i, row) in rows.iter().enumerate() {
                for m in 0..=max_order {
                    per_order[m][i] = row[qi][m];
                }
            }
            values.insert(q, per_order);
        }
        Ok(HankelTable { kind, max_order, rmax, dr, values })
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn rmax(&self) -> f64 {
        self.rmax
    }

    /// Interpolated transform value. Signed orders fold by Bessel parity in
    /// the polar case.
    pub fn eval(&self, order: i32, q: i32, r: f64) -> Result<f64> {
        let (m, sign) = fold_order(self.kind, order);
        if m > self.max_order {
            return Err(Error::Degree(format!("order {m} beyond table {}", self.max_order)));
        }
        if r > self.rmax {
            return Err(Error::CacheRadiusExceeded { radius: r, max: self.rmax });
        }
        let col = self
            .values
            .get(&q)
            .ok_or_else(|| Error::Degree(format!("weight power {q} not tabulated")))?;
        let v = &col[m];
        let t = r / self.dr;
        let i0 = (t.floor() as usize).clamp(1, v.len() - 3);
        let s = t - i0 as f64;
        // 4-point Lagrange on nodes i0-1 .. i0+2
        let w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        let w1 = (s * s - 1.0) * (s - 2.0) / 2.0;
        let w2 = -s * (s + 1.0) * (s - 2.0) / 2.0;
        let w3 = s * (s * s - 1.0) / 6.0;
        Ok(sign * (w0 * v[i0 - 1] + w1 * v[i0] + w2 * v[i0 + 1] + w3 * v[i0 + 2]))
    }
}
