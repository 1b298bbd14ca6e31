//! Galerkin projection of the Laplace-de Rham operator.
//!
//! For two atoms of the same type the angular monomials contract to one and
//! the Sobolev weights cancel against the descriptor weights, so the matrix
//! element reduces to the scalar pairing `int |xi|^2 psi_q psi_p* dxi`
//! regardless of `(r, nu, a)`. The pairing separates into an angular series
//! (Fourier or Gaunt contraction) times one-dimensional radial integrals
//! over the band overlap, which vanishes exactly beyond adjacent levels.

use crate::par::{map_indexed, ExecMode};
use crate::polarlet::{ScalarAtom, ScalarContext, Windows};
use crate::specfun::{bessel_j_all, gauss_legendre, spherical_bessel_all, GauntTable, RadialKernel};
use crate::windows::RadialProfile;
use num_complex::Complex64;

/// Support intersection of the level windows; `None` when disjoint (exact
/// zero beyond adjacent levels).
fn overlap(radial: &RadialProfile, ja: i32, jb: i32) -> Option<(f64, f64)> {
    let (a0, a1) = radial.level_support(ja);
    let (b0, b1) = radial.level_support(jb);
    let lo = a0.max(b0);
    let hi = a1.min(b1);
    if lo < hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// Radial integrals `int_lo^hi rho^{dim-1+xi_power} ha(2^-ja rho) hb(2^-jb rho)
/// K_m(rho s) drho` for all kernel orders `0..=mmax` at once, with `K` the
/// (spherical) Bessel kernel of the dimension.
fn radial_integrals(
    ctx: &ScalarContext,
    ja: i32,
    jb: i32,
    xi_power: i32,
    s: f64,
    mmax: usize,
) -> Vec<f64> {
    let radial = ctx.windows.radial();
    let dim = ctx.dim();
    let (lo, hi) = match overlap(radial, ja, jb) {
        Some(iv) => iv,
        None => return vec![0.0; mmax + 1],
    };
    // panels: one per kernel oscillation, plus window breakpoints
    let mut cuts: Vec<f64> = vec![lo, hi];
    for level in [ja, jb] {
        let scale = 2.0_f64.powi(level.max(0));
        let bp = if level < 0 { radial.scaling.breakpoints() } else { radial.band.breakpoints() };
        for b in bp {
            let v = b * scale;
            if v > lo && v < hi {
                cuts.push(v);
            }
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let (gx, gw) = gauss_legendre(16);
    let mut acc = vec![0.0; mmax + 1];
    for w in cuts.windows(2) {
        // the smooth windows have steep transition regions, so keep a floor
        // on the panel count independent of the kernel oscillation
        let n = ((w[1] - w[0]) * s / (2.0 * std::f64::consts::PI)).ceil() as usize + 8;
        let step = (w[1] - w[0]) / n as f64;
        for i in 0..n {
            let plo = w[0] + i as f64 * step;
            let c = plo + 0.5 * step;
            let h = 0.5 * step;
            for (&x, &wt) in gx.iter().zip(gw.iter()) {
                let rho: f64 = c + h * x;
                let ha = radial.level_window(ja, rho);
                let hb = radial.level_window(jb, rho);
                if ha == 0.0 || hb == 0.0 {
                    continue;
                }
                let base = wt * h * ha * hb * rho.powi(dim as i32 - 1 + xi_power);
                let kv = if s * rho > 0.0 {
                    if dim == 2 {
                        bessel_j_all(mmax, s * rho)
                    } else {
                        spherical_bessel_all(mmax, s * rho)
                    }
                } else {
                    let mut v = vec![0.0; mmax + 1];
                    v[0] = 1.0;
                    v
                };
                for (m, k) in kv.iter().enumerate() {
                    acc[m] += base * k;
                }
            }
        }
    }
    acc
}

/// Scalar frequency pairing `int |xi|^{xi_power} psi_q(xi) psi_p(xi)^* dxi`.
///
/// With `xi_power = 2` this is the Laplace-de Rham Galerkin entry for any
/// pair of same-type form atoms built on the scalar atoms; with
/// `xi_power = 0` it is the Gramian entry.
pub fn scalar_pairing(
    ctx: &ScalarContext,
    gaunt: Option<&GauntTable>,
    q: &ScalarAtom,
    p: &ScalarAtom,
    xi_power: i32,
) -> f64 {
    if overlap(ctx.windows.radial(), q.level, p.level).is_none() {
        return 0.0;
    }
    let cq = ctx.freq_norm(q.level);
    let cp = ctx.freq_norm(p.level);
    let xq = q.center();
    let xp = p.center();
    let y: Vec<f64> = xq.iter().zip(xp.iter()).map(|(a, b)| a - b).collect();
    let s = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    match &ctx.windows {
        Windows::Two(w) => {
            let theta_y = if s > 0.0 { y[1].atan2(y[0]) } else { 0.0 };
            let nm = w.angular.max_harmonic;
            let beta = |atom: &ScalarAtom, n: i32| -> Complex64 {
                if atom.level < 0 {
                    if n == 0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::default()
                    }
                } else {
                    w.angular.beta_oriented(n, atom.orient)
                }
            };
            let ints = radial_integrals(ctx, q.level, p.level, xi_power, s, 2 * nm as usize);
            let mut acc = Complex64::default();
            for n in -nm..=nm {
                let bq = beta(q, n);
                if bq.norm_sqr() == 0.0 {
                    continue;
                }
                for n2 in -nm..=nm {
                    let bp = beta(p, n2);
                    if bp.norm_sqr() == 0.0 {
                        continue;
                    }
                    let m = n2 - n;
                    let radial = if m >= 0 {
                        ints[m as usize]
                    } else {
                        // J_{-m} = (-1)^m J_m
                        let v = ints[(-m) as usize];
                        if m % 2 == 0 {
                            v
                        } else {
                            -v
                        }
                    };
                    let phase = crate::polarlet::atom::ipow(-m)
                        * Complex64::from_polar(1.0, -(m as f64) * theta_y);
                    acc += bq * bp.conj() * phase * radial;
                }
            }
            (cq * cp * 2.0 * std::f64::consts::PI * acc).re
        }
        Windows::Three(w) => {
            let gaunt = gaunt.expect("3D pairing needs a Gaunt table");
            let lw = w.angular.max_degree;
            let kap = |atom: &ScalarAtom, l: u32, m: i32| -> Complex64 {
                if atom.level < 0 {
                    if l == 0 && m == 0 {
                        Complex64::new((4.0 * std::f64::consts::PI).sqrt(), 0.0)
                    } else {
                        Complex64::default()
                    }
                } else {
                    w.angular.kappa(atom.orient, l, m)
                }
            };
            let lmax = 2 * lw;
            let ints = radial_integrals(ctx, q.level, p.level, xi_power, s, lmax as usize);
            let (ty, py) = if s > 0.0 {
                ((y[2] / s).clamp(-1.0, 1.0).acos(), y[1].atan2(y[0]))
            } else {
                (0.0, 0.0)
            };
            let ys = crate::specfun::sph_harm_all(lmax, ty, py);
            let mut acc = Complex64::default();
            for l1 in 0..=lw {
                for m1 in -(l1 as i32)..=(l1 as i32) {
                    let k1 = kap(q, l1, m1);
                    if k1.norm_sqr() == 0.0 {
                        continue;
                    }
                    for l2 in 0..=lw {
                        for m2 in -(l2 as i32)..=(l2 as i32) {
                            let k2 = kap(p, l2, m2);
                            if k2.norm_sqr() == 0.0 {
                                continue;
                            }
                            let mm = m1 - m2;
                            let sign = if m2 % 2 == 0 { 1.0 } else { -1.0 };
                            for l in l1.abs_diff(l2)..=(l1 + l2).min(lmax) {
                                if mm.unsigned_abs() > l {
                                    continue;
                                }
                                let g = gaunt.get(l1, m1, l2, -m2, l, mm);
                                if g == 0.0 {
                                    continue;
                                }
                                let phase = crate::polarlet::atom::ipow(-(l as i32));
                                acc += k1 * k2.conj()
                                    * sign
                                    * g
                                    * phase
                                    * ys[crate::specfun::SphIndex::new(l, mm).flat()]
                                    * ints[l as usize];
                            }
                        }
                    }
                }
            }
            (cq * cp * 4.0 * std::f64::consts::PI * acc).re
        }
    }
}

/// Interpolation tables of the radial integrals over center distance, per
/// level pair. Entries are smooth in the distance, so a dense cubic table
/// replaces per-pair quadratures during assembly.
pub struct RadialPairTables {
    ds: f64,
    smax: f64,
    tables: std::collections::HashMap<(i32, i32), Vec<Vec<f64>>>,
}

impl RadialPairTables {
    pub fn build(
        ctx: &ScalarContext,
        levels: &[i32],
        xi_power: i32,
        smax: f64,
        mmax: usize,
        mode: ExecMode,
    ) -> Self {
        let ds = 0.02;
        let n = (smax / ds).ceil() as usize + 4;
        let mut tables = std::collections::HashMap::new();
        let mut lv = levels.to_vec();
        lv.sort_unstable();
        lv.dedup();
        for &ja in &lv {
            for &jb in &lv {
                if ja > jb || overlap(ctx.windows.radial(), ja, jb).is_none() {
                    continue;
                }
                let rows = map_indexed(mode, n, |i| {
                    radial_integrals(ctx, ja, jb, xi_power, i as f64 * ds, mmax)
                });
                let mut per_m = vec![vec![0.0; n]; mmax + 1];
                for (i, r) in rows.iter().enumerate() {
                    for m in 0..=mmax {
                        per_m[m][i] = r[m];
                    }
                }
                tables.insert((ja, jb), per_m);
            }
        }
        RadialPairTables { ds, smax, tables }
    }

    fn get(&self, ja: i32, jb: i32, m: usize, s: f64) -> Option<f64> {
        let key = if ja <= jb { (ja, jb) } else { (jb, ja) };
        let t = self.tables.get(&key)?;
        if s > self.smax {
            return Some(0.0);
        }
        let v = &t[m];
        let x = s / self.ds;
        let i0 = (x.floor() as usize).clamp(1, v.len() - 3);
        let u = x - i0 as f64;
        let w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
        let w1 = (u * u - 1.0) * (u - 2.0) / 2.0;
        let w2 = -u * (u + 1.0) * (u - 2.0) / 2.0;
        let w3 = u * (u * u - 1.0) / 6.0;
        Some(w0 * v[i0 - 1] + w1 * v[i0] + w2 * v[i0 + 1] + w3 * v[i0 + 2])
    }
}

/// 2D pairing using interpolated radial integrals.
fn scalar_pairing_cached_2d(
    ctx: &ScalarContext,
    tables: &RadialPairTables,
    q: &ScalarAtom,
    p: &ScalarAtom,
) -> f64 {
    if overlap(ctx.windows.radial(), q.level, p.level).is_none() {
        return 0.0;
    }
    let w = match &ctx.windows {
        Windows::Two(w) => w,
        _ => unreachable!(),
    };
    let cq = ctx.freq_norm(q.level);
    let cp = ctx.freq_norm(p.level);
    let xq = q.center();
    let xp = p.center();
    let y = [xq[0] - xp[0], xq[1] - xp[1]];
    let s = (y[0] * y[0] + y[1] * y[1]).sqrt();
    let theta_y = if s > 0.0 { y[1].atan2(y[0]) } else { 0.0 };
    let nm = w.angular.max_harmonic;
    let beta = |atom: &ScalarAtom, n: i32| -> Complex64 {
        if atom.level < 0 {
            if n == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::default()
            }
        } else {
            w.angular.beta_oriented(n, atom.orient)
        }
    };
    let mut acc = Complex64::default();
    for n in -nm..=nm {
        let bq = beta(q, n);
        if bq.norm_sqr() == 0.0 {
            continue;
        }
        for n2 in -nm..=nm {
            let bp = beta(p, n2);
            if bp.norm_sqr() == 0.0 {
                continue;
            }
            let m = n2 - n;
            let base = tables
                .get(q.level, p.level, m.unsigned_abs() as usize, s)
                .unwrap_or(0.0);
            let radial = if m >= 0 || m % 2 == 0 { base } else { -base };
            let phase = crate::polarlet::atom::ipow(-m)
                * Complex64::from_polar(1.0, -(m as f64) * theta_y);
            acc += bq * bp.conj() * phase * radial;
        }
    }
    (cq * cp * 2.0 * std::f64::consts::PI * acc).re
}

/// Dense assembly of the pairing matrix over atom lists (same type assumed).
/// In 2D the radial integrals are tabulated once per level pair.
pub fn assemble_pairing(
    ctx: &ScalarContext,
    gaunt: Option<&GauntTable>,
    rows: &[ScalarAtom],
    cols: &[ScalarAtom],
    xi_power: i32,
    mode: ExecMode,
) -> Vec<Vec<f64>> {
    if ctx.dim() == 2 {
        let levels: Vec<i32> =
            rows.iter().chain(cols.iter()).map(|a| a.level).collect();
        let mut smax = 0.0_f64;
        for a in rows.iter().chain(cols.iter()) {
            let c = a.center();
            smax = smax.max(c.iter().map(|v| v * v).sum::<f64>().sqrt());
        }
        let nm = ctx.windows.max_angular() as usize;
        let tables =
            RadialPairTables::build(ctx, &levels, xi_power, 2.0 * smax + 1.0, 2 * nm, mode);
        map_indexed(mode, rows.len(), |i| {
            cols.iter().map(|p| scalar_pairing_cached_2d(ctx, &tables, &rows[i], p)).collect()
        })
    } else {
        map_indexed(mode, rows.len(), |i| {
            cols.iter().map(|p| scalar_pairing(ctx, gaunt, &rows[i], p, xi_power)).collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fftn;
    use crate::grid::Grid;
    use crate::windows::{Angular2Kind, Angular3Kind, RadialWindowKind, WindowConfig};

    fn ctx2(a2: Angular2Kind) -> ScalarContext {
        let cfg = WindowConfig {
            radial: RadialWindowKind::Smooth,
            angular2d: a2,
            angular3d: Angular3Kind::Isotropic,
        };
        ScalarContext::new(&cfg, 2).unwrap()
    }

    /// Frequency-grid quadrature oracle for the pairing. A large extent
    /// keeps the lattice-sum (Poisson) error of the Riemann sum small.
    fn grid_oracle(ctx: &ScalarContext, q: &ScalarAtom, p: &ScalarAtom, xi_power: i32) -> f64 {
        let grid = Grid::new(2, 4096, 256.0).unwrap();
        let mut acc = Complex64::default();
        for i in 0..grid.len() {
            let xi = grid.xi(i);
            let rho = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
            if rho == 0.0 {
                continue;
            }
            let a = ctx.eval_freq(q, &xi);
            let b = ctx.eval_freq(p, &xi);
            acc += a * b.conj() * rho.powi(xi_power);
        }
        (acc * grid.cell_volume_freq()).re
    }

    #[test]
    fn level_separation_exact_zero() {
        let ctx = ctx2(Angular2Kind::Isotropic);
        let q = ScalarAtom::new(0, vec![0, 0], 0);
        let p = ScalarAtom::new(2, vec![0, 0], 0);
        assert_eq!(scalar_pairing(&ctx, None, &q, &p, 2), 0.0);
        let pm = ScalarAtom::new(-1, vec![0, 0], 0);
        let p1 = ScalarAtom::new(1, vec![0, 0], 0);
        assert_eq!(scalar_pairing(&ctx, None, &pm, &p1, 2), 0.0);
    }

    #[test]
    fn symmetry() {
        let ctx = ctx2(Angular2Kind::CosPower { power: 1 });
        let q = ScalarAtom::new(1, vec![1, 2], 0);
        let p = ScalarAtom::new(2, vec![-2, 3], 3);
        let a = scalar_pairing(&ctx, None, &q, &p, 2);
        let b = scalar_pairing(&ctx, None, &p, &q, 2);
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn matches_grid_oracle_2d_isotropic() {
        let ctx = ctx2(Angular2Kind::Isotropic);
        let cases = [
            (ScalarAtom::new(1, vec![0, 0], 0), ScalarAtom::new(1, vec![0, 0], 0)),
            (ScalarAtom::new(1, vec![0, 0], 0), ScalarAtom::new(1, vec![3, -2], 0)),
            (ScalarAtom::new(1, vec![1, 1], 0), ScalarAtom::new(2, vec![2, 2], 0)),
            (ScalarAtom::new(-1, vec![0, 0], 0), ScalarAtom::new(0, vec![1, 0], 0)),
        ];
        for (q, p) in cases {
            let direct = scalar_pairing(&ctx, None, &q, &p, 2);
            let oracle = grid_oracle(&ctx, &q, &p, 2);
            assert!(
                (direct - oracle).abs() < 1e-6 * oracle.abs().max(1e-3),
                "{q:?} {p:?}: {direct} vs {oracle}"
            );
        }
    }

    #[test]
    fn matches_grid_oracle_2d_directional() {
        let ctx = ctx2(Angular2Kind::CosPower { power: 1 });
        let q = ScalarAtom::new(1, vec![2, 0], 1);
        let p = ScalarAtom::new(2, vec![1, -1], 4);
        let direct = scalar_pairing(&ctx, None, &q, &p, 2);
        let oracle = grid_oracle(&ctx, &q, &p, 2);
        assert!((direct - oracle).abs() < 1e-6 * oracle.abs().max(1e-3), "{direct} vs {oracle}");
    }

    #[test]
    fn matches_grid_oracle_3d() {
        let cfg = WindowConfig {
            radial: RadialWindowKind::Smooth,
            angular2d: Angular2Kind::Isotropic,
            angular3d: Angular3Kind::CosPower { power: 1 },
        };
        let ctx = ScalarContext::new(&cfg, 3).unwrap();
        let gaunt = GauntTable::build(2);
        let q = ScalarAtom::new(0, vec![0, 0, 0], 2);
        let p = ScalarAtom::new(1, vec![1, 0, -1], 7);
        let direct = scalar_pairing(&ctx, Some(&gaunt), &q, &p, 2);
        // dual-route oracle: sphere quadrature of the angular factor times
        // the plane-wave phase, radial Gauss panels; no Gaunt contraction
        let quad = crate::specfun::SphereQuadrature::with_degree(48);
        let y: Vec<f64> = q.center().iter().zip(p.center().iter()).map(|(a, b)| a - b).collect();
        let (gx, gw) = gauss_legendre(16);
        let radial = ctx.windows.radial();
        let (lo, hi) = {
            let (a0, a1) = radial.level_support(q.level);
            let (b0, b1) = radial.level_support(p.level);
            (a0.max(b0), a1.min(b1))
        };
        let panels = 24;
        let pw = (hi - lo) / panels as f64;
        let mut acc = Complex64::default();
        for i in 0..panels {
            let c = lo + (i as f64 + 0.5) * pw;
            let h = 0.5 * pw;
            for (&x, &w) in gx.iter().zip(gw.iter()) {
                let rho = c + h * x;
                let hq = radial.level_window(q.level, rho);
                let hp = radial.level_window(p.level, rho);
                if hq == 0.0 || hp == 0.0 {
                    continue;
                }
                let ang = quad.integrate(|t, ph| {
                    let dir = [t.sin() * ph.cos(), t.sin() * ph.sin(), t.cos()];
                    let dot = dir[0] * y[0] + dir[1] * y[1] + dir[2] * y[2];
                    let gq = match &ctx.windows {
                        Windows::Three(w3) => w3.angular.eval(q.orient, t, ph),
                        _ => unreachable!(),
                    };
                    let gp = match &ctx.windows {
                        Windows::Three(w3) => w3.angular.eval(p.orient, t, ph),
                        _ => unreachable!(),
                    };
                    gq * gp.conj() * Complex64::from_polar(1.0, -rho * dot)
                });
                acc += w * h * hq * hp * rho.powi(4) * ang;
            }
        }
        let oracle = (ctx.freq_norm(q.level) * ctx.freq_norm(p.level) * acc).re;
        assert!(
            (direct - oracle).abs() < 1e-8 * oracle.abs().max(1e-3),
            "{direct} vs {oracle}"
        );
    }

    /// Parseval cross-check of the Gramian entry against a spatial inner
    /// product of FFT-synthesized atoms.
    #[test]
    fn gramian_matches_parseval() {
        let ctx = ctx2(Angular2Kind::Isotropic);
        let grid = Grid::new(2, 128, 16.0).unwrap();
        let q = ScalarAtom::new(1, vec![2, 1], 0);
        let p = ScalarAtom::new(1, vec![0, 0], 0);
        let direct = scalar_pairing(&ctx, None, &q, &p, 0);
        let mut fq: Vec<Complex64> =
            (0..grid.len()).map(|i| ctx.eval_freq(&q, &grid.xi(i))).collect();
        let mut fp: Vec<Complex64> =
            (0..grid.len()).map(|i| ctx.eval_freq(&p, &grid.xi(i))).collect();
        fftn::freq_to_spatial(&grid, &mut fq);
        fftn::freq_to_spatial(&grid, &mut fp);
        let spatial: f64 = fq
            .iter()
            .zip(fp.iter())
            .map(|(a, b)| (a * b.conj()).re)
            .sum::<f64>()
            * grid.cell_volume();
        assert!((direct - spatial).abs() < 3e-4 * direct.abs().max(1e-4), "{direct} vs {spatial}");
    }
}
