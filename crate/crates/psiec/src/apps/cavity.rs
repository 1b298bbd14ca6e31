//! Resonant cavity eigenproblem on the square: the Laplace-de Rham operator
//! restricted to co-exact 1-forms with a soft tangential boundary condition.
//!
//! The frame is redundant, so the Galerkin pencil `(D + mu B, G)` is solved
//! on the numerical range of the Gramian `G`; `B` penalizes the tangential
//! trace on the boundary. Eigenvalues approach the separable reference
//! spectrum `m^2 + n^2` as the level budget grows, with the residual field
//! leakage outside the square reported rather than hidden.

use crate::grid::Grid;
use crate::par::{map_indexed, ExecMode};
use crate::polarlet::ScalarAtom;
use crate::specfun::gauss_legendre;
use crate::transforms::{synthesize, FormBand, FrameCoefficients};
use crate::wavelets::{FormAtom, FormContext, FormType, TypeKey};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use std::collections::BTreeMap;

/// Problem description: a square cavity of the given side centered at the
/// origin.
#[derive(Debug, Clone)]
pub struct CavityProblem {
    pub side: f64,
    /// Highest wavelet level included (levels `-1 ..= jmax`).
    pub jmax: i32,
    /// Requested number of eigenvalues.
    pub count: usize,
    /// Tangential-trace penalty weight.
    pub penalty: f64,
    /// Margin (in atom spacings) around the square for atom selection.
    pub margin: f64,
    /// Relative cutoff for the interior-mass range projection.
    pub mass_cut: f64,
}

impl Default for CavityProblem {
    fn default() -> Self {
        CavityProblem {
            side: std::f64::consts::PI,
            jmax: 1,
            count: 6,
            penalty: 200.0,
            margin: 1.5,
            mass_cut: 1e-9,
        }
    }
}

/// Output of the cavity solve.
#[derive(Debug, Clone)]
pub struct CavitySolution {
    pub eigenvalues: Vec<f64>,
    /// Worst pencil residual over the reported eigenpairs.
    pub max_residual: f64,
    /// Field-energy fraction outside the square for the first eigenfields.
    pub leakage: Vec<f64>,
    pub dimension: usize,
    pub matrix_dimension: usize,
}

/// Analytic reference spectrum of the side-`pi` square: `m^2 + n^2` over
/// `(m, n) != (0, 0)`, sorted.
pub fn reference_spectrum(count: usize) -> Vec<f64> {
    let mut vals = Vec::new();
    for m in 0..20_i64 {
        for n in 0..20_i64 {
            if m == 0 && n == 0 {
                continue;
            }
            vals.push((m * m + n * n) as f64);
        }
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals.truncate(count);
    vals
}

fn cavity_atoms(ctx: &FormContext, prob: &CavityProblem) -> Vec<ScalarAtom> {
    let mut out = Vec::new();
    for level in -1..=prob.jmax {
        let spacing = 2.0_f64.powi(-level.max(0));
        let half = ((prob.side / 2.0 + prob.margin * spacing) / spacing).floor() as i32;
        let orients = if level < 0 { 1 } else { ctx.scalar.windows.orientations() };
        for k1 in -half..=half {
            for k2 in -half..=half {
                for t in 0..orients {
                    out.push(ScalarAtom::new(level, vec![k1, k2], t));
                }
            }
        }
    }
    out
}

/// Interior mass rows: atom components sampled on a Gauss product grid over
/// the square, scaled by the root quadrature weights, so the mass matrix is
/// the row Gramian.
fn interior_samples(
    ctx: &FormContext,
    atoms: &[ScalarAtom],
    side: f64,
    mode: ExecMode,
) -> Result<Vec<Vec<f64>>> {
    let (gx, gw) = gauss_legendre(24);
    let h = side / 2.0;
    let mut nodes = Vec::new();
    for (&x1, &w1) in gx.iter().zip(gw.iter()) {
        for (&x2, &w2) in gx.iter().zip(gw.iter()) {
            nodes.push(([h * x1, h * x2], (w1 * w2).sqrt() * h));
        }
    }
    let rows = map_indexed(mode, atoms.len(), |i| -> Result<Vec<f64>> {
        let atom = FormAtom::new(atoms[i].clone(), 1, FormType::CoExact, 1);
        let mut row = Vec::with_capacity(2 * nodes.len());
        for (p, wq) in &nodes {
            let v = ctx.eval_space(&atom, p)?;
            row.push(wq * v[0].re);
            row.push(wq * v[1].re);
        }
        Ok(row)
    });
    rows.into_iter().collect()
}

/// Tangential-trace vectors of the co-exact 1-form atoms on the square's
/// boundary (Gauss nodes per edge), scaled by the quadrature weights.
fn boundary_traces(
    ctx: &FormContext,
    atoms: &[ScalarAtom],
    side: f64,
    mode: ExecMode,
) -> Result<Vec<Vec<f64>>> {
    let (gx, gw) = gauss_legendre(48);
    let h = side / 2.0;
    // nodes and tangents on the four edges
    let mut nodes = Vec::new();
    for (&x, &w) in gx.iter().zip(gw.iter()) {
        let s = h * x;
        let wq = (w * h).sqrt();
        nodes.push(([s, -h], [1.0, 0.0], wq));
        nodes.push(([s, h], [1.0, 0.0], wq));
        nodes.push(([-h, s], [0.0, 1.0], wq));
        nodes.push(([h, s], [0.0, 1.0], wq));
    }
    let rows = map_indexed(mode, atoms.len(), |i| -> Result<Vec<f64>> {
        let atom = FormAtom::new(atoms[i].clone(), 1, FormType::CoExact, 1);
        let mut row = Vec::with_capacity(nodes.len());
        for (p, t, wq) in &nodes {
            let v = ctx.eval_space(&atom, p)?;
            row.push(wq * (v[0].re * t[0] + v[1].re * t[1]));
        }
        Ok(row)
    });
    rows.into_iter().collect()
}

/// Assembles and solves the cavity eigenproblem.
pub fn cavity_solve(
    ctx: &FormContext,
    prob: &CavityProblem,
    leakage_grid: Option<&Grid>,
    mode: ExecMode,
) -> Result<CavitySolution> {
    if ctx.dim() != 2 {
        return Err(Error::Config("the cavity demo is two-dimensional".into()));
    }
    let atoms = cavity_atoms(ctx, prob);
    let n = atoms.len();
    // stiffness ||dE||^2: the exact 2-form images share the scalar windows,
    // so this is the weight-0 pairing of the underlying scalar atoms
    let stiff = crate::wavelets::assemble_pairing(&ctx.scalar, None, &atoms, &atoms, 0, mode);
    let traces = boundary_traces(ctx, &atoms, prob.side, mode)?;
    let interior = interior_samples(ctx, &atoms, prob.side, mode)?;
    let ncols = interior[0].len();
    let mut t = DMatrix::<f64>::zeros(n, ncols);
    for i in 0..n {
        for j in 0..ncols {
            t[(i, j)] = interior[i][j];
        }
    }
    let mut d = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let b: f64 = traces[i]
                .iter()
                .zip(traces[j].iter())
                .map(|(a, b)| a * b)
                .sum();
            d[(i, j)] = 0.5 * (stiff[i][j] + stiff[j][i]) + prob.penalty * b;
        }
    }
    // mass over the square is T T^t; its range comes from the small Gram
    // T^t T, so the pencil reduces without an n-by-n eigensolve
    let small = t.transpose() * &t;
    let se = SymmetricEigen::new(small);
    let gmax = se.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    let keep: Vec<usize> = (0..ncols)
        .filter(|&i| se.eigenvalues[i] > prob.mass_cut * gmax)
        .collect();
    let m = keep.len();
    // columns X_c = T w_c / sigma_c^2 satisfy X^t (T T^t) X = I
    let mut x = DMatrix::<f64>::zeros(n, m);
    for (c, &i) in keep.iter().enumerate() {
        let s2 = se.eigenvalues[i];
        let w = se.eigenvectors.column(i);
        let col = &t * w.clone_owned();
        for r in 0..n {
            x[(r, c)] = col[r] / s2;
        }
    }
    let reduced = x.transpose() * &d * &x;
    let reduced = 0.5 * (&reduced + &reduced.transpose());
    let re = SymmetricEigen::new(reduced);
    // sort ascending, drop tiny values from the penalized null directions
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| re.eigenvalues[a].partial_cmp(&re.eigenvalues[b]).unwrap());
    let mut eigenvalues = Vec::new();
    let mut vectors: Vec<DVector<f64>> = Vec::new();
    for &i in &order {
        let lam = re.eigenvalues[i];
        if lam < 0.2 {
            continue;
        }
        eigenvalues.push(lam);
        vectors.push(&x * re.eigenvectors.column(i).clone_owned());
        if eigenvalues.len() >= prob.count {
            break;
        }
    }
    // pencil residual in the reduced basis
    let mut max_residual = 0.0_f64;
    for (k, &i) in order.iter().enumerate() {
        if k >= eigenvalues.len() {
            break;
        }
        let v = re.eigenvectors.column(i);
        let r = re.eigenvalues[i] * v.clone_owned();
        let lhs = x.transpose() * &d * (&x * v.clone_owned());
        let diff = (&lhs - &r).norm() / v.norm().max(1e-30);
        max_residual = max_residual.max(diff / re.eigenvalues[i].abs().max(1.0));
    }
    // leakage of the first eigenfields
    let mut leakage = Vec::new();
    if let Some(grid) = leakage_grid {
        for v in vectors.iter().take(3) {
            let coeffs = coefficients_from_vector(&atoms, v, prob.jmax, grid)?;
            let field = synthesize(ctx, &coeffs, grid, mode)?;
            let mut inside = 0.0;
            let mut outside = 0.0;
            for i in 0..grid.len() {
                let xp = grid.x(i);
                let e: f64 = field.comps.iter().map(|c| c[i] * c[i]).sum();
                if xp[0].abs() <= prob.side / 2.0 && xp[1].abs() <= prob.side / 2.0 {
                    inside += e;
                } else {
                    outside += e;
                }
            }
            leakage.push(outside / (inside + outside).max(1e-30));
        }
    }
    Ok(CavitySolution {
        eigenvalues,
        max_residual,
        leakage,
        dimension: n,
        matrix_dimension: m,
    })
}

/// Packs an eigen-coefficient vector into grid-compatible frame
/// coefficients for synthesis.
fn coefficients_from_vector(
    atoms: &[ScalarAtom],
    v: &DVector<f64>,
    jmax: i32,
    grid: &Grid,
) -> Result<FrameCoefficients> {
    let key = TypeKey { degree: 1, form_type: FormType::CoExact, family: 1 };
    let mut bands: BTreeMap<(i32, usize), FormBand> = BTreeMap::new();
    for (atom, &val) in atoms.iter().zip(v.iter()) {
        let level = atom.level;
        let orient = atom.orient;
        let lattice_n = crate::polarlet::lattice_size(grid, level)?;
        let entry = bands.entry((level, orient)).or_insert_with(|| FormBand {
            level,
            orient,
            lattice_n,
            values: vec![0.0; lattice_n * lattice_n],
        });
        let lat = entry.lattice_n as i32;
        let i1 = atom.shift[0] + lat / 2;
        let i2 = atom.shift[1] + lat / 2;
        if i1 >= 0 && i1 < lat && i2 >= 0 && i2 < lat {
            entry.values[(i1 * lat + i2) as usize] += val;
        } else {
            return Err(Error::GridMismatch(
                "atom shift outside the synthesis grid".into(),
            ));
        }
    }
    Ok(FrameCoefficients {
        dim: 2,
        degree: 1,
        jmax,
        parts: BTreeMap::from([(key, bands.into_values().collect::<Vec<_>>())]),
        leakage: 0.0,
        max_imag: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_spectrum_prefix() {
        assert_eq!(reference_spectrum(6), vec![1.0, 1.0, 2.0, 4.0, 4.0, 5.0]);
    }
}
