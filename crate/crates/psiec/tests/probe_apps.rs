use psiec::apps::{cavity_solve, circulation_study, reference_spectrum, CavityProblem, VortexProfile};
use psiec::grid::Grid;
use psiec::par::ExecMode;
use psiec::wavelets::FormContext;
use psiec::windows::{Angular2Kind, Angular3Kind, RadialWindowKind, WindowConfig};

fn ctx2(a2: Angular2Kind) -> FormContext {
    let cfg = WindowConfig {
        radial: RadialWindowKind::Smooth,
        angular2d: a2,
        angular3d: Angular3Kind::Isotropic,
    };
    FormContext::new(&cfg, 2).unwrap()
}

#[test]
#[ignore]
fn probe_circulation() {
    let ctx = ctx2(Angular2Kind::Isotropic);
    let grid = Grid::new(2, 512, 16.0).unwrap();
    let profile = VortexProfile::default();
    let t0 = std::time::Instant::now();
    let rep = circulation_study(&ctx, &grid, &profile, [0.0, 0.0], [0.0, 0.0], 1.0, 5, ExecMode::auto()).unwrap();
    println!("reference {:.6}, leakage {:.2e}, took {:?}", rep.reference, rep.leakage, t0.elapsed());
    for (lvl, rb, ri, gap) in &rep.rows {
        println!("level {lvl}: |bnd-ref| {rb:.3e}  |int-ref| {ri:.3e}  |bnd-int| {gap:.3e}");
    }
}

#[test]
#[ignore]
fn probe_cavity() {
    let ctx = {
        let mut c = ctx2(Angular2Kind::CosPower { power: 1 });
        c.build_spatial_tables(16.0, 2, ExecMode::auto()).unwrap();
        c
    };
    for jmax in [1, 2, 3] {
        for penalty in [50.0] {
            for mass_cut in [1e-9] {
                let prob = CavityProblem { jmax, count: 6, penalty, mass_cut, ..Default::default() };
                let t0 = std::time::Instant::now();
                let grid = Grid::new(2, 128, 16.0).unwrap();
                let sol = cavity_solve(&ctx, &prob, Some(&grid), ExecMode::auto()).unwrap();
                let eig: Vec<String> = sol.eigenvalues.iter().map(|v| format!("{v:.3}")).collect();
                println!(
                    "jmax {jmax} mu {penalty} cut {mass_cut:.0e}: m {} took {:.1?} eig {} leak {:.3}",
                    sol.matrix_dimension, t0.elapsed(), eig.join(" "), sol.leakage.first().unwrap_or(&-1.0)
                );
            }
        }
    }
}

#[test]
#[ignore]
fn probe_chi_band() {
    use psiec::transforms::characteristic::{boundary_pairing_disc, interior_pairing_disc};
    use psiec::transforms::CharacteristicShape;
    use psiec::polarlet::ScalarAtom;
    use psiec::wavelets::{FormAtom, FormType};
    let ctx = ctx2(Angular2Kind::Isotropic);
    let grid = Grid::new(2, 128, 16.0).unwrap();
    // analyze the velocity, then run stokes_residual on jmax 2 and also compute
    // band values via the slow route for a few atoms
    let profile = VortexProfile::default();
    let field = profile.sample(&grid, [0.0, 0.0]);
    let coeffs = psiec::transforms::analyze(&ctx, &field, 2, ExecMode::auto()).unwrap();
    let key = psiec::wavelets::TypeKey { degree: 1, form_type: FormType::CoExact, family: 1 };
    let bands = &coeffs.parts[&key];
    for b in bands {
        let e: f64 = b.values.iter().map(|v| v * v).sum();
        println!("level {} orient {} energy {:.4e} lattice {}", b.level, b.orient, e, b.lattice_n);
    }
    let rep = psiec::transforms::stokes_residual(
        &ctx, &grid, &coeffs,
        CharacteristicShape::Disc { center: [0.0, 0.0], radius: 1.0 },
        ExecMode::auto(),
    ).unwrap();
    for (l, b, i) in &rep.levels {
        println!("cumsum level {l}: bnd {b:.6} int {i:.6}");
    }
    // slow-route check on a couple atoms at level 1
    for shift in [[0, 0], [2, 1]] {
        let s = ScalarAtom::new(1, shift.to_vec(), 0);
        let da = FormAtom::new(s.clone(), 1, FormType::CoExact, 1);
        let ia = FormAtom::new(s, 2, FormType::Exact, 1);
        let bv = boundary_pairing_disc(&ctx, &da, [0.0, 0.0], 1.0).unwrap();
        let iv = interior_pairing_disc(&ctx, &ia, [0.0, 0.0], 1.0).unwrap();
        println!("atom {shift:?}: slow bnd {bv:.6e} int {iv:.6e}");
    }
}

#[test]
#[ignore]
fn probe_true_mode() {
    use psiec::transforms::{analyze, synthesize};
    use psiec::wavelets::{FormType, TypeKey};
    let ctx = {
        let mut c = ctx2(Angular2Kind::CosPower { power: 1 });
        c.build_spatial_tables(16.0, 3, ExecMode::auto()).unwrap();
        c
    };
    let grid = Grid::new(2, 256, 16.0).unwrap();
    let h = std::f64::consts::PI / 2.0;
    // stream function phi = cos(x)cos(y) inside, smoothly cut outside:
    // E = (d phi rotated) = (-phi_y, phi_x); cut by a C^inf window
    let cut = |t: f64| -> f64 {
        // 1 inside |t|<h, smooth rolloff to 0 by h+1
        let a = (t.abs() - h) / 1.0;
        if a <= 0.0 { 1.0 } else if a >= 1.0 { 0.0 } else {
            let e1 = (-1.0/a).exp();
            let e2 = (-1.0/(1.0-a)).exp();
            e2 / (e1 + e2)
        }
    };
    let mut field = psiec::transforms::SampledFormField::zeros(grid.clone(), 1);
    for i in 0..grid.len() {
        let x = grid.x(i);
        let w = cut(x[0]) * cut(x[1]);
        // mode (1,0): phi = cos(x): E = (0, -sin(x)) tangential-zero at x=+-pi/2
        field.comps[0][i] = 0.0;
        field.comps[1][i] = -x[0].sin() * w;
    }
    let jmax = 2;
    let coeffs = analyze(&ctx, &field, jmax, ExecMode::auto()).unwrap();
    let key = TypeKey { degree: 1, form_type: FormType::CoExact, family: 1 };
    let e_co = coeffs.energy_of(FormType::CoExact);
    let e_ex = coeffs.energy_of(FormType::Exact);
    println!("coexact energy {e_co:.4}, exact energy {e_ex:.4} (mode is not exactly coexact after the cut)");
    // synthesize the coexact part only and measure interior/exterior + quotient
    let mut only = coeffs.clone();
    only.parts.retain(|k, _| *k == key);
    let back = synthesize(&ctx, &only, &grid, ExecMode::auto()).unwrap();
    let mut inside = 0.0;
    let mut outside = 0.0;
    for i in 0..grid.len() {
        let x = grid.x(i);
        let e: f64 = back.comps.iter().map(|c| c[i] * c[i]).sum();
        if x[0].abs() <= h && x[1].abs() <= h { inside += e; } else { outside += e; }
    }
    println!("true-mode projection: leakage {:.4}", outside / (inside + outside));
    // Rayleigh quotient ||dE||^2 / ||E||^2_B via spectral derivative
    let spec = back.to_spectral();
    let mut de = 0.0;
    for k in 0..spec.comps.len() {
        for i in 0..grid.len() {
            let _ = k;
        }
    }
    // dE for 1-form (E1,E2): dE = (d1 E2 - d2 E1) dx12
    let mut e1 = spec.comps[0].clone();
    let mut e2 = spec.comps[1].clone();
    for i in 0..grid.len() {
        let xi = grid.xi(i);
        let v1 = e1[i]; let v2 = e2[i];
        e1[i] = num_complex::Complex64::new(0.0, xi[0]) * v2 - num_complex::Complex64::new(0.0, xi[1]) * v1;
        e2[i] = num_complex::Complex64::default();
    }
    for i in 0..grid.len() { de += e1[i].norm_sqr(); }
    de *= grid.cell_volume_freq();
    println!("||dE||^2 {de:.4}, interior mass {:.4}, quotient {:.4}", inside * grid.cell_volume(), de / (inside * grid.cell_volume()));
}
