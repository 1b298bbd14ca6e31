//! Gaunt coefficients `G_{l1,m1;l2,m2}^{l,m} = int y_{l1 m1} y_{l2 m2} y_{lm}^*`.
//!
//! Computed by sphere quadrature, which is exact for bandlimited integrands,
//! and cached. Selection rules are applied before quadrature so that
//! violating index tuples return exactly zero.

use super::legendre::{normalized_assoc_legendre_all, gauss_legendre};
use std::collections::HashMap;

/// Precomputed Gaunt coefficients up to a degree bound.
///
/// Covers `l1, l2 <= max_degree` and `l <= 2 * max_degree`.
#[derive(Debug, Clone)]
pub struct GauntTable {
    pub max_degree: u32,
    entries: HashMap<(u32, i32, u32, i32, u32, i32), f64>,
}

/// Selection rules: `m = m1 + m2`, triangle inequalities, even total degree.
pub fn gaunt_allowed(l1: u32, m1: i32, l2: u32, m2: i32, l: u32, m: i32) -> bool {
    if m != m1 + m2 {
        return false;
    }
    if m1.unsigned_abs() > l1 || m2.unsigned_abs() > l2 || m.unsigned_abs() > l {
        return false;
    }
    let (l1, l2, l) = (l1 as i64, l2 as i64, l as i64);
    if l1 + l2 - l < 0 || l1 - l2 + l < 0 || -l1 + l2 + l < 0 {
        return false;
    }
    (l1 + l2 + l) % 2 == 0
}

impl GauntTable {
    pub fn build(max_degree: u32) -> Self {
        let lmax = 2 * max_degree;
        // theta integrand is a polynomial of degree <= 4 * max_degree in cos(theta)
        let n_nodes = (2 * max_degree + 2) as usize;
        let (xs, ws) = gauss_legendre(n_nodes);
        // legendre values per node, rows l, cols m >= 0
        let tables: Vec<_> = xs.iter().map(|&x| normalized_assoc_legendre_all(lmax, x)).collect();
        let nb = |node: usize, l: u32, m: i32| -> f64 {
            let ma = m.unsigned_abs() as usize;
            let v = tables[node][l as usize][ma];
            if m < 0 && ma % 2 == 1 {
                -v
            } else {
                v
            }
        };
        let mut entries = HashMap::new();
        for l1 in 0..=max_degree {
            for m1 in -(l1 as i32)..=(l1 as i32) {
                for l2 in 0..=max_degree {
                    for m2 in -(l2 as i32)..=(l2 as i32) {
                        let m = m1 + m2;
                        for l in l1.abs_diff(l2)..=(l1 + l2).min(lmax) {
                            if !gaunt_allowed(l1, m1, l2, m2, l, m) {
                                continue;
                            }
                            // phi integral contributes 2 pi at m = m1 + m2
                            let mut acc = 0.0;
                            for (i, w) in ws.iter().enumerate() {
                                acc += w * nb(i, l1, m1) * nb(i, l2, m2) * nb(i, l, m);
                            }
                            entries.insert(
                                (l1, m1, l2, m2, l, m),
                                2.0 * std::f64::consts::PI * acc,
                            );
                        }
                    }
                }
            }
        }
        GauntTable { max_degree, entries }
    }

    /// Coefficient lookup; zero for rule-violating or out-of-table indices.
    pub fn get(&self, l1: u32, m1: i32, l2: u32, m2: i32, l: u32, m: i32) -> f64 {
        if !gaunt_allowed(l1, m1, l2, m2, l, m) {
            return 0.0;
        }
        *self.entries.get(&(l1, m1, l2, m2, l, m)).unwrap_or(&0.0)
    }
}

/// One-off Gaunt coefficient without a table.
pub fn gaunt(l1: u32, m1: i32, l2: u32, m2: i32, l: u32, m: i32) -> f64 {
    if !gaunt_allowed(l1, m1, l2, m2, l, m) {
        return 0.0;
    }
    let lmax = l1.max(l2).max(l);
    let n_nodes = ((3 * lmax) / 2 + 2) as usize;
    let (xs, ws) = gauss_legendre(n_nodes);
    let mut acc = 0.0;
    for (&x, &w) in xs.iter().zip(ws.iter()) {
        let tab = normalized_assoc_legendre_all(lmax, x);
        let nb = |l: u32, m: i32| -> f64 {
            let ma = m.unsigned_abs() as usize;
            let v = tab[l as usize][ma];
            if m < 0 && ma % 2 == 1 {
                -v
            } else {
                v
            }
        };
        acc += w * nb(l1, m1) * nb(l2, m2) * nb(l, m);
    }
    2.0 * std::f64::consts::PI * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::legendre::{sph_harm, SphereQuadrature, SphIndex};
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_triple_product() {
        // direct S^2 quadrature oracle
        let q = SphereQuadrature::with_degree(2);
        let oracle = q
            .integrate(|t, p| {
                let y = sph_harm(SphIndex::new(0, 0), t, p);
                y * y * y.conj()
            })
            .re;
        let v = gaunt(0, 0, 0, 0, 0, 0);
        assert_abs_diff_eq!(v, oracle, epsilon = 1e-14);
        assert_abs_diff_eq!(v, 1.0 / (4.0 * std::f64::consts::PI).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn m_selection_rule_exact_zero() {
        assert_eq!(gaunt(2, 1, 3, 1, 4, 1), 0.0);
        let table = GauntTable::build(3);
        assert_eq!(table.get(2, 1, 3, 1, 4, 1), 0.0);
    }

    #[test]
    fn triangle_rule_exact_zero() {
        assert_eq!(gaunt(2, 0, 1, 0, 4, 0), 0.0);
    }

    #[test]
    fn table_matches_quadrature_oracle() {
        let table = GauntTable::build(3);
        let q = SphereQuadrature::with_degree(12);
        for &(l1, m1, l2, m2, l, m) in
            &[(1, 0, 1, 0, 2, 0), (2, 1, 1, -1, 3, 0), (2, 2, 2, -1, 2, 1), (3, -2, 2, 2, 1, 0)]
        {
            let oracle = q
                .integrate(|t, p| {
                    sph_harm(SphIndex::new(l1, m1), t, p)
                        * sph_harm(SphIndex::new(l2, m2), t, p)
                        * sph_harm(SphIndex::new(l, m), t, p).conj()
                })
                .re;
            assert_abs_diff_eq!(table.get(l1, m1, l2, m2, l, m), oracle, epsilon = 1e-12);
        }
    }

    #[test]
    fn swap_symmetry() {
        let table = GauntTable::build(4);
        for &(l1, m1, l2, m2, l, m) in &[(2, 1, 3, -2, 3, -1), (4, 0, 2, 2, 4, 2)] {
            assert_abs_diff_eq!(
                table.get(l1, m1, l2, m2, l, m),
                table.get(l2, m2, l1, m1, l, m),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn random_tuples_respect_selection_rules() {
        // pseudo-random walk over indices; violating tuples must be exactly 0
        let table = GauntTable::build(4);
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as u32
        };
        let mut checked = 0;
        while checked < 1000 {
            let l1 = next() % 5;
            let l2 = next() % 5;
            let l = next() % 9;
            let m1 = (next() % (2 * l1 + 1)) as i32 - l1 as i32;
            let m2 = (next() % (2 * l2 + 1)) as i32 - l2 as i32;
            let m = (next() % (2 * l + 1)) as i32 - l as i32;
            if !gaunt_allowed(l1, m1, l2, m2, l, m) {
                assert_eq!(table.get(l1, m1, l2, m2, l, m), 0.0);
                checked += 1;
            }
        }
    }
}
