//! Exact scalar coefficients for the symbolic exterior algebra.
//!
//! A coefficient is a sum of terms `(re + i im) * xi_1^a xi_2^b xi_3^c *
//! |xi|^p * [symbol]` with rational real and imaginary parts. This covers
//! everything the frequency calculus produces: unit phases, interior
//! products with `i xi`, radial `|xi|` weights, and opaque coordinate
//! function symbols.

use num_complex::Complex64;
use num_rational::Ratio;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

type Q = Ratio<i64>;

/// Multiplicative part of a coefficient term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoeffKey {
    /// Exponents of the coordinates `xi_1, xi_2, xi_3`.
    pub xi_exp: [u8; 3],
    /// Power of `|xi|`.
    pub norm_pow: i8,
    /// Opaque function symbol (e.g. a coordinate-function index).
    pub sym: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Coeff {
    terms: BTreeMap<CoeffKey, (Q, Q)>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff::integer(1)
    }

    pub fn integer(k: i64) -> Self {
        Coeff::rational(k, 1)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        let mut c = Coeff::default();
        if num != 0 {
            c.terms.insert(CoeffKey::default(), (Q::new(num, den), Q::from_integer(0)));
        }
        c
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        let mut c = Coeff::default();
        c.terms.insert(CoeffKey::default(), (Q::from_integer(0), Q::from_integer(1)));
        c
    }

    /// `i^k` as an exact unit.
    pub fn i_pow(k: i32) -> Self {
        match k.rem_euclid(4) {
            0 => Coeff::one(),
            1 => Coeff::i(),
            2 => -Coeff::one(),
            _ => -Coeff::i(),
        }
    }

    /// A bare coordinate `xi_p` (zero-based index).
    pub fn xi(p: usize) -> Self {
        let mut key = CoeffKey::default();
        key.xi_exp[p] = 1;
        let mut c = Coeff::default();
        c.terms.insert(key, (Q::from_integer(1), Q::from_integer(0)));
        c
    }

    /// `|xi|^p`.
    pub fn norm_pow(p: i8) -> Self {
        let key = CoeffKey { norm_pow: p, ..CoeffKey::default() };
        let mut c = Coeff::default();
        c.terms.insert(key, (Q::from_integer(1), Q::from_integer(0)));
        c
    }

    /// An opaque function symbol.
    pub fn symbol(id: u8) -> Self {
        let key = CoeffKey { sym: Some(id), ..CoeffKey::default() };
        let mut c = Coeff::default();
        c.terms.insert(key, (Q::from_integer(1), Q::from_integer(0)));
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoeffKey, &(Q, Q))> {
        self.terms.iter()
    }

    fn insert(&mut self, key: CoeffKey, v: (Q, Q)) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                if v.0 != Q::from_integer(0) || v.1 != Q::from_integer(0) {
                    e.insert(v);
                }
            }
            Entry::Occupied(mut e) => {
                let cur = *e.get();
                let nv = (cur.0 + v.0, cur.1 + v.1);
                if nv.0 == Q::from_integer(0) && nv.1 == Q::from_integer(0) {
                    e.remove();
                } else {
                    *e.get_mut() = nv;
                }
            }
        }
    }

    /// Scales every term by a rational.
    pub fn scaled(&self, num: i64, den: i64) -> Self {
        let q = Q::new(num, den);
        let mut out = Coeff::default();
        for (k, v) in &self.terms {
            out.insert(*k, (v.0 * q, v.1 * q));
        }
        out
    }

    /// If the coefficient is a single pure-number term, returns it.
    pub fn as_constant(&self) -> Option<(Q, Q)> {
        if self.terms.len() != 1 {
            if self.terms.is_empty() {
                return Some((Q::from_integer(0), Q::from_integer(0)));
            }
            return None;
        }
        let (k, v) = self.terms.iter().next().unwrap();
        if *k == CoeffKey::default() {
            Some(*v)
        } else {
            None
        }
    }

    /// Numeric value at a frequency point; `syms` resolves function symbols.
    pub fn eval(&self, xi: &[f64], syms: &dyn Fn(u8) -> Complex64) -> Complex64 {
        let norm = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut acc = Complex64::default();
        for (k, (re, im)) in &self.terms {
            let mut factor = Complex64::new(ratio_f64(*re), ratio_f64(*im));
            for (p, &e) in k.xi_exp.iter().enumerate() {
                if e > 0 {
                    factor *= xi.get(p).copied().unwrap_or(0.0).powi(e as i32);
                }
            }
            if k.norm_pow != 0 {
                factor *= norm.powi(k.norm_pow as i32);
            }
            if let Some(s) = k.sym {
                factor *= syms(s);
            }
            acc += factor;
        }
        acc
    }
}

fn ratio_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert(*k, *v);
        }
        out
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs.clone())
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(mut self) -> Coeff {
        for v in self.terms.values_mut() {
            v.0 = -v.0;
            v.1 = -v.1;
        }
        self
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        let mut out = Coeff::default();
        for (ka, (ra, ia)) in &self.terms {
            for (kb, (rb, ib)) in &rhs.terms {
                let sym = match (ka.sym, kb.sym) {
                    (None, s) | (s, None) => s,
                    (Some(_), Some(_)) => {
                        panic!("products of function symbols are not representable")
                    }
                };
                let key = CoeffKey {
                    xi_exp: [
                        ka.xi_exp[0] + kb.xi_exp[0],
                        ka.xi_exp[1] + kb.xi_exp[1],
                        ka.xi_exp[2] + kb.xi_exp[2],
                    ],
                    norm_pow: ka.norm_pow + kb.norm_pow,
                    sym,
                };
                // complex multiply
                out.insert(key, (ra * rb - ia * ib, ra * ib + ia * rb));
            }
        }
        out
    }
}
