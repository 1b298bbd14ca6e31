//! Bessel functions of the first kind and spherical Bessel functions.
//!
//! Integer orders only. Both use backward (Miller) recurrence, which is
//! stable for all arguments, with series branches near zero.

/// `J_m(x)` for integer order. Negative orders via `J_{-m} = (-1)^m J_m`.
pub fn bessel_j(m: i32, x: f64) -> f64 {
    if m < 0 {
        let v = bessel_j(-m, x);
        return if m % 2 == 0 { v } else { -v };
    }
    let m = m as u32;
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if x < 0.0 {
        let v = bessel_j(m as i32, -x);
        return if m % 2 == 0 { v } else { -v };
    }
    if x <= 2.0 {
        return series_j(m, x);
    }
    bessel_j_all(m as usize, x)[m as usize]
}

/// All of `J_0(x) .. J_max(x)` in one backward sweep, normalized by
/// `J_0 + 2 sum_{k even} J_k = 1`.
pub fn bessel_j_all(max_order: usize, x: f64) -> Vec<f64> {
    assert!(x > 0.0);
    let xf = x.max(max_order as f64);
    // start high enough that the unnormalized tail has decayed
    let start = (xf + 18.0 + 12.0 * xf.sqrt()) as usize;
    let start = start + (start & 1); // even
    let mut vals = vec![0.0_f64; start + 2];
    vals[start + 1] = 0.0;
    vals[start] = 1e-300;
    for k in (1..=start).rev() {
        vals[k - 1] = (2.0 * k as f64 / x) * vals[k] - vals[k + 1];
        if vals[k - 1].abs() > 1e250 {
            let s = 1e-250;
            for v in vals[k - 1..].iter_mut() {
                *v *= s;
            }
        }
    }
    let mut sum = vals[0];
    let mut k = 2;
    while k <= start {
        sum += 2.0 * vals[k];
        k += 2;
    }
    vals.truncate(max_order + 1);
    for v in vals.iter_mut() {
        *v /= sum;
    }
    vals
}

fn series_j(m: u32, x: f64) -> f64 {
    // sum_k (-1)^k (x/2)^{2k+m} / (k! (k+m)!)
    let half = 0.5 * x;
    let mut term = 1.0_f64;
    for k in 1..=m {
        term *= half / k as f64;
    }
    let mut sum = term;
    let mut k = 1.0_f64;
    loop {
        term *= -half * half / (k * (k + m as f64));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) || k > 60.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Spherical Bessel function `j_l(x)`, stable near `x = 0`.
pub fn spherical_bessel_j(l: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if x < 0.02 || x < 0.25 * (l as f64 + 1.0) && x < 1.0 {
        return series_spherical(l, x);
    }
    spherical_bessel_all(l as usize, x)[l as usize]
}

/// All of `j_0(x) .. j_max(x)` in one backward sweep.
pub fn spherical_bessel_all(max_order: usize, x: f64) -> Vec<f64> {
    assert!(x > 0.0);
    let j0 = x.sin() / x;
    if max_order == 0 {
        return vec![j0];
    }
    let xf = x.max(max_order as f64);
    let start = (xf + 18.0 + 12.0 * xf.sqrt()) as usize;
    let mut vals = vec![0.0_f64; start + 2];
    vals[start + 1] = 0.0;
    vals[start] = 1e-300;
    for k in (1..=start).rev() {
        vals[k - 1] = ((2 * k + 1) as f64 / x) * vals[k] - vals[k + 1];
        if vals[k - 1].abs() > 1e250 {
            let s = 1e-250;
            for v in vals[k - 1..].iter_mut() {
                *v *= s;
            }
        }
    }
    let scale = j0 / vals[0];
    let mut out = vec![0.0; max_order + 1];
    for (i, o) in out.iter_mut().enumerate() {
        // small x underflows the unnormalized tail; fall back to the series
        let v = vals[i] * scale;
        *o = if v.is_finite() { v } else { series_spherical(i as u32, x) };
    }
    out
}

fn series_spherical(l: u32, x: f64) -> f64 {
    // x^l / (2l+1)!! * (1 - (x^2/2)/(1!(2l+3)) + (x^2/2)^2/(2!(2l+3)(2l+5)) - ...)
    let mut lead = 1.0_f64;
    for k in 0..l {
        lead *= x / (2.0 * k as f64 + 3.0);
    }
    // lead = x^l / (2l+1)!! built stepwise
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let h = 0.5 * x * x;
    for k in 1..40 {
        term *= -h / (k as f64 * (2.0 * (l + k) as f64 + 1.0));
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    lead * sum
}
