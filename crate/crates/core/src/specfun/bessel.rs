//! Spherical Bessel functions of the first kind and their positive zeros.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Highest order the zero finder accepts.
pub const L_MAX: usize = 16;

/// Highest zero index the zero finder accepts.
pub const MAX_ZERO_INDEX: usize = 64;

/// Extra orders above the requested one where the downward recurrence starts.
const MILLER_EXTRA: usize = 20;

const ZERO_SCAN_STEP: f64 = PI / 8.0;
const ZERO_REL_TOL: f64 = 1e-13;

/// j_l(x) for x >= 0.
pub fn spherical_bessel_j(l: usize, x: f64) -> f64 {
    let mut out = vec![0.0; l + 1];
    spherical_bessel_sequence(x, &mut out);
    out[l]
}

/// Derivative j_l'(x).
pub fn spherical_bessel_j_derivative(l: usize, x: f64) -> f64 {
    let mut out = vec![0.0; l + 2];
    spherical_bessel_sequence(x, &mut out);
    derivative_from_sequence(l, &out)
}

/// j_l' from a filled sequence holding at least orders 0..=l+1.
#[inline]
pub fn derivative_from_sequence(l: usize, seq: &[f64]) -> f64 {
    if l == 0 {
        -seq[1]
    } else {
        let lf = l as f64;
        (lf * seq[l - 1] - (lf + 1.0) * seq[l + 1]) / (2.0 * lf + 1.0)
    }
}

/// Fill `out[n] = j_n(x)` for `n = 0..out.len()`.
///
/// Power series below x = 1, upward recurrence from j_0, j_1 once x exceeds
/// the highest order, and Miller's downward recurrence (normalized with
/// the sum rule sum (2n+1) j_n^2 = 1) in between.
pub fn spherical_bessel_sequence(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let top = out.len() - 1;
    if x == 0.0 {
        out.iter_mut().for_each(|v| *v = 0.0);
        out[0] = 1.0;
        return;
    }
    if x < 1.0 {
        series(x, out);
    } else if x >= top as f64 {
        upward(x, out);
    } else {
        downward(x, out);
    }
}

fn series(x: f64, out: &mut [f64]) {
    let half_x2 = -0.5 * x * x;
    let mut prefactor = 1.0;
    for (n, slot) in out.iter_mut().enumerate() {
        let nf = n as f64;
        if n > 0 {
            prefactor *= x / (2.0 * nf + 1.0);
        }
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        loop {
            term *= half_x2 / (k * (2.0 * nf + 2.0 * k + 1.0));
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
            k += 1.0;
        }
        *slot = prefactor * sum;
    }
}

fn upward(x: f64, out: &mut [f64]) {
    let (s, c) = x.sin_cos();
    out[0] = s / x;
    if out.len() > 1 {
        out[1] = s / (x * x) - c / x;
    }
    for n in 1..out.len().saturating_sub(1) {
        out[n + 1] = (2.0 * n as f64 + 1.0) / x * out[n] - out[n - 1];
    }
}

fn downward(x: f64, out: &mut [f64]) {
    let top = out.len() - 1;
    let start = top.max(x as usize) + MILLER_EXTRA;
    let mut f_next = 0.0_f64;
    let mut f = 1e-30_f64;
    let mut norm = 0.0_f64;
    // Values are filled while descending; rescaling applies retroactively.
    for n in (0..=start).rev() {
        if n <= top {
            out[n] = f;
        }
        norm += (2.0 * n as f64 + 1.0) * f * f;
        if n == 0 {
            break;
        }
        let f_prev = (2.0 * n as f64 + 1.0) / x * f - f_next;
        f_next = f;
        f = f_prev;
        if f.abs() > 1e150 {
            f *= 1e-150;
            f_next *= 1e-150;
            norm *= 1e-300;
            for v in out.iter_mut().take(top + 1).skip(n.min(top + 1)) {
                *v *= 1e-150;
            }
        }
    }
    let mut scale = 1.0 / norm.sqrt();
    // Fix the sign against whichever of j_0, j_1 is better conditioned.
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    let sign_ref = if j0.abs() >= j1.abs() {
        j0 * out[0]
    } else {
        j1 * if top >= 1 { out[1] } else { f_next }
    };
    if sign_ref < 0.0 {
        scale = -scale;
    }
    for v in out.iter_mut() {
        *v *= scale;
    }
}

/// The k-th positive zero of j_l (k starts at 1).
///
/// Sign changes are bracketed on a grid of step pi/8 and refined by
/// bisection.
pub fn bessel_zero(l: usize, k: usize) -> Result<f64> {
    if l > L_MAX {
        return Err(Error::Domain(format!("order l = {l} exceeds {L_MAX}")));
    }
    if k == 0 || k > MAX_ZERO_INDEX {
        return Err(Error::Domain(format!(
            "zero index k = {k} outside 1..={MAX_ZERO_INDEX}"
        )));
    }
    // Zeros of j_l sit near (k + l/2) pi; the window leaves generous room.
    let x_limit = (k as f64 + 0.5 * l as f64 + 2.0) * PI + 10.0;
    let mut lo = ZERO_SCAN_STEP;
    let mut f_lo = spherical_bessel_j(l, lo);
    let mut found = 0;
    while lo < x_limit {
        let hi = lo + ZERO_SCAN_STEP;
        let f_hi = spherical_bessel_j(l, hi);
        if f_hi == 0.0 {
            found += 1;
            if found == k {
                return Ok(hi);
            }
        } else if f_lo * f_hi < 0.0 {
            found += 1;
            if found == k {
                return Ok(bisect(l, lo, hi, f_lo));
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::BracketExhausted(format!(
        "zero {k} of j_{l} not found below x = {x_limit:.3}"
    )))
}

fn bisect(l: usize, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    while hi - lo > ZERO_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = spherical_bessel_j(l, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    0.5 * (lo + hi)
}
