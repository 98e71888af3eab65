//! Kummer's confluent hypergeometric function 1F1(a; b; x) for real
//! parameters and non-negative argument.
//!
//! The power series is summed with Kahan compensation and an extended
//! exponent, so arguments where e^x overflows a double still produce a
//! usable mantissa. The parameter `a` is carried as an integer plus an
//! offset ([`SplitParameter`]): the Pochhammer factor (a + k) that sits
//! next to zero is then formed exactly, which is what keeps eigenfunctions
//! close to the terminating (free oscillator) case accurate far from the
//! origin.

use crate::error::{Error, Result};

/// Offsets of `a` from a nonpositive integer below this are snapped to zero
/// and the series is evaluated as the terminating polynomial.
pub const TERMINATING_SNAP: f64 = 1e-12;

/// Digits the series may lose to cancellation before [`kummer_1f1`] refuses
/// to return a value.
pub const DEFAULT_DIGIT_BUDGET: f64 = 10.0;

/// Largest argument accepted. Work grows linearly with `x`.
pub const MAX_ARGUMENT: f64 = 1.0e5;

const STOP_RATIO: f64 = 1e-17;
const STOP_RUN: usize = 3;
const MAX_TERMS: usize = 400_000;
const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// The hypergeometric parameter `a`, stored as `integer + offset` with
/// `|offset| <= 1/2` (unless constructed otherwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitParameter {
    pub integer: i64,
    pub offset: f64,
}

impl SplitParameter {
    pub fn new(a: f64) -> Self {
        let n = a.round();
        Self {
            integer: n as i64,
            offset: a - n,
        }
    }

    /// `a = integer + offset` with the caller choosing the split.
    pub fn from_parts(integer: i64, offset: f64) -> Self {
        Self { integer, offset }
    }

    pub fn value(&self) -> f64 {
        self.integer as f64 + self.offset
    }

    /// `a + by`, keeping the offset untouched.
    pub fn shifted(&self, by: i64) -> Self {
        Self {
            integer: self.integer + by,
            offset: self.offset,
        }
    }

    /// True when `a` is (within the snap tolerance) a nonpositive integer.
    pub fn is_terminating(&self) -> bool {
        self.integer <= 0 && self.offset.abs() <= TERMINATING_SNAP
    }

    #[inline]
    fn pochhammer_factor(&self, k: usize) -> f64 {
        (self.integer + k as i64) as f64 + self.offset
    }
}

/// A series sum represented as `mantissa * exp(ln_scale)`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledSum {
    pub mantissa: f64,
    pub ln_scale: f64,
    /// Sum of absolute term values, on the same scale as `mantissa`.
    pub abs_sum: f64,
    pub terms: usize,
}

impl ScaledSum {
    pub fn value(&self) -> f64 {
        self.scaled_value(0.0)
    }

    /// `value * exp(ln_factor)` without forming the unscaled value first.
    pub fn scaled_value(&self, ln_factor: f64) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa * (self.ln_scale + ln_factor).exp()
        }
    }

    pub fn signum(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// Natural log of |value|; `-inf` for an exact zero.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.ln_scale
    }

    /// Value relative to the magnitude of the terms that produced it.
    pub fn relative(&self) -> f64 {
        if self.abs_sum == 0.0 {
            0.0
        } else {
            self.mantissa / self.abs_sum
        }
    }

    /// Decimal digits lost to cancellation.
    pub fn cancelled_digits(&self) -> f64 {
        if self.mantissa == 0.0 {
            f64::INFINITY
        } else {
            (self.abs_sum / self.mantissa.abs()).log10().max(0.0)
        }
    }
}

fn check_arguments(b: f64, x: f64) -> Result<()> {
    if !b.is_finite() || (b <= 0.0 && b == b.round()) {
        return Err(Error::Domain(format!(
            "1F1 parameter b = {b} is a nonpositive integer"
        )));
    }
    if !(x >= 0.0) || x > MAX_ARGUMENT {
        return Err(Error::Domain(format!(
            "1F1 argument x = {x} outside [0, {MAX_ARGUMENT}]"
        )));
    }
    Ok(())
}

/// Sum the 1F1 power series with compensated summation.
///
/// The split of `a` is taken literally: no snapping to the terminating
/// polynomial happens here. No cancellation check is made either; root
/// finders call this directly because the function is supposed to vanish
/// at their solutions.
pub fn kummer_series(a: SplitParameter, b: f64, x: f64) -> Result<ScaledSum> {
    check_arguments(b, x)?;
    if !a.offset.is_finite() {
        return Err(Error::Domain("1F1 parameter a is not finite".into()));
    }

    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    let mut abs_sum = 1.0_f64;
    let mut ln_scale = 0.0_f64;
    let mut small_run = 0usize;
    let mut k = 0usize;

    loop {
        let factor = a.pochhammer_factor(k);
        if factor == 0.0 {
            break;
        }
        let kf = k as f64;
        let ratio = factor * x / ((b + kf) * (kf + 1.0));
        term *= ratio;
        if term == 0.0 {
            break;
        }

        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        abs_sum += term.abs();

        if term.abs() > RESCALE_ABOVE || abs_sum > RESCALE_ABOVE {
            term *= RESCALE_BY;
            sum *= RESCALE_BY;
            comp *= RESCALE_BY;
            abs_sum *= RESCALE_BY;
            ln_scale -= RESCALE_BY.ln();
        }

        // Past the peak every later ratio is below one, so a run of
        // negligible terms ends the series.
        let past_peak = kf + 1.0 > x && ratio.abs() < 1.0;
        if term.abs() < STOP_RATIO * sum.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        k += 1;
        if past_peak && small_run >= STOP_RUN {
            break;
        }
        if k > MAX_TERMS {
            return Err(Error::NonConvergence(format!(
                "1F1({}, {b}, {x}) series exceeded {MAX_TERMS} terms",
                a.value()
            )));
        }
    }

    Ok(ScaledSum {
        mantissa: sum,
        ln_scale,
        abs_sum,
        terms: k + 1,
    })
}

/// 1F1(a; b; x) with the default cancellation budget.
pub fn kummer_1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    kummer_1f1_with_budget(a, b, x, DEFAULT_DIGIT_BUDGET)
}

pub fn kummer_1f1_with_budget(a: f64, b: f64, x: f64, digit_budget: f64) -> Result<f64> {
    let mut split = SplitParameter::new(a);
    if split.is_terminating() {
        split.offset = 0.0;
    }
    let s = kummer_series(split, b, x)?;
    let digits = s.cancelled_digits();
    if s.mantissa != 0.0 && digits > digit_budget {
        return Err(Error::Accuracy {
            a,
            b,
            x,
            digits,
            budget: digit_budget,
        });
    }
    let v = s.value();
    if !v.is_finite() {
        return Err(Error::Domain(format!(
            "1F1({a}, {b}, {x}) overflows a double"
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(kummer_1f1(0.7, 1.5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn a_zero_terminates_immediately() {
        assert_eq!(kummer_1f1(0.0, 1.5, 3.2).unwrap(), 1.0);
    }

    #[test]
    fn degree_one_polynomial() {
        let v = kummer_1f1(-1.0, 1.5, 0.9).unwrap();
        assert!((v - 0.4).abs() < 1e-15, "{v}");
    }

    #[test]
    fn degree_two_polynomial_matches_rational_terms() {
        // 1 + (a/b) x + a(a+1)/(b(b+1)) x^2/2 with a = -2, b = 2.5
        let x = 1.3;
        let expected = 1.0 - (2.0 / 2.5) * x + (2.0 * 1.0 / (2.5 * 3.5)) * x * x / 2.0;
        let v = kummer_1f1(-2.0, 2.5, x).unwrap();
        assert!((v - expected).abs() < 1e-15 * expected.abs().max(1.0));
    }

    #[test]
    fn near_integer_a_snaps_to_polynomial() {
        let exact = kummer_1f1(-3.0, 1.5, 40.0).unwrap();
        let snapped = kummer_1f1(-3.0 + 1e-13, 1.5, 40.0).unwrap();
        assert_eq!(exact, snapped);
    }

    #[test]
    fn exponential_special_case() {
        // 1F1(b; b; x) = e^x
        for &x in &[0.3, 2.0, 17.5, 50.0] {
            let v = kummer_1f1(2.5, 2.5, x).unwrap();
            assert!((v / x.exp() - 1.0).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn huge_argument_keeps_mantissa() {
        // 1F1(1; 1; 900) = e^900 overflows; the scaled sum does not.
        let s = kummer_series(SplitParameter::new(1.0), 1.0, 900.0).unwrap();
        assert!(s.value().is_infinite());
        assert!((s.ln_abs() - 900.0).abs() < 1e-9, "{}", s.ln_abs());
        assert!(kummer_1f1(1.0, 1.0, 900.0).is_err());
    }

    #[test]
    fn split_parameter_resolves_tiny_offsets() {
        // a = -1 + d: the e^x branch enters with weight d, visible only
        // because (a + 1) is formed exactly.
        let x = 600.0;
        let b = 1.5;
        let d = -1e-200;
        let s = kummer_series(SplitParameter::from_parts(-1, d), b, x).unwrap();
        let poly = 1.0 - x / b;
        // For x this large the transcendental branch dominates and flips sign.
        assert!(s.ln_abs() > poly.abs().ln());
        let s0 = kummer_series(SplitParameter::from_parts(-1, 0.0), b, x).unwrap();
        assert!((s0.value() - poly).abs() < 1e-12 * poly.abs());
    }

    #[test]
    fn rejects_bad_b() {
        assert!(matches!(kummer_1f1(0.5, -2.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(kummer_1f1(0.5, 0.0, 1.0), Err(Error::Domain(_))));
        assert!(kummer_1f1(0.5, -2.5, 1.0).is_ok());
    }

    #[test]
    fn rejects_negative_argument() {
        assert!(kummer_1f1(0.5, 1.5, -1.0).is_err());
    }

    #[test]
    fn reports_cancellation() {
        // Strongly negative non-integer a at moderate x: alternating terms
        // many orders larger than the result.
        let r = kummer_1f1_with_budget(-60.5, 1.5, 60.0, 3.0);
        assert!(matches!(r, Err(Error::Accuracy { .. })), "{r:?}");
    }

    #[test]
    fn large_negative_a_small_argument() {
        // The regime of tightly confined states: |a| ~ 1e5, x ~ 1e-4.
        let v = kummer_1f1(-1.0e5, 1.5, 1.0e-4).unwrap();
        assert!(v.is_finite());
    }
}
