//! Double-exponential quadrature.
//!
//! Tanh-sinh on finite intervals and exp-sinh on `[a, ∞)`. Both tolerate
//! integrable algebraic endpoint singularities, which is what the Dunkl weight
//! `|cos φ|^{2ν₁} |sin φ|^{2ν₂}` and the radial factor `r^{2K+1}` produce.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub trait QuadValue: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

const MAX_LEVEL: u32 = 12;
const T_MAX: f64 = 6.5;

/// `∫_a^b f`, refined until successive levels agree to `tol` relative to
/// `∫_a^b |f|`.
///
/// `f` receives `(x, distance to a, distance to b)` so integrands singular at
/// an endpoint can be evaluated without cancellation.
pub fn tanh_sinh<T, F>(f: F, a: f64, b: f64, tol: f64) -> Result<T>
where
    T: QuadValue,
    F: Fn(f64, f64, f64) -> T,
{
    if !(b > a) {
        return Err(Error::domain(
            "tanh_sinh",
            format!("empty interval [{a}, {b}]"),
        ));
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    // node at t contributes with weight w(t); symmetric pair ±t
    // node pair at ±t: (weighted values, weighted magnitudes)
    let eval = |t: f64| -> (T, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cu * cu);
        // 1 - tanh(u) without cancellation
        let gap = half * 2.0 / ((2.0 * u).exp() + 1.0);
        if gap > 0.0 && w > 0.0 {
            let x_hi = b - gap;
            let x_lo = a + gap;
            let hi = f(x_hi, x_hi - a, gap);
            let lo = f(x_lo, gap, b - x_lo);
            (
                (hi + lo) * (w * half),
                (hi.magnitude() + lo.magnitude()) * w * half,
            )
        } else {
            (T::zero(), 0.0)
        }
    };

    let mut h = 1.0;
    let centre = f(mid, mid - a, b - mid);
    let mut sum = centre * (FRAC_PI_2 * half);
    let mut abs_sum = centre.magnitude() * FRAC_PI_2 * half;
    let mut k = 1.0;
    while k * h <= T_MAX {
        let (v, m) = eval(k * h);
        sum = sum + v;
        abs_sum += m;
        k += 1.0;
    }
    let mut estimate = sum * h;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        let mut k = 1.0;
        while k * h <= T_MAX {
            let (v, m) = eval(k * h);
            sum = sum + v;
            abs_sum += m;
            k += 2.0;
        }
        let next = sum * h;
        let diff = (next + estimate * -1.0).magnitude();
        estimate = next;
        if diff <= tol * (abs_sum * h).max(f64::MIN_POSITIVE) {
            return Ok(estimate);
        }
    }
    Err(Error::Convergence(format!(
        "tanh-sinh on [{a}, {b}] did not reach relative tolerance {tol:e}"
    )))
}

/// `∫_a^∞ f` by the exp-sinh substitution `x = a + exp(π/2 sinh t)`, with
/// the same convergence measure as [`tanh_sinh`].
pub fn exp_sinh<T, F>(f: F, a: f64, tol: f64) -> Result<T>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let eval = |t: f64| -> (T, f64) {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let w = FRAC_PI_2 * t.cosh() * e;
        if e == 0.0 || !e.is_finite() || !w.is_finite() {
            return (T::zero(), 0.0);
        }
        let v = f(a + e);
        if v.magnitude() == 0.0 {
            (T::zero(), 0.0)
        } else {
            (v * w, v.magnitude() * w)
        }
    };
    let pair = |t: f64| {
        let (v1, m1) = eval(t);
        let (v2, m2) = eval(-t);
        (v1 + v2, m1 + m2)
    };
    const T_RANGE: f64 = 4.5;
    let mut h = 0.5;
    let (mut sum, mut abs_sum) = eval(0.0);
    let mut k = 1.0;
    while k * h <= T_RANGE {
        let (v, m) = pair(k * h);
        sum = sum + v;
        abs_sum += m;
        k += 1.0;
    }
    let mut estimate = sum * h;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        let mut k = 1.0;
        while k * h <= T_RANGE {
            let (v, m) = pair(k * h);
            sum = sum + v;
            abs_sum += m;
            k += 2.0;
        }
        let next = sum * h;
        let diff = (next + estimate * -1.0).magnitude();
        estimate = next;
        if diff <= tol * (abs_sum * h).max(f64::MIN_POSITIVE) {
            return Ok(estimate);
        }
    }
    Err(Error::Convergence(format!(
        "exp-sinh on [{a}, inf) did not reach relative tolerance {tol:e}"
    )))
}
