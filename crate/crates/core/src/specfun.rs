//! Orthogonal polynomials, log-gamma and the angular normalization constants.
//!
//! Everything here is a pure function of its arguments. The Γ-ratio constants
//! are assembled in log space so that angular indices in the thousands do not
//! overflow.

use crate::error::{Error, Result};

/// Generalized Laguerre parameter, `alpha > -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreParam(f64);

impl LaguerreParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha <= -1.0 {
            return Err(Error::domain(
                "laguerre",
                format!("alpha = {alpha} must exceed -1"),
            ));
        }
        Ok(Self(alpha))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Jacobi parameters `(a, b)`, both `> -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    a: f64,
    b: f64,
}

impl JacobiParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_nan() || b.is_nan() || a <= -1.0 || b <= -1.0 {
            return Err(Error::domain(
                "jacobi",
                format!("parameters (a, b) = ({a}, {b}) must both exceed -1"),
            ));
        }
        Ok(Self { a, b })
    }

    pub fn a(self) -> f64 {
        self.a
    }

    pub fn b(self) -> f64 {
        self.b
    }

    pub fn swapped(self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }
}

/// `L_n^alpha(x)` by the three-term recurrence
/// `k L_k = (2k - 1 + alpha - x) L_{k-1} - (k - 1 + alpha) L_{k-2}`.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> Result<f64> {
    let alpha = LaguerreParam::new(alpha)?.get();
    Ok(laguerre_unchecked(n, alpha, x))
}

pub(crate) fn laguerre_unchecked(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 2..=n {
        let k = f64::from(k);
        let next = ((2.0 * k - 1.0 + alpha - x) * cur - (k - 1.0 + alpha) * prev) / k;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_n^{(a,b)}(x)` by the standard three-term recurrence.
///
/// The recurrence is polynomial, so any real `x` is accepted, including
/// arguments outside `[-1, 1]`.
pub fn jacobi(n: u32, params: JacobiParams, x: f64) -> f64 {
    let (a, b) = (params.a, params.b);
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    let ab = a + b;
    let a2b2 = a * a - b * b;
    for k in 2..=n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let denom = 2.0 * k * (k + ab) * (c - 2.0);
        let next = ((c - 1.0) * (c * (c - 2.0) * x + a2b2) * cur
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * prev)
            / denom;
        prev = cur;
        cur = next;
    }
    cur
}

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)) for k = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_MIN: f64 = 15.0;

/// `ln Γ(x)` for `x > 0`.
///
/// Stirling series for `x >= 15`, upward recurrence below it. The product
/// of shift factors is accumulated in one running product, which stays far
/// from overflow for the at most 15 factors needed.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(
            "log_gamma",
            format!("argument {x} must be positive"),
        ));
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut shift = 1.0;
    let mut z = x;
    while z < STIRLING_MIN {
        shift *= z;
        z += 1.0;
    }
    Ok(stirling(z) - shift.ln())
}

fn stirling(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

/// `ln n!`.
pub fn log_factorial(n: u32) -> f64 {
    // Γ(n + 1) with n + 1 >= 1 is always in range.
    log_gamma(f64::from(n) + 1.0).expect("positive argument")
}

fn check_nu(func: &'static str, nu1: f64, nu2: f64) -> Result<()> {
    if !(nu1 > -0.5 && nu2 > -0.5) {
        return Err(Error::domain(
            func,
            format!("deformation parameters must exceed -1/2, got nu1={nu1}, nu2={nu2}"),
        ));
    }
    Ok(())
}

fn positive_arg(func: &'static str, name: &str, v: f64) -> Result<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::domain(func, format!("{name} = {v} is not positive")))
    }
}

/// Normalization constants `(A_l, A'_l)` of the even-sector angular
/// eigenfunction, `l >= 1`.
///
/// Each constant gives its parity component unit Dunkl-weighted norm on
/// `[0, 2π)`, so the combined eigenfunction has squared norm 2.
pub fn angular_norm_even(l: u32, nu1: f64, nu2: f64) -> Result<(f64, f64)> {
    const F: &str = "angular_norm_even";
    check_nu(F, nu1, nu2)?;
    if l == 0 {
        return Err(Error::domain(F, "even-sector index l must be >= 1"));
    }
    let lf = f64::from(l);
    let s = nu1 + nu2;
    let pre = positive_arg(F, "2l + nu1 + nu2", 2.0 * lf + s)?.ln();
    let g_s = log_gamma(positive_arg(F, "l + nu1 + nu2", lf + s)?)?;
    let g_s1 = log_gamma(lf + s + 1.0)?;
    let g_1 = log_gamma(positive_arg(F, "l + nu1 + 1/2", lf + nu1 + 0.5)?)?;
    let g_2 = log_gamma(positive_arg(F, "l + nu2 + 1/2", lf + nu2 + 0.5)?)?;
    let denom = std::f64::consts::LN_2 + g_1 + g_2;
    let ln_a = 0.5 * (pre + g_s + log_factorial(l) - denom);
    let ln_a_prime = 0.5 * (pre + g_s1 + log_factorial(l - 1) - denom);
    Ok((ln_a.exp(), ln_a_prime.exp()))
}

/// Angular index of the odd sector: `l = twice / 2` with `twice` odd.
fn half_integer(func: &'static str, twice_l: u32) -> Result<f64> {
    if twice_l % 2 == 0 {
        return Err(Error::domain(
            func,
            format!(
                "odd-sector index must be a half-integer, got {}",
                f64::from(twice_l) / 2.0
            ),
        ));
    }
    Ok(f64::from(twice_l) / 2.0)
}

/// Normalization constants `(B_l, B'_l)` of the odd-sector angular
/// eigenfunction, `l = twice_l / 2 ∈ {1/2, 3/2, ...}`.
///
/// Same convention as [`angular_norm_even`]: each parity component has unit
/// Dunkl-weighted norm. `B'_l` is `B_l` with the roles of `nu1` and `nu2`
/// exchanged, which is what the cosine/sine component structure requires.
pub fn angular_norm_odd(twice_l: u32, nu1: f64, nu2: f64) -> Result<(f64, f64)> {
    const F: &str = "angular_norm_odd";
    check_nu(F, nu1, nu2)?;
    let l = half_integer(F, twice_l)?;
    let s = nu1 + nu2;
    let pre = positive_arg(F, "2l + nu1 + nu2", 2.0 * l + s)?.ln();
    let common = pre
        + log_gamma(positive_arg(F, "l + nu1 + nu2 + 1/2", l + s + 0.5)?)?
        + log_gamma(l + 0.5)?
        - std::f64::consts::LN_2;
    let ln_b = 0.5
        * (common
            - log_gamma(positive_arg(F, "l + nu1 + 1", l + nu1 + 1.0)?)?
            - log_gamma(positive_arg(F, "l + nu2", l + nu2)?)?);
    let ln_b_prime = 0.5
        * (common
            - log_gamma(positive_arg(F, "l + nu1", l + nu1)?)?
            - log_gamma(positive_arg(F, "l + nu2 + 1", l + nu2 + 1.0)?)?);
    Ok((ln_b.exp(), ln_b_prime.exp()))
}

/// The odd-sector constants exactly as usually printed: `B_l` with the
/// stray `n` read as `l`, and `B'_l` carrying `Γ(l + nu1 + nu2 + 1)`.
///
/// Only the first matches the quadrature normalization; kept for side-by-side
/// reporting.
pub fn angular_norm_odd_printed(twice_l: u32, nu1: f64, nu2: f64) -> Result<(f64, f64)> {
    const F: &str = "angular_norm_odd_printed";
    check_nu(F, nu1, nu2)?;
    let l = half_integer(F, twice_l)?;
    let (b, _) = angular_norm_odd(twice_l, nu1, nu2)?;
    let s = nu1 + nu2;
    let ln_b_prime = 0.5
        * ((2.0 * l + s).ln() + log_gamma(l + s + 1.0)? + log_gamma(l + 0.5)?
            - std::f64::consts::LN_2
            - log_gamma(positive_arg(F, "l + nu1", l + nu1)?)?
            - log_gamma(l + nu2 + 1.0)?);
    Ok((b, ln_b_prime.exp()))
}
