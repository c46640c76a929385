//! Radial eigenfunctions of the outer-region oscillator equation
//!
//! `[d²/dr² - (K+² - 1/4)/r² - M²ω²r² + 2ME] L(r) = 0`, `E = ω(2n + K+ + 1)`,
//!
//! plus a finite-difference eigensolver used as an independent check on the
//! energies.

use crate::error::{Error, Result};
use crate::specfun::{laguerre_unchecked, log_factorial, log_gamma};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    pub n: u32,
    pub k_plus: f64,
    pub mass: f64,
    pub omega: f64,
}

impl RadialState {
    pub fn new(n: u32, k_plus: f64, mass: f64, omega: f64) -> Result<Self> {
        if !(k_plus > -1.0) {
            return Err(Error::domain(
                "RadialState",
                format!("K+ = {k_plus} must exceed -1"),
            ));
        }
        if !(mass > 0.0 && omega > 0.0) {
            return Err(Error::domain(
                "RadialState",
                "mass and omega must be positive",
            ));
        }
        Ok(Self {
            n,
            k_plus,
            mass,
            omega,
        })
    }

    pub fn m_omega(&self) -> f64 {
        self.mass * self.omega
    }

    /// `ω(2n + K+ + 1)`.
    pub fn energy(&self) -> f64 {
        self.omega * (2.0 * f64::from(self.n) + self.k_plus + 1.0)
    }

    /// `ln N_{n}` with `N = sqrt(2 n! / Γ(n + K+ + 1))`.
    pub fn log_norm(&self) -> f64 {
        let g = log_gamma(f64::from(self.n) + self.k_plus + 1.0).expect("K+ > -1");
        0.5 * (std::f64::consts::LN_2 + log_factorial(self.n) - g)
    }

    /// Outer classical turning point `sqrt(2E / (M ω²))`.
    pub fn turning_point(&self) -> f64 {
        (2.0 * self.energy() / (self.mass * self.omega * self.omega)).sqrt()
    }
}

/// `N (Mω)^{(K+ + 1)/2} r^{K+ + 1/2} e^{-Mωr²/2} L_n^{K+}(Mωr²)`, unit norm on
/// `(0, ∞)`. The prefactor is assembled in log space.
pub fn radial_eigenfunction(s: &RadialState, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(
            "radial_eigenfunction",
            format!("r = {r} must be positive"),
        ));
    }
    Ok(radial_unchecked(s, r))
}

fn radial_unchecked(s: &RadialState, r: f64) -> f64 {
    let mw = s.m_omega();
    let u = mw * r * r;
    let ln_pre =
        s.log_norm() + 0.5 * (s.k_plus + 1.0) * mw.ln() + (s.k_plus + 0.5) * r.ln() - 0.5 * u;
    ln_pre.exp() * laguerre_unchecked(s.n, s.k_plus, u)
}

/// Unnormalized inner-region solution `r^{K- + 1/2} e^{-Mωr²/2} L_n^{K-}(Mωr²)`.
pub fn inner_solution(n: u32, k_minus: f64, mass: f64, omega: f64, r: f64) -> Result<f64> {
    if !(k_minus > -1.0) || !(r > 0.0) {
        return Err(Error::domain(
            "inner_solution",
            format!("need K- > -1 and r > 0, got {k_minus}, {r}"),
        ));
    }
    let u = mass * omega * r * r;
    Ok(((k_minus + 0.5) * r.ln() - 0.5 * u).exp() * laguerre_unchecked(n, k_minus, u))
}

/// Outer amplitude relative to the inner one from continuity at a flux tube
/// of radius `radius` to leading order: `N+ / N- = R^{K- - K+}`.
pub fn continuity_ratio(radius: f64, k_minus: f64, k_plus: f64) -> f64 {
    radius.powf(k_minus - k_plus)
}

/// Uniform grid `r_i = i h`, `i = 1..N-1`, with Dirichlet ends at `0` and
/// `r_max = N h`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    r: Vec<f64>,
    h: f64,
    r_max: f64,
}

impl RadialGrid {
    pub fn new(h: f64, r_max: f64) -> Result<Self> {
        if !(h > 0.0 && r_max > 2.0 * h) {
            return Err(Error::domain(
                "RadialGrid",
                format!("invalid spacing {h} / extent {r_max}"),
            ));
        }
        let intervals = (r_max / h).round() as usize;
        let r = (1..intervals).map(|i| i as f64 * h).collect();
        Ok(Self {
            r,
            h,
            r_max: intervals as f64 * h,
        })
    }

    /// `r_max = 12 / sqrt(Mω)`.
    pub fn standard(h: f64, mass: f64, omega: f64) -> Result<Self> {
        Self::new(h, 12.0 / (mass * omega).sqrt())
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    fn check_extent(&self, turning_point: f64) -> Result<()> {
        if self.r_max < 1.5 * turning_point {
            return Err(Error::domain(
                "RadialGrid",
                format!(
                    "r_max = {} is below 1.5 x turning point {turning_point}",
                    self.r_max
                ),
            ));
        }
        Ok(())
    }
}

// 8th-order central second difference
const D2_OFFSETS: [f64; 9] = [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0];
const D2_WEIGHTS: [f64; 9] = [
    -1.0 / 560.0,
    8.0 / 315.0,
    -1.0 / 5.0,
    8.0 / 5.0,
    -205.0 / 72.0,
    8.0 / 5.0,
    -1.0 / 5.0,
    8.0 / 315.0,
    -1.0 / 560.0,
];

/// Max of `|L'' - (K+² - 1/4)/r² L - M²ω²r² L + 2ME L|` over the grid, divided
/// by `Mω max|L|`. `L''` is an 8th-order central difference of the analytic
/// function with step `min(h, r/20)`. `energy` defaults to `ω(2n + K+ + 1)`.
pub fn ode_residual(s: &RadialState, grid: &RadialGrid, energy: Option<f64>) -> f64 {
    let e = energy.unwrap_or_else(|| s.energy());
    let (m, w) = (s.mass, s.omega);
    let cent = s.k_plus * s.k_plus - 0.25;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &r in grid.r() {
        let step = grid.h.min(r / 20.0);
        let d2 = D2_OFFSETS
            .iter()
            .zip(D2_WEIGHTS)
            .map(|(o, c)| c * radial_unchecked(s, r + o * step))
            .sum::<f64>()
            / (step * step);
        let l = radial_unchecked(s, r);
        let res = d2 - cent / (r * r) * l - m * m * w * w * r * r * l + 2.0 * m * e * l;
        worst = worst.max(res.abs());
        scale = scale.max(l.abs());
    }
    worst / (s.m_omega() * scale)
}

/// Eigenvalues of a symmetric tridiagonal matrix below `x`
/// (negative pivots of the LDLᵀ factorization of `T - x`).
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest (0-based) eigenvalue by Sturm bisection.
pub fn tridiagonal_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> Result<f64> {
    let n = diag.len();
    if k >= n {
        return Err(Error::domain(
            "tridiagonal_eigenvalue",
            format!("index {k} >= size {n}"),
        ));
    }
    // Gershgorin
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    if sturm_count(diag, off, lo) > k || sturm_count(diag, off, hi) <= k {
        return Err(Error::Convergence(
            "Sturm count inconsistent with Gershgorin bracket".into(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if sturm_count(diag, off, lo) > k || sturm_count(diag, off, hi) <= k {
        return Err(Error::Convergence(format!(
            "bisection for eigenvalue {k} lost its bracket"
        )));
    }
    Ok(0.5 * (lo + hi))
}

/// Lowest `k_levels` eigenvalues of the discretized
/// `-d²/dr² + (K+² - 1/4)/r² + M²ω²r²`, each divided by `2M`, ascending.
///
/// Second-order three-point differences, Dirichlet at `0` and `r_max`.
/// Restricted to `|K+| >= 1/2`, where the centrifugal term is not attractive.
pub fn fd_eigensolve(
    k_plus: f64,
    mass: f64,
    omega: f64,
    grid: &RadialGrid,
    k_levels: usize,
) -> Result<Vec<f64>> {
    if !(k_plus.abs() >= 0.5) {
        return Err(Error::domain(
            "fd_eigensolve",
            format!(
                "|K+| = {} < 1/2: attractive centrifugal term is outside the oracle's range",
                k_plus.abs()
            ),
        ));
    }
    if k_levels == 0 {
        return Ok(Vec::new());
    }
    let top = RadialState::new(k_levels as u32 - 1, k_plus.abs(), mass, omega)?;
    grid.check_extent(top.turning_point())?;

    let h = grid.h;
    let inv_h2 = 1.0 / (h * h);
    let cent = k_plus * k_plus - 0.25;
    let mw2 = mass * mass * omega * omega;
    let diag: Vec<f64> = grid
        .r
        .iter()
        .map(|&r| 2.0 * inv_h2 + cent / (r * r) + mw2 * r * r)
        .collect();
    let off = vec![-inv_h2; diag.len().saturating_sub(1)];
    (0..k_levels)
        .map(|k| tridiagonal_eigenvalue(&diag, &off, k).map(|v| v / (2.0 * mass)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_shape() {
        // n = 0, K+ = 1/2, Mω = 1: r e^{-r²/2} times N = sqrt(2/Γ(3/2))
        let s = RadialState::new(0, 0.5, 1.0, 1.0).unwrap();
        let c = (2.0 / 0.886_226_925_452_758_f64).sqrt();
        for r in [0.3, 1.0, 2.2] {
            let want = c * r * (-0.5 * r * r).exp();
            assert!((radial_eigenfunction(&s, r).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(RadialState::new(0, -1.0, 1.0, 1.0).is_err());
        let s = RadialState::new(0, 0.5, 1.0, 1.0).unwrap();
        assert!(radial_eigenfunction(&s, 0.0).is_err());
        let g = RadialGrid::new(0.01, 12.0).unwrap();
        assert!(fd_eigensolve(0.3, 1.0, 1.0, &g, 2).is_err());
        let small = RadialGrid::new(0.01, 3.0).unwrap();
        assert!(fd_eigensolve(2.0, 1.0, 1.0, &small, 3).is_err());
    }

    #[test]
    fn residual_small_for_true_energy() {
        let g = RadialGrid::new(0.01, 12.0).unwrap();
        let s = RadialState::new(0, 2.0, 1.0, 1.0).unwrap();
        assert!(ode_residual(&s, &g, None) < 1e-6);
        let t = RadialState::new(3, 3.5, 1.0, 1.0).unwrap();
        assert!(ode_residual(&t, &g, None) < 1e-6);
    }

    #[test]
    fn residual_large_for_wrong_energy() {
        let g = RadialGrid::new(0.01, 12.0).unwrap();
        let s = RadialState::new(0, 2.0, 1.0, 1.0).unwrap();
        assert!(ode_residual(&s, &g, Some(s.energy() + 0.1)) >= 1e-2);
    }

    #[test]
    fn sturm_count_on_known_matrix() {
        // tridiag(-1, 2, -1) of size 4: eigenvalues 2 - 2cos(kπ/5)
        let d = [2.0; 4];
        let e = [-1.0; 3];
        let eig: Vec<f64> = (1..=4)
            .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / 5.0).cos())
            .collect();
        assert_eq!(sturm_count(&d, &e, 0.0), 0);
        assert_eq!(sturm_count(&d, &e, 1.0), 1);
        for (k, want) in eig.iter().enumerate() {
            assert!((tridiagonal_eigenvalue(&d, &e, k).unwrap() - want).abs() < 1e-13);
        }
    }

    #[test]
    fn fd_levels_for_half_k() {
        let g = RadialGrid::standard(2e-3, 1.0, 1.0).unwrap();
        let e = fd_eigensolve(0.5, 1.0, 1.0, &g, 3).unwrap();
        for (n, v) in e.iter().enumerate() {
            assert!((v - (2.0 * n as f64 + 1.5)).abs() < 1e-4, "{n}: {v}");
        }
    }

    #[test]
    fn minus_half_matches_plus_half() {
        // the operator only sees K+², and the Dirichlet end selects the regular branch
        let g = RadialGrid::standard(5e-3, 1.0, 1.0).unwrap();
        let a = fd_eigensolve(-0.5, 1.0, 1.0, &g, 3).unwrap();
        let b = fd_eigensolve(0.5, 1.0, 1.0, &g, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn continuity_ratio_is_power_of_radius() {
        assert!((continuity_ratio(0.1, 2.0, 1.5) - 0.1f64.powf(0.5)).abs() < 1e-15);
        let v = inner_solution(0, 2.0, 1.0, 1.0, 0.5).unwrap();
        assert!((v - 0.5f64.powf(2.5) * (-0.125f64).exp()).abs() < 1e-15);
    }
}
