//! Angular eigenfunctions and the Dunkl angular operators.
//!
//! Functions live on a uniform periodic grid offset by half a spacing, so no
//! sample sits on a pole of `tan φ` or `cot φ`, and with `n_points % 4 == 0`
//! both reflections `R1: φ → π - φ` and `R2: φ → -φ` are permutations of the
//! grid. Derivatives are spectral.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh;
use crate::specfun::{angular_norm_even, angular_norm_odd, jacobi, JacobiParams};
use crate::spectrum::{AngularIndex, Branch, ModelParams, Sector};

/// Argument fed to the Jacobi polynomials in the angular eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JacobiArgument {
    /// `x = -cos 2φ`; maps the Dunkl weight onto the Jacobi weight.
    #[default]
    NegCosTwoPhi,
    /// `x = -2 cos φ`, as commonly printed. Not an eigenfunction of `J`.
    NegTwoCosPhi,
}

impl JacobiArgument {
    pub fn eval(self, phi: f64) -> f64 {
        match self {
            JacobiArgument::NegCosTwoPhi => -(2.0 * phi).cos(),
            JacobiArgument::NegTwoCosPhi => -2.0 * phi.cos(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            JacobiArgument::NegCosTwoPhi => "-cos2phi",
            JacobiArgument::NegTwoCosPhi => "-2cosphi",
        }
    }
}

#[derive(Clone)]
pub struct AngularGrid {
    n_points: usize,
    phi: Vec<f64>,
    weight: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for AngularGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AngularGrid")
            .field("n_points", &self.n_points)
            .finish_non_exhaustive()
    }
}

impl AngularGrid {
    /// `n_points` samples `φ_i = (i + 1/2) 2π / n_points` with the Dunkl weight
    /// `|cos φ|^{2 nu1} |sin φ|^{2 nu2}`.
    pub fn new(n_points: usize, nu1: f64, nu2: f64) -> Result<Self> {
        if n_points < 64 || n_points % 4 != 0 {
            return Err(Error::domain(
                "AngularGrid::new",
                format!("n_points = {n_points} must be >= 64 and divisible by 4"),
            ));
        }
        let h = 2.0 * PI / n_points as f64;
        let phi: Vec<f64> = (0..n_points).map(|i| (i as f64 + 0.5) * h).collect();
        let weight = phi
            .iter()
            .map(|&p| p.cos().abs().powf(2.0 * nu1) * p.sin().abs().powf(2.0 * nu2))
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Self {
            n_points,
            forward: planner.plan_fft_forward(n_points),
            inverse: planner.plan_fft_inverse(n_points),
            phi,
            weight,
        })
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n_points as f64
    }

    /// Index of `π - φ_i`.
    pub fn r1_index(&self, i: usize) -> usize {
        let n = self.n_points;
        (n / 2 + n - 1 - i) % n
    }

    /// Index of `-φ_i` (mod 2π).
    pub fn r2_index(&self, i: usize) -> usize {
        self.n_points - 1 - i
    }

    fn reflect(&self, v: &[Complex64], idx: impl Fn(usize) -> usize) -> Vec<Complex64> {
        (0..self.n_points).map(|i| v[idx(i)]).collect()
    }

    pub fn apply_r1(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.reflect(v, |i| self.r1_index(i))
    }

    pub fn apply_r2(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.reflect(v, |i| self.r2_index(i))
    }

    /// `d^order/dφ^order` by trigonometric interpolation. The Nyquist mode is
    /// dropped for odd orders.
    pub fn spectral_derivative(&self, v: &[Complex64], order: u32) -> Vec<Complex64> {
        let n = self.n_points;
        let mut buf = v.to_vec();
        self.forward.process(&mut buf);
        let half = n / 2;
        let scale = 1.0 / n as f64;
        for (j, c) in buf.iter_mut().enumerate() {
            let k = if j <= half {
                j as f64
            } else {
                j as f64 - n as f64
            };
            if j == half && order % 2 == 1 {
                *c = Complex64::new(0.0, 0.0);
                continue;
            }
            *c *= Complex64::new(0.0, k).powu(order) * scale;
        }
        self.inverse.process(&mut buf);
        buf
    }

    /// Trapezoidal Dunkl-weighted inner product `⟨f, g⟩_w`.
    ///
    /// Spectrally accurate only when the weighted integrand is smooth
    /// (integer `nu`); for general `nu` use [`dunkl_inner_product`].
    pub fn inner_product(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        let h = self.spacing();
        f.iter()
            .zip(g)
            .zip(&self.weight)
            .map(|((a, b), w)| a.conj() * b * *w)
            .sum::<Complex64>()
            * h
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngularFunction {
    pub values: Vec<Complex64>,
    pub sector: Option<Sector>,
}

impl AngularFunction {
    pub fn new(values: Vec<Complex64>, sector: Option<Sector>) -> Self {
        Self { values, sector }
    }

    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.values)
    }

    /// `max |R1 R2 f - epsilon f|`; zero for a constructed eigenfunction.
    pub fn parity_defect(&self, grid: &AngularGrid) -> f64 {
        let eps = match self.sector {
            Some(s) => s.epsilon(),
            None => return f64::NAN,
        };
        let r = grid.apply_r1(&grid.apply_r2(&self.values));
        r.iter()
            .zip(&self.values)
            .map(|(a, b)| (a - b * eps).norm())
            .fold(0.0, f64::max)
    }
}

pub fn sup_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Per-component constants of `Φ_ε` in the unit-total-norm convention.
#[derive(Debug, Clone, Copy)]
struct PhiCoefficients {
    sector: Sector,
    first: f64,
    second: f64,
    sign: f64,
    degree: u32,
}

fn phi_coefficients(p: &ModelParams, l: AngularIndex, branch: Branch) -> Result<PhiCoefficients> {
    if !l.belongs_to(p.sector) {
        return Err(Error::domain(
            "build_phi",
            format!("l = {l} is not in the domain of sector {}", p.sector),
        ));
    }
    let (first, second, degree, sign) = match p.sector {
        Sector::Even => {
            let l_int = l.twice() / 2;
            let (a, a_prime) = angular_norm_even(l_int, p.nu1, p.nu2)?;
            (a, a_prime, l_int, branch.sign())
        }
        Sector::Odd => {
            let (b, b_prime) = angular_norm_odd(l.twice(), p.nu1, p.nu2)?;
            (b, b_prime, (l.twice() - 1) / 2, -branch.sign())
        }
    };
    Ok(PhiCoefficients {
        sector: p.sector,
        first: first / SQRT_2,
        second: second / SQRT_2,
        sign,
        degree,
    })
}

/// `Φ_ε(φ)` at a single point, unit Dunkl norm on `[0, 2π)`.
///
/// Even sector: `A P_l^{(ν1-½, ν2-½)}(x) ± i A' sinφ cosφ P_{l-1}^{(ν1+½, ν2+½)}(x)`;
/// odd sector: `B cosφ P_{l-½}^{(ν1+½, ν2-½)}(x) ∓ i B' sinφ P_{l-½}^{(ν1-½, ν2+½)}(x)`.
/// The upper sign is the `λ > 0` branch.
pub fn phi_value(
    p: &ModelParams,
    l: AngularIndex,
    branch: Branch,
    phi: f64,
    convention: JacobiArgument,
) -> Result<Complex64> {
    let c = phi_coefficients(p, l, branch)?;
    let jp = jacobi_pair(p)?;
    Ok(eval_phi(&c, jp, phi, convention))
}

fn jacobi_pair(p: &ModelParams) -> Result<(JacobiParams, JacobiParams)> {
    let (nu1, nu2) = (p.nu1, p.nu2);
    Ok(match p.sector {
        Sector::Even => (
            JacobiParams::new(nu1 - 0.5, nu2 - 0.5)?,
            JacobiParams::new(nu1 + 0.5, nu2 + 0.5)?,
        ),
        Sector::Odd => (
            JacobiParams::new(nu1 + 0.5, nu2 - 0.5)?,
            JacobiParams::new(nu1 - 0.5, nu2 + 0.5)?,
        ),
    })
}

fn eval_phi(
    c: &PhiCoefficients,
    (jp1, jp2): (JacobiParams, JacobiParams),
    phi: f64,
    convention: JacobiArgument,
) -> Complex64 {
    let x = convention.eval(phi);
    let (s, co) = phi.sin_cos();
    let (re, im) = if c.sector == Sector::Even {
        let second = if c.degree == 0 {
            0.0
        } else {
            s * co * jacobi(c.degree - 1, jp2, x)
        };
        (c.first * jacobi(c.degree, jp1, x), c.second * second)
    } else {
        (
            c.first * co * jacobi(c.degree, jp1, x),
            c.second * s * jacobi(c.degree, jp2, x),
        )
    };
    Complex64::new(re, c.sign * im)
}

/// Samples of `Φ_ε` on the grid.
pub fn build_phi(
    p: &ModelParams,
    l: AngularIndex,
    branch: Branch,
    grid: &AngularGrid,
    convention: JacobiArgument,
) -> Result<AngularFunction> {
    let c = phi_coefficients(p, l, branch)?;
    let jp = jacobi_pair(p)?;
    let values = grid
        .phi()
        .iter()
        .map(|&phi| eval_phi(&c, jp, phi, convention))
        .collect();
    Ok(AngularFunction::new(values, Some(p.sector)))
}

fn tan_cot(grid: &AngularGrid) -> (Vec<f64>, Vec<f64>) {
    grid.phi().iter().map(|p| (p.tan(), 1.0 / p.tan())).unzip()
}

/// `J f = i [f' + ν2 cot φ (f - R2 f) - ν1 tan φ (f - R1 f)]`.
pub fn apply_j(f: &AngularFunction, p: &ModelParams, grid: &AngularGrid) -> AngularFunction {
    let v = &f.values;
    let d = grid.spectral_derivative(v, 1);
    let r1 = grid.apply_r1(v);
    let r2 = grid.apply_r2(v);
    let (tan, cot) = tan_cot(grid);
    let values = (0..grid.len())
        .map(|i| {
            let inner =
                d[i] + (v[i] - r2[i]) * (p.nu2 * cot[i]) - (v[i] - r1[i]) * (p.nu1 * tan[i]);
            Complex64::i() * inner
        })
        .collect();
    AngularFunction::new(values, f.sector)
}

/// `B f = -½ f'' + (ν1 tan φ - ν2 cot φ) f' + ν1 (f - R1 f)/(2cos²φ) + ν2 (f - R2 f)/(2sin²φ)`.
pub fn apply_b(f: &AngularFunction, p: &ModelParams, grid: &AngularGrid) -> AngularFunction {
    let v = &f.values;
    let d1 = grid.spectral_derivative(v, 1);
    let d2 = grid.spectral_derivative(v, 2);
    let r1 = grid.apply_r1(v);
    let r2 = grid.apply_r2(v);
    let (tan, cot) = tan_cot(grid);
    let values = grid
        .phi()
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let (s, c) = phi.sin_cos();
            d2[i] * -0.5
                + d1[i] * (p.nu1 * tan[i] - p.nu2 * cot[i])
                + (v[i] - r1[i]) * (p.nu1 / (2.0 * c * c))
                + (v[i] - r2[i]) * (p.nu2 / (2.0 * s * s))
        })
        .collect();
    AngularFunction::new(values, f.sector)
}

/// `2 B f + 2 ν1 ν2 (f - R1 R2 f)`, the right-hand side of `J² = 2B + 2ν1ν2(1 - R1R2)`.
pub fn j_squared_via_b(
    f: &AngularFunction,
    p: &ModelParams,
    grid: &AngularGrid,
) -> AngularFunction {
    let b = apply_b(f, p, grid);
    let r12 = grid.apply_r1(&grid.apply_r2(&f.values));
    let values = b
        .values
        .iter()
        .zip(&f.values)
        .zip(&r12)
        .map(|((bv, v), r)| bv * 2.0 + (v - r) * (2.0 * p.nu1 * p.nu2))
        .collect();
    AngularFunction::new(values, f.sector)
}

/// Eigenvalue of `B` on `Φ_ε`: `λ²/2 - ν1 ν2 (1 - ε)`.
pub fn b_eigenvalue(p: &ModelParams, lambda: f64) -> f64 {
    0.5 * lambda * lambda - p.nu1 * p.nu2 * (1.0 - p.epsilon())
}

/// `⟨f, g⟩ = ∫_0^{2π} conj(f) g |cos φ|^{2ν1} |sin φ|^{2ν2} dφ` by tanh-sinh
/// on each quadrant, which absorbs the algebraic weight singularities.
pub fn dunkl_inner_product<F, G>(f: F, g: G, nu1: f64, nu2: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..4u32 {
        let lo = f64::from(k) * FRAC_PI_2;
        let hi = lo + FRAC_PI_2;
        let sin_vanishes_at_lo = k % 2 == 0;
        let part: Complex64 = tanh_sinh(
            |phi, da, db| {
                let (abs_sin, abs_cos) = if sin_vanishes_at_lo {
                    (da.sin(), db.sin())
                } else {
                    (db.sin(), da.sin())
                };
                let w = abs_cos.powf(2.0 * nu1) * abs_sin.powf(2.0 * nu2);
                f(phi).conj() * g(phi) * w
            },
            lo,
            hi,
            tol,
        )?;
        total += part;
    }
    Ok(total)
}

/// Uniform grid symmetric about the origin that excludes it:
/// `x_i = (i - (n-1)/2) h`, `n` even.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGrid1D {
    x: Vec<f64>,
}

const STENCIL: usize = 9;

impl SymmetricGrid1D {
    pub fn new(n: usize, spacing: f64) -> Result<Self> {
        if n % 2 != 0 || n < STENCIL + 1 || !(spacing > 0.0) {
            return Err(Error::domain(
                "SymmetricGrid1D::new",
                format!(
                    "need even n >= {} and positive spacing, got n={n}, h={spacing}",
                    STENCIL + 1
                ),
            ));
        }
        let c = (n as f64 - 1.0) / 2.0;
        Ok(Self {
            x: (0..n).map(|i| (i as f64 - c) * spacing).collect(),
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn mirror(&self, i: usize) -> usize {
        self.x.len() - 1 - i
    }

    /// First derivative from a 9-point Fornberg stencil (exact for polynomials
    /// of degree <= 8); one-sided near the ends.
    pub fn derivative(&self, f: &[f64]) -> Vec<f64> {
        let n = self.x.len();
        (0..n)
            .map(|i| {
                let start = i.saturating_sub(STENCIL / 2).min(n - STENCIL);
                let nodes = &self.x[start..start + STENCIL];
                let w = fornberg_weights(self.x[i], nodes, 1);
                w[1].iter()
                    .zip(&f[start..start + STENCIL])
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// Finite-difference weights for derivatives `0..=max_order` at `x0` over
/// `nodes` (Fornberg's recursion). `out[m][j]` weights `f(nodes[j])` for
/// the `m`-th derivative.
pub fn fornberg_weights(x0: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// `D f = f' + (ν/x)(f(x) - f(-x))` on a symmetric grid.
pub fn dunkl_derivative_1d(grid: &SymmetricGrid1D, f: &[f64], nu: f64) -> Vec<f64> {
    let d = grid.derivative(f);
    grid.x
        .iter()
        .enumerate()
        .map(|(i, &x)| d[i] + nu / x * (f[i] - f[grid.mirror(i)]))
        .collect()
}

/// Tensor-product samples `f[i * ny + j] = f(x_i, y_j)` on two symmetric grids.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGrid2D {
    pub gx: SymmetricGrid1D,
    pub gy: SymmetricGrid1D,
}

impl SymmetricGrid2D {
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.gx.len() * self.gy.len());
        for &x in self.gx.x() {
            for &y in self.gy.x() {
                out.push(f(x, y));
            }
        }
        out
    }

    /// Dunkl derivative `D_axis` (axis 0 = x, 1 = y) with parameter `nu`.
    pub fn dunkl_derivative(&self, f: &[f64], axis: usize, nu: f64) -> Vec<f64> {
        let (nx, ny) = (self.gx.len(), self.gy.len());
        let mut out = vec![0.0; nx * ny];
        if axis == 0 {
            let mut col = vec![0.0; nx];
            for j in 0..ny {
                for i in 0..nx {
                    col[i] = f[i * ny + j];
                }
                for (i, v) in dunkl_derivative_1d(&self.gx, &col, nu)
                    .into_iter()
                    .enumerate()
                {
                    out[i * ny + j] = v;
                }
            }
        } else {
            for i in 0..nx {
                let row = &f[i * ny..(i + 1) * ny];
                out[i * ny..(i + 1) * ny].copy_from_slice(&dunkl_derivative_1d(&self.gy, row, nu));
            }
        }
        out
    }

    /// `R_axis f`.
    pub fn reflect(&self, f: &[f64], axis: usize) -> Vec<f64> {
        let (nx, ny) = (self.gx.len(), self.gy.len());
        let mut out = vec![0.0; nx * ny];
        for i in 0..nx {
            for j in 0..ny {
                let (si, sj) = if axis == 0 {
                    (nx - 1 - i, j)
                } else {
                    (i, ny - 1 - j)
                };
                out[i * ny + j] = f[si * ny + sj];
            }
        }
        out
    }

    /// Multiplication by the coordinate `x_axis`.
    pub fn times_coordinate(&self, f: &[f64], axis: usize) -> Vec<f64> {
        let ny = self.gy.len();
        f.iter()
            .enumerate()
            .map(|(k, v)| {
                let c = if axis == 0 {
                    self.gx.x()[k / ny]
                } else {
                    self.gy.x()[k % ny]
                };
                c * v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::lambda_eps;

    fn params(nu1: f64, nu2: f64, sector: Sector) -> ModelParams {
        ModelParams::new(nu1, nu2, sector, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn grid_requires_multiple_of_four() {
        assert!(AngularGrid::new(66, 0.0, 0.0).is_err());
        assert!(AngularGrid::new(32, 0.0, 0.0).is_err());
        assert!(AngularGrid::new(64, 0.0, 0.0).is_ok());
    }

    #[test]
    fn reflections_are_exact_permutations() {
        let g = AngularGrid::new(128, 0.0, 0.0).unwrap();
        for i in 0..g.len() {
            let p = g.phi()[i];
            let p1 = g.phi()[g.r1_index(i)];
            let p2 = g.phi()[g.r2_index(i)];
            assert!(((PI - p).rem_euclid(2.0 * PI) - p1).abs() < 1e-12);
            assert!(((-p).rem_euclid(2.0 * PI) - p2).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_lowest_state_is_plane_wave() {
        let p = params(0.0, 0.0, Sector::Odd);
        let g = AngularGrid::new(64, 0.0, 0.0).unwrap();
        let l = AngularIndex::half_odd(0);
        let f = build_phi(&p, l, Branch::Plus, &g, JacobiArgument::default()).unwrap();
        // e^{-iφ}/sqrt(2π)
        let c = 1.0 / (2.0 * PI).sqrt();
        for (v, phi) in f.values.iter().zip(g.phi()) {
            assert!((v - Complex64::from_polar(c, -phi)).norm() < 1e-14);
        }
        let jf = apply_j(&f, &p, &g);
        for (a, b) in jf.values.iter().zip(&f.values) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn even_state_has_sector_parity() {
        let p = params(0.3, -0.3, Sector::Even);
        let g = AngularGrid::new(64, p.nu1, p.nu2).unwrap();
        let f = build_phi(
            &p,
            AngularIndex::integer(1),
            Branch::Plus,
            &g,
            JacobiArgument::default(),
        )
        .unwrap();
        assert!(f.parity_defect(&g) < 1e-13);
    }

    #[test]
    fn j_annihilates_constants() {
        let p = params(0.3, 0.2, Sector::Even);
        let g = AngularGrid::new(64, p.nu1, p.nu2).unwrap();
        let f = AngularFunction::new(vec![Complex64::new(1.5, -0.5); g.len()], None);
        assert!(apply_j(&f, &p, &g).sup_norm() < 1e-12);
        let q = params(0.0, 0.0, Sector::Even);
        assert!(apply_b(&f, &q, &g).sup_norm() < 1e-12);
    }

    #[test]
    fn even_eigen_relation_and_b_eigenvalue() {
        let p = params(0.2, 0.7, Sector::Even);
        let g = AngularGrid::new(256, p.nu1, p.nu2).unwrap();
        for branch in Branch::BOTH {
            let l = AngularIndex::integer(2);
            let f = build_phi(&p, l, branch, &g, JacobiArgument::default()).unwrap();
            let lam = lambda_eps(&p, l, branch).unwrap();
            let jf = apply_j(&f, &p, &g);
            let err = jf
                .values
                .iter()
                .zip(&f.values)
                .map(|(a, b)| (a - b * lam).norm())
                .fold(0.0, f64::max);
            assert!(err / f.sup_norm() < 1e-10, "{branch:?}: {err}");
            let bf = apply_b(&f, &p, &g);
            let mu = b_eigenvalue(&p, lam);
            let err = bf
                .values
                .iter()
                .zip(&f.values)
                .map(|(a, b)| (a - b * mu).norm())
                .fold(0.0, f64::max);
            assert!(err / f.sup_norm() < 1e-8, "B: {err}");
        }
    }

    #[test]
    fn printed_argument_is_not_an_eigenfunction() {
        let p = params(0.3, -0.3, Sector::Even);
        let g = AngularGrid::new(256, p.nu1, p.nu2).unwrap();
        let l = AngularIndex::integer(1);
        let f = build_phi(&p, l, Branch::Plus, &g, JacobiArgument::NegTwoCosPhi).unwrap();
        let lam = lambda_eps(&p, l, Branch::Plus).unwrap();
        let jf = apply_j(&f, &p, &g);
        let err = jf
            .values
            .iter()
            .zip(&f.values)
            .map(|(a, b)| (a - b * lam).norm())
            .fold(0.0, f64::max);
        assert!(err / f.sup_norm() > 0.1);
    }

    #[test]
    fn unit_norm_by_quadrature() {
        let p = params(0.3, -0.3, Sector::Even);
        let l = AngularIndex::integer(2);
        let f = |phi| phi_value(&p, l, Branch::Plus, phi, JacobiArgument::default()).unwrap();
        let n = dunkl_inner_product(f, f, p.nu1, p.nu2, 1e-13).unwrap();
        assert!((n.re - 1.0).abs() < 1e-10 && n.im.abs() < 1e-12, "{n}");
    }

    #[test]
    fn dunkl_derivative_examples() {
        let g = SymmetricGrid1D::new(40, 0.1).unwrap();
        let nu = 0.35;
        let sq: Vec<f64> = g.x().iter().map(|x| x * x).collect();
        let d = dunkl_derivative_1d(&g, &sq, nu);
        for (v, x) in d.iter().zip(g.x()) {
            assert!((v - 2.0 * x).abs() < 1e-11);
        }
        let lin = g.x().to_vec();
        for v in dunkl_derivative_1d(&g, &lin, nu) {
            assert!((v - (1.0 + 2.0 * nu)).abs() < 1e-11);
        }
    }

    #[test]
    fn fornberg_central_weights() {
        let w = fornberg_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert_eq!(w[1], vec![-0.5, 0.0, 0.5]);
        assert_eq!(w[2], vec![1.0, -2.0, 1.0]);
    }
}
