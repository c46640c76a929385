//! Canonical thermodynamics of the two reflection sectors.
//!
//! With `x = βωθ` and `y = βω` the partition function has the closed form
//!
//! `Z = 2 e^{-βE0} cosh(x) / (1 - e^{-2y})²`
//!
//! and everything else follows from `ln Z`:
//!
//! * `U = -∂_β ln Z = E0 - ωθ tanh x + 4ω / (e^{2y} - 1)`
//! * `F = -ln Z / β`, `S = β(U - F)`
//! * `C_V = ∂U/∂T = x² sech² x + 2 y² csch² y`
//!
//! All expressions are evaluated through `exp_m1` / `ln_1p` so that they
//! keep relative accuracy deep into the low-temperature regime.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{
    aggregated_l0, enumerate, lowest_admissible_l, require_constraint, Branch, DegeneracyPolicy,
    ModelParams, QuantumState, Sector, Spin,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum E0Mode {
    /// The closed ground-energy rule with the aggregated `l0`.
    Paper,
    /// Fitted to the brute-force spectral sum.
    #[default]
    Enumerated,
}

impl E0Mode {
    pub fn label(self) -> &'static str {
        match self {
            E0Mode::Paper => "paper",
            E0Mode::Enumerated => "enumerated",
        }
    }
}

impl fmt::Display for E0Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    SpectralSum,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoInput {
    pub params: ModelParams,
    /// Temperature in units of `omega / k_B`.
    pub temperature: f64,
    pub e0_mode: E0Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub t: f64,
    pub z: f64,
    pub f: f64,
    pub u: f64,
    pub s: f64,
    pub c_v: f64,
    pub provenance: Provenance,
}

/// Relative tail allowance for certified spectral sums.
pub const SUM_TAIL_TOL: f64 = 1e-12;

/// Inverse temperatures (in units of `1/omega`) used to fit the enumerated `E0`.
const FIT_BETAS: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundEnergyFit {
    pub e0: f64,
    /// Largest deviation of `-y(β)/β` from the fitted `E0` over the fit grid.
    pub max_residual: f64,
}

/// Ground-state energy entering the closed form.
///
/// `Paper`: `ω(1 + 2 l0)` for `ε = +1`, `2ω(l0 + ν + 3/2)` for `ε = -1`.
/// `Enumerated`: least-squares fit of
/// `ln Z_sum + 2 ln(1 - e^{-2βω}) - ln(2 cosh βωθ) = -β E0` over a fixed β grid.
pub fn ground_energy(p: &ModelParams, mode: E0Mode) -> Result<f64> {
    match mode {
        E0Mode::Paper => paper_ground_energy(p),
        E0Mode::Enumerated => Ok(fit_ground_energy(p)?.e0),
    }
}

fn paper_ground_energy(p: &ModelParams) -> Result<f64> {
    let l0 = f64::from(aggregated_l0(p)?);
    Ok(match p.sector {
        Sector::Even => p.omega * (1.0 + 2.0 * l0),
        Sector::Odd => 2.0 * p.omega * (l0 + p.nu_odd() + 1.5),
    })
}

pub fn fit_ground_energy(p: &ModelParams) -> Result<GroundEnergyFit> {
    require_constraint(p)?;
    let mut samples = Vec::with_capacity(FIT_BETAS.len());
    for b in FIT_BETAS {
        let beta = b / p.omega;
        let sum = partition_sum_certified(p, beta, 80.0 * p.omega)?;
        let y = sum.value.ln() + 2.0 * ln_one_minus_exp(-2.0 * beta * p.omega)
            - ln_two_cosh(beta * p.omega * p.theta);
        samples.push((beta, y));
    }
    let num: f64 = samples.iter().map(|(b, y)| b * y).sum();
    let den: f64 = samples.iter().map(|(b, _)| b * b).sum();
    let e0 = -num / den;
    let max_residual = samples
        .iter()
        .map(|(b, y)| (-y / b - e0).abs())
        .fold(0.0, f64::max);
    Ok(GroundEnergyFit { e0, max_residual })
}

/// `ln(1 - e^{v})` for `v < 0`.
fn ln_one_minus_exp(v: f64) -> f64 {
    if v > -std::f64::consts::LN_2 {
        (-v.exp_m1()).ln()
    } else {
        (-v.exp()).ln_1p()
    }
}

/// `ln(2 cosh x)`.
fn ln_two_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// `|x| (1 - tanh|x|)`, i.e. `ln(2cosh x) - x tanh x - ln(1 + e^{-2|x|})`.
fn abs_x_one_minus_tanh(x: f64) -> f64 {
    let a = x.abs();
    let e = (-2.0 * a).exp();
    a * 2.0 * e / (1.0 + e)
}

fn sech2(x: f64) -> f64 {
    let e = (-2.0 * x.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

fn csch2(y: f64) -> f64 {
    let a = y.abs();
    let d = (-2.0 * a).exp_m1();
    4.0 * (-2.0 * a).exp() / (d * d)
}

/// Closed-form thermodynamics for fixed parameters and ground energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoModel {
    pub params: ModelParams,
    pub e0: f64,
    pub e0_mode: E0Mode,
}

impl ThermoModel {
    pub fn new(params: ModelParams, e0_mode: E0Mode) -> Result<Self> {
        params.validate()?;
        require_constraint(&params)?;
        let e0 = ground_energy(&params, e0_mode)?;
        Ok(Self {
            params,
            e0,
            e0_mode,
        })
    }

    pub fn with_e0(params: ModelParams, e0: f64, e0_mode: E0Mode) -> Self {
        Self {
            params,
            e0,
            e0_mode,
        }
    }

    fn xy(&self, beta: f64) -> (f64, f64) {
        let w = self.params.omega;
        (beta * w * self.params.theta, beta * w)
    }

    pub fn ln_z(&self, beta: f64) -> f64 {
        let (x, y) = self.xy(beta);
        ln_two_cosh(x) - beta * self.e0 - 2.0 * ln_one_minus_exp(-2.0 * y)
    }

    pub fn partition(&self, beta: f64) -> f64 {
        self.ln_z(beta).exp()
    }

    pub fn free_energy(&self, beta: f64) -> f64 {
        -self.ln_z(beta) / beta
    }

    pub fn internal_energy(&self, beta: f64) -> f64 {
        let (x, y) = self.xy(beta);
        let w = self.params.omega;
        self.e0 - w * self.params.theta * x.tanh() + 4.0 * w / (2.0 * y).exp_m1()
    }

    pub fn entropy(&self, beta: f64) -> f64 {
        let (x, y) = self.xy(beta);
        abs_x_one_minus_tanh(x) + (-2.0 * x.abs()).exp().ln_1p() - 2.0 * ln_one_minus_exp(-2.0 * y)
            + 4.0 * y / (2.0 * y).exp_m1()
    }

    pub fn heat_capacity(&self, beta: f64) -> f64 {
        let (x, y) = self.xy(beta);
        x * x * sech2(x) + 2.0 * y * y * csch2(y)
    }

    /// The flux (two-level) part of `C_V`, `x² sech² x`.
    pub fn flux_heat_capacity(&self, beta: f64) -> f64 {
        let (x, _) = self.xy(beta);
        x * x * sech2(x)
    }

    pub fn point(&self, temperature: f64) -> Result<ThermoPoint> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(Error::domain(
                "thermo",
                format!("temperature {temperature} must be positive"),
            ));
        }
        let beta = 1.0 / temperature;
        let ln_z = self.ln_z(beta);
        Ok(ThermoPoint {
            t: temperature,
            z: ln_z.exp(),
            f: -ln_z * temperature,
            u: self.internal_energy(beta),
            s: self.entropy(beta),
            c_v: self.heat_capacity(beta),
            provenance: Provenance::ClosedForm,
        })
    }

    /// [`ThermoModel::point`] at `T = t·ω`, with `T`, `F` and `U` reported
    /// in units of `omega`.
    pub fn point_in_omega_units(&self, t: f64) -> Result<ThermoPoint> {
        let w = self.params.omega;
        let mut p = self.point(t * w)?;
        p.t = t;
        p.f /= w;
        p.u /= w;
        Ok(p)
    }
}

fn model_for(input: &ThermoInput) -> Result<(ThermoModel, f64)> {
    if !(input.temperature > 0.0) {
        return Err(Error::domain(
            "thermo",
            format!("temperature {} must be positive", input.temperature),
        ));
    }
    Ok((
        ThermoModel::new(input.params, input.e0_mode)?,
        1.0 / input.temperature,
    ))
}

pub fn partition_closed(input: &ThermoInput) -> Result<f64> {
    let (m, beta) = model_for(input)?;
    Ok(m.partition(beta))
}

pub fn free_energy(input: &ThermoInput) -> Result<f64> {
    let (m, beta) = model_for(input)?;
    Ok(m.free_energy(beta))
}

pub fn internal_energy(input: &ThermoInput) -> Result<f64> {
    let (m, beta) = model_for(input)?;
    Ok(m.internal_energy(beta))
}

pub fn entropy(input: &ThermoInput) -> Result<f64> {
    let (m, beta) = model_for(input)?;
    Ok(m.entropy(beta))
}

pub fn heat_capacity(input: &ThermoInput) -> Result<f64> {
    let (m, beta) = model_for(input)?;
    Ok(m.heat_capacity(beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionSum {
    pub value: f64,
    /// Upper bound on the Boltzmann weight of all states above the cutoff.
    pub tail_bound: f64,
    pub cutoff: f64,
    pub states: usize,
}

/// Boltzmann sum over the enumerated spectrum (primary branch policy) with a
/// bound on the omitted tail.
///
/// Per spin the levels are `E_min + 2ωj` with at most `j + 1` states each, so
/// the tail is bounded by `Σ_{j >= J} (j + 1) e^{-β(E_min + 2ωj)}`.
pub fn partition_sum(p: &ModelParams, beta: f64, cutoff: f64) -> Result<PartitionSum> {
    if !(beta > 0.0) {
        return Err(Error::domain(
            "partition_sum",
            format!("beta {beta} must be positive"),
        ));
    }
    let table = enumerate(p, cutoff, DegeneracyPolicy::Primary)?;
    // smallest weights first
    let value: f64 = table
        .states
        .iter()
        .rev()
        .map(|e| (-beta * e.energy).exp())
        .sum();
    let tail_bound = tail_bound(p, beta, cutoff)?;
    if tail_bound > SUM_TAIL_TOL * value {
        return Err(Error::CutoffTooSmall {
            cutoff,
            tail: tail_bound,
            allowed: SUM_TAIL_TOL * value,
        });
    }
    Ok(PartitionSum {
        value,
        tail_bound,
        cutoff,
        states: table.states.len(),
    })
}

fn tail_bound(p: &ModelParams, beta: f64, cutoff: f64) -> Result<f64> {
    let step = 2.0 * p.omega;
    let q = (-beta * step).exp();
    let mut total = 0.0;
    for spin in Spin::BOTH {
        let branch = Branch::positive_for(spin);
        let Some(l) = lowest_admissible_l(p, spin, branch)? else {
            continue;
        };
        let e_min = crate::spectrum::energy(p, &QuantumState::new(0, l, spin, branch))?;
        let j0 = if cutoff < e_min {
            0.0
        } else {
            ((cutoff - e_min) / step).floor() + 1.0
        };
        // Σ_{j >= J} (j + 1) q^j = q^J [(J + 1) - J q] / (1 - q)²
        let one_minus_q = -(-beta * step).exp_m1();
        let series = ((j0 + 1.0) - j0 * q) / (one_minus_q * one_minus_q);
        total += (-beta * (e_min + step * j0)).exp() * series;
    }
    Ok(total)
}

/// [`partition_sum`] starting at `min_cutoff`, enlarged by 1.5× until the tail
/// bound is below `SUM_TAIL_TOL` of the sum.
pub fn partition_sum_certified(
    p: &ModelParams,
    beta: f64,
    min_cutoff: f64,
) -> Result<PartitionSum> {
    let mut cutoff = min_cutoff;
    for _ in 0..40 {
        match partition_sum(p, beta, cutoff) {
            Err(Error::CutoffTooSmall { .. }) | Err(Error::EmptySpectrum { .. }) => cutoff *= 1.5,
            other => return other,
        }
    }
    Err(Error::Convergence(format!(
        "no cutoff up to {cutoff} certifies the sum at beta={beta}"
    )))
}

/// Root of `x tanh x = 1`, the stationarity condition of `x² sech² x`.
pub const FLUX_PEAK_X: f64 = 1.199_678_640_257_734;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub t: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchottkyPeak {
    /// Maximum of the flux term `x² sech² x`; `None` without flux.
    pub flux_term: Option<Peak>,
    /// Interior maximum of the total `C_V`, if one exists on the range.
    pub total: Option<Peak>,
}

pub const SCHOTTKY_T_RANGE: (f64, f64) = (1e-3, 1e3);
const GOLDEN_TOL: f64 = 1e-10;

/// Golden-section maximization of `f` on `[lo, hi]` down to an interval of
/// width `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    golden_section_max_by(|a, b| f(a) >= f(b), lo, hi, tol)
}

/// Golden-section search driven by a comparison: `at_least(a, b)` reports
/// whether the objective at `a` is not below the objective at `b`.
pub fn golden_section_max_by(
    at_least: impl Fn(f64, f64) -> bool,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    while hi - lo > tol {
        if at_least(a, b) {
            hi = b;
            b = a;
            a = hi - inv_phi * (hi - lo);
        } else {
            lo = a;
            a = b;
            b = lo + inv_phi * (hi - lo);
        }
        if a <= lo || b >= hi || a >= b {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `ln g(a) - ln g(b)` for `g(x) = x² sech² x`, `a, b > 0`, written in terms
/// of `d = a - b` so that it keeps relative accuracy as `a → b`.
fn flux_log_ratio(a: f64, b: f64) -> f64 {
    let d = a - b;
    let eb = (-2.0 * b).exp();
    // ln cosh a - ln cosh b = d + ln(1 + e^{-2a}) - ln(1 + e^{-2b})
    let cosh_part = d + (eb * (-2.0 * d).exp_m1() / (1.0 + eb)).ln_1p();
    2.0 * (d / b).ln_1p() - 2.0 * cosh_part
}

/// Locates the Schottky peak of the flux term and, when present, an interior
/// maximum of the total heat capacity on `t_range` (units of `omega`).
pub fn schottky_peak(p: &ModelParams, t_range: (f64, f64)) -> Result<SchottkyPeak> {
    let (lo, hi) = t_range;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::domain(
            "schottky_peak",
            format!("invalid range [{lo}, {hi}]"),
        ));
    }
    let model = ThermoModel::with_e0(*p, 0.0, E0Mode::Paper);
    let w = p.omega;
    let flux_term = if p.theta == 0.0 {
        None
    } else {
        let scale = w * p.theta.abs();
        let t = golden_section_max_by(
            |ta, tb| flux_log_ratio(scale / ta, scale / tb) >= 0.0,
            lo,
            hi,
            GOLDEN_TOL * w,
        );
        let interior = t - lo > 1e3 * GOLDEN_TOL * w && hi - t > 1e3 * GOLDEN_TOL * w;
        interior.then(|| Peak {
            t,
            c: model.flux_heat_capacity(1.0 / t),
        })
    };
    let total = {
        let c = |t: f64| model.heat_capacity(1.0 / t);
        let t = golden_section_max(c, lo, hi, GOLDEN_TOL * w);
        let ct = c(t);
        (ct > c(lo) && ct > c(hi) && t - lo > 1e-6 * w && hi - t > 1e-6 * w)
            .then_some(Peak { t, c: ct })
    };
    Ok(SchottkyPeak { flux_term, total })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub beta_omega: f64,
    pub exact: f64,
    pub asymptotic: f64,
    pub rel_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub e0: f64,
    /// `Z` vs `2 e^{-βE0} cosh(βωθ)` at βω ∈ {5, 10, 20}.
    pub z_low_t: Vec<LimitRow>,
    /// `Z` vs `1 / (2 (βω)²)` at βω ∈ {0.1, 0.05, 0.02}.
    pub z_high_t: Vec<LimitRow>,
    /// `U` vs `E0 - ω|θ|` at βω ∈ {5, 10, 20}.
    pub u_low_t: Vec<LimitRow>,
    /// `S` at βω ∈ {5, 10, 20}.
    pub s_low_t: Vec<(f64, f64)>,
}

impl LimitReport {
    /// Each asymptotic agreement improves as its regime deepens.
    pub fn monotone(&self) -> bool {
        let improving = |rows: &[LimitRow]| {
            rows.windows(2)
                .all(|w| w[1].rel_deviation <= w[0].rel_deviation)
        };
        improving(&self.z_low_t) && improving(&self.z_high_t) && improving(&self.u_low_t)
    }
}

pub fn limit_report(p: &ModelParams, e0_mode: E0Mode) -> Result<LimitReport> {
    let m = ThermoModel::new(*p, e0_mode)?;
    let w = p.omega;
    let row = |bw: f64, exact: f64, asym: f64| LimitRow {
        beta_omega: bw,
        exact,
        asymptotic: asym,
        rel_deviation: ((exact - asym) / asym).abs(),
    };
    let low = [5.0, 10.0, 20.0];
    let high = [0.1, 0.05, 0.02];
    let z_low_t = low
        .iter()
        .map(|&bw| {
            let beta = bw / w;
            let asym = (ln_two_cosh(bw * p.theta) - beta * m.e0).exp();
            row(bw, m.partition(beta), asym)
        })
        .collect();
    let z_high_t = high
        .iter()
        .map(|&bw| row(bw, m.partition(bw / w), 1.0 / (2.0 * bw * bw)))
        .collect();
    let u_low_t = low
        .iter()
        .map(|&bw| row(bw, m.internal_energy(bw / w), m.e0 - w * p.theta.abs()))
        .collect();
    let s_low_t = low.iter().map(|&bw| (bw, m.entropy(bw / w))).collect();
    Ok(LimitReport {
        e0: m.e0,
        z_low_t,
        z_high_t,
        u_low_t,
        s_low_t,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxes {
    pub sector: Sector,
    pub temperatures: Vec<f64>,
    pub thetas: Vec<f64>,
    pub nus: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub nu: f64,
    pub theta: f64,
    pub e0: f64,
    pub point: ThermoPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub schema_version: u32,
    pub axes: SweepAxes,
    pub e0_mode: E0Mode,
    /// Row-major over `(nu, theta, T)`; `T`, `F`, `U` in units of `omega`.
    pub rows: Vec<SweepRow>,
}

pub const SWEEP_SCHEMA_VERSION: u32 = 1;

fn strictly_increasing(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Config(format!("{name} grid is empty")));
    }
    if v.iter().any(|x| !x.is_finite()) || v.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!(
            "{name} grid must be finite and strictly increasing"
        )));
    }
    Ok(())
}

/// Closed-form thermodynamics over `nu × theta × T`, with constrained
/// parameters (`nu2 = -epsilon nu1`). Cells are evaluated in parallel and
/// assembled in axis order.
pub fn sweep(axes: SweepAxes, e0_mode: E0Mode, mass: f64, omega: f64) -> Result<SweepResult> {
    strictly_increasing("temperature", &axes.temperatures)?;
    strictly_increasing("theta", &axes.thetas)?;
    strictly_increasing("nu", &axes.nus)?;
    if axes.temperatures[0] <= 0.0 {
        return Err(Error::Config("temperatures must be positive".into()));
    }
    let cells: Vec<(f64, f64)> = axes
        .nus
        .iter()
        .flat_map(|&nu| axes.thetas.iter().map(move |&th| (nu, th)))
        .collect();
    let blocks: Result<Vec<Vec<SweepRow>>> = cells
        .par_iter()
        .map(|&(nu, theta)| {
            let params = ModelParams::new(
                nu,
                -axes.sector.epsilon() * nu,
                axes.sector,
                theta,
                mass,
                omega,
            )?;
            let model = ThermoModel::new(params, e0_mode)?;
            axes.temperatures
                .iter()
                .map(|&t| {
                    Ok(SweepRow {
                        nu,
                        theta,
                        e0: model.e0,
                        point: model.point_in_omega_units(t)?,
                    })
                })
                .collect()
        })
        .collect();
    Ok(SweepResult {
        schema_version: SWEEP_SCHEMA_VERSION,
        axes,
        e0_mode,
        rows: blocks?.into_iter().flatten().collect(),
    })
}

/// Closed-form thermodynamics of one parameter set over a temperature grid
/// (units of `omega`).
pub fn temperature_series(
    params: ModelParams,
    temperatures: Vec<f64>,
    e0_mode: E0Mode,
) -> Result<SweepResult> {
    strictly_increasing("temperature", &temperatures)?;
    if temperatures[0] <= 0.0 {
        return Err(Error::Config("temperatures must be positive".into()));
    }
    let model = ThermoModel::new(params, e0_mode)?;
    let rows = temperatures
        .iter()
        .map(|&t| {
            Ok(SweepRow {
                nu: params.nu1,
                theta: params.theta,
                e0: model.e0,
                point: model.point_in_omega_units(t)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult {
        schema_version: SWEEP_SCHEMA_VERSION,
        axes: SweepAxes {
            sector: params.sector,
            temperatures,
            thetas: vec![params.theta],
            nus: vec![params.nu1],
        },
        e0_mode,
        rows,
    })
}

impl SweepResult {
    pub const CSV_HEADER: &'static str = "sector,nu,theta,T,Z,F,U,S,C_V,e0_mode";

    pub fn to_csv(&self) -> String {
        use crate::io::fmt_sci;
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let p = &r.point;
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                self.axes.sector,
                fmt_sci(r.nu),
                fmt_sci(r.theta),
                fmt_sci(p.t),
                fmt_sci(p.z),
                fmt_sci(p.f),
                fmt_sci(p.u),
                fmt_sci(p.s),
                fmt_sci(p.c_v),
                self.e0_mode
            ));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep result serializes")
    }
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) || n < 2 {
        return Err(Error::Config(format!(
            "log grid needs 0 < tmin < tmax and at least 2 steps (got {lo}, {hi}, {n})"
        )));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect())
}
