//! Exact spectrum of the Dunkl-Pauli oscillator in an Aharonov-Bohm flux.
//!
//! Units: ħ = c = k_B = 1, energies carry a factor `omega`.
//!
//! With the flux present the two deformation parameters are tied to the
//! reflection sector by `nu1 + epsilon*nu2 = 0`; the effective outer angular
//! momentum is then `K+ = lambda/m_s - theta*m_s` and
//! `E = omega (2n + K+ + 1)`. A state is admissible when `K+ > -1`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Joint reflection parity `epsilon = epsilon1 * epsilon2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    /// `epsilon = +1`, integer `l >= 1`.
    #[serde(rename = "+1")]
    Even,
    /// `epsilon = -1`, half-integer `l >= 1/2`.
    #[serde(rename = "-1")]
    Odd,
}

impl Sector {
    pub fn epsilon(self) -> f64 {
        match self {
            Sector::Even => 1.0,
            Sector::Odd => -1.0,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Sector::Even => 1,
            Sector::Odd => -1,
        }
    }

    pub fn from_sign(sign: i8) -> Result<Self> {
        match sign {
            1 => Ok(Sector::Even),
            -1 => Ok(Sector::Odd),
            _ => Err(Error::Config(format!(
                "sector must be +1 or -1, got {sign}"
            ))),
        }
    }

    /// Smallest angular index of the sector, as `2l`.
    pub fn min_twice_l(self) -> u32 {
        match self {
            Sector::Even => 2,
            Sector::Odd => 1,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.sign())
    }
}

/// Spin projection `m_s = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }
}

/// Sign of the angular eigenvalue `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    /// The branch with `lambda / m_s > 0`.
    pub fn positive_for(spin: Spin) -> Self {
        match spin {
            Spin::Up => Branch::Plus,
            Spin::Down => Branch::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Branch::Plus => '+',
            Branch::Minus => '-',
        }
    }
}

/// Angular quantum number `l`, stored as `2l` so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AngularIndex(u32);

impl AngularIndex {
    pub fn from_twice(twice: u32) -> Self {
        Self(twice)
    }

    /// Integer `l` of the even sector.
    pub fn integer(l: u32) -> Self {
        Self(2 * l)
    }

    /// `k + 1/2` of the odd sector.
    pub fn half_odd(k: u32) -> Self {
        Self(2 * k + 1)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn next(self) -> Self {
        Self(self.0 + 2)
    }

    pub fn belongs_to(self, sector: Sector) -> bool {
        match sector {
            Sector::Even => self.0 >= 2 && self.0 % 2 == 0,
            Sector::Odd => self.0 % 2 == 1,
        }
    }
}

impl fmt::Display for AngularIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub nu1: f64,
    pub nu2: f64,
    pub sector: Sector,
    /// Aharonov-Bohm flux, dimensionless, any real value.
    pub theta: f64,
    pub mass: f64,
    pub omega: f64,
}

impl ModelParams {
    pub fn new(
        nu1: f64,
        nu2: f64,
        sector: Sector,
        theta: f64,
        mass: f64,
        omega: f64,
    ) -> Result<Self> {
        let p = Self {
            nu1,
            nu2,
            sector,
            theta,
            mass,
            omega,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters that satisfy the flux constraint for any `theta`:
    /// `nu2 = -epsilon * nu`.
    pub fn constrained(sector: Sector, nu: f64, theta: f64) -> Result<Self> {
        Self::new(nu, -sector.epsilon() * nu, sector, theta, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.nu1, self.nu2, self.theta, self.mass, self.omega]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Config("model parameters must be finite".into()));
        }
        if self.nu1 <= -0.5 || self.nu2 <= -0.5 {
            return Err(Error::Config(format!(
                "deformation parameters must exceed -1/2 (nu1={}, nu2={})",
                self.nu1, self.nu2
            )));
        }
        if self.mass <= 0.0 || self.omega <= 0.0 {
            return Err(Error::Config(format!(
                "mass and omega must be positive (mass={}, omega={})",
                self.mass, self.omega
            )));
        }
        Ok(())
    }

    pub fn epsilon(&self) -> f64 {
        self.sector.epsilon()
    }

    /// `nu1 + epsilon*nu2`, the quantity the flux forces to zero.
    pub fn constraint_residual(&self) -> f64 {
        self.nu1 + self.epsilon() * self.nu2
    }

    /// The single deformation parameter of the odd sector (`nu1 = nu2`).
    pub fn nu_odd(&self) -> f64 {
        0.5 * (self.nu1 + self.nu2)
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        Self { theta, ..*self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    pub satisfied: bool,
    pub residual: f64,
    pub diagnostic: String,
}

/// True iff `theta = 0` or `|nu1 + epsilon*nu2| <= 1e-12`.
pub fn check_constraint(p: &ModelParams) -> ConstraintCheck {
    let residual = p.constraint_residual();
    let satisfied = p.theta == 0.0 || residual.abs() <= CONSTRAINT_TOL;
    let diagnostic = if satisfied {
        if p.theta == 0.0 {
            "no flux: deformation parameters are independent".to_string()
        } else {
            format!("nu1 + epsilon*nu2 = {residual:e} satisfies the flux constraint")
        }
    } else {
        format!(
            "flux theta={} requires nu1 + epsilon*nu2 = 0 ({}), got {}",
            p.theta,
            match p.sector {
                Sector::Even => "nu1 = -nu2 for epsilon=+1",
                Sector::Odd => "nu1 = nu2 for epsilon=-1",
            },
            residual
        )
    };
    ConstraintCheck {
        satisfied,
        residual,
        diagnostic,
    }
}

pub(crate) fn require_constraint(p: &ModelParams) -> Result<()> {
    if check_constraint(p).satisfied {
        Ok(())
    } else {
        Err(Error::ConstraintViolation {
            nu1: p.nu1,
            nu2: p.nu2,
            epsilon: p.sector.sign(),
            theta: p.theta,
            residual: p.constraint_residual(),
        })
    }
}

fn check_index(p: &ModelParams, l: AngularIndex) -> Result<()> {
    if l.belongs_to(p.sector) {
        Ok(())
    } else {
        Err(Error::domain(
            "spectrum",
            format!("l = {l} is not in the domain of sector {}", p.sector),
        ))
    }
}

/// Angular eigenvalue `lambda_epsilon`:
/// `±2 sqrt(l(l + nu1 + nu2))` (even) or `±2 sqrt((l + nu1)(l + nu2))` (odd).
pub fn lambda_eps(p: &ModelParams, l: AngularIndex, branch: Branch) -> Result<f64> {
    check_index(p, l)?;
    let lv = l.value();
    let radicand = match p.sector {
        Sector::Even => lv * (lv + p.nu1 + p.nu2),
        Sector::Odd => (lv + p.nu1) * (lv + p.nu2),
    };
    if radicand < 0.0 {
        return Err(Error::domain(
            "lambda_eps",
            format!("negative radicand {radicand} at l = {l}"),
        ));
    }
    Ok(branch.sign() * 2.0 * radicand.sqrt())
}

/// Inner and outer effective angular momenta before matching:
/// returns `(K-, K+^2)` with `K- = +sqrt(lambda^2 + (nu1 + epsilon nu2)^2)` and
/// `K+^2 = (theta - lambda)^2 + (nu1 + epsilon nu2)^2 + 2 theta (nu1 + epsilon nu2) m_s`.
///
/// The individual parities enter only through `nu1 eps1 + nu2 eps2`, which
/// equals `nu1 + epsilon nu2` for the `eps1 = +1` representative.
pub fn effective_k_general(p: &ModelParams, lambda: f64, spin: Spin) -> (f64, f64) {
    let c = p.constraint_residual();
    let k_minus = (lambda * lambda + c * c).sqrt();
    let d = p.theta - lambda;
    let k_plus_sq = d * d + c * c + 2.0 * p.theta * c * spin.value();
    (k_minus, k_plus_sq)
}

/// Matched effective angular momenta `(K-, K+)` with `K+ = K- - theta m_s`.
///
/// Under the flux constraint `K- = lambda/m_s`. Without flux and with
/// unconstrained parameters the centrifugal exponent keeps the
/// `(nu1 + epsilon nu2)^2` shift, `|K-| = sqrt(lambda^2 + (nu1 + epsilon nu2)^2)`,
/// with the sign of `lambda/m_s`; this reduces to `2l + nu1 + nu2` on the
/// positive branch.
pub fn effective_k_final(
    p: &ModelParams,
    l: AngularIndex,
    spin: Spin,
    branch: Branch,
) -> Result<(f64, f64)> {
    require_constraint(p)?;
    let lambda = lambda_eps(p, l, branch)?;
    let ms = spin.value();
    let ratio = lambda / ms;
    let k_minus = if p.constraint_residual().abs() <= CONSTRAINT_TOL {
        ratio
    } else {
        let (magnitude, _) = effective_k_general(p, lambda, spin);
        magnitude.copysign(ratio)
    };
    Ok((k_minus, k_minus - p.theta * ms))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumState {
    pub n: u32,
    pub l: AngularIndex,
    pub spin: Spin,
    pub branch: Branch,
}

impl QuantumState {
    pub fn new(n: u32, l: AngularIndex, spin: Spin, branch: Branch) -> Self {
        Self { n, l, spin, branch }
    }

    /// State on the branch with `lambda/m_s > 0`.
    pub fn primary(n: u32, l: AngularIndex, spin: Spin) -> Self {
        Self::new(n, l, spin, Branch::positive_for(spin))
    }
}

/// `K+` of a state if it is admissible (`K+ > -1`, strict).
pub fn admissible_k_plus(p: &ModelParams, s: &QuantumState) -> Result<Option<f64>> {
    let (_, k_plus) = effective_k_final(p, s.l, s.spin, s.branch)?;
    Ok((k_plus > -1.0).then_some(k_plus))
}

/// `E = omega (2n + lambda/m_s - theta m_s + 1) = omega (2n + K+ + 1)`.
pub fn energy(p: &ModelParams, s: &QuantumState) -> Result<f64> {
    let (_, k_plus) = effective_k_final(p, s.l, s.spin, s.branch)?;
    if !(k_plus > -1.0) {
        return Err(Error::Inadmissible(format!(
            "n={}, l={}, m_s={:+}, branch={}: K+ = {k_plus} <= -1",
            s.n,
            s.l,
            s.spin.value(),
            s.branch.symbol()
        )));
    }
    Ok(p.omega * (2.0 * f64::from(s.n) + k_plus + 1.0))
}

/// Lowest `l` from the closed ceiling rules:
/// `max(1, ceil((theta m_s - 1)/2))` for `epsilon = +1` and
/// `max(1/2, ceil((theta m_s - 2 nu - 1)/2) + 1/2)` for `epsilon = -1`.
///
/// These rules admit the boundary `K+ = -1` and, in the odd sector, can skip
/// admissible states; [`lowest_admissible_l`] is the enumeration-consistent
/// counterpart.
pub fn lowest_l(p: &ModelParams, spin: Spin) -> Result<AngularIndex> {
    require_constraint(p)?;
    let tm = p.theta * spin.value();
    Ok(match p.sector {
        Sector::Even => {
            let c = ((tm - 1.0) / 2.0).ceil().max(1.0);
            AngularIndex::integer(c as u32)
        }
        Sector::Odd => {
            let c = ((tm - 2.0 * p.nu_odd() - 1.0) / 2.0).ceil().max(0.0);
            AngularIndex::half_odd(c as u32)
        }
    })
}

/// Aggregated lowest angular number `l0` entering the ground energy:
/// even sector `l0 = 1` for `|theta| <= 3`, else `ceil((|theta| - 1)/2)`;
/// odd sector `l0 = 0` for `|theta| <= 2(1 + nu)`, else
/// `ceil((|theta| - 2 nu - 1)/2)` (the actual lowest `l` is `l0 + 1/2`).
///
/// The `m_s`-dependent branch is evaluated with `m_s = sgn(theta)`.
pub fn aggregated_l0(p: &ModelParams) -> Result<u32> {
    require_constraint(p)?;
    let t = p.theta.abs();
    Ok(match p.sector {
        Sector::Even => {
            if t <= 3.0 {
                1
            } else {
                ((t - 1.0) / 2.0).ceil() as u32
            }
        }
        Sector::Odd => {
            let nu = p.nu_odd();
            if t <= 2.0 * (1.0 + nu) {
                0
            } else {
                ((t - 2.0 * nu - 1.0) / 2.0).ceil() as u32
            }
        }
    })
}

/// Smallest `l` whose state `(0, l, spin, branch)` has `K+ > -1`.
pub fn lowest_admissible_l(
    p: &ModelParams,
    spin: Spin,
    branch: Branch,
) -> Result<Option<AngularIndex>> {
    require_constraint(p)?;
    let bound = l_upper_bound(p, 0.0);
    let mut l = AngularIndex::from_twice(p.sector.min_twice_l());
    while l.value() <= bound {
        if admissible_k_plus(p, &QuantumState::new(0, l, spin, branch))?.is_some() {
            return Ok(Some(l));
        }
        l = l.next();
    }
    Ok(None)
}

/// Which `lambda` branches are counted per `(n, l, m_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DegeneracyPolicy {
    /// One branch, the one with `lambda/m_s > 0`.
    #[default]
    Primary,
    /// Both branches, each subject to `K+ > -1`.
    BothBranches,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub state: QuantumState,
    pub k_minus: f64,
    pub k_plus: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub states: Vec<SpectrumEntry>,
    pub cutoff: f64,
    pub policy: DegeneracyPolicy,
}

fn l_upper_bound(p: &ModelParams, cutoff: f64) -> f64 {
    (cutoff / (2.0 * p.omega)).ceil() + p.theta.abs() + 2.0
}

/// All admissible states with `E <= cutoff`, sorted by energy.
pub fn enumerate(p: &ModelParams, cutoff: f64, policy: DegeneracyPolicy) -> Result<SpectrumTable> {
    require_constraint(p)?;
    let l_max = l_upper_bound(p, cutoff);
    let mut indices = Vec::new();
    let mut l = AngularIndex::from_twice(p.sector.min_twice_l());
    while l.value() <= l_max {
        indices.push(l);
        l = l.next();
    }

    let per_l: Result<Vec<Vec<SpectrumEntry>>> = indices
        .par_iter()
        .map(|&l| {
            let mut out = Vec::new();
            for spin in Spin::BOTH {
                let primary = [Branch::positive_for(spin)];
                let branches: &[Branch] = match policy {
                    DegeneracyPolicy::Primary => &primary,
                    DegeneracyPolicy::BothBranches => &Branch::BOTH,
                };
                for &branch in branches {
                    let (k_minus, k_plus) = effective_k_final(p, l, spin, branch)?;
                    if !(k_plus > -1.0) {
                        continue;
                    }
                    let mut n = 0u32;
                    loop {
                        let e = p.omega * (2.0 * f64::from(n) + k_plus + 1.0);
                        if e > cutoff {
                            break;
                        }
                        out.push(SpectrumEntry {
                            state: QuantumState::new(n, l, spin, branch),
                            k_minus,
                            k_plus,
                            energy: e,
                        });
                        n += 1;
                    }
                }
            }
            Ok(out)
        })
        .collect();

    let mut states: Vec<SpectrumEntry> = per_l?.into_iter().flatten().collect();
    if states.is_empty() {
        let ground = ground_energy_scan(p).unwrap_or(f64::NAN);
        return Err(Error::EmptySpectrum { cutoff, ground });
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.state.cmp(&b.state)));
    Ok(SpectrumTable {
        states,
        cutoff,
        policy,
    })
}

/// Lowest primary-branch energy over both spins.
pub fn ground_energy_scan(p: &ModelParams) -> Result<f64> {
    let mut best = f64::INFINITY;
    for spin in Spin::BOTH {
        let branch = Branch::positive_for(spin);
        if let Some(l) = lowest_admissible_l(p, spin, branch)? {
            best = best.min(energy(p, &QuantumState::new(0, l, spin, branch))?);
        }
    }
    Ok(best)
}

impl SpectrumTable {
    /// Distinct energy levels with their multiplicities; energies closer than
    /// `1e-9 * omega`-scale relative tolerance are merged.
    pub fn levels(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for e in &self.states {
            match out.last_mut() {
                Some((level, count))
                    if (e.energy - *level).abs() <= 1e-9 * level.abs().max(1.0) =>
                {
                    *count += 1
                }
                _ => out.push((e.energy, 1)),
            }
        }
        out
    }

    pub const CSV_HEADER: &'static str = "n,l,m_s,branch,K_minus,K_plus,energy_over_omega";

    pub fn to_csv(&self, omega: f64) -> String {
        let mut s = String::with_capacity(64 * (self.states.len() + 1));
        s.push_str(Self::CSV_HEADER);
        s.push('\n');
        for e in &self.states {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                e.state.n,
                e.state.l,
                e.state.spin.value() as i8,
                e.state.branch.symbol(),
                crate::io::fmt_sci(e.k_minus),
                crate::io::fmt_sci(e.k_plus),
                crate::io::fmt_sci(e.energy / omega),
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(nu1: f64, nu2: f64, sector: Sector, theta: f64) -> ModelParams {
        ModelParams::new(nu1, nu2, sector, theta, 1.0, 1.0).unwrap()
    }

    #[test]
    fn constraint_examples() {
        assert!(check_constraint(&params(0.4, -0.4, Sector::Even, 0.5)).satisfied);
        assert!(check_constraint(&params(0.4, 0.4, Sector::Odd, 1.0)).satisfied);
        let bad = check_constraint(&params(0.4, 0.4, Sector::Even, 1.0));
        assert!(!bad.satisfied);
        assert!(bad.diagnostic.contains("nu1 + epsilon*nu2"));
        assert!(check_constraint(&params(0.4, 0.4, Sector::Even, 0.0)).satisfied);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ModelParams::new(-0.5, 0.0, Sector::Even, 0.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(0.0, 0.0, Sector::Even, 0.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(0.0, 0.0, Sector::Even, f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn lambda_examples() {
        let p = params(0.3, -0.3, Sector::Even, 0.0);
        assert!(
            (lambda_eps(&p, AngularIndex::integer(3), Branch::Plus).unwrap() - 6.0).abs() < 1e-14
        );
        let q = params(0.25, 0.25, Sector::Odd, 0.0);
        assert!(
            (lambda_eps(&q, AngularIndex::half_odd(0), Branch::Plus).unwrap() - 1.5).abs() < 1e-15
        );
        let r = params(0.1, 0.3, Sector::Odd, 0.0);
        let v = lambda_eps(&r, AngularIndex::half_odd(0), Branch::Minus).unwrap();
        assert!((v + 2.0 * (0.6f64 * 0.8).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lambda_rejects_wrong_sector_index() {
        let p = params(0.0, 0.0, Sector::Even, 0.0);
        assert!(lambda_eps(&p, AngularIndex::half_odd(1), Branch::Plus).is_err());
        assert!(lambda_eps(&p, AngularIndex::integer(0), Branch::Plus).is_err());
        let q = params(0.0, 0.0, Sector::Odd, 0.0);
        assert!(lambda_eps(&q, AngularIndex::integer(1), Branch::Plus).is_err());
    }

    #[test]
    fn general_k_reduces_without_flux() {
        let p = params(0.2, -0.2, Sector::Even, 0.0);
        let (km, kp2) = effective_k_general(&p, 2.0, Spin::Up);
        assert!((km - 2.0).abs() < 1e-15 && (kp2 - 4.0).abs() < 1e-14);
        let q = params(0.4, -0.4, Sector::Even, 0.7);
        let lam = lambda_eps(&q, AngularIndex::integer(2), Branch::Plus).unwrap();
        assert!((effective_k_general(&q, lam, Spin::Up).0 - lam.abs()).abs() < 1e-14);
    }

    #[test]
    fn final_k_examples() {
        let p = params(0.3, -0.3, Sector::Even, 0.5);
        let (km, kp) =
            effective_k_final(&p, AngularIndex::integer(2), Spin::Up, Branch::Plus).unwrap();
        assert!((km - 4.0).abs() < 1e-14 && (kp - 3.5).abs() < 1e-14);

        let q = params(0.25, 0.25, Sector::Odd, 0.0);
        let (km, kp) =
            effective_k_final(&q, AngularIndex::half_odd(1), Spin::Up, Branch::Plus).unwrap();
        assert!((km - 3.5).abs() < 1e-14 && (kp - 3.5).abs() < 1e-14);

        let r = params(0.0, 0.0, Sector::Even, 1.0);
        let (km, kp) =
            effective_k_final(&r, AngularIndex::integer(1), Spin::Down, Branch::Minus).unwrap();
        assert!((km - 2.0).abs() < 1e-14 && (kp - 3.0).abs() < 1e-14);
    }

    #[test]
    fn final_k_rejects_constraint_violation() {
        let p = params(0.4, 0.4, Sector::Even, 1.0);
        let err =
            effective_k_final(&p, AngularIndex::integer(1), Spin::Up, Branch::Plus).unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation { .. }));
        assert!(energy(
            &p,
            &QuantumState::primary(0, AngularIndex::integer(1), Spin::Up)
        )
        .is_err());
    }

    #[test]
    fn unconstrained_without_flux_uses_shifted_exponent() {
        // epsilon=+1, nu1 = nu2 = 0.3: K = 2l + nu1 + nu2
        let p = params(0.3, 0.3, Sector::Even, 0.0);
        let (km, kp) =
            effective_k_final(&p, AngularIndex::integer(2), Spin::Up, Branch::Plus).unwrap();
        assert!((km - 4.6).abs() < 1e-13 && (kp - 4.6).abs() < 1e-13);
        let q = params(0.1, 0.3, Sector::Odd, 0.0);
        let (km, _) =
            effective_k_final(&q, AngularIndex::half_odd(0), Spin::Down, Branch::Minus).unwrap();
        assert!((km - 1.4).abs() < 1e-13);
    }

    #[test]
    fn energy_examples() {
        let p = params(0.0, 0.0, Sector::Even, 0.0);
        let e = energy(
            &p,
            &QuantumState::primary(0, AngularIndex::integer(1), Spin::Up),
        )
        .unwrap();
        assert!((e - 3.0).abs() < 1e-14);
        let q = params(0.0, 0.0, Sector::Even, 0.5);
        let e = energy(
            &q,
            &QuantumState::primary(1, AngularIndex::integer(1), Spin::Up),
        )
        .unwrap();
        assert!((e - 4.5).abs() < 1e-14);
    }

    #[test]
    fn energy_rejects_inadmissible() {
        // theta = 3: K+ = 2 - 3 = -1 exactly, rejected
        let p = params(0.0, 0.0, Sector::Even, 3.0);
        let s = QuantumState::primary(0, AngularIndex::integer(1), Spin::Up);
        assert!(matches!(energy(&p, &s), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn lowest_l_examples() {
        let p = params(0.0, 0.0, Sector::Even, 0.5);
        assert_eq!(lowest_l(&p, Spin::Up).unwrap(), AngularIndex::integer(1));
        let q = params(0.0, 0.0, Sector::Even, 5.0);
        assert_eq!(lowest_l(&q, Spin::Up).unwrap(), AngularIndex::integer(2));
        // the ceiling rule lands on K+ = -1; strict admissibility needs l = 3
        assert_eq!(
            lowest_admissible_l(&q, Spin::Up, Branch::Plus).unwrap(),
            Some(AngularIndex::integer(3))
        );
        let r = params(0.25, 0.25, Sector::Odd, 1.0);
        assert_eq!(lowest_l(&r, Spin::Up).unwrap(), AngularIndex::half_odd(0));
        assert_eq!(aggregated_l0(&r).unwrap(), 0);
        assert_eq!(aggregated_l0(&p).unwrap(), 1);
        assert_eq!(aggregated_l0(&q).unwrap(), 2);
    }

    #[test]
    fn lowest_l_requires_constraint() {
        let p = params(0.4, 0.4, Sector::Even, 1.0);
        assert!(lowest_l(&p, Spin::Up).is_err());
        assert!(aggregated_l0(&p).is_err());
    }

    #[test]
    fn enumerate_small_oscillator() {
        let p = params(0.0, 0.0, Sector::Even, 0.0);
        let t = enumerate(&p, 5.1, DegeneracyPolicy::Primary).unwrap();
        assert_eq!(t.levels(), vec![(3.0, 2), (5.0, 4)]);
        assert!(t.states.windows(2).all(|w| w[0].energy <= w[1].energy));
    }

    #[test]
    fn enumerate_below_ground_is_empty() {
        let p = params(0.0, 0.0, Sector::Even, 0.0);
        assert!(matches!(
            enumerate(&p, 2.9, DegeneracyPolicy::Primary),
            Err(Error::EmptySpectrum { .. })
        ));
    }

    #[test]
    fn both_branches_adds_negative_branch_states() {
        // theta = -2.5, m_s = +1 on the minus branch: K+ = -2 + 2.5 = 0.5
        let p = params(0.0, 0.0, Sector::Even, -2.5);
        let prim = enumerate(&p, 12.0, DegeneracyPolicy::Primary).unwrap();
        let both = enumerate(&p, 12.0, DegeneracyPolicy::BothBranches).unwrap();
        assert!(both.states.len() > prim.states.len());
        assert!(both
            .states
            .iter()
            .any(|e| e.state.spin == Spin::Up && e.state.branch == Branch::Minus));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let p = params(0.25, 0.25, Sector::Odd, 0.0);
        let t = enumerate(&p, 6.0, DegeneracyPolicy::Primary).unwrap();
        let csv = t.to_csv(p.omega);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SpectrumTable::CSV_HEADER);
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 7);
        assert_eq!(first[1], "0.5");
    }
}
