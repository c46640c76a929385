//! Dunkl-deformed Pauli oscillator in an Aharonov-Bohm flux.
//!
//! Special functions, the exact constrained spectrum, angular and radial
//! eigenfunctions, and canonical thermodynamics, each paired with an
//! independent numerical check (spectral sums, quadrature, finite
//! differences, a discretized radial eigensolver).
//!
//! Natural units throughout: ħ = c = k_B = 1. Energies are measured in units
//! of `omega`, temperatures in units of `omega / k_B`.

pub mod angular;
pub mod cli;
pub mod error;
pub mod io;
pub mod quadrature;
pub mod radial;
pub mod specfun;
pub mod spectrum;
pub mod thermo;
pub mod verify;

pub use error::{Error, Result};
pub use spectrum::{AngularIndex, Branch, ModelParams, QuantumState, Sector, Spin};
