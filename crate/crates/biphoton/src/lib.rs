//! Two-photon excitation by focused biphotons and by classical light.
//!
//! Models a thin-lens system illuminated by the output of a thin nonlinear
//! crystal (degenerate, collinear-or-near-collinear type-I down-conversion)
//! and computes the axial and transverse distribution of two-photon
//! excitation in the focal region and in the image of the crystal, alongside
//! the classical one- and two-photon references:
//!
//! - classical one-photon: `G1 ∝ (1/U) A(X, Z)`
//! - classical two-photon: `G2 ∝ (1/U²) A²(X/2, Z/2)`
//! - biphoton pairs:       `Gb² ∝ (1/U²) A²(X, Z)` near focus, and a
//!   crystal-thickness-limited plateau in the image region,
//!
//! where `A(X, Z) = |∫ dβ exp(-j2πXβ) exp(-jπZβ²)|²` over the lens pupil,
//! `U = 1 + z/f`, and `X`, `Z` are diffraction-scaled coordinates. The pair
//! distributions derive from the crystal's longitudinal phase-matching
//! amplitude `ζ(Δr) = ℓ sinc(ℓΔr/2π) exp(-jℓΔr/2)`.
//!
//! Modules build bottom-up: [`material`] (dispersion data), [`quadrature`]
//! (adaptive complex integration), [`crystal`] (phase matching), [`optics`]
//! (pump, lens, transfer functions), [`excitation`] (the distributions),
//! [`distribution`] (sampled curves), [`analysis`] (widths and sweeps).

pub mod analysis;
pub mod crystal;
pub mod distribution;
pub mod error;
pub mod excitation;
pub mod material;
pub mod optics;
pub mod quadrature;

pub use error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Angular frequency (rad/s) of a vacuum wavelength (m).
pub fn omega_from_wavelength(wavelength: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / wavelength
}

/// Vacuum wavelength (m) of an angular frequency (rad/s).
pub fn wavelength_from_omega(omega: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / omega
}

/// Normalized sinc: `sin(πx)/(πx)`, with `sinc(0) = 1`.
///
/// The Taylor branch below `|x| < 1e-4` keeps the removable singularity
/// smooth to machine precision.
pub fn sinc(x: f64) -> f64 {
    let px = std::f64::consts::PI * x;
    if px.abs() < 1e-4 {
        1.0 - px * px / 6.0
    } else {
        px.sin() / px
    }
}
