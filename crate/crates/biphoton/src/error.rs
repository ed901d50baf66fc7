//! Error taxonomy: invalid inputs, physics-domain failures, and numerical
//! failures are distinct so callers can map them to distinct exit paths.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid argument or configuration value.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Wavelength left the validity window of a material's dispersion data.
    #[error(
        "wavelength {wavelength_um:.4} um outside the {material} dispersion window \
         [{window_lo_um}, {window_hi_um}] um"
    )]
    WavelengthOutOfWindow {
        material: String,
        wavelength_um: f64,
        window_lo_um: f64,
        window_hi_um: f64,
    },

    /// Transverse wavenumber too large for a propagating wave.
    #[error("evanescent wave: |q| = {q:.4e} rad/m exceeds n*omega/c = {k:.4e} rad/m")]
    Evanescent { q: f64, k: f64 },

    /// Parameters outside the physical regime an operation models.
    #[error("{0}")]
    Domain(String),

    /// Adaptive quadrature hit its depth limit before meeting tolerance.
    /// Carries the best available estimate so callers can report it.
    #[error(
        "quadrature did not converge: residual {residual:.3e} vs budget {budget:.3e} \
         after {evaluations} evaluations (best estimate {best})"
    )]
    NonConvergence {
        best: Complex64,
        residual: f64,
        budget: f64,
        evaluations: u64,
    },

    /// A sampled curve whose half-maximum level is crossed other than twice.
    #[error("ambiguous curve: {count} half-maximum crossings at {crossings:?}, expected 2")]
    AmbiguousCurve { count: usize, crossings: Vec<f64> },

    /// A sampled curve whose maximum sits on the window boundary.
    #[error("curve peak at the sampled window edge ({location:.6e}); widen the window")]
    PeakAtEdge { location: f64 },
}
