//! Longitudinal phase matching of degenerate collinear type-I
//! down-conversion in a uniaxial crystal.
//!
//! An extraordinary pump plane wave of frequency `ω_p` propagates along the
//! crystal normal, cut at angle `θ` to the optic axis. An ordinary
//! signal/idler pair at transverse wavenumbers `(q_s, q_i)` and frequencies
//! `(ω_s, ω_p - ω_s)` accumulates the longitudinal mismatch
//!
//! `Δr = r_p - r_s - r_i`, with `r = sqrt(n²ω²/c² - q²)`
//!
//! and the pump evaluated at `q_p = q_s + q_i`. Integrating the interaction
//! over the thickness `ℓ` gives the phase-matching amplitude
//!
//! `ζ(Δr) = ∫₀^ℓ exp(-jΔr z) dz = ℓ sinc(ℓΔr/2π) exp(-jℓΔr/2)`.
//!
//! The collinear cut angle solves `n_e(ω_p, θ) = n_o(ω_p/2)`; cutting above
//! it opens the emission cone of external half-angle
//! `sqrt(2 n_o Δn + λ_o/ℓ_eq)`, where `Δn = n_o(ω_p/2) - n_e(ω_p, θ)` and
//! `ℓ_eq = ℓ/n_o` is the thickness seen from outside through refraction.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::material::Material;
use crate::optics::PumpSpec;
use crate::{sinc, wavelength_from_omega, SPEED_OF_LIGHT};

/// A nonlinear crystal: thickness, cut angle, and dispersion data.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalSpec {
    thickness: f64,
    cut_angle: f64,
    material: Material,
}

impl CrystalSpec {
    pub fn new(thickness: f64, cut_angle: f64, material: Material) -> Result<Self> {
        if !(thickness.is_finite() && thickness > 0.0) {
            return Err(Error::InvalidInput(format!(
                "crystal thickness must be positive, got {thickness}"
            )));
        }
        if !(cut_angle.is_finite()
            && cut_angle > 0.0
            && cut_angle < std::f64::consts::FRAC_PI_2)
        {
            return Err(Error::InvalidInput(format!(
                "cut angle must lie in (0, pi/2) rad, got {cut_angle}"
            )));
        }
        Ok(Self {
            thickness,
            cut_angle,
            material,
        })
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn cut_angle(&self) -> f64 {
        self.cut_angle
    }

    pub fn material(&self) -> &Material {
        &self.material
    }

    pub fn with_cut_angle(&self, cut_angle: f64) -> Result<Self> {
        Self::new(self.thickness, cut_angle, self.material.clone())
    }

    pub fn with_thickness(&self, thickness: f64) -> Result<Self> {
        Self::new(thickness, self.cut_angle, self.material.clone())
    }

    /// Apparent thickness from outside, `ℓ_eq = ℓ/n_o(λ)`, at the
    /// down-converted wavelength (meters): longitudinal positions inside the
    /// crystal image to positions compressed by the refraction ratio.
    pub fn equivalent_thickness(&self, wavelength: f64) -> Result<f64> {
        Ok(self.thickness / self.material.index_ordinary(wavelength)?)
    }
}

/// A propagating plane-wave component inside the crystal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveGeometry {
    pub omega: f64,
    /// Transverse wavenumber, rad/m.
    pub q: f64,
    /// Longitudinal wavenumber `sqrt(n²ω²/c² - q²)`, rad/m.
    pub r: f64,
}

impl WaveGeometry {
    /// Fails with [`Error::Evanescent`] when `|q|` exceeds the medium
    /// wavenumber `nω/c`.
    pub fn propagating(index: f64, omega: f64, q: f64) -> Result<Self> {
        let k = index * omega / SPEED_OF_LIGHT;
        let disc = k * k - q * q;
        if disc <= 0.0 {
            return Err(Error::Evanescent { q, k });
        }
        Ok(Self {
            omega,
            q,
            r: disc.sqrt(),
        })
    }
}

/// Longitudinal wavenumber mismatch `r_p - r_s - r_i` for a signal at
/// `(q_s, ω_s)` and idler at `(q_i, ω_p - ω_s)`.
pub fn delta_r(
    q_s: f64,
    q_i: f64,
    omega_s: f64,
    pump: &PumpSpec,
    crystal: &CrystalSpec,
) -> Result<f64> {
    let omega_p = pump.omega();
    let omega_i = omega_p - omega_s;
    if !(omega_s.is_finite() && omega_s > 0.0 && omega_i > 0.0) {
        return Err(Error::Domain(format!(
            "signal frequency {omega_s:.4e} rad/s must lie strictly inside the pump band \
             (0, {omega_p:.4e})"
        )));
    }
    let material = crystal.material();
    let n_p = material.index_extraordinary(pump.wavelength(), crystal.cut_angle())?;
    let n_s = material.index_ordinary(wavelength_from_omega(omega_s))?;
    let n_i = material.index_ordinary(wavelength_from_omega(omega_i))?;
    let r_p = WaveGeometry::propagating(n_p, omega_p, q_s + q_i)?.r;
    let r_s = WaveGeometry::propagating(n_s, omega_s, q_s)?.r;
    let r_i = WaveGeometry::propagating(n_i, omega_i, q_i)?.r;
    Ok(r_p - r_s - r_i)
}

/// Phase-matching amplitude `ζ = ℓ sinc(ℓΔr/2π) exp(-jℓΔr/2)`.
pub fn zeta(
    q_s: f64,
    q_i: f64,
    omega_s: f64,
    pump: &PumpSpec,
    crystal: &CrystalSpec,
) -> Result<Complex64> {
    let dr = delta_r(q_s, q_i, omega_s, pump, crystal)?;
    Ok(zeta_of_mismatch(crystal.thickness(), dr))
}

/// `ζ` as a function of the mismatch itself; exact antiderivative of
/// `exp(-jΔr z)` over the thickness.
pub fn zeta_of_mismatch(thickness: f64, dr: f64) -> Complex64 {
    let half_phase = 0.5 * thickness * dr;
    thickness
        * sinc(half_phase / std::f64::consts::PI)
        * Complex64::new(0.0, -half_phase).exp()
}

/// Cut angle at which the degenerate collinear process phase-matches:
/// `n_e(ω_p, θ) = n_o(ω_p/2)`, found by bisection to 1e-10 rad.
pub fn collinear_cut_angle(pump: &PumpSpec, material: &Material) -> Result<f64> {
    let lambda_p = pump.wavelength();
    let target = material.index_ordinary(pump.degenerate_wavelength())?;
    // n_e(θ) decreases monotonically from n_o(λ_p) for a negative uniaxial
    // medium, so a sign change over (0, π/2) brackets the unique root.
    let mismatch = |theta: f64| -> Result<f64> {
        Ok(material.index_extraordinary(lambda_p, theta)? - target)
    };
    let mut lo = 0.0_f64;
    let mut hi = std::f64::consts::FRAC_PI_2;
    if mismatch(lo)? <= 0.0 || mismatch(hi)? >= 0.0 {
        return Err(Error::Domain(format!(
            "no collinear phase-matching angle: n_e(θ) never crosses n_o({:.1} nm) = {target:.6}",
            pump.degenerate_wavelength() * 1e9
        )));
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if mismatch(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Index offset `Δn = n_o(ω_p/2) - n_e(ω_p, θ_cut)`; zero at the collinear
/// cut, positive above it.
pub fn delta_n(pump: &PumpSpec, crystal: &CrystalSpec) -> Result<f64> {
    let material = crystal.material();
    let n_o = material.index_ordinary(pump.degenerate_wavelength())?;
    let n_e = material.index_extraordinary(pump.wavelength(), crystal.cut_angle())?;
    Ok(n_o - n_e)
}

/// External half-angle of the degenerate emission cone,
/// `sqrt(2 n_o Δn + λ_o/ℓ_eq)`.
///
/// The first term is the geometric ring opened by cutting above the
/// collinear angle; the second is the diffraction width of the sinc
/// phase-matching lobe for a finite thickness.
pub fn emission_cone_angle(pump: &PumpSpec, crystal: &CrystalSpec) -> Result<f64> {
    let lambda_o = pump.degenerate_wavelength();
    let dn = delta_n(pump, crystal)?;
    let n_o = crystal.material().index_ordinary(lambda_o)?;
    let arg = 2.0 * n_o * dn + lambda_o / crystal.equivalent_thickness(lambda_o)?;
    if arg <= 0.0 {
        return Err(Error::Domain(format!(
            "emission cone closed: cut angle sits {:.3e} below collinear in index terms",
            -dn
        )));
    }
    Ok(arg.sqrt())
}
