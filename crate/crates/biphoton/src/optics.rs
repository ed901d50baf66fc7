//! Pump field, lens geometry, scaled coordinates, and transfer functions.
//!
//! A thin lens of focal length `f` and aperture `D` sits a distance `d`
//! after the crystal output face. Observation coordinates are `(x, z)` with
//! `z` measured from the geometric focal plane (focal configuration) or the
//! image plane (imaging configuration), and `U = 1 + z/f`.
//!
//! Characteristic diffraction scales at wavelength λ with F-number `F`:
//! axial `z_c = 2λF²` and transverse `x_c = 2λF`; the scaled coordinates
//! `Z = 2z/(z_c U)` and `X = 2x/(x_c U)` make the pupil integral
//! `∫ dβ exp(-j2πXβ) exp(-jπZβ²)` dimensionless.
//!
//! Transfer functions map a crystal-plane transverse wavenumber `q` to the
//! field at `(x, z)`:
//!
//! - focal: pupil Fourier integral with Fresnel defocus `exp(-jπz x_L²/(λf²U))`
//! - imaging, ideal (infinite aperture, unit magnification):
//!   `exp(-jλz q²/4πU) exp(-jxq/U) exp(jπx²(1+1/U)/2λf)`
//! - imaging, finite aperture: the 2f-to-2f Fresnel composition through the
//!   hard pupil, reducing to the ideal form as `D → ∞`.
//!
//! Overall constant factors carry no physics here (distributions are
//! normalized downstream); each transfer function keeps its natural Fresnel
//! prefactors so magnitudes stay consistent between configurations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_1d_split, QuadratureSpec};
use crate::{omega_from_wavelength, wavelength_from_omega};

/// Transverse pump profile at the crystal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PumpProfile {
    /// Infinite plane wave; transverse wavenumber spectrum is a delta at 0.
    PlaneWave,
    /// Gaussian amplitude `exp(-x²/2b²)` of 1/e half-width `b` (meters).
    Gaussian { width: f64 },
}

/// Monochromatic pump beam driving the crystal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpSpec {
    wavelength: f64,
    profile: PumpProfile,
}

impl PumpSpec {
    pub fn plane_wave(wavelength: f64) -> Result<Self> {
        Self::new(wavelength, PumpProfile::PlaneWave)
    }

    pub fn new(wavelength: f64, profile: PumpProfile) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::InvalidInput(format!(
                "pump wavelength must be positive, got {wavelength}"
            )));
        }
        if let PumpProfile::Gaussian { width } = profile {
            if !(width.is_finite() && width > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "gaussian pump width must be positive, got {width}"
                )));
            }
        }
        Ok(Self {
            wavelength,
            profile,
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn profile(&self) -> PumpProfile {
        self.profile
    }

    pub fn omega(&self) -> f64 {
        omega_from_wavelength(self.wavelength)
    }

    /// Wavelength of the degenerate down-converted field, `2λ_p`.
    pub fn degenerate_wavelength(&self) -> f64 {
        2.0 * self.wavelength
    }

    /// Frequency of the degenerate down-converted field, `ω_p/2`.
    pub fn degenerate_omega(&self) -> f64 {
        0.5 * self.omega()
    }

    /// Transverse wavenumber amplitude spectrum, normalized to 1 at Q = 0.
    ///
    /// The plane-wave spectrum is a delta; this returns its weight relative
    /// to Q = 0, i.e. 1 exactly at Q = 0 and 0 elsewhere (callers integrate
    /// over Q only for structured profiles).
    pub fn spectrum(&self, q: f64) -> f64 {
        match self.profile {
            PumpProfile::PlaneWave => {
                if q == 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            PumpProfile::Gaussian { width } => (-0.5 * width * width * q * q).exp(),
        }
    }
}

/// Band-average spectral filter on the down-converted light.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralFilter {
    center_omega: f64,
    fractional_bandwidth: f64,
}

impl SpectralFilter {
    pub fn new(center_omega: f64, fractional_bandwidth: f64) -> Result<Self> {
        if !(center_omega.is_finite() && center_omega > 0.0) {
            return Err(Error::InvalidInput(format!(
                "filter center frequency must be positive, got {center_omega}"
            )));
        }
        if !(0.0..2.0).contains(&fractional_bandwidth) {
            return Err(Error::InvalidInput(format!(
                "fractional bandwidth must lie in [0, 2), got {fractional_bandwidth}"
            )));
        }
        Ok(Self {
            center_omega,
            fractional_bandwidth,
        })
    }

    pub fn center_omega(&self) -> f64 {
        self.center_omega
    }

    pub fn fractional_bandwidth(&self) -> f64 {
        self.fractional_bandwidth
    }

    /// Passband `[ω(1 - BW/2), ω(1 + BW/2)]`; empty width at BW = 0.
    pub fn band(&self) -> (f64, f64) {
        let half = 0.5 * self.fractional_bandwidth * self.center_omega;
        (self.center_omega - half, self.center_omega + half)
    }
}

/// Thin lens, its aperture, and its position after the crystal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LensSystem {
    focal_length: f64,
    aperture: Option<f64>,
    crystal_to_lens: f64,
    magnification: f64,
}

impl LensSystem {
    pub fn new(focal_length: f64) -> Result<Self> {
        if !(focal_length.is_finite() && focal_length > 0.0) {
            return Err(Error::InvalidInput(format!(
                "focal length must be positive, got {focal_length}"
            )));
        }
        Ok(Self {
            focal_length,
            aperture: None,
            crystal_to_lens: 0.0,
            magnification: 1.0,
        })
    }

    pub fn with_aperture(mut self, diameter: f64) -> Result<Self> {
        if !(diameter.is_finite() && diameter > 0.0) {
            return Err(Error::InvalidInput(format!(
                "aperture diameter must be positive, got {diameter}"
            )));
        }
        self.aperture = Some(diameter);
        Ok(self)
    }

    pub fn with_crystal_to_lens(mut self, distance: f64) -> Result<Self> {
        if !(distance.is_finite() && distance >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "crystal-to-lens distance must be nonnegative, got {distance}"
            )));
        }
        self.crystal_to_lens = distance;
        Ok(self)
    }

    pub fn with_magnification(mut self, magnification: f64) -> Result<Self> {
        if !(magnification.is_finite() && magnification > 0.0) {
            return Err(Error::InvalidInput(format!(
                "magnification must be positive, got {magnification}"
            )));
        }
        self.magnification = magnification;
        Ok(self)
    }

    pub fn focal_length(&self) -> f64 {
        self.focal_length
    }

    pub fn aperture(&self) -> Option<f64> {
        self.aperture
    }

    pub fn crystal_to_lens(&self) -> f64 {
        self.crystal_to_lens
    }

    pub fn magnification(&self) -> f64 {
        self.magnification
    }

    fn require_aperture(&self) -> Result<f64> {
        self.aperture.ok_or_else(|| {
            Error::InvalidInput("operation requires a lens aperture diameter".into())
        })
    }

    /// F-number `f/D`.
    pub fn f_number(&self) -> Result<f64> {
        Ok(self.focal_length / self.require_aperture()?)
    }

    /// Fresnel number `D²/(λf)` at a wavelength in meters.
    pub fn fresnel_number(&self, wavelength: f64) -> Result<f64> {
        let d = self.require_aperture()?;
        Ok(d * d / (wavelength * self.focal_length))
    }

    /// Half-angle subtended by the lens from the crystal in the imaging
    /// configuration: `M/(2(M+1)F)`.
    pub fn half_angle(&self) -> Result<f64> {
        let f_number = self.f_number()?;
        let m = self.magnification;
        Ok(m / (2.0 * (m + 1.0) * f_number))
    }

    /// Defocus scale factor about the image plane, `U = 1 + z/d_i`, with the
    /// image distance `d_i = (M+1)f`. Requires `z > -d_i`; closer planes sit
    /// behind the lens and are outside the image-region description.
    pub fn image_defocus_factor(&self, z: f64) -> Result<f64> {
        let d_i = (self.magnification + 1.0) * self.focal_length;
        let u = 1.0 + z / d_i;
        if !(u.is_finite() && u > 0.0) {
            return Err(Error::Domain(format!(
                "observation plane z = {z:.6e} m is at or behind the lens \
                 (requires z > -d_i = {:.6e} m)",
                -d_i
            )));
        }
        Ok(u)
    }

    /// Geometric magnification factor `U = 1 + z/f`; requires `z > -f`.
    pub fn u_factor(&self, z: f64) -> Result<f64> {
        let u = 1.0 + z / self.focal_length;
        if !(u.is_finite() && u > 0.0) {
            return Err(Error::Domain(format!(
                "observation plane z = {z:.6e} m is at or before the lens focal point \
                 (requires z > -f = {:.6e} m)",
                -self.focal_length
            )));
        }
        Ok(u)
    }
}

/// Diffraction-scaled observation coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledCoords {
    /// Geometric factor `U = 1 + z/f`.
    pub u: f64,
    /// `X = 2x/(x_c U)`.
    pub x_scaled: f64,
    /// `Z = 2z/(z_c U)`.
    pub z_scaled: f64,
    /// Transverse scale `x_c = 2λF`.
    pub x_char: f64,
    /// Axial scale `z_c = 2λF²`.
    pub z_char: f64,
}

/// Scales `(x, z)` around the focus of `lens` at a wavelength in meters.
pub fn scaled_coords(x: f64, z: f64, wavelength: f64, lens: &LensSystem) -> Result<ScaledCoords> {
    if !(wavelength.is_finite() && wavelength > 0.0) {
        return Err(Error::InvalidInput(format!(
            "wavelength must be positive, got {wavelength}"
        )));
    }
    let f_number = lens.f_number()?;
    let u = lens.u_factor(z)?;
    let x_char = 2.0 * wavelength * f_number;
    let z_char = 2.0 * wavelength * f_number * f_number;
    Ok(ScaledCoords {
        u,
        x_scaled: 2.0 * x / (x_char * u),
        z_scaled: 2.0 * z / (z_char * u),
        x_char,
        z_char,
    })
}

/// Number of initial quadrature panels that resolves a quadratic-plus-linear
/// phase `a t² + b t` over `[-h, h]` at a few cycles per panel.
fn chirp_panels(a: f64, b: f64, h: f64) -> usize {
    let cycles = (a.abs() * h * h + b.abs() * h) / std::f64::consts::TAU;
    ((cycles / 6.0).ceil() as usize).clamp(8, 20_000)
}

/// Field at `(x, z)` near the focus from a crystal-plane component of
/// transverse wavenumber `q` at frequency `omega`.
///
/// `(1/√(jλfU)) exp(jπx²/λfU) exp(-jλdq²/4π) ∫_pupil exp(-jπz x_L²/λf²U)
/// exp(j(q - 2πx/λfU) x_L) dx_L`
pub fn transfer_focal(
    x: f64,
    z: f64,
    q: f64,
    omega: f64,
    lens: &LensSystem,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    let wavelength = wavelength_from_omega(omega);
    let d = lens.crystal_to_lens();
    let diameter = lens.require_aperture()?;
    let f = lens.focal_length();
    let u = lens.u_factor(z)?;
    let j = Complex64::new(0.0, 1.0);

    // Pupil chirp -a x_L² with spatial frequency offset s.
    let a = std::f64::consts::PI * z / (wavelength * f * f * u);
    let s = q - std::f64::consts::TAU * x / (wavelength * f * u);
    let half = 0.5 * diameter;
    let pupil = integrate_1d_split(
        |t| Ok((j * (-a * t * t + s * t)).exp()),
        -half,
        half,
        chirp_panels(a, s, half),
        quad,
    )?;

    let prefactor = (j * wavelength * f * u).sqrt().inv()
        * (j * std::f64::consts::PI * x * x / (wavelength * f * u)).exp()
        * (-j * wavelength * d * q * q / (4.0 * std::f64::consts::PI)).exp();
    Ok(prefactor * pupil.value)
}

/// Aberration-free unit-magnification imaging transfer function.
///
/// `exp(-jλzq²/4πU) exp(-jxq/U) exp(jπx²(1+1/U)/2λf)`; unit modulus.
pub fn transfer_imaging_ideal(
    x: f64,
    z: f64,
    q: f64,
    omega: f64,
    lens: &LensSystem,
) -> Result<Complex64> {
    let wavelength = wavelength_from_omega(omega);
    let f = lens.focal_length();
    let u = lens.u_factor(z)?;
    let j = Complex64::new(0.0, 1.0);
    let phase = -wavelength * z * q * q / (4.0 * std::f64::consts::PI * u) - x * q / u
        + std::f64::consts::PI * x * x * (1.0 + 1.0 / u) / (2.0 * wavelength * f);
    Ok((j * phase).exp())
}

/// Unit-magnification imaging through a hard-edged aperture: Fresnel
/// propagation crystal→lens (distance 2f), pupil-clipped lens phase, then
/// Fresnel propagation to the observation plane at 2f + z.
///
/// `(1/√(jλ2f))(1/√(jλ(2f+z))) exp(-jλfq²/2π)
///  ∫_pupil exp(-jπx_L²/λf) exp(jqx_L) exp(jπ(x-x_L)²/λ(2f+z)) dx_L`
pub fn transfer_imaging_aperture(
    x: f64,
    z: f64,
    q: f64,
    omega: f64,
    lens: &LensSystem,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    let wavelength = wavelength_from_omega(omega);
    let diameter = lens.require_aperture()?;
    let f = lens.focal_length();
    let l2 = 2.0 * f + z;
    if l2 <= 0.0 {
        return Err(Error::Domain(format!(
            "observation plane z = {z:.6e} m is behind the lens (requires z > -2f)"
        )));
    }
    let pi = std::f64::consts::PI;
    let j = Complex64::new(0.0, 1.0);

    // Quadratic and linear pupil-phase coefficients after expanding
    // (x - x_L)²: a x_L² + b x_L with the x² term in the prefactor.
    let a = pi / wavelength * (1.0 / l2 - 1.0 / f);
    let b = q - std::f64::consts::TAU * x / (wavelength * l2);
    let half = 0.5 * diameter;
    let pupil = integrate_1d_split(
        |t| Ok((j * (a * t * t + b * t)).exp()),
        -half,
        half,
        chirp_panels(a, b, half),
        quad,
    )?;

    let prefactor = (j * wavelength * 2.0 * f).sqrt().inv()
        * (j * wavelength * l2).sqrt().inv()
        * (-j * wavelength * f * q * q / (2.0 * pi)).exp()
        * (j * pi * x * x / (wavelength * l2)).exp();
    Ok(prefactor * pupil.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sinc;
    use approx::assert_relative_eq;

    const LAMBDA_O: f64 = 1064e-9;

    fn lens_f200_d50() -> LensSystem {
        LensSystem::new(0.2).unwrap().with_aperture(0.05).unwrap()
    }

    #[test]
    fn pump_spectrum_and_degenerate_scales() {
        let pump = PumpSpec::plane_wave(532e-9).unwrap();
        assert_eq!(pump.spectrum(0.0), 1.0);
        assert_eq!(pump.spectrum(1e4), 0.0);
        assert_relative_eq!(pump.degenerate_wavelength(), 1064e-9);
        assert_relative_eq!(pump.degenerate_omega(), 0.5 * pump.omega());

        let gauss = PumpSpec::new(532e-9, PumpProfile::Gaussian { width: 1e-3 }).unwrap();
        assert_relative_eq!(gauss.spectrum(1e3), (-0.5f64).exp(), max_relative = 1e-12);
        assert!(PumpSpec::new(532e-9, PumpProfile::Gaussian { width: -1.0 }).is_err());
        assert!(PumpSpec::plane_wave(0.0).is_err());
    }

    #[test]
    fn filter_band_edges() {
        let omega = omega_from_wavelength(LAMBDA_O);
        let filter = SpectralFilter::new(omega, 0.12).unwrap();
        let (lo, hi) = filter.band();
        assert_relative_eq!(lo, omega * 0.94, max_relative = 1e-12);
        assert_relative_eq!(hi, omega * 1.06, max_relative = 1e-12);
        let zero = SpectralFilter::new(omega, 0.0).unwrap();
        assert_eq!(zero.band(), (omega, omega));
        assert!(SpectralFilter::new(omega, 2.0).is_err());
        assert!(SpectralFilter::new(omega, -0.1).is_err());
    }

    #[test]
    fn lens_derived_quantities() {
        let lens = lens_f200_d50();
        assert_relative_eq!(lens.f_number().unwrap(), 4.0);
        assert_relative_eq!(
            lens.fresnel_number(LAMBDA_O).unwrap(),
            0.05 * 0.05 / (LAMBDA_O * 0.2),
            max_relative = 1e-12
        );
        assert!(LensSystem::new(0.2).unwrap().f_number().is_err());
        assert!(LensSystem::new(-1.0).is_err());
    }

    #[test]
    fn half_angle_matches_magnification_limits() {
        // F = 2 at unit magnification: M/(2(M+1)F) = 1/8.
        let lens = LensSystem::new(0.1)
            .unwrap()
            .with_aperture(0.05)
            .unwrap();
        assert_relative_eq!(lens.half_angle().unwrap(), 0.125, max_relative = 1e-12);
        // Large magnification saturates at 1/(2F) = 0.25.
        let big = lens.with_magnification(1e9).unwrap();
        assert_relative_eq!(big.half_angle().unwrap(), 0.25, max_relative = 1e-6);
    }

    #[test]
    fn scaled_coords_reference_point() {
        let lens = lens_f200_d50();
        let sc = scaled_coords(0.0, 0.0, 532e-9, &lens).unwrap();
        assert_relative_eq!(sc.z_char, 2.0 * 532e-9 * 16.0, max_relative = 1e-12);
        assert_relative_eq!(sc.x_char, 2.0 * 532e-9 * 4.0, max_relative = 1e-12);
        assert_eq!((sc.x_scaled, sc.z_scaled), (0.0, 0.0));
        assert_eq!(sc.u, 1.0);

        // One axial characteristic length: Z = 2/U, slightly under 2.
        let sc = scaled_coords(0.0, sc.z_char, 532e-9, &lens).unwrap();
        assert_relative_eq!(sc.z_scaled * sc.u, 2.0, max_relative = 1e-12);
        assert!(sc.z_scaled < 2.0);

        // Focal point itself is excluded.
        assert!(scaled_coords(0.0, -0.2, 532e-9, &lens).is_err());
    }

    #[test]
    fn focal_transfer_reduces_to_pupil_sinc_in_focus() {
        let lens = lens_f200_d50();
        let quad = QuadratureSpec::with_rel_tol(1e-9);
        let omega = omega_from_wavelength(LAMBDA_O);
        let d = 0.05;
        for q in [0.0, 3e4, 1.1e5] {
            let h = transfer_focal(0.0, 0.0, q, omega, &lens, &quad).unwrap();
            let expect = d * sinc(q * d / std::f64::consts::TAU).abs()
                / (LAMBDA_O * 0.2).sqrt();
            assert_relative_eq!(h.norm(), expect, max_relative = 1e-6);
        }
    }

    #[test]
    fn focal_transfer_carries_crystal_to_lens_phase() {
        let quad = QuadratureSpec::with_rel_tol(1e-9);
        let omega = omega_from_wavelength(LAMBDA_O);
        let q = 8e4;
        let lens0 = lens_f200_d50();
        let lens_d = lens0.with_crystal_to_lens(0.03).unwrap();
        let h0 = transfer_focal(0.0, 1e-5, q, omega, &lens0, &quad).unwrap();
        let hd = transfer_focal(0.0, 1e-5, q, omega, &lens_d, &quad).unwrap();
        let ratio = hd / h0;
        let expect = -LAMBDA_O * 0.03 * q * q / (4.0 * std::f64::consts::PI);
        assert_relative_eq!(ratio.norm(), 1.0, max_relative = 1e-9);
        // Compare phases modulo 2pi via the complex ratio.
        let delta = (ratio * Complex64::new(0.0, -expect).exp()).arg();
        assert!(delta.abs() < 1e-7);
    }

    #[test]
    fn ideal_imaging_transfer_has_unit_modulus_and_exact_shift() {
        let lens = LensSystem::new(0.2).unwrap();
        let omega = omega_from_wavelength(LAMBDA_O);
        for (x, z, q) in [(0.0, 0.0, 1e5), (5e-6, 3e-4, 2e5), (-2e-5, -1e-3, 7e4)] {
            let h = transfer_imaging_ideal(x, z, q, omega, &lens).unwrap();
            assert_relative_eq!(h.norm(), 1.0, max_relative = 1e-12);
        }
        // In the image plane the q dependence is a pure lateral shift.
        let x = 7e-6;
        let q = 1.4e5;
        let h = transfer_imaging_ideal(x, 0.0, q, omega, &lens).unwrap();
        let h0 = transfer_imaging_ideal(x, 0.0, 0.0, omega, &lens).unwrap();
        let delta = ((h / h0) * Complex64::new(0.0, -x * q).exp().conj()).arg();
        assert!(delta.abs() < 1e-12);
    }

    // Frozen reference for the aperture composition, computed independently
    // with 1e-11 adaptive tolerance: f = 0.2 m, D = 0.02 m, λ = 1064 nm,
    // x = 5 um, z = 0.3 mm, q = 2e5 rad/m.
    #[test]
    fn aperture_imaging_transfer_reference_value() {
        let lens = LensSystem::new(0.2)
            .unwrap()
            .with_aperture(0.02)
            .unwrap();
        let quad = QuadratureSpec::with_rel_tol(1e-9);
        let omega = omega_from_wavelength(LAMBDA_O);
        let h = transfer_imaging_aperture(5e-6, 3e-4, 2e5, omega, &lens, &quad).unwrap();
        assert_relative_eq!(h.re, -4.958_476_488_4e1, max_relative = 1e-6);
        assert_relative_eq!(h.im, -8.407_440_909_9, max_relative = 1e-6);
        assert_relative_eq!(h.norm(), 5.029_248_424_2e1, max_relative = 1e-6);
    }

    #[test]
    fn aperture_imaging_transfer_is_even_in_q_on_axis() {
        let lens = LensSystem::new(0.2)
            .unwrap()
            .with_aperture(0.02)
            .unwrap();
        let quad = QuadratureSpec::with_rel_tol(1e-9);
        let omega = omega_from_wavelength(LAMBDA_O);
        for q in [4e4, 1.3e5, 2.6e5] {
            let plus = transfer_imaging_aperture(0.0, 2e-4, q, omega, &lens, &quad).unwrap();
            let minus = transfer_imaging_aperture(0.0, 2e-4, -q, omega, &lens, &quad).unwrap();
            assert!((plus - minus).norm() / plus.norm() < 1e-9);
        }
    }

    #[test]
    fn wide_aperture_approaches_ideal_imaging_phases() {
        // D = 8 cm passes the full q support; relative to q = 0 the
        // composition must reproduce the ideal defocus phase and a flat
        // modulus.
        let lens = LensSystem::new(0.2)
            .unwrap()
            .with_aperture(0.08)
            .unwrap();
        let ideal_lens = LensSystem::new(0.2).unwrap();
        let quad = QuadratureSpec::with_rel_tol(1e-9);
        let omega = omega_from_wavelength(LAMBDA_O);
        let z = 5e-4;
        let h0 = transfer_imaging_aperture(0.0, z, 0.0, omega, &lens, &quad).unwrap();
        for q in [5e4, 1e5, 2e5] {
            let h = transfer_imaging_aperture(0.0, z, q, omega, &lens, &quad).unwrap();
            assert_relative_eq!(h.norm(), h0.norm(), max_relative = 1e-2);
            let ideal = transfer_imaging_ideal(0.0, z, q, omega, &ideal_lens).unwrap()
                / transfer_imaging_ideal(0.0, z, 0.0, omega, &ideal_lens).unwrap();
            let delta = ((h / h0) * ideal.conj()).arg();
            assert!(delta.abs() < 1e-2, "q={q}: phase residual {delta:.2e}");
        }
    }
}
