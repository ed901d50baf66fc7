//! Excitation distributions of classical light and down-converted pairs.
//!
//! All distributions derive from the dimensionless pupil kernel
//!
//! `A(X, Z) = |∫_{-1/2}^{1/2} dβ exp(-j2πXβ) exp(-jπZβ²)|²`
//!
//! in the scaled coordinates of [`crate::optics::scaled_coords`]:
//!
//! - classical one-photon:  `G¹ = (1/U) A(X, Z)` at the light's wavelength;
//! - classical two-photon:  `G² = (1/U²) A²(X/2, Z/2)` at the pump scale,
//!   i.e. the squared one-photon profile of light at twice the pump
//!   wavelength;
//! - pair two-photon, focal: `Gb² = (1/U²) A(X, Z)` at the pump scale when
//!   the crystal is thin and sits at the lens (`μ₁, μ₂ → 0`); a finite
//!   crystal convolves the pupil variables with the kernel
//!   `g(u) = ∫ dρ sinc(μ₁ρ²) exp(-j2πμ₂ρ²) exp(j2πuρ)`, `∫ g du = 1`,
//!   where `μ₁ = ℓ_eq/(f N_f)`, `μ₂ = (ℓ_eq/2 + d)/(f N_f)` and
//!   `N_f = D²/(λ_o f)` is the Fresnel number;
//! - pair two-photon, imaging: the crystal's longitudinal extent is imaged.
//!   On axis, `Gb²(z) = |∫ dq ζ(q,-q; ω_o) exp(-jλ_p z q²/(πU))|²` for an
//!   ideal lens, with `U` the defocus factor about the image plane
//!   ([`LensSystem::image_defocus_factor`]); variants integrate a finite
//!   pupil, a coherent spectral band, or a structured pump spectrum.
//!
//! Pair amplitudes enter through `Λ = Ẽ_p(q_s + q_i) ζ(q_s, q_i, ω_s)`; the
//! plane-wave pump pins `q_i = -q_s` and the distributions reduce to single
//! integrals over the signal wavenumber, truncated where the phase-matching
//! sinc has decayed (six cone angles, with the shift under doubling recorded
//! as a diagnostic).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::crystal::{self, zeta_of_mismatch, CrystalSpec};
use crate::error::{Error, Result};
use crate::optics::{scaled_coords, LensSystem, PumpProfile, PumpSpec, SpectralFilter};
use crate::quadrature::{integrate_1d_split, integrate_2d_split, QuadratureSpec};
use crate::{sinc, wavelength_from_omega, SPEED_OF_LIGHT};

use std::f64::consts::{PI, TAU};

/// Which observation region and lens model a scenario describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Configuration {
    /// Around the geometric focus of the collimated pair beam.
    Focal,
    /// Around the crystal image, aberration-free infinite aperture.
    ImagingIdeal,
    /// Around the crystal image through a hard-edged lens aperture.
    ImagingAperture,
    /// Around the crystal image behind a finite spectral filter.
    ImagingBandwidth,
    /// Image-plane transverse profile for the scenario's pump profile.
    ImagingPumpProfile,
}

/// Everything needed to evaluate one pair-excitation distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct BiphotonScenario {
    pump: PumpSpec,
    crystal: CrystalSpec,
    lens: LensSystem,
    filter: SpectralFilter,
    configuration: Configuration,
}

impl BiphotonScenario {
    /// The filter must be centered on the degenerate frequency `ω_p/2`, and
    /// configuration-specific fields must be present: the focal and
    /// aperture-limited configurations need a lens aperture diameter.
    pub fn new(
        pump: PumpSpec,
        crystal: CrystalSpec,
        lens: LensSystem,
        filter: SpectralFilter,
        configuration: Configuration,
    ) -> Result<Self> {
        let omega_o = pump.degenerate_omega();
        if (filter.center_omega() / omega_o - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "filter center {:.6e} rad/s is not the degenerate frequency {omega_o:.6e} rad/s",
                filter.center_omega()
            )));
        }
        match configuration {
            Configuration::Focal | Configuration::ImagingAperture => {
                if lens.aperture().is_none() {
                    return Err(Error::InvalidInput(format!(
                        "the {configuration:?} configuration requires a lens aperture diameter"
                    )));
                }
            }
            Configuration::ImagingBandwidth => {
                // Both band edges must stay inside the material's window.
                let material = crystal.material();
                let (lo, hi) = filter.band();
                material.index_ordinary(wavelength_from_omega(hi))?;
                material.index_ordinary(wavelength_from_omega(lo))?;
            }
            Configuration::ImagingIdeal | Configuration::ImagingPumpProfile => {}
        }
        Ok(Self {
            pump,
            crystal,
            lens,
            filter,
            configuration,
        })
    }

    /// Zero-bandwidth scenario (monochromatic degenerate pairs).
    pub fn degenerate(
        pump: PumpSpec,
        crystal: CrystalSpec,
        lens: LensSystem,
        configuration: Configuration,
    ) -> Result<Self> {
        let filter = SpectralFilter::new(pump.degenerate_omega(), 0.0)?;
        Self::new(pump, crystal, lens, filter, configuration)
    }

    pub fn pump(&self) -> &PumpSpec {
        &self.pump
    }

    pub fn crystal(&self) -> &CrystalSpec {
        &self.crystal
    }

    pub fn lens(&self) -> &LensSystem {
        &self.lens
    }

    pub fn filter(&self) -> &SpectralFilter {
        &self.filter
    }

    pub fn configuration(&self) -> Configuration {
        self.configuration
    }

    pub fn omega_pair(&self) -> f64 {
        self.pump.degenerate_omega()
    }

    pub fn lambda_pair(&self) -> f64 {
        self.pump.degenerate_wavelength()
    }

    pub fn equivalent_thickness(&self) -> Result<f64> {
        self.crystal.equivalent_thickness(self.lambda_pair())
    }

    /// External emission-cone half-angle (strictly positive index offset).
    pub fn cone_angle(&self) -> Result<f64> {
        crystal::emission_cone_angle(&self.pump, &self.crystal)
    }

    /// Transverse-wavenumber truncation for pair integrals: six times the
    /// cone angle, with the geometric term clamped at zero below the
    /// collinear cut so the diffraction width always provides support.
    pub fn q_truncation(&self) -> Result<f64> {
        let lambda_o = self.lambda_pair();
        let dn = crystal::delta_n(&self.pump, &self.crystal)?.max(0.0);
        let n_o = self.crystal.material().index_ordinary(lambda_o)?;
        let angle = (2.0 * n_o * dn + lambda_o / self.equivalent_thickness()?).sqrt();
        let k_vacuum = self.omega_pair() / SPEED_OF_LIGHT;
        // Never reach the medium wavenumber, where r(q) turns evanescent.
        Ok((6.0 * angle * k_vacuum).min(0.999 * n_o * k_vacuum))
    }

    /// Finite-crystal pupil parameters `(μ₁, μ₂)` of the focal reduction.
    pub fn mu_pair(&self) -> Result<(f64, f64)> {
        let l_eq = self.equivalent_thickness()?;
        let f = self.lens.focal_length();
        let fresnel = self.lens.fresnel_number(self.lambda_pair())?;
        let mu1 = l_eq / (f * fresnel);
        let mu2 = (0.5 * l_eq + self.lens.crystal_to_lens()) / (f * fresnel);
        Ok((mu1, mu2))
    }

    pub fn with_cut_angle(&self, cut_angle: f64) -> Result<Self> {
        Ok(Self {
            crystal: self.crystal.with_cut_angle(cut_angle)?,
            ..self.clone()
        })
    }

    pub fn with_thickness(&self, thickness: f64) -> Result<Self> {
        Ok(Self {
            crystal: self.crystal.with_thickness(thickness)?,
            ..self.clone()
        })
    }

    pub fn with_bandwidth(&self, fractional_bandwidth: f64) -> Result<Self> {
        Ok(Self {
            filter: SpectralFilter::new(self.omega_pair(), fractional_bandwidth)?,
            ..self.clone()
        })
    }

    pub fn with_aperture(&self, diameter: f64) -> Result<Self> {
        Ok(Self {
            lens: self.lens.with_aperture(diameter)?,
            ..self.clone()
        })
    }

    /// Re-targets the scenario at another configuration, re-validating its
    /// field requirements.
    pub fn with_configuration(&self, configuration: Configuration) -> Result<Self> {
        Self::new(
            self.pump,
            self.crystal.clone(),
            self.lens,
            self.filter,
            configuration,
        )
    }

    /// Parameter echo for curve metadata and reports.
    pub fn summary(&self) -> serde_json::Value {
        let profile = match self.pump.profile() {
            PumpProfile::PlaneWave => json!("plane-wave"),
            PumpProfile::Gaussian { width } => json!({ "gaussian_width_mm": width * 1e3 }),
        };
        json!({
            "configuration": self.configuration,
            "pump_wavelength_nm": self.pump.wavelength() * 1e9,
            "pump_profile": profile,
            "material": self.crystal.material().name(),
            "crystal_thickness_mm": self.crystal.thickness() * 1e3,
            "cut_angle_deg": self.crystal.cut_angle().to_degrees(),
            "focal_length_mm": self.lens.focal_length() * 1e3,
            "aperture_mm": self.lens.aperture().map(|d| d * 1e3),
            "crystal_to_lens_mm": self.lens.crystal_to_lens() * 1e3,
            "magnification": self.lens.magnification(),
            "filter_bandwidth": self.filter.fractional_bandwidth(),
        })
    }

    fn require(&self, configuration: Configuration, operation: &str) -> Result<()> {
        if self.configuration != configuration {
            return Err(Error::InvalidInput(format!(
                "{operation} needs the {configuration:?} configuration, scenario is {:?}",
                self.configuration
            )));
        }
        Ok(())
    }
}

/// Initial panel count resolving an oscillatory phase at ~6 cycles/panel.
fn panels_for_cycles(cycles: f64) -> usize {
    ((cycles / 6.0).ceil() as usize).clamp(8, 40_000)
}

/// Precomputed wavenumbers for degenerate pair integrands; hoists the
/// dispersion lookups out of the inner loops.
struct PairKinematics {
    thickness: f64,
    /// Pump longitudinal wavenumber `n_e(ω_p, θ) ω_p / c` at normal incidence.
    k_pump: f64,
    /// Pair-field medium wavenumber `n_o(ω_o) ω_o / c`.
    k_medium: f64,
}

impl PairKinematics {
    fn new(scenario: &BiphotonScenario) -> Result<Self> {
        let pump = scenario.pump();
        let crystal = scenario.crystal();
        let n_p = crystal
            .material()
            .index_extraordinary(pump.wavelength(), crystal.cut_angle())?;
        let n_o = crystal.material().index_ordinary(scenario.lambda_pair())?;
        Ok(Self {
            thickness: crystal.thickness(),
            k_pump: n_p * pump.omega() / SPEED_OF_LIGHT,
            k_medium: n_o * scenario.omega_pair() / SPEED_OF_LIGHT,
        })
    }

    /// `Δr(q) = r_p(0) - 2 r_o(q)` for the anti-correlated degenerate pair.
    fn mismatch_degenerate(&self, q: f64) -> f64 {
        self.k_pump - 2.0 * (self.k_medium * self.k_medium - q * q).sqrt()
    }

    fn zeta_degenerate(&self, q: f64) -> Complex64 {
        zeta_of_mismatch(self.thickness, self.mismatch_degenerate(q))
    }

    /// `ζ` for a general pair, pump taken at `q_s + q_i`.
    fn zeta_pair(&self, q_s: f64, q_i: f64) -> Result<Complex64> {
        let q_p = q_s + q_i;
        let r = |k: f64, q: f64| -> Result<f64> {
            let disc = k * k - q * q;
            if disc <= 0.0 {
                return Err(Error::Evanescent { q, k });
            }
            Ok(disc.sqrt())
        };
        let dr = r(self.k_pump, q_p)?
            - r(self.k_medium, q_s)?
            - r(self.k_medium, q_i)?;
        Ok(zeta_of_mismatch(self.thickness, dr))
    }
}

/// Pupil kernel `A(X, Z)`; peak `A(0, 0) = 1`.
pub fn kernel_a(x_scaled: f64, z_scaled: f64, quad: &QuadratureSpec) -> Result<f64> {
    let cycles = x_scaled.abs() + z_scaled.abs() / 8.0;
    let amp = integrate_1d_split(
        |beta| {
            Ok(Complex64::new(
                0.0,
                -PI * beta * (2.0 * x_scaled + z_scaled * beta),
            )
            .exp())
        },
        -0.5,
        0.5,
        panels_for_cycles(cycles),
        quad,
    )?;
    Ok(amp.value.norm_sqr())
}

/// Classical one-photon excitation `(1/U) A(X, Z)` of light at `wavelength`
/// focused by `lens`.
pub fn g1(x: f64, z: f64, wavelength: f64, lens: &LensSystem, quad: &QuadratureSpec) -> Result<f64> {
    let sc = scaled_coords(x, z, wavelength, lens)?;
    Ok(kernel_a(sc.x_scaled, sc.z_scaled, quad)? / sc.u)
}

/// Classical two-photon excitation `(1/U²) A²(X, Z)` of light at
/// `wavelength`; in coordinates scaled at half this wavelength it reads
/// `(1/U²) A²(X/2, Z/2)`.
pub fn g2(x: f64, z: f64, wavelength: f64, lens: &LensSystem, quad: &QuadratureSpec) -> Result<f64> {
    let sc = scaled_coords(x, z, wavelength, lens)?;
    let a = kernel_a(sc.x_scaled, sc.z_scaled, quad)?;
    Ok(a * a / (sc.u * sc.u))
}

/// Radius where the `sinc(μ₁ρ²)` envelope has decayed to ~1e-4.
pub fn default_rho_max(mu1: f64) -> f64 {
    100.0 / (PI * mu1).sqrt()
}

/// Finite-crystal pupil convolution kernel
/// `g(u) = ∫_{-ρmax}^{ρmax} dρ sinc(μ₁ρ²) exp(-j2πμ₂ρ²) exp(j2πuρ)`.
pub fn g_kernel(
    u: f64,
    mu1: f64,
    mu2: f64,
    rho_max: f64,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    if !(mu1.is_finite() && mu1 > 0.0 && mu2.is_finite() && mu2 >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "kernel parameters must satisfy μ₁ > 0, μ₂ ≥ 0, got ({mu1}, {mu2})"
        )));
    }
    if !(rho_max.is_finite() && rho_max > 0.0) {
        return Err(Error::InvalidInput(format!(
            "truncation radius must be positive, got {rho_max}"
        )));
    }
    // The integrand is even in ρ: fold to [0, ρmax] with a cosine.
    let cycles = (mu2 + 0.5 * mu1) * rho_max * rho_max + u.abs() * rho_max;
    let q = integrate_1d_split(
        |rho| {
            let rho2 = rho * rho;
            Ok(sinc(mu1 * rho2)
                * Complex64::new(0.0, -TAU * mu2 * rho2).exp()
                * (TAU * u * rho).cos())
        },
        0.0,
        rho_max,
        panels_for_cycles(cycles),
        quad,
    )?;
    Ok(2.0 * q.value)
}

/// Dense tabulation of `g` over `u ∈ [-1, 1]` (stored on `[0, 1]`; `g` is
/// even) with cubic interpolation, so the two-dimensional focal reduction
/// can evaluate it millions of times.
pub struct GKernelTable {
    step: f64,
    values: Vec<Complex64>,
    truncation_shift: f64,
}

impl GKernelTable {
    const INTERVALS: usize = 2048;

    pub fn build(mu1: f64, mu2: f64, quad: &QuadratureSpec) -> Result<Self> {
        let rho_max = default_rho_max(mu1);
        let step = 1.0 / Self::INTERVALS as f64;
        let mut values = Vec::with_capacity(Self::INTERVALS + 1);
        for k in 0..=Self::INTERVALS {
            values.push(g_kernel(k as f64 * step, mu1, mu2, rho_max, quad)?);
        }
        // Record how much the truncation radius still moves the kernel.
        let scale = values[0].norm();
        let mut truncation_shift = 0.0_f64;
        for probe in [0.0, 0.37] {
            let wide = g_kernel(probe, mu1, mu2, 2.0 * rho_max, quad)?;
            let narrow = g_kernel(probe, mu1, mu2, rho_max, quad)?;
            truncation_shift = truncation_shift.max((wide - narrow).norm() / scale);
        }
        Ok(Self {
            step,
            values,
            truncation_shift,
        })
    }

    /// Largest relative change observed when doubling the truncation radius.
    pub fn truncation_shift(&self) -> f64 {
        self.truncation_shift
    }

    /// Catmull-Rom interpolation at `|u| ≤ 1` (clamped beyond).
    pub fn eval(&self, u: f64) -> Complex64 {
        let last = self.values.len() - 1;
        let pos = (u.abs() / self.step).min(last as f64);
        let i = (pos as usize).min(last - 1);
        let t = pos - i as f64;
        let at = |k: isize| self.values[k.clamp(0, last as isize) as usize];
        let (p0, p1, p2, p3) = (
            at(i as isize - 1),
            at(i as isize),
            at(i as isize + 1),
            at(i as isize + 2),
        );
        let t2 = t * t;
        let t3 = t2 * t;
        0.5 * ((2.0 * p1)
            + (p2 - p0) * t
            + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2
            + (3.0 * (p1 - p2) + p3 - p0) * t3)
    }
}

/// Threshold under which the convolution kernel acts as a delta.
const MU_DELTA_LIMIT: f64 = 1e-4;

/// Pair two-photon excitation near the focus.
///
/// For `max(μ₁, μ₂)` below [`MU_DELTA_LIMIT`] the kernel `g` is effectively
/// `δ(u)` and `Gb² = (1/U²) A(X, Z)` directly; otherwise the full reduction
///
/// `Gb² = (1/U²) |∬ dα dβ exp(-jπ(Z/2)(α²+β²)) exp(-jπX(α+β)) g(α-β)|²`
///
/// runs with a tabulated `g`, evaluated as nested single integrals in the
/// rotated pupil variables `(α-β, α+β)` so the thin kernel band is a
/// coordinate axis rather than a diagonal ridge.
pub struct FocalPairKernel {
    mu1: f64,
    mu2: f64,
    table: Option<GKernelTable>,
}

impl FocalPairKernel {
    /// Builds for a focal scenario, deriving `(μ₁, μ₂)` from its geometry.
    /// Tabulating `g` on the exact path costs seconds; reuse the kernel
    /// across curve samples.
    pub fn new(scenario: &BiphotonScenario, quad: &QuadratureSpec) -> Result<Self> {
        scenario.require(Configuration::Focal, "the focal pair distribution")?;
        let (mu1, mu2) = scenario.mu_pair()?;
        Self::from_parts(mu1, mu2, quad)
    }

    /// Builds from explicit pupil parameters.
    pub fn from_parts(mu1: f64, mu2: f64, quad: &QuadratureSpec) -> Result<Self> {
        if !(mu1.is_finite() && mu1 > 0.0 && mu2.is_finite() && mu2 >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "pupil parameters must satisfy μ₁ > 0, μ₂ ≥ 0, got ({mu1}, {mu2})"
            )));
        }
        let table = if mu1.max(mu2) < MU_DELTA_LIMIT {
            None
        } else {
            Some(GKernelTable::build(mu1, mu2, quad)?)
        };
        Ok(Self { mu1, mu2, table })
    }

    pub fn mu_pair(&self) -> (f64, f64) {
        (self.mu1, self.mu2)
    }

    pub fn is_delta_limit(&self) -> bool {
        self.table.is_none()
    }

    /// Relative kernel-truncation diagnostic; zero on the delta path.
    pub fn truncation_shift(&self) -> f64 {
        self.table.as_ref().map_or(0.0, GKernelTable::truncation_shift)
    }

    /// `Gb²(x, z)` in the focal region, coordinates scaled at the pump
    /// wavelength.
    pub fn gb2(
        &self,
        x: f64,
        z: f64,
        scenario: &BiphotonScenario,
        quad: &QuadratureSpec,
    ) -> Result<f64> {
        scenario.require(Configuration::Focal, "the focal pair distribution")?;
        let sc = scaled_coords(x, z, scenario.pump().wavelength(), scenario.lens())?;
        let (xs, zs) = (sc.x_scaled, sc.z_scaled);
        match &self.table {
            None => Ok(kernel_a(xs, zs, quad)? / (sc.u * sc.u)),
            Some(table) => {
                // Rotated pupil variables u = α-β, s = α+β turn the square
                // into the diamond |u|+|s| ≤ 1 and give the kernel a single
                // axis; α²+β² = (u²+s²)/2 separates the chirp, and evenness
                // of `g` folds the outer integral onto u ∈ [0, 1]:
                //
                //   ∬ dα dβ … = ∫₀¹ du g(u) e^{-jπ(Z/4)u²} S(1-u),
                //   S(h) = ∫_{-h}^{h} ds e^{-jπ(Z/4)s²} e^{-jπXs}.
                //
                // Nesting beats the plain double integral here because the
                // kernel mass sits in a band around u = 0 that is orders of
                // magnitude thinner than the pupil; the outer refinement
                // digs into that band once instead of chasing a diagonal
                // ridge in two dimensions.
                let inner = |h: f64| {
                    let cycles = 0.125 * zs.abs() * h * h + 0.5 * xs.abs() * h;
                    integrate_1d_split(
                        |s| {
                            let phase = -PI * (0.25 * zs * s * s + xs * s);
                            Ok(Complex64::new(0.0, phase).exp())
                        },
                        -h,
                        h,
                        panels_for_cycles(cycles),
                        quad,
                    )
                };
                let amp = integrate_1d_split(
                    |u| {
                        let chirp = Complex64::new(0.0, -PI * 0.25 * zs * u * u).exp();
                        Ok(table.eval(u) * chirp * inner(1.0 - u)?.value)
                    },
                    0.0,
                    1.0,
                    64,
                    quad,
                )?;
                Ok(amp.value.norm_sqr() / (sc.u * sc.u))
            }
        }
    }
}

/// One-call convenience for [`FocalPairKernel`]; prefer building the kernel
/// once when sampling many points on the exact path.
pub fn gb2_focal(x: f64, z: f64, scenario: &BiphotonScenario, quad: &QuadratureSpec) -> Result<f64> {
    FocalPairKernel::new(scenario, quad)?.gb2(x, z, scenario, quad)
}

/// On-axis pair excitation around the crystal image through an ideal
/// (aberration-free, infinite-aperture) lens:
/// `|2 ∫₀^{qmax} dq ζ(q,-q;ω_o) exp(-jλ_p z q²/(πU))|²`,
/// with `U` the defocus factor about the image plane
/// ([`LensSystem::image_defocus_factor`]).
pub fn gbi_ideal_axial(z: f64, scenario: &BiphotonScenario, quad: &QuadratureSpec) -> Result<f64> {
    scenario.require(Configuration::ImagingIdeal, "the ideal imaged distribution")?;
    ideal_axial_core(z, scenario, quad)
}

fn ideal_axial_core(z: f64, scenario: &BiphotonScenario, quad: &QuadratureSpec) -> Result<f64> {
    let kin = PairKinematics::new(scenario)?;
    let u = scenario.lens().image_defocus_factor(z)?;
    let q_max = scenario.q_truncation()?;
    let chirp = scenario.pump().wavelength() * z / (PI * u);
    let cycles = (0.5
        * kin.thickness
        * kin
            .mismatch_degenerate(q_max)
            .abs()
            .max(kin.mismatch_degenerate(0.0).abs())
        + chirp.abs() * q_max * q_max)
        / TAU;
    let amp = integrate_1d_split(
        |q| Ok(kin.zeta_degenerate(q) * Complex64::new(0.0, -chirp * q * q).exp()),
        0.0,
        q_max,
        panels_for_cycles(cycles),
        quad,
    )?;
    Ok((2.0 * amp.value).norm_sqr())
}

/// On-axis pair excitation around the crystal image through a hard-edged
/// aperture of diameter `D`: both photons traverse the 2f-to-2f Fresnel
/// composition, so the integrand carries the squared on-axis pupil field.
pub fn gb2_imaging_aperture(
    z: f64,
    scenario: &BiphotonScenario,
    quad: &QuadratureSpec,
) -> Result<f64> {
    scenario.require(Configuration::ImagingAperture, "the aperture-limited distribution")?;
    let diameter = scenario.lens().aperture().ok_or_else(|| {
        Error::InvalidInput("aperture-limited imaging requires a lens aperture diameter".into())
    })?;
    let kin = PairKinematics::new(scenario)?;
    let f = scenario.lens().focal_length();
    let l2 = 2.0 * f + z;
    if l2 <= 0.0 {
        return Err(Error::Domain(format!(
            "observation plane z = {z:.6e} m is behind the lens (requires z > -2f)"
        )));
    }
    let lambda_o = scenario.lambda_pair();
    let q_max = scenario.q_truncation()?;
    let j = Complex64::new(0.0, 1.0);

    // On-axis pupil chirp; evenness folds the pupil to [0, D/2].
    let a = PI / lambda_o * (1.0 / l2 - 1.0 / f);
    let half = 0.5 * diameter;
    let inner_spec = QuadratureSpec {
        rel_tol: quad.rel_tol * 0.25,
        ..*quad
    };
    let inner_panels = panels_for_cycles((a.abs() * half * half + q_max * half) / TAU);
    let pupil = |q: f64| -> Result<Complex64> {
        let p = integrate_1d_split(
            |t| Ok(2.0 * (j * a * t * t).exp() * (q * t).cos()),
            0.0,
            half,
            inner_panels,
            &inner_spec,
        )?;
        Ok(p.value)
    };

    let prefactor = (j * lambda_o * 2.0 * f).sqrt().inv() * (j * lambda_o * l2).sqrt().inv();
    // The product of the two transfer phases cancels the pupil's stationary
    // phase, leaving an ideal-like defocus chirp; size the initial panels on
    // that, not on the (cancelled) single-photon chirp.
    let u = 1.0 + z / f;
    let net_chirp = if u > 0.0 {
        (lambda_o * z / (TAU * u)).abs()
    } else {
        lambda_o * f
    };
    let cycles = (0.5
        * kin.thickness
        * kin
            .mismatch_degenerate(q_max)
            .abs()
            .max(kin.mismatch_degenerate(0.0).abs())
        + net_chirp * q_max * q_max)
        / TAU;
    let amp = integrate_1d_split(
        |q| {
            let h = prefactor
                * (-j * lambda_o * f * q * q / TAU).exp()
                * pupil(q)?;
            Ok(kin.zeta_degenerate(q) * h * h)
        },
        0.0,
        q_max,
        panels_for_cycles(cycles),
        quad,
    )?;
    Ok((2.0 * amp.value).norm_sqr())
}

/// On-axis pair excitation around the crystal image behind a spectral
/// filter of fractional bandwidth BW: the amplitude integrates coherently
/// over the band `ω_s ∈ ω_o(1 ± BW/2)`, each pair carrying its dispersive
/// mismatch and the defocus phase `exp(-jz q²(λ_s+λ_i)/(4πU))`. Widening
/// the band admits more in-phase pairs at the image center, so the peak
/// grows (roughly with the band area) while dispersive dephasing toward
/// the slice edges narrows the profile. At BW = 0 the band integral
/// degenerates; the value falls back to the monochromatic amplitude, so
/// only curve shapes, never absolute heights, are comparable across that
/// boundary.
pub fn gb2_imaging_bandwidth(
    z: f64,
    scenario: &BiphotonScenario,
    quad: &QuadratureSpec,
) -> Result<f64> {
    scenario.require(Configuration::ImagingBandwidth, "the band-averaged distribution")?;
    let bw = scenario.filter().fractional_bandwidth();
    if bw == 0.0 {
        return ideal_axial_core(z, scenario, quad);
    }
    let (omega_lo, omega_hi) = scenario.filter().band();
    let material = scenario.crystal().material();
    // Surface window violations once, before the integral runs.
    material.index_ordinary(wavelength_from_omega(omega_lo))?;
    material.index_ordinary(wavelength_from_omega(omega_hi))?;

    let kin = PairKinematics::new(scenario)?;
    let omega_p = scenario.pump().omega();
    let u = scenario.lens().image_defocus_factor(z)?;
    let q_max = scenario.q_truncation()?;
    let thickness = scenario.crystal().thickness();

    let pair_phase = |q: f64, omega_s: f64| -> Result<Complex64> {
        let omega_i = omega_p - omega_s;
        let n_s = material.index_ordinary(wavelength_from_omega(omega_s))?;
        let n_i = material.index_ordinary(wavelength_from_omega(omega_i))?;
        let r = |n: f64, omega: f64| -> Result<f64> {
            let k = n * omega / SPEED_OF_LIGHT;
            let disc = k * k - q * q;
            if disc <= 0.0 {
                return Err(Error::Evanescent { q, k });
            }
            Ok(disc.sqrt())
        };
        let dr = kin.k_pump - r(n_s, omega_s)? - r(n_i, omega_i)?;
        let lambda_sum = TAU * SPEED_OF_LIGHT * (1.0 / omega_s + 1.0 / omega_i);
        let defocus = -z * q * q * lambda_sum / (4.0 * PI * u);
        Ok(zeta_of_mismatch(thickness, dr) * Complex64::new(0.0, defocus).exp())
    };

    let chirp = scenario.pump().wavelength() * z / (PI * u);
    let cycles = (0.5
        * thickness
        * kin
            .mismatch_degenerate(q_max)
            .abs()
            .max(kin.mismatch_degenerate(0.0).abs())
        + chirp.abs() * q_max * q_max)
        / TAU;
    let amp = integrate_2d_split(
        pair_phase,
        (0.0, q_max),
        (omega_lo, omega_hi),
        (panels_for_cycles(cycles), 2),
        quad,
    )?;
    Ok((2.0 * amp.value).norm_sqr())
}

/// Transverse pair excitation in the image plane (`z = 0`) for the
/// scenario's pump profile.
///
/// A structured pump of spectrum `Ẽ_p(Q)` correlates the pair at total
/// transverse wavenumber `Q`:
/// `Gb²(x) = |∬ dQ dΔ Ẽ_p(Q) ζ(Q/2+Δ, Q/2-Δ; ω_o) exp(-jxQ)|²`;
/// the plane-wave limit pins `Q = 0` and is flat in `x`.
pub fn gb2_imaging_pump_profile(
    x: f64,
    scenario: &BiphotonScenario,
    quad: &QuadratureSpec,
) -> Result<f64> {
    scenario.require(
        Configuration::ImagingPumpProfile,
        "the pump-profile distribution",
    )?;
    let kin = PairKinematics::new(scenario)?;
    let q_max = scenario.q_truncation()?;
    let ideal_cycles =
        0.5 * kin.thickness * kin.mismatch_degenerate(q_max).abs() / TAU;

    match scenario.pump().profile() {
        PumpProfile::PlaneWave => {
            let amp = integrate_1d_split(
                |q| Ok(kin.zeta_degenerate(q)),
                0.0,
                q_max,
                panels_for_cycles(ideal_cycles),
                quad,
            )?;
            Ok((2.0 * amp.value).norm_sqr())
        }
        PumpProfile::Gaussian { width } => {
            let pump_q_max = 6.0 / width;
            let delta_max = q_max + 0.5 * pump_q_max;
            if delta_max + 0.5 * pump_q_max >= kin.k_medium {
                return Err(Error::Domain(format!(
                    "pump width {width:.3e} m too narrow: its spectrum reaches the \
                     evanescent boundary of the pair field"
                )));
            }
            let inner_spec = QuadratureSpec {
                rel_tol: quad.rel_tol * 0.25,
                ..*quad
            };
            let inner_panels = panels_for_cycles(2.0 * ideal_cycles);
            // ζ(Q/2+Δ, Q/2-Δ) is even in Δ (signal/idler swap).
            let ring = |q_total: f64| -> Result<Complex64> {
                let p = integrate_1d_split(
                    |delta| {
                        kin.zeta_pair(0.5 * q_total + delta, 0.5 * q_total - delta)
                    },
                    0.0,
                    delta_max,
                    inner_panels,
                    &inner_spec,
                )?;
                Ok(2.0 * p.value)
            };
            // Even in Q as well: fold the pump spectrum with cos(xQ).
            let outer_panels =
                panels_for_cycles(x.abs() * pump_q_max / TAU + 8.0);
            let amp = integrate_1d_split(
                |q_total| {
                    Ok(scenario.pump().spectrum(q_total)
                        * (x * q_total).cos()
                        * ring(q_total)?)
                },
                0.0,
                pump_q_max,
                outer_panels,
                quad,
            )?;
            Ok((2.0 * amp.value).norm_sqr())
        }
    }
}

/// Pair spectral amplitude `Λ = Ẽ_p(q_s + q_i) ζ(q_s, q_i, ω_s)`.
///
/// For a plane-wave pump the spectrum is a delta in `q_s + q_i`; this
/// returns the on-shell amplitude when the sum vanishes exactly and zero
/// otherwise (the delta's weight, not its density).
pub fn lambda_fn(
    q_s: f64,
    q_i: f64,
    omega_s: f64,
    scenario: &BiphotonScenario,
) -> Result<Complex64> {
    let weight = scenario.pump().spectrum(q_s + q_i);
    if weight == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(weight * crystal::zeta(q_s, q_i, omega_s, scenario.pump(), scenario.crystal())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::collinear_cut_angle;
    use crate::material::Material;
    use approx::assert_relative_eq;

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn collinear_scenario(thickness: f64, configuration: Configuration) -> BiphotonScenario {
        let pump = PumpSpec::plane_wave(532e-9).unwrap();
        let cut = collinear_cut_angle(&pump, &Material::bbo()).unwrap();
        let crystal = CrystalSpec::new(thickness, cut, Material::bbo()).unwrap();
        let lens = LensSystem::new(0.2).unwrap().with_aperture(0.05).unwrap();
        BiphotonScenario::degenerate(pump, crystal, lens, configuration).unwrap()
    }

    // Reference kernel values from high-precision evaluation of the pupil
    // integral.
    #[test]
    fn kernel_reference_values() {
        let q = QuadratureSpec::with_rel_tol(1e-9);
        assert_relative_eq!(kernel_a(0.0, 0.0, &q).unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(
            kernel_a(0.0, 3.5, &q).unwrap(),
            0.495_010_890_079,
            max_relative = 1e-8
        );
        // A(1/2, 0) = (2/π)².
        assert_relative_eq!(
            kernel_a(0.5, 0.0, &q).unwrap(),
            0.405_284_734_569,
            max_relative = 1e-8
        );
        assert_relative_eq!(
            kernel_a(0.3, 1.7, &q).unwrap(),
            0.639_600_588_013,
            max_relative = 1e-8
        );
    }

    #[test]
    fn kernel_symmetries() {
        let q = quad();
        for (x, z) in [(0.4, 1.2), (1.1, -2.6), (0.25, 3.3)] {
            let a = kernel_a(x, z, &q).unwrap();
            assert_relative_eq!(a, kernel_a(-x, z, &q).unwrap(), max_relative = 1e-9);
            assert_relative_eq!(a, kernel_a(x, -z, &q).unwrap(), max_relative = 1e-9);
        }
    }

    #[test]
    fn classical_distributions_normalize_at_focus() {
        let lens = LensSystem::new(0.2)
            .unwrap()
            .with_aperture(0.05)
            .unwrap();
        assert_relative_eq!(
            g1(0.0, 0.0, 1064e-9, &lens, &quad()).unwrap(),
            1.0,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            g2(0.0, 0.0, 1064e-9, &lens, &quad()).unwrap(),
            1.0,
            max_relative = 1e-9
        );
        // In coordinates scaled at half the wavelength, the two-photon
        // distribution reads (1/U²) A²(X/2, Z/2).
        let (x, z) = (2e-6, 40e-6);
        let two = g2(x, z, 1064e-9, &lens, &quad()).unwrap();
        let sc = scaled_coords(x, z, 532e-9, &lens).unwrap();
        let a = kernel_a(0.5 * sc.x_scaled, 0.5 * sc.z_scaled, &quad()).unwrap();
        assert_relative_eq!(two, a * a / (sc.u * sc.u), max_relative = 1e-6);
    }

    // Reference kernel values at μ₁ = μ₂ = 1e-3 with the default truncation
    // radius, from an independent adaptive integrator at 1e-11 tolerance.
    #[test]
    fn g_kernel_reference_values() {
        let q = QuadratureSpec::with_rel_tol(1e-8);
        let rho_max = default_rho_max(1e-3);
        assert_relative_eq!(rho_max, 1_784.124_116_152_771, max_relative = 1e-12);
        let cases = [
            (0.0, 1.636_914_696_6e1, -1.636_915_334_9e1),
            (0.05, -7.483_587_020_3, -2.745_592_420_8e-1),
            (0.3, 1.688_973_145_7e-1, 1.627_825_574_1e-1),
        ];
        for (u, re, im) in cases {
            let g = g_kernel(u, 1e-3, 1e-3, rho_max, &q).unwrap();
            assert_relative_eq!(g.re, re, max_relative = 1e-6);
            assert_relative_eq!(g.im, im, max_relative = 1e-6);
        }
    }

    #[test]
    fn g_kernel_integrates_to_one() {
        // ∫ g du = 1 (the ρ-integrand collapses to a delta). Over [-W, W]
        // the u-integral folds analytically onto the ρ axis,
        // ∫_{-W}^{W} g du = ∫ dρ w(ρ) 2W sinc(2Wρ), which an independent
        // reference evaluates to 0.999999624 at W = 4 with the default
        // truncation.
        let (mu1, mu2, w) = (1e-3, 1e-3, 4.0);
        let rho_max = default_rho_max(mu1);
        let cycles = (mu2 + 0.5 * mu1) * rho_max * rho_max + w * rho_max;
        let total = integrate_1d_split(
            |rho| {
                let rho2 = rho * rho;
                Ok(sinc(mu1 * rho2)
                    * Complex64::new(0.0, -TAU * mu2 * rho2).exp()
                    * (2.0 * w * sinc(2.0 * w * rho)))
            },
            0.0,
            rho_max,
            panels_for_cycles(cycles),
            &QuadratureSpec::with_rel_tol(1e-8),
        )
        .map(|q| 2.0 * q.value)
        .unwrap();
        assert_relative_eq!(total.re, 1.0, max_relative = 1e-5);
        assert!(total.im.abs() < 1e-5);
    }

    #[test]
    fn g_kernel_table_interpolates_between_nodes() {
        let table = GKernelTable::build(1e-3, 1e-3, &quad()).unwrap();
        let scale = table.eval(0.0).norm();
        // Off-grid reference points (u chosen away from the 1/2048 grid).
        let cases = [
            (0.0123, 2.011_335_288_3e1, -1.127_844_520_4e1),
            (0.1717, 7.570_303_125_6e-1, 2.996_229_816_5e-1),
            (0.517, -4.814_473_989_9e-2, -6.772_166_039_5e-2),
        ];
        for (u, re, im) in cases {
            let got = table.eval(u);
            let err = (got - Complex64::new(re, im)).norm() / scale;
            assert!(err < 1e-4, "u = {u}: interpolation error {err:.2e}");
            // Evenness.
            assert_eq!(got, table.eval(-u));
        }
        assert!(
            table.truncation_shift() < 1e-3,
            "truncation shift {:.2e}",
            table.truncation_shift()
        );
    }

    #[test]
    fn focal_pair_delta_path_matches_pupil_kernel() {
        let kernel = FocalPairKernel::from_parts(1e-6, 5e-7, &quad()).unwrap();
        assert!(kernel.is_delta_limit());
        let scenario = {
            let pump = PumpSpec::plane_wave(532e-9).unwrap();
            let cut = collinear_cut_angle(&pump, &Material::bbo()).unwrap();
            let crystal = CrystalSpec::new(2e-3, cut, Material::bbo()).unwrap();
            let lens = LensSystem::new(0.2)
                .unwrap()
                .with_aperture(0.05)
                .unwrap();
            BiphotonScenario::degenerate(pump, crystal, lens, Configuration::Focal).unwrap()
        };
        let sc = scaled_coords(1e-6, 10e-6, 532e-9, scenario.lens()).unwrap();
        let direct = kernel_a(sc.x_scaled, sc.z_scaled, &quad()).unwrap() / (sc.u * sc.u);
        let got = kernel.gb2(1e-6, 10e-6, &scenario, &quad()).unwrap();
        assert_relative_eq!(got, direct, max_relative = 1e-12);
    }

    #[test]
    fn focal_pair_exact_path_matches_folded_origin_reference() {
        // At the origin the pupil double integral folds onto the ρ axis,
        // ∬ g(α-β) dα dβ = ∫ dρ w(ρ) sinc²(ρ); a 20M-node Simpson reference
        // of that form gives 0.9802871258179 at μ₁ = μ₂ = 1e-3. The ~2%
        // deficit against the delta limit is genuine: it is the kernel mass
        // carried outside the pupil overlap.
        let kernel = FocalPairKernel::from_parts(1e-3, 1e-3, &quad()).unwrap();
        assert!(!kernel.is_delta_limit());
        let scenario = {
            let pump = PumpSpec::plane_wave(532e-9).unwrap();
            let cut = collinear_cut_angle(&pump, &Material::bbo()).unwrap();
            let crystal = CrystalSpec::new(2e-3, cut, Material::bbo()).unwrap();
            let lens = LensSystem::new(0.2)
                .unwrap()
                .with_aperture(0.05)
                .unwrap();
            BiphotonScenario::degenerate(pump, crystal, lens, Configuration::Focal).unwrap()
        };
        let got = kernel.gb2(0.0, 0.0, &scenario, &quad()).unwrap();
        assert_relative_eq!(got, 0.980_287_125_818, max_relative = 2e-5);
    }

    #[test]
    fn pair_kinematics_agree_with_dispersion_chain() {
        let scenario = collinear_scenario(2e-3, Configuration::ImagingIdeal);
        let kin = PairKinematics::new(&scenario).unwrap();
        let omega_o = scenario.omega_pair();
        for q in [0.0, 3e4, 2.2e5, 8e5] {
            let via_chain =
                crystal::zeta(q, -q, omega_o, scenario.pump(), scenario.crystal()).unwrap();
            let fast = kin.zeta_degenerate(q);
            assert!((via_chain - fast).norm() <= 1e-9 * via_chain.norm().max(1e-30));
            let paired = kin.zeta_pair(q, -q).unwrap();
            assert!((via_chain - paired).norm() <= 1e-9 * via_chain.norm().max(1e-30));
        }
    }

    // Plateau references from an independent adaptive integration of the
    // ideal imaging amplitude (2 mm collinear crystal, f = 0.2 m).
    #[test]
    fn ideal_image_plateau_reference_ratios() {
        let scenario = collinear_scenario(2e-3, Configuration::ImagingIdeal);
        let l_eq = scenario.equivalent_thickness().unwrap();
        let q = quad();
        let v = |zf: f64| gbi_ideal_axial(zf * l_eq, &scenario, &q).unwrap();
        let mid = v(-0.5);
        assert_relative_eq!(v(-0.9) / mid, 1.001_245_5, max_relative = 1e-4);
        assert_relative_eq!(v(-0.1) / mid, 1.001_619_5, max_relative = 1e-4);
        assert_relative_eq!(v(0.25) / mid, 0.382_534_1, max_relative = 1e-4);
    }

    #[test]
    fn plane_wave_image_plane_is_flat() {
        let scenario = collinear_scenario(2e-3, Configuration::ImagingPumpProfile);
        let q = quad();
        let center = gb2_imaging_pump_profile(0.0, &scenario, &q).unwrap();
        assert!(center > 0.0);
        for x in [-1e-3, 3e-4, 2e-3] {
            let v = gb2_imaging_pump_profile(x, &scenario, &q).unwrap();
            assert_relative_eq!(v, center, max_relative = 1e-9);
        }
    }

    #[test]
    fn bandwidth_zero_reduces_to_ideal() {
        let banded = collinear_scenario(2e-3, Configuration::ImagingBandwidth);
        let ideal = banded
            .with_configuration(Configuration::ImagingIdeal)
            .unwrap();
        let q = quad();
        let z = -0.3 * banded.equivalent_thickness().unwrap();
        assert_eq!(
            gb2_imaging_bandwidth(z, &banded, &q).unwrap(),
            gbi_ideal_axial(z, &ideal, &q).unwrap()
        );
    }

    #[test]
    fn small_bandwidth_shape_approaches_ideal() {
        // Absolute heights scale with the band, so compare value ratios
        // between two axial points instead.
        let banded = collinear_scenario(2e-3, Configuration::ImagingBandwidth)
            .with_bandwidth(0.002)
            .unwrap();
        let ideal = banded
            .with_configuration(Configuration::ImagingIdeal)
            .unwrap();
        let q = quad();
        let l_eq = banded.equivalent_thickness().unwrap();
        let ref_banded = gb2_imaging_bandwidth(-0.5 * l_eq, &banded, &q).unwrap();
        let ref_ideal = gbi_ideal_axial(-0.5 * l_eq, &ideal, &q).unwrap();
        for zf in [-0.8, -0.1, 0.25] {
            let want = gbi_ideal_axial(zf * l_eq, &ideal, &q).unwrap() / ref_ideal;
            let got = gb2_imaging_bandwidth(zf * l_eq, &banded, &q).unwrap() / ref_banded;
            assert_relative_eq!(got, want, max_relative = 5e-3);
        }
    }

    #[test]
    fn pair_amplitude_respects_pump_correlation() {
        let scenario = collinear_scenario(2e-3, Configuration::ImagingIdeal);
        let omega_o = scenario.omega_pair();
        // Plane-wave pump: anti-correlated pairs carry ζ, others vanish.
        let on = lambda_fn(3e4, -3e4, omega_o, &scenario).unwrap();
        let zeta_direct =
            crystal::zeta(3e4, -3e4, omega_o, scenario.pump(), scenario.crystal()).unwrap();
        assert_eq!(on, zeta_direct);
        let off = lambda_fn(3e4, -2e4, omega_o, &scenario).unwrap();
        assert_eq!(off, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn configuration_mismatch_is_rejected() {
        let focal = collinear_scenario(2e-3, Configuration::Focal);
        assert!(matches!(
            gbi_ideal_axial(0.0, &focal, &quad()),
            Err(Error::InvalidInput(_))
        ));
        let imaging = collinear_scenario(2e-3, Configuration::ImagingIdeal);
        assert!(matches!(
            gb2_focal(0.0, 0.0, &imaging, &quad()),
            Err(Error::InvalidInput(_))
        ));
        // An aperture-limited scenario requires the aperture diameter.
        let bare_lens = LensSystem::new(0.2).unwrap();
        let pump = PumpSpec::plane_wave(532e-9).unwrap();
        let cut = collinear_cut_angle(&pump, &Material::bbo()).unwrap();
        let crystal = CrystalSpec::new(2e-3, cut, Material::bbo()).unwrap();
        assert!(matches!(
            BiphotonScenario::degenerate(
                pump,
                crystal,
                bare_lens,
                Configuration::ImagingAperture
            ),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn scenario_derived_quantities() {
        let scenario = collinear_scenario(2e-3, Configuration::ImagingIdeal);
        // q truncation: six cone angles in vacuum wavenumber units.
        let expect = 6.0 * 2.967_374_232_07e-2 * scenario.omega_pair() / SPEED_OF_LIGHT;
        assert_relative_eq!(
            scenario.q_truncation().unwrap(),
            expect,
            max_relative = 1e-6
        );
        // μ pair at f = 50 mm, D = 12.5 mm: Fresnel number 2937.03.
        let fast = {
            let lens = LensSystem::new(0.05)
                .unwrap()
                .with_aperture(0.0125)
                .unwrap();
            BiphotonScenario::degenerate(
                *scenario.pump(),
                scenario.crystal().clone(),
                lens,
                Configuration::Focal,
            )
            .unwrap()
        };
        let (mu1, mu2) = fast.mu_pair().unwrap();
        assert_relative_eq!(mu1, 8.228_460_483e-6, max_relative = 1e-8);
        assert_relative_eq!(mu2, 4.114_230_241e-6, max_relative = 1e-8);
    }
}
