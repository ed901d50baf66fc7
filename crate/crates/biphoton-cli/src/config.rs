//! JSON run configuration: pump, crystal, lens, filter, and sampling
//! choices for a single curve. Unknown fields are rejected so typos fail
//! loudly instead of silently falling back to defaults.

use std::f64::consts::PI;
use std::path::Path;

use serde::Deserialize;

use biphoton::analysis::fwhm;
use biphoton::crystal::{collinear_cut_angle, CrystalSpec};
use biphoton::distribution::{
    sample_g1_axial, sample_g1_transverse, sample_gb2_aperture_axial, sample_gb2_bandwidth_axial,
    sample_gb2_focal_axial, sample_gb2_focal_transverse, sample_gb2_pump_profile_transverse,
    sample_gbi_ideal_axial, AxisSpec, CoordinateUnit, Distribution1D,
};
use biphoton::excitation::{BiphotonScenario, Configuration};
use biphoton::material::Material;
use biphoton::optics::{scaled_coords, LensSystem, PumpProfile, PumpSpec};
use biphoton::quadrature::QuadratureSpec;

use crate::output;
use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pump_wavelength_nm: f64,
    crystal_thickness_mm: f64,
    cut_angle_deg: CutAngle,
    configuration: ConfigurationKind,
    focal_length_mm: f64,
    #[serde(default)]
    aperture_mm: Option<f64>,
    #[serde(default)]
    crystal_to_lens_mm: Option<f64>,
    #[serde(default)]
    magnification: Option<f64>,
    /// Fractional spectral bandwidth of the collection filter.
    #[serde(default)]
    filter_bandwidth: Option<f64>,
    #[serde(default)]
    pump_profile: Option<PumpProfileConfig>,
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default)]
    rel_tol: Option<f64>,
    #[serde(default)]
    section: Option<Section>,
    /// Grid bounds in the curve's natural unit (see the README table).
    #[serde(default)]
    window: Option<(f64, f64)>,
}

/// Cut angle: a number in degrees or the string "collinear".
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CutAngle {
    Degrees(f64),
    Named(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ConfigurationKind {
    Focal,
    ImagingIdeal,
    ImagingAperture,
    ImagingBandwidth,
    ImagingPumpProfile,
}

impl From<ConfigurationKind> for Configuration {
    fn from(kind: ConfigurationKind) -> Self {
        match kind {
            ConfigurationKind::Focal => Configuration::Focal,
            ConfigurationKind::ImagingIdeal => Configuration::ImagingIdeal,
            ConfigurationKind::ImagingAperture => Configuration::ImagingAperture,
            ConfigurationKind::ImagingBandwidth => Configuration::ImagingBandwidth,
            ConfigurationKind::ImagingPumpProfile => Configuration::ImagingPumpProfile,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Section {
    Axial,
    Transverse,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
enum PumpProfileConfig {
    PlaneWave,
    Gaussian { width_um: f64 },
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn scenario(&self) -> Result<BiphotonScenario, CliError> {
        let wavelength = self.pump_wavelength_nm * 1e-9;
        let pump = match &self.pump_profile {
            None | Some(PumpProfileConfig::PlaneWave) => PumpSpec::plane_wave(wavelength)?,
            Some(PumpProfileConfig::Gaussian { width_um }) => PumpSpec::new(
                wavelength,
                PumpProfile::Gaussian {
                    width: width_um * 1e-6,
                },
            )?,
        };

        let material = Material::bbo();
        let cut_angle = match &self.cut_angle_deg {
            CutAngle::Degrees(deg) => deg * PI / 180.0,
            CutAngle::Named(name) if name == "collinear" => {
                collinear_cut_angle(&pump, &material)?
            }
            CutAngle::Named(name) => {
                return Err(CliError::Config(format!(
                    "cut_angle_deg must be a number or \"collinear\", got \"{name}\""
                )))
            }
        };
        let crystal = CrystalSpec::new(self.crystal_thickness_mm * 1e-3, cut_angle, material)?;

        let mut lens = LensSystem::new(self.focal_length_mm * 1e-3)?;
        if let Some(d) = self.aperture_mm {
            lens = lens.with_aperture(d * 1e-3)?;
        }
        if let Some(d) = self.crystal_to_lens_mm {
            lens = lens.with_crystal_to_lens(d * 1e-3)?;
        }
        if let Some(m) = self.magnification {
            lens = lens.with_magnification(m)?;
        }

        let scenario =
            BiphotonScenario::degenerate(pump, crystal, lens, self.configuration.into())?;
        match self.filter_bandwidth {
            Some(bw) => Ok(scenario.with_bandwidth(bw)?),
            None => Ok(scenario),
        }
    }

    fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol.unwrap_or(QuadratureSpec::default().rel_tol),
            ..QuadratureSpec::default()
        }
    }

    /// Samples the configured curve and writes it to `out` (or stdout).
    pub fn execute(&self, out: Option<&Path>) -> Result<(), CliError> {
        let scenario = self.scenario()?;
        let quad = self.quadrature();
        let curve = self.sample(&scenario, &quad)?;

        let metrics = match fwhm(&curve) {
            Ok(m) => serde_json::json!({
                "peak_location": m.peak_location,
                "fwhm": m.fwhm,
                "unit": m.unit.to_string(),
            }),
            Err(e) => serde_json::json!({ "unavailable": e.to_string() }),
        };
        let manifest = serde_json::json!({
            "scenario": scenario.summary(),
            "quadrature": quad,
            "metrics": metrics,
            "warnings": curve.metadata().warnings,
        });

        match out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                output::write_curve_csv(&dir.join("curve.csv"), &curve)?;
                output::write_json(&dir.join("manifest.json"), &manifest)?;
                println!("wrote {}", dir.join("curve.csv").display());
            }
            None => print!("{}", output::curve_csv(&curve)),
        }
        for warning in &curve.metadata().warnings {
            eprintln!("warning: {warning}");
        }
        Ok(())
    }

    fn sample(
        &self,
        scenario: &BiphotonScenario,
        quad: &QuadratureSpec,
    ) -> Result<Distribution1D, CliError> {
        let section = self.section.unwrap_or(Section::Axial);
        let samples = self.samples.unwrap_or(257);
        let wavelength = self.pump_wavelength_nm * 1e-9;
        let lens = scenario.lens();

        let focal_axis = |default: (f64, f64), unit: CoordinateUnit| -> Result<AxisSpec, CliError> {
            let coords = scaled_coords(0.0, 0.0, wavelength, lens)?;
            let (lo, hi) = self.window.unwrap_or(default);
            let unit_length = match unit {
                CoordinateUnit::CharacteristicZ => coords.z_char,
                _ => coords.x_char,
            };
            Ok(AxisSpec::new(unit, unit_length, lo, hi, samples)?)
        };
        let imaging_axis = |default: (f64, f64)| -> Result<AxisSpec, CliError> {
            let (lo, hi) = self.window.unwrap_or(default);
            Ok(AxisSpec::axial_leq(scenario, lo, hi, samples)?)
        };

        let mismatch = |wanted: &str| {
            CliError::Config(format!(
                "the {:?} configuration only defines a {wanted} section",
                self.configuration
            ))
        };

        let curve = match (self.configuration, section) {
            (ConfigurationKind::Focal, Section::Axial) => {
                let axis = focal_axis((-4.0, 4.0), CoordinateUnit::CharacteristicZ)?;
                sample_gb2_focal_axial(scenario, &axis, quad)?
            }
            (ConfigurationKind::Focal, Section::Transverse) => {
                let axis = focal_axis((-1.5, 1.5), CoordinateUnit::CharacteristicX)?;
                sample_gb2_focal_transverse(scenario, &axis, quad)?
            }
            (ConfigurationKind::ImagingIdeal, Section::Axial) => {
                let axis = imaging_axis((-1.6, 0.6))?;
                sample_gbi_ideal_axial(scenario, Some(&axis), quad)?
            }
            (ConfigurationKind::ImagingAperture, Section::Axial) => {
                let axis = imaging_axis((-2.5, 1.5))?;
                sample_gb2_aperture_axial(scenario, Some(&axis), quad)?
            }
            (ConfigurationKind::ImagingBandwidth, Section::Axial) => {
                let axis = imaging_axis((-1.6, 0.6))?;
                sample_gb2_bandwidth_axial(scenario, Some(&axis), quad)?
            }
            (ConfigurationKind::ImagingPumpProfile, Section::Transverse) => {
                // Window in micrometers of image-plane offset.
                let axis = match (self.window, scenario.pump().profile()) {
                    (Some((lo, hi)), _) => Some(AxisSpec::new(
                        CoordinateUnit::Raw,
                        1e-6,
                        lo,
                        hi,
                        samples,
                    )?),
                    (None, PumpProfile::Gaussian { width }) => Some(AxisSpec::new(
                        CoordinateUnit::Raw,
                        1e-6,
                        -2.5 * width * 1e6,
                        2.5 * width * 1e6,
                        samples,
                    )?),
                    (None, PumpProfile::PlaneWave) => None,
                };
                sample_gb2_pump_profile_transverse(scenario, axis.as_ref(), quad)?
            }
            (ConfigurationKind::ImagingPumpProfile, Section::Axial) => {
                return Err(mismatch("transverse"))
            }
            (_, Section::Transverse) => return Err(mismatch("axial")),
        };
        Ok(curve)
    }
}

/// One-photon reference curves share the classical samplers; exposed for the
/// figure renderers rather than the JSON interface.
pub fn classical_axial(
    wavelength: f64,
    lens: &LensSystem,
    axis: &AxisSpec,
    quad: &QuadratureSpec,
    two_photon: bool,
) -> Result<Distribution1D, CliError> {
    Ok(if two_photon {
        biphoton::distribution::sample_g2_axial(wavelength, lens, axis, quad)?
    } else {
        sample_g1_axial(wavelength, lens, axis, quad)?
    })
}

/// Transverse counterpart of [`classical_axial`].
pub fn classical_transverse(
    wavelength: f64,
    lens: &LensSystem,
    axis: &AxisSpec,
    quad: &QuadratureSpec,
    two_photon: bool,
) -> Result<Distribution1D, CliError> {
    Ok(if two_photon {
        biphoton::distribution::sample_g2_transverse(wavelength, lens, axis, quad)?
    } else {
        sample_g1_transverse(wavelength, lens, axis, quad)?
    })
}
