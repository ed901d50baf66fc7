//! Sampled excitation curves over one spatial coordinate.
//!
//! A [`Distribution1D`] is a strictly increasing grid of coordinates with
//! nonnegative values, tagged with the axis it sections, the unit its
//! coordinates are expressed in, and metadata echoing the scenario and
//! quadrature settings that produced it.
//!
//! Classical samplers take an explicit [`AxisSpec`]. The imaged-pair axial
//! samplers can instead center themselves: a coarse scan around the crystal
//! image locates the curve (midpoint of the half-maximum crossings, argmax
//! as fallback), the window widens when the tails have not decayed, and the
//! final grid is resampled symmetrically about the found center in units of
//! the equivalent thickness `ℓ_eq = ℓ/n_o`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::excitation::{
    gb2_imaging_aperture, gb2_imaging_bandwidth, gb2_imaging_pump_profile, gbi_ideal_axial,
    BiphotonScenario, FocalPairKernel,
};
use crate::optics::{scaled_coords, LensSystem, PumpProfile};
use crate::quadrature::QuadratureSpec;

/// Which spatial coordinate the curve sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    #[serde(rename = "axial-z")]
    AxialZ,
    #[serde(rename = "transverse-x")]
    TransverseX,
}

/// Unit the curve's coordinates are expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoordinateUnit {
    /// Axial diffraction scale `z_c = 2λF#²`.
    #[serde(rename = "z_c")]
    CharacteristicZ,
    /// Transverse diffraction scale `x_c = 2λF#`.
    #[serde(rename = "x_c")]
    CharacteristicX,
    /// Equivalent crystal thickness `ℓ_eq = ℓ/n_o`.
    #[serde(rename = "l_eq")]
    EquivalentThickness,
    /// Meters.
    #[serde(rename = "raw")]
    Raw,
}

impl std::fmt::Display for CoordinateUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::CharacteristicZ => "z_c",
            Self::CharacteristicX => "x_c",
            Self::EquivalentThickness => "l_eq",
            Self::Raw => "raw",
        })
    }
}

/// Provenance attached to every sampled curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveMetadata {
    /// Human-readable curve name (figure legend text).
    pub label: String,
    /// Scenario parameter echo, or `null` for purely classical curves.
    pub scenario: serde_json::Value,
    /// Quadrature settings the samples were computed with.
    pub quadrature: QuadratureSpec,
    /// Sampling diagnostics (window widening, kernel truncation, fallbacks).
    pub warnings: Vec<String>,
}

/// Sampled real-valued excitation curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution1D {
    axis: Axis,
    unit: CoordinateUnit,
    samples: Vec<(f64, f64)>,
    metadata: CurveMetadata,
}

impl Distribution1D {
    pub fn new(
        axis: Axis,
        unit: CoordinateUnit,
        samples: Vec<(f64, f64)>,
        metadata: CurveMetadata,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a curve needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        for pair in samples.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::InvalidInput(format!(
                    "coordinates must be strictly increasing, got {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        for &(c, v) in &samples {
            if !(c.is_finite() && v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "samples must be finite with nonnegative values, got ({c}, {v})"
                )));
            }
        }
        Ok(Self {
            axis,
            unit,
            samples,
            metadata,
        })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn unit(&self) -> CoordinateUnit {
        self.unit
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn metadata(&self) -> &CurveMetadata {
        &self.metadata
    }

    pub fn metadata_mut(&mut self) -> &mut CurveMetadata {
        &mut self.metadata
    }

    /// Same grid with every value mapped; the map must keep values
    /// nonnegative and finite.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.axis,
            self.unit,
            self.samples.iter().map(|&(c, v)| (c, f(v))).collect(),
            self.metadata.clone(),
        )
    }
}

/// Explicit sampling grid: `samples` points over `[lo, hi]`, expressed in
/// `unit` with `unit_length` meters per unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    unit: CoordinateUnit,
    unit_length: f64,
    lo: f64,
    hi: f64,
    samples: usize,
}

impl AxisSpec {
    pub fn new(
        unit: CoordinateUnit,
        unit_length: f64,
        lo: f64,
        hi: f64,
        samples: usize,
    ) -> Result<Self> {
        if !(unit_length.is_finite() && unit_length > 0.0) {
            return Err(Error::InvalidInput(format!(
                "unit length must be positive, got {unit_length}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInput(format!(
                "grid bounds must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if samples < 2 {
            return Err(Error::InvalidInput(format!(
                "a grid needs at least 2 samples, got {samples}"
            )));
        }
        Ok(Self {
            unit,
            unit_length,
            lo,
            hi,
            samples,
        })
    }

    /// Axial grid over `±half_width` in units of `z_c = 2λF#²`.
    pub fn axial_zc(
        wavelength: f64,
        lens: &LensSystem,
        half_width: f64,
        samples: usize,
    ) -> Result<Self> {
        let z_char = scaled_coords(0.0, 0.0, wavelength, lens)?.z_char;
        Self::new(
            CoordinateUnit::CharacteristicZ,
            z_char,
            -half_width,
            half_width,
            samples,
        )
    }

    /// Transverse grid over `±half_width` in units of `x_c = 2λF#`.
    pub fn transverse_xc(
        wavelength: f64,
        lens: &LensSystem,
        half_width: f64,
        samples: usize,
    ) -> Result<Self> {
        let x_char = scaled_coords(0.0, 0.0, wavelength, lens)?.x_char;
        Self::new(
            CoordinateUnit::CharacteristicX,
            x_char,
            -half_width,
            half_width,
            samples,
        )
    }

    /// Axial grid in units of the scenario's equivalent thickness.
    pub fn axial_leq(
        scenario: &BiphotonScenario,
        lo: f64,
        hi: f64,
        samples: usize,
    ) -> Result<Self> {
        Self::new(
            CoordinateUnit::EquivalentThickness,
            scenario.equivalent_thickness()?,
            lo,
            hi,
            samples,
        )
    }

    /// Grid in raw meters.
    pub fn raw(lo: f64, hi: f64, samples: usize) -> Result<Self> {
        Self::new(CoordinateUnit::Raw, 1.0, lo, hi, samples)
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    fn coordinates(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.samples)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

fn sample_over(
    axis: Axis,
    spec: &AxisSpec,
    label: &str,
    scenario: serde_json::Value,
    quad: &QuadratureSpec,
    warnings: Vec<String>,
    mut f: impl FnMut(f64) -> Result<f64>,
) -> Result<Distribution1D> {
    let samples = spec
        .coordinates()
        .into_iter()
        .map(|c| Ok((c, f(c * spec.unit_length)?)))
        .collect::<Result<Vec<_>>>()?;
    Distribution1D::new(
        axis,
        spec.unit,
        samples,
        CurveMetadata {
            label: label.to_owned(),
            scenario,
            quadrature: *quad,
            warnings,
        },
    )
}

/// Classical one-photon axial section `G¹(0, z)`.
pub fn sample_g1_axial(
    wavelength: f64,
    lens: &LensSystem,
    axis: &AxisSpec,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    sample_over(
        Axis::AxialZ,
        axis,
        "one-photon axial",
        serde_json::Value::Null,
        quad,
        Vec::new(),
        |z| crate::excitation::g1(0.0, z, wavelength, lens, quad),
    )
}

/// Classical one-photon transverse section `G¹(x, 0)`.
pub fn sample_g1_transverse(
    wavelength: f64,
    lens: &LensSystem,
    axis: &AxisSpec,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    sample_over(
        Axis::TransverseX,
        axis,
        "one-photon transverse",
        serde_json::Value::Null,
        quad,
        Vec::new(),
        |x| crate::excitation::g1(x, 0.0, wavelength, lens, quad),
    )
}

/// Classical two-photon axial section `G²(0, z)`.
pub fn sample_g2_axial(
    wavelength: f64,
    lens: &LensSystem,
    axis: &AxisSpec,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    sample_over(
        Axis::AxialZ,
        axis,
        "two-photon axial",
        serde_json::Value::Null,
        quad,
        Vec::new(),
        |z| crate::excitation::g2(0.0, z, wavelength, lens, quad),
    )
}

/// Classical two-photon transverse section `G²(x, 0)`.
pub fn sample_g2_transverse(
    wavelength: f64,
    lens: &LensSystem,
    axis: &AxisSpec,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    sample_over(
        Axis::TransverseX,
        axis,
        "two-photon transverse",
        serde_json::Value::Null,
        quad,
        Vec::new(),
        |x| crate::excitation::g2(x, 0.0, wavelength, lens, quad),
    )
}

fn focal_pair_warnings(kernel: &FocalPairKernel) -> Vec<String> {
    let shift = kernel.truncation_shift();
    if shift > 1e-3 {
        vec![format!(
            "convolution kernel truncation moves its value by {shift:.1e} of peak \
             when the radius doubles; widen rho_max for tighter results"
        )]
    } else {
        Vec::new()
    }
}

/// Pair axial section `Gb²(0, z)` in the focal region.
pub fn sample_gb2_focal_axial(
    scenario: &BiphotonScenario,
    axis: &AxisSpec,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    let kernel = FocalPairKernel::new(scenario, quad)?;
    sample_over(
        Axis::AxialZ,
        axis,
        "pair focal axial",
        scenario.summary(),
        quad,
        focal_pair_warnings(&kernel),
        |z| kernel.gb2(0.0, z, scenario, quad),
    )
}

/// Pair transverse section `Gb²(x, 0)` in the focal region.
pub fn sample_gb2_focal_transverse(
    scenario: &BiphotonScenario,
    axis: &AxisSpec,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    let kernel = FocalPairKernel::new(scenario, quad)?;
    sample_over(
        Axis::TransverseX,
        axis,
        "pair focal transverse",
        scenario.summary(),
        quad,
        focal_pair_warnings(&kernel),
        |x| kernel.gb2(x, 0.0, scenario, quad),
    )
}

/// Sampling window defaults for the self-centering imaged-pair samplers,
/// in units of the equivalent thickness.
const COARSE_POINTS: usize = 97;
const DEFAULT_FINAL_POINTS: usize = 257;
const FINAL_HALF_WIDTH: f64 = 1.6;
/// The image-side singularity sits at `z = -f`; never sample past this.
const U_CLIP: f64 = 0.95;

/// Locates and samples an axial curve around the crystal image.
///
/// `window` is the initial coarse scan in `ℓ_eq` units; it widens by 1.5x
/// (twice at most) while the curve's tails have not fallen below half of
/// its running maximum.
fn auto_axial_curve(
    mut value_at: impl FnMut(f64) -> Result<f64>,
    l_eq: f64,
    focal_length: f64,
    window: (f64, f64),
    samples: usize,
    warnings: &mut Vec<String>,
) -> Result<Vec<(f64, f64)>> {
    let clip = -U_CLIP * focal_length / l_eq;
    let clamp_lo = |lo: f64| lo.max(clip);

    let scan = |lo: f64, hi: f64, n: usize, value_at: &mut dyn FnMut(f64) -> Result<f64>| {
        linspace(lo, hi, n)
            .into_iter()
            .map(|c| Ok((c, value_at(c * l_eq)?)))
            .collect::<Result<Vec<(f64, f64)>>>()
    };

    let (mut lo, mut hi) = (clamp_lo(window.0), window.1);
    let mut coarse = scan(lo, hi, COARSE_POINTS, &mut value_at)?;
    for attempt in 0..2 {
        let peak = coarse.iter().map(|&(_, v)| v).fold(0.0, f64::max);
        let tail_hot = coarse
            .first()
            .is_some_and(|&(c, v)| v >= 0.5 * peak && c > clip + 1e-9)
            || coarse.last().is_some_and(|&(_, v)| v >= 0.5 * peak);
        if !tail_hot {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let half = 0.75 * (hi - lo);
        (lo, hi) = (clamp_lo(mid - half), mid + half);
        warnings.push(format!(
            "curve tails above half maximum; widened the scan window to \
             [{lo:.2}, {hi:.2}] l_eq (attempt {})",
            attempt + 1
        ));
        coarse = scan(lo, hi, COARSE_POINTS, &mut value_at)?;
    }

    // Center on the midpoint of the half-maximum crossings when they are
    // unique, otherwise on the argmax.
    let peak = coarse
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    if peak <= 0.0 {
        return Err(Error::Domain(
            "curve is identically zero over the scan window".into(),
        ));
    }
    let half = 0.5 * peak;
    let mut crossings = Vec::new();
    for pair in coarse.windows(2) {
        let (c0, v0) = pair[0];
        let (c1, v1) = pair[1];
        if (v0 - half) * (v1 - half) < 0.0 {
            crossings.push(c0 + (half - v0) / (v1 - v0) * (c1 - c0));
        }
    }
    let argmax = coarse
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|&(c, _)| c)
        .unwrap();
    let center = if crossings.len() == 2 {
        0.5 * (crossings[0] + crossings[1])
    } else {
        warnings.push(format!(
            "expected 2 half-maximum crossings in the scan, found {}; \
             centering on the maximum instead",
            crossings.len()
        ));
        argmax
    };

    let span = FINAL_HALF_WIDTH.max(0.8 * (hi - lo) / 2.0);
    let (final_lo, final_hi) = (clamp_lo(center - span), center + span);
    scan(final_lo, final_hi, samples, &mut value_at)
}

fn sampled_auto(
    axis_override: Option<&AxisSpec>,
    scenario: &BiphotonScenario,
    label: &str,
    quad: &QuadratureSpec,
    window: (f64, f64),
    mut value_at: impl FnMut(f64) -> Result<f64>,
) -> Result<Distribution1D> {
    if let Some(spec) = axis_override {
        return sample_over(
            Axis::AxialZ,
            spec,
            label,
            scenario.summary(),
            quad,
            Vec::new(),
            value_at,
        );
    }
    let l_eq = scenario.equivalent_thickness()?;
    let mut warnings = Vec::new();
    let samples = auto_axial_curve(
        &mut value_at,
        l_eq,
        scenario.lens().focal_length(),
        window,
        DEFAULT_FINAL_POINTS,
        &mut warnings,
    )?;
    Distribution1D::new(
        Axis::AxialZ,
        CoordinateUnit::EquivalentThickness,
        samples,
        CurveMetadata {
            label: label.to_owned(),
            scenario: scenario.summary(),
            quadrature: *quad,
            warnings,
        },
    )
}

/// Imaged-pair axial curve through an ideal lens; self-centering unless an
/// explicit grid is given.
pub fn sample_gbi_ideal_axial(
    scenario: &BiphotonScenario,
    axis: Option<&AxisSpec>,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    sampled_auto(
        axis,
        scenario,
        "pair imaged axial (ideal lens)",
        quad,
        (-1.6, 0.6),
        |z| gbi_ideal_axial(z, scenario, quad),
    )
}

/// Imaged-pair axial curve through a hard-edged aperture; self-centering
/// unless an explicit grid is given. Wide curves (small apertures) trigger
/// automatic window widening.
pub fn sample_gb2_aperture_axial(
    scenario: &BiphotonScenario,
    axis: Option<&AxisSpec>,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    sampled_auto(
        axis,
        scenario,
        "pair imaged axial (finite aperture)",
        quad,
        (-2.5, 1.5),
        |z| gb2_imaging_aperture(z, scenario, quad),
    )
}

/// Imaged-pair axial curve behind a spectral filter; self-centering unless
/// an explicit grid is given.
pub fn sample_gb2_bandwidth_axial(
    scenario: &BiphotonScenario,
    axis: Option<&AxisSpec>,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    sampled_auto(
        axis,
        scenario,
        "pair imaged axial (finite bandwidth)",
        quad,
        (-1.6, 0.6),
        |z| gb2_imaging_bandwidth(z, scenario, quad),
    )
}

/// Image-plane transverse pair profile for the scenario's pump. For a
/// Gaussian pump the default window spans `±2.5` pump widths; a plane-wave
/// pump (flat profile) needs an explicit grid.
///
/// The image reproduces the pump intensity only while the pump is wide
/// compared to the pair diffraction spread `√(ℓ_eq λ_p)`; a narrower pump
/// still samples, but the curve carries a validity warning.
pub fn sample_gb2_pump_profile_transverse(
    scenario: &BiphotonScenario,
    axis: Option<&AxisSpec>,
    quad: &QuadratureSpec,
) -> Result<Distribution1D> {
    let owned;
    let spec = match axis {
        Some(spec) => spec,
        None => {
            let width = match scenario.pump().profile() {
                PumpProfile::Gaussian { width } => width,
                PumpProfile::PlaneWave => {
                    return Err(Error::InvalidInput(
                        "a plane-wave pump images to a flat profile; pass an explicit grid"
                            .into(),
                    ))
                }
            };
            owned = AxisSpec::raw(-2.5 * width, 2.5 * width, DEFAULT_FINAL_POINTS)?;
            &owned
        }
    };
    let mut warnings = Vec::new();
    if let PumpProfile::Gaussian { width } = scenario.pump().profile() {
        let spread = (scenario.equivalent_thickness()? * scenario.pump().wavelength()).sqrt();
        if width < spread {
            warnings.push(format!(
                "pump width {width:.3e} m is below the pair diffraction spread {spread:.3e} m; \
                 the imaged profile no longer reproduces the pump intensity"
            ));
        }
    }
    sample_over(
        Axis::TransverseX,
        spec,
        "pair image-plane transverse",
        scenario.summary(),
        quad,
        warnings,
        |x| gb2_imaging_pump_profile(x, scenario, quad),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{collinear_cut_angle, CrystalSpec};
    use crate::excitation::Configuration;
    use crate::material::Material;
    use crate::optics::PumpSpec;
    use approx::assert_relative_eq;

    fn meta() -> CurveMetadata {
        CurveMetadata {
            label: "test".into(),
            scenario: serde_json::Value::Null,
            quadrature: QuadratureSpec::default(),
            warnings: Vec::new(),
        }
    }

    #[test]
    fn curve_validation() {
        let ok = Distribution1D::new(
            Axis::AxialZ,
            CoordinateUnit::Raw,
            vec![(0.0, 1.0), (1.0, 2.0)],
            meta(),
        );
        assert!(ok.is_ok());
        for bad in [
            vec![(0.0, 1.0)],
            vec![(0.0, 1.0), (0.0, 2.0)],
            vec![(1.0, 1.0), (0.0, 2.0)],
            vec![(0.0, -1.0), (1.0, 2.0)],
            vec![(0.0, f64::NAN), (1.0, 2.0)],
        ] {
            assert!(matches!(
                Distribution1D::new(Axis::AxialZ, CoordinateUnit::Raw, bad, meta()),
                Err(Error::InvalidInput(_))
            ));
        }
    }

    #[test]
    fn unit_names_round_trip_through_serde() {
        for (unit, name) in [
            (CoordinateUnit::CharacteristicZ, "z_c"),
            (CoordinateUnit::CharacteristicX, "x_c"),
            (CoordinateUnit::EquivalentThickness, "l_eq"),
            (CoordinateUnit::Raw, "raw"),
        ] {
            assert_eq!(unit.to_string(), name);
            assert_eq!(serde_json::to_value(unit).unwrap(), name);
        }
        assert_eq!(serde_json::to_value(Axis::AxialZ).unwrap(), "axial-z");
        assert_eq!(
            serde_json::to_value(Axis::TransverseX).unwrap(),
            "transverse-x"
        );
    }

    #[test]
    fn classical_axial_sampler_peaks_at_focus() {
        let lens = LensSystem::new(0.2).unwrap().with_aperture(0.05).unwrap();
        let axis = AxisSpec::axial_zc(1064e-9, &lens, 4.0, 65).unwrap();
        let curve = sample_g1_axial(1064e-9, &lens, &axis, &QuadratureSpec::default()).unwrap();
        assert_eq!(curve.len(), 65);
        assert_eq!(curve.unit(), CoordinateUnit::CharacteristicZ);
        let (c_peak, v_peak) = *curve
            .samples()
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert_eq!(c_peak, 0.0);
        assert_relative_eq!(v_peak, 1.0, max_relative = 1e-9);
        // Annotated coordinates are in characteristic-length units: each
        // sample must reproduce a direct evaluation at coord * z_char.
        let z_char = scaled_coords(0.0, 0.0, 1064e-9, &lens).unwrap().z_char;
        let s = curve.samples();
        for &i in &[0, 7, s.len() / 2, s.len() - 1] {
            let direct = crate::excitation::g1(
                0.0,
                s[i].0 * z_char,
                1064e-9,
                &lens,
                &QuadratureSpec::default(),
            )
            .unwrap();
            assert_eq!(s[i].1, direct);
        }
    }

    #[test]
    fn auto_sampler_centers_the_crystal_image() {
        let pump = PumpSpec::plane_wave(532e-9).unwrap();
        let cut = collinear_cut_angle(&pump, &Material::bbo()).unwrap();
        let crystal = CrystalSpec::new(2e-3, cut, Material::bbo()).unwrap();
        let lens = LensSystem::new(0.2).unwrap();
        let scenario =
            BiphotonScenario::degenerate(pump, crystal, lens, Configuration::ImagingIdeal)
                .unwrap();
        let curve =
            sample_gbi_ideal_axial(&scenario, None, &QuadratureSpec::default()).unwrap();
        assert_eq!(curve.len(), 257);
        assert_eq!(curve.unit(), CoordinateUnit::EquivalentThickness);
        // The slice image occupies [-l_eq, 0]: its center is -0.5 l_eq.
        let mid = curve.samples()[curve.len() / 2].0;
        assert!((mid + 0.5).abs() < 0.05, "window center {mid}");
        // Tails are quiet, so FWHM extraction downstream is well-posed.
        let peak = curve.samples().iter().map(|&(_, v)| v).fold(0.0, f64::max);
        assert!(curve.samples().first().unwrap().1 < 0.5 * peak);
        assert!(curve.samples().last().unwrap().1 < 0.5 * peak);
        assert!(curve.metadata().warnings.is_empty());
    }

    #[test]
    fn explicit_grid_is_respected() {
        let pump = PumpSpec::plane_wave(532e-9).unwrap();
        let cut = collinear_cut_angle(&pump, &Material::bbo()).unwrap();
        let crystal = CrystalSpec::new(2e-3, cut, Material::bbo()).unwrap();
        let lens = LensSystem::new(0.2).unwrap();
        let scenario =
            BiphotonScenario::degenerate(pump, crystal, lens, Configuration::ImagingIdeal)
                .unwrap();
        let axis = AxisSpec::axial_leq(&scenario, -1.3, 0.3, 65).unwrap();
        let curve =
            sample_gbi_ideal_axial(&scenario, Some(&axis), &QuadratureSpec::default()).unwrap();
        assert_eq!(curve.len(), 65);
        assert_eq!(curve.samples().first().unwrap().0, -1.3);
        assert_eq!(curve.samples().last().unwrap().0, 0.3);
    }

    #[test]
    fn plane_wave_pump_profile_needs_explicit_grid() {
        let pump = PumpSpec::plane_wave(532e-9).unwrap();
        let cut = collinear_cut_angle(&pump, &Material::bbo()).unwrap();
        let crystal = CrystalSpec::new(2e-3, cut, Material::bbo()).unwrap();
        let lens = LensSystem::new(0.2).unwrap();
        let scenario = BiphotonScenario::degenerate(
            pump,
            crystal,
            lens,
            Configuration::ImagingPumpProfile,
        )
        .unwrap();
        assert!(matches!(
            sample_gb2_pump_profile_transverse(&scenario, None, &QuadratureSpec::default()),
            Err(Error::InvalidInput(_))
        ));
        let axis = AxisSpec::raw(-1e-3, 1e-3, 65).unwrap();
        let curve =
            sample_gb2_pump_profile_transverse(&scenario, Some(&axis), &QuadratureSpec::default())
                .unwrap();
        let first = curve.samples()[0].1;
        assert!(curve.samples().iter().all(|&(_, v)| v == first));
    }
}
