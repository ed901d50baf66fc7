//! Predefined figure curve sets. Every figure writes one CSV per curve, a
//! `manifest.json` describing the files and the normalization convention,
//! and a `plot.gp` convenience script.

use std::f64::consts::PI;
use std::path::Path;

use biphoton::analysis::{fwhm, normalize_peak, sweep_bandwidth, sweep_cut_angle};
use biphoton::crystal::{collinear_cut_angle, CrystalSpec};
use biphoton::distribution::{
    sample_gb2_aperture_axial, sample_gb2_bandwidth_axial, sample_gb2_focal_axial,
    sample_gb2_focal_transverse, sample_gbi_ideal_axial, AxisSpec, CoordinateUnit,
    Distribution1D,
};
use biphoton::excitation::{BiphotonScenario, Configuration};
use biphoton::material::Material;
use biphoton::optics::{scaled_coords, LensSystem, PumpSpec};
use biphoton::quadrature::QuadratureSpec;

use crate::config::{classical_axial, classical_transverse};
use crate::output;
use crate::CliError;

const DEG: f64 = PI / 180.0;
const PUMP_WAVELENGTH: f64 = 532e-9;
const PAIR_WAVELENGTH: f64 = 1064e-9;

pub fn render(
    id: &str,
    out: &Path,
    samples: Option<usize>,
    tol: Option<f64>,
) -> Result<(), CliError> {
    let quad = QuadratureSpec {
        rel_tol: tol.unwrap_or(QuadratureSpec::default().rel_tol),
        ..QuadratureSpec::default()
    };
    std::fs::create_dir_all(out)?;
    let id_lower = id.to_ascii_lowercase();
    match id_lower.as_str() {
        "2a" => focal_comparison(out, samples.unwrap_or(257), &quad, true),
        "2b" => focal_comparison(out, samples.unwrap_or(257), &quad, false),
        "4" => thickness_family(out, samples.unwrap_or(257), &quad),
        "5" => cut_angle_family(out, samples.unwrap_or(257), &quad),
        "6" => peak_versus_angle(out, samples.unwrap_or(129), &quad),
        "7" => aperture_family(out, samples.unwrap_or(129), &quad),
        "8a" => bandwidth_family(out, samples.unwrap_or(257), &quad, 10e-3, 22.89),
        "8b" => bandwidth_family(out, samples.unwrap_or(257), &quad, 2e-3, 22.95),
        "9" => peak_versus_bandwidth(out, samples.unwrap_or(129), &quad),
        _ => Err(CliError::Config(format!(
            "unknown figure id \"{id}\"; expected one of 2a, 2b, 4, 5, 6, 7, 8a, 8b, 9"
        ))),
    }
    .map(|()| println!("wrote figure {id_lower} to {}", out.display()))
}

fn pump() -> Result<PumpSpec, CliError> {
    Ok(PumpSpec::plane_wave(PUMP_WAVELENGTH)?)
}

fn collinear() -> Result<f64, CliError> {
    Ok(collinear_cut_angle(&pump()?, &Material::bbo())?)
}

fn scenario(
    thickness: f64,
    cut_angle: f64,
    focal_length: f64,
    aperture: Option<f64>,
    configuration: Configuration,
) -> Result<BiphotonScenario, CliError> {
    let mut lens = LensSystem::new(focal_length)?;
    if let Some(d) = aperture {
        lens = lens.with_aperture(d)?;
    }
    let crystal = CrystalSpec::new(thickness, cut_angle, Material::bbo())?;
    Ok(BiphotonScenario::degenerate(
        pump()?,
        crystal,
        lens,
        configuration,
    )?)
}

fn write_set(
    out: &Path,
    title: &str,
    curves: Vec<(String, String, Distribution1D)>,
    notes: &[&str],
) -> Result<(), CliError> {
    let mut files = Vec::new();
    let mut entries = Vec::new();
    for (file, label, curve) in &curves {
        output::write_curve_csv(&out.join(file), curve)?;
        files.push((file.clone(), label.clone()));
        entries.push(serde_json::json!({
            "file": file,
            "label": label,
            "unit": curve.unit().to_string(),
            "warnings": curve.metadata().warnings,
        }));
    }
    let manifest = serde_json::json!({
        "title": title,
        "curves": entries,
        "notes": notes,
    });
    output::write_json(&out.join("manifest.json"), &manifest)?;
    output::write_gnuplot(&out.join("plot.gp"), title, &files)?;
    Ok(())
}

/// One-photon, two-photon, and pair excitation near the focus, on the pump's
/// characteristic scale. `axial` selects the section.
fn focal_comparison(
    out: &Path,
    samples: usize,
    quad: &QuadratureSpec,
    axial: bool,
) -> Result<(), CliError> {
    let lens = LensSystem::new(0.2)?.with_aperture(0.05)?;
    let sc = scenario(2e-3, collinear()?, 0.2, Some(0.05), Configuration::Focal)?;

    let coords = scaled_coords(0.0, 0.0, PUMP_WAVELENGTH, &lens)?;
    let (pair, one, two) = if axial {
        let axis =
            AxisSpec::new(CoordinateUnit::CharacteristicZ, coords.z_char, -8.0, 8.0, samples)?;
        (
            sample_gb2_focal_axial(&sc, &axis, quad)?,
            classical_axial(PUMP_WAVELENGTH, &lens, &axis, quad, false)?,
            classical_axial(PAIR_WAVELENGTH, &lens, &axis, quad, true)?,
        )
    } else {
        let axis =
            AxisSpec::new(CoordinateUnit::CharacteristicX, coords.x_char, -2.0, 2.0, samples)?;
        (
            sample_gb2_focal_transverse(&sc, &axis, quad)?,
            classical_transverse(PUMP_WAVELENGTH, &lens, &axis, quad, false)?,
            classical_transverse(PAIR_WAVELENGTH, &lens, &axis, quad, true)?,
        )
    };

    let section = if axial { "axial" } else { "transverse" };
    write_set(
        out,
        &format!("focal {section} excitation, classical vs pair"),
        vec![
            (
                "curve_00_one_photon.csv".into(),
                "one-photon, 532 nm".into(),
                normalize_peak(&one)?,
            ),
            (
                "curve_01_two_photon.csv".into(),
                "two-photon, 1064 nm".into(),
                normalize_peak(&two)?,
            ),
            (
                "curve_02_pair.csv".into(),
                "photon pairs, 532 nm pump".into(),
                normalize_peak(&pair)?,
            ),
        ],
        &[
            "each curve is normalized to unit peak",
            "coordinates are in the 532 nm characteristic scale of an f/4 lens",
        ],
    )
}

/// Imaged axial curves for three crystal thicknesses, collinear cut.
fn thickness_family(out: &Path, samples: usize, quad: &QuadratureSpec) -> Result<(), CliError> {
    let cut = collinear()?;
    let mut curves = Vec::new();
    for (index, thickness) in [2e-3, 5e-3, 10e-3].into_iter().enumerate() {
        let sc = scenario(thickness, cut, 0.2, None, Configuration::ImagingIdeal)?;
        let axis = AxisSpec::axial_leq(&sc, -1.6, 0.6, samples)?;
        let curve = sample_gbi_ideal_axial(&sc, Some(&axis), quad)?;
        curves.push((
            format!("curve_{index:02}_thickness_{:.0}mm.csv", thickness * 1e3),
            format!("{:.0} mm crystal", thickness * 1e3),
            curve,
        ));
    }
    let global_max = curves
        .iter()
        .flat_map(|(_, _, c)| c.samples().iter().map(|&(_, v)| v))
        .fold(0.0_f64, f64::max);
    let curves = curves
        .into_iter()
        .map(|(f, l, c)| Ok((f, l, c.map_values(|v| v / global_max)?)))
        .collect::<Result<Vec<_>, biphoton::Error>>()?;
    write_set(
        out,
        "imaged axial pair excitation vs crystal thickness",
        curves,
        &[
            "curves share one normalization so relative heights are meaningful",
            "coordinates are depth in units of the equivalent crystal thickness",
        ],
    )
}

/// Imaged axial curves for a 2 mm crystal at several cut angles.
fn cut_angle_family(out: &Path, samples: usize, quad: &QuadratureSpec) -> Result<(), CliError> {
    let base = collinear()?;
    let mut curves = Vec::new();
    for (index, offset) in [0.0, 0.1, 0.25, 0.5, 1.0].into_iter().enumerate() {
        let sc = scenario(2e-3, base + offset * DEG, 0.2, None, Configuration::ImagingIdeal)?;
        // Auto-windowed: detuned curves shift, so each hunts its own peak.
        let coarse = sample_gbi_ideal_axial(&sc, None, quad)?;
        let peak = fwhm(&coarse)?.peak_location;
        let axis = AxisSpec::axial_leq(&sc, peak - 2.0, peak + 2.0, samples)?;
        let curve = sample_gbi_ideal_axial(&sc, Some(&axis), quad)?;
        curves.push((
            format!("curve_{index:02}_offset_{offset:.2}deg.csv"),
            format!("collinear {offset:+.2} deg"),
            curve,
        ));
    }
    let global_max = curves
        .iter()
        .flat_map(|(_, _, c)| c.samples().iter().map(|&(_, v)| v))
        .fold(0.0_f64, f64::max);
    let curves = curves
        .into_iter()
        .map(|(f, l, c)| Ok((f, l, c.map_values(|v| v / global_max)?)))
        .collect::<Result<Vec<_>, biphoton::Error>>()?;
    write_set(
        out,
        "imaged axial pair excitation vs cut angle, 2 mm crystal",
        curves,
        &[
            "curves share one normalization so relative heights are meaningful",
            "coordinates are depth in units of the equivalent crystal thickness",
        ],
    )
}

/// Peak height of the imaged axial curve against cut angle, per thickness.
fn peak_versus_angle(out: &Path, samples: usize, quad: &QuadratureSpec) -> Result<(), CliError> {
    let base = collinear()?;
    let angles: Vec<f64> = (0..40)
        .map(|i| base - 0.05 * DEG + i as f64 * (1.05 * DEG / 39.0))
        .collect();
    let mut files = Vec::new();
    let mut entries = Vec::new();
    for (index, thickness) in [2e-3, 5e-3, 10e-3].into_iter().enumerate() {
        let sc = scenario(thickness, base, 0.2, None, Configuration::ImagingIdeal)?;
        let sweep = sweep_cut_angle(&sc, &angles, samples, quad)?;
        let top = sweep
            .points
            .iter()
            .map(|p| p.metrics.peak_value)
            .fold(0.0_f64, f64::max);
        let rows: Vec<Vec<f64>> = sweep
            .points
            .iter()
            .map(|p| vec![p.parameter / DEG, p.metrics.peak_value / top])
            .collect();
        let file = format!("peaks_{index:02}_thickness_{:.0}mm.csv", thickness * 1e3);
        output::write_table(&out.join(&file), "cut_angle_deg,relative_peak", &rows)?;
        entries.push(serde_json::json!({
            "file": file,
            "label": format!("{:.0} mm crystal", thickness * 1e3),
            "optimum_cut_angle_deg": sweep.argmax_peak().map(|a| a / DEG),
        }));
        files.push((file, format!("{:.0} mm crystal", thickness * 1e3)));
    }
    let manifest = serde_json::json!({
        "title": "peak imaged excitation vs cut angle",
        "curves": entries,
        "notes": ["peaks are normalized per crystal to the tallest sampled angle"],
    });
    output::write_json(&out.join("manifest.json"), &manifest)?;
    output::write_gnuplot(&out.join("plot.gp"), "peak vs cut angle", &files)?;
    Ok(())
}

/// Imaged axial curves through pupils of decreasing size, against the
/// unapertured reference.
fn aperture_family(out: &Path, samples: usize, quad: &QuadratureSpec) -> Result<(), CliError> {
    let cut = collinear()?;
    let focal_length = 0.05;
    let ideal = scenario(2e-3, cut, focal_length, None, Configuration::ImagingIdeal)?;
    let cone = ideal.cone_angle()?;

    let axis = AxisSpec::axial_leq(&ideal, -2.5, 1.5, samples)?;
    let reference = sample_gbi_ideal_axial(&ideal, Some(&axis), quad)?;
    let reference_peak = fwhm(&reference)?.peak_value;

    let mut curves = vec![(
        "curve_00_no_aperture.csv".to_string(),
        "no aperture".to_string(),
        reference.map_values(|v| v / reference_peak)?,
    )];
    for (index, delta) in [0.1, 0.65, 1.0, 2.0, 4.0].into_iter().enumerate() {
        let sc = scenario(
            2e-3,
            cut,
            focal_length,
            Some(4.0 * focal_length * cone / delta),
            Configuration::ImagingAperture,
        )?;
        let curve = sample_gb2_aperture_axial(&sc, Some(&axis), quad)?;
        curves.push((
            format!("curve_{:02}_ratio_{delta:.2}.csv", index + 1),
            format!("cone/pupil ratio {delta:.2}"),
            curve.map_values(|v| v / reference_peak)?,
        ));
    }
    write_set(
        out,
        "imaged axial pair excitation vs pupil size, 2 mm crystal",
        curves,
        &[
            "all curves are normalized to the unapertured reference peak",
            "the pupil diameter is four focal lengths times the emission cone angle over the quoted ratio",
        ],
    )
}

/// Imaged axial curves for several collection bandwidths, unit peaks.
fn bandwidth_family(
    out: &Path,
    samples: usize,
    quad: &QuadratureSpec,
    thickness: f64,
    cut_deg: f64,
) -> Result<(), CliError> {
    let mut curves = Vec::new();
    for (index, bw) in [0.0, 0.02, 0.06, 0.12, 0.2].into_iter().enumerate() {
        let sc = scenario(
            thickness,
            cut_deg * DEG,
            0.2,
            None,
            Configuration::ImagingBandwidth,
        )?
        .with_bandwidth(bw)?;
        let axis = AxisSpec::axial_leq(&sc, -1.6, 0.6, samples)?;
        let curve = sample_gb2_bandwidth_axial(&sc, Some(&axis), quad)?;
        let delta_lambda_nm = bw * PAIR_WAVELENGTH * 1e9;
        curves.push((
            format!("curve_{index:02}_bw_{bw:.2}.csv"),
            format!("bandwidth {bw:.2} ({delta_lambda_nm:.0} nm)"),
            normalize_peak(&curve)?,
        ));
    }
    write_set(
        out,
        &format!(
            "imaged axial pair excitation vs collection bandwidth, {:.0} mm at {cut_deg:.2} deg",
            thickness * 1e3
        ),
        curves,
        &[
            "each curve is normalized to unit peak to expose the width change",
            "bandwidth is the fractional width of the collection band about the degenerate frequency",
        ],
    )
}

/// Peak height against collection bandwidth for the two stock crystals.
fn peak_versus_bandwidth(out: &Path, samples: usize, quad: &QuadratureSpec) -> Result<(), CliError> {
    let bandwidths: Vec<f64> = (1..=10).map(|i| 0.02 * i as f64).collect();
    let mut files = Vec::new();
    let mut entries = Vec::new();
    for (index, (thickness, cut_deg)) in [(2e-3, 22.95), (10e-3, 22.89)].into_iter().enumerate() {
        let sc = scenario(
            thickness,
            cut_deg * DEG,
            0.2,
            None,
            Configuration::ImagingBandwidth,
        )?;
        let sweep = sweep_bandwidth(&sc, &bandwidths, samples, quad)?;
        let first = sweep.points[0].metrics.peak_value;
        let rows: Vec<Vec<f64>> = sweep
            .points
            .iter()
            .map(|p| {
                vec![
                    p.parameter,
                    p.parameter * PAIR_WAVELENGTH * 1e9,
                    p.metrics.peak_value / first,
                ]
            })
            .collect();
        let file = format!("peaks_{index:02}_thickness_{:.0}mm.csv", thickness * 1e3);
        output::write_table(
            &out.join(&file),
            "bandwidth_fraction,bandwidth_nm,peak_relative_to_smallest_band",
            &rows,
        )?;
        entries.push(serde_json::json!({
            "file": file,
            "label": format!("{:.0} mm crystal at {cut_deg:.2} deg", thickness * 1e3),
        }));
        files.push((
            file,
            format!("{:.0} mm at {cut_deg:.2} deg", thickness * 1e3),
        ));
    }
    let manifest = serde_json::json!({
        "title": "peak imaged excitation vs collection bandwidth",
        "curves": entries,
        "notes": [
            "peaks are normalized per crystal to the smallest sampled band",
            "the zero-bandwidth limit carries different units and is omitted",
        ],
    });
    output::write_json(&out.join("manifest.json"), &manifest)?;
    output::write_gnuplot(&out.join("plot.gp"), "peak vs bandwidth", &files)?;
    Ok(())
}
