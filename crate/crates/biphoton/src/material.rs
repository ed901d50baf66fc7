//! Dispersion data for uniaxial crystals.
//!
//! Each polarization carries one Sellmeier coefficient set,
//!
//! `n²(λ) = a + b/(λ² - c) - d·λ²`  (λ in micrometers),
//!
//! valid over a declared wavelength window. The extraordinary index at
//! propagation angle θ to the optic axis follows the index ellipsoid,
//!
//! `1/n_e²(θ) = cos²θ/n_o² + sin²θ/n_e²(π/2)`.
//!
//! Materials serialize to a small JSON document so alternative crystals can
//! be supplied without recompiling; deserialization re-validates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One-polarization Sellmeier coefficients, wavelength in micrometers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SellmeierCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SellmeierCoeffs {
    /// `n²` at a vacuum wavelength in micrometers.
    fn index_squared(&self, wavelength_um: f64) -> f64 {
        let l2 = wavelength_um * wavelength_um;
        self.a + self.b / (l2 - self.c) - self.d * l2
    }
}

/// A uniaxial crystal's dispersion data and validity window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MaterialData")]
pub struct Material {
    name: String,
    ordinary: SellmeierCoeffs,
    extraordinary: SellmeierCoeffs,
    /// Inclusive wavelength validity window, micrometers.
    window_um: (f64, f64),
}

/// Raw deserialization target; `TryFrom` re-runs the constructor checks.
#[derive(Deserialize)]
struct MaterialData {
    name: String,
    ordinary: SellmeierCoeffs,
    extraordinary: SellmeierCoeffs,
    window_um: (f64, f64),
}

impl TryFrom<MaterialData> for Material {
    type Error = Error;

    fn try_from(raw: MaterialData) -> Result<Self> {
        Material::new(raw.name, raw.ordinary, raw.extraordinary, raw.window_um)
    }
}

impl Material {
    /// Validates that the window is ordered and that both coefficient sets
    /// stay finite and physical (n > 1, no resonance pole) across it.
    pub fn new(
        name: String,
        ordinary: SellmeierCoeffs,
        extraordinary: SellmeierCoeffs,
        window_um: (f64, f64),
    ) -> Result<Self> {
        let (lo, hi) = window_um;
        if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi) {
            return Err(Error::InvalidInput(format!(
                "material window must satisfy 0 < lo < hi, got [{lo}, {hi}] um"
            )));
        }
        for set in [&ordinary, &extraordinary] {
            for k in 0..=32 {
                let l = lo + (hi - lo) * f64::from(k) / 32.0;
                if l * l <= set.c {
                    return Err(Error::InvalidInput(format!(
                        "Sellmeier resonance at {:.4} um inside window [{lo}, {hi}] um",
                        set.c.max(0.0).sqrt()
                    )));
                }
                let n2 = set.index_squared(l);
                if !n2.is_finite() || n2 <= 1.0 {
                    return Err(Error::InvalidInput(format!(
                        "Sellmeier set gives n² = {n2:.4} <= 1 at {l:.4} um"
                    )));
                }
            }
        }
        Ok(Self {
            name,
            ordinary,
            extraordinary,
            window_um,
        })
    }

    /// Beta barium borate, the default crystal.
    pub fn bbo() -> Self {
        Self::new(
            "BBO".to_owned(),
            SellmeierCoeffs {
                a: 2.7405,
                b: 0.0184,
                c: 0.0179,
                d: 0.0155,
            },
            SellmeierCoeffs {
                a: 2.3730,
                b: 0.0128,
                c: 0.0156,
                d: 0.0044,
            },
            (0.4, 2.0),
        )
        .expect("built-in BBO data is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Validity window in micrometers.
    pub fn window_um(&self) -> (f64, f64) {
        self.window_um
    }

    fn check_window(&self, wavelength: f64) -> Result<f64> {
        let um = wavelength * 1e6;
        let (lo, hi) = self.window_um;
        // Relative slack keeps wavelengths landing exactly on a window edge
        // inside it despite the unit-conversion rounding.
        let slack = 1e-9;
        if !(um.is_finite() && um >= lo * (1.0 - slack) && um <= hi * (1.0 + slack)) {
            return Err(Error::WavelengthOutOfWindow {
                material: self.name.clone(),
                wavelength_um: um,
                window_lo_um: lo,
                window_hi_um: hi,
            });
        }
        Ok(um)
    }

    /// Ordinary index at a vacuum wavelength in meters.
    pub fn index_ordinary(&self, wavelength: f64) -> Result<f64> {
        let um = self.check_window(wavelength)?;
        Ok(self.ordinary.index_squared(um).sqrt())
    }

    /// Extraordinary index at a vacuum wavelength in meters for propagation
    /// at angle `theta` (radians) to the optic axis.
    pub fn index_extraordinary(&self, wavelength: f64, theta: f64) -> Result<f64> {
        if !theta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "propagation angle must be finite, got {theta}"
            )));
        }
        let um = self.check_window(wavelength)?;
        let no2 = self.ordinary.index_squared(um);
        let ne2 = self.extraordinary.index_squared(um);
        let (sin, cos) = theta.sin_cos();
        Ok(1.0 / (cos * cos / no2 + sin * sin / ne2).sqrt())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("material serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("material JSON: {e}")))
    }
}
