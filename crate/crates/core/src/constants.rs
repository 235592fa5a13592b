//! Physical constants used when converting between SI quantities and the
//! lattice-scaled dimensionless variables.
//!
//! Defaults are CODATA 2018. A TOML or JSON file may override any subset of
//! the keys `hbar_js`, `electron_mass_kg` and `ev_joule`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Constants {
    /// Reduced Planck constant in J·s.
    pub hbar_js: f64,
    /// Electron rest mass in kg.
    pub electron_mass_kg: f64,
    /// One electronvolt in joules.
    pub ev_joule: f64,
}

impl Constants {
    pub const CODATA_2018: Constants = Constants {
        hbar_js: 1.054_571_817e-34,
        electron_mass_kg: 9.109_383_701_5e-31,
        ev_joule: 1.602_176_634e-19,
    };

    /// Loads overrides from a `.toml` or `.json` file. Missing keys keep
    /// their CODATA 2018 values.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let is_json = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let constants = if is_json {
            Self::from_json_str(&text)?
        } else {
            Self::from_toml_str(&text)?
        };
        Ok(constants)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let c: Constants = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validated()
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let c: Constants = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validated()
    }

    fn validated(self) -> Result<Self> {
        for (key, v) in [
            ("hbar_js", self.hbar_js),
            ("electron_mass_kg", self.electron_mass_kg),
            ("ev_joule", self.ev_joule),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{key} must be positive and finite, got {v}")));
            }
        }
        Ok(self)
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}
