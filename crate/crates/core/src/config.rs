//! Configuration files.
//!
//! A configuration is a flat set of keys named after the fields of
//! [`SystemParams`]. Powers (`sigma2`, `sigma_r2`, `p_dc`, `p_sw`, `q_tot`)
//! are given in dBm, `beta0` in dB, positions in meters. Every key is
//! optional and missing keys keep their default value. `x_ris` is a
//! shorthand that moves the RIS along the BS-user axis.
//!
//! Two encodings are accepted: flat `key = value` lines (TOML syntax) and
//! JSON objects.
//!
//! ```text
//! n_elements = 256
//! q_tot = 30        # dBm
//! ris_pos = [90, 0, 10]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{db_to_linear, dbm_to_watts, linear_to_db, watts_to_dbm, Point3, SystemParams};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n_elements: Option<u32>,
    pub sigma2: Option<f64>,
    pub sigma_r2: Option<f64>,
    pub p_dc: Option<f64>,
    pub p_sw: Option<f64>,
    pub q_tot: Option<f64>,
    pub beta0: Option<f64>,
    pub alpha_sr: Option<f64>,
    pub alpha_rd: Option<f64>,
    pub bs_pos: Option<Point3>,
    pub user_pos: Option<Point3>,
    pub ris_pos: Option<Point3>,
    pub x_ris: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigFormat {
    KeyValue,
    Json,
}

impl ConfigFormat {
    /// `.json` files are JSON; anything else is parsed as key/value.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => ConfigFormat::Json,
            _ => ConfigFormat::KeyValue,
        }
    }
}

impl ConfigFile {
    pub fn parse(text: &str, format: ConfigFormat) -> Result<Self> {
        match format {
            ConfigFormat::Json => {
                serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
            }
            ConfigFormat::KeyValue => {
                toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
            }
        }
    }

    /// Applies the file on top of `base`, converting dBm/dB to linear units,
    /// and validates the result.
    pub fn apply(&self, base: &SystemParams) -> Result<SystemParams> {
        let mut p = base.clone();
        if let Some(n) = self.n_elements {
            p.n_elements = n;
        }
        let dbm_fields: [(Option<f64>, &mut f64); 5] = [
            (self.sigma2, &mut p.sigma2),
            (self.sigma_r2, &mut p.sigma_r2),
            (self.p_dc, &mut p.p_dc),
            (self.p_sw, &mut p.p_sw),
            (self.q_tot, &mut p.q_tot),
        ];
        for (value, slot) in dbm_fields {
            if let Some(dbm) = value {
                *slot = dbm_to_watts(dbm);
            }
        }
        if let Some(db) = self.beta0 {
            p.beta0 = db_to_linear(db);
        }
        if let Some(a) = self.alpha_sr {
            p.alpha_sr = a;
        }
        if let Some(a) = self.alpha_rd {
            p.alpha_rd = a;
        }
        if let Some(v) = self.bs_pos {
            p.bs_pos = v;
        }
        if let Some(v) = self.user_pos {
            p.user_pos = v;
        }
        if let Some(v) = self.ris_pos {
            p.ris_pos = v;
        }
        if let Some(x) = self.x_ris {
            p.ris_pos[0] = x;
        }
        p.validate()?;
        Ok(p)
    }

    /// The full configuration describing `params`, in file units.
    pub fn from_params(params: &SystemParams) -> Result<Self> {
        Ok(ConfigFile {
            n_elements: Some(params.n_elements),
            sigma2: Some(watts_to_dbm(params.sigma2)?),
            sigma_r2: Some(watts_to_dbm(params.sigma_r2)?),
            p_dc: Some(watts_to_dbm(params.p_dc)?),
            p_sw: Some(watts_to_dbm(params.p_sw)?),
            q_tot: Some(watts_to_dbm(params.q_tot)?),
            beta0: Some(linear_to_db(params.beta0)?),
            alpha_sr: Some(params.alpha_sr),
            alpha_rd: Some(params.alpha_rd),
            bs_pos: Some(params.bs_pos),
            user_pos: Some(params.user_pos),
            ris_pos: Some(params.ris_pos),
            x_ris: None,
        })
    }
}

/// Reads a configuration file and applies it over the defaults.
pub fn load_params(path: &Path) -> Result<SystemParams> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    ConfigFile::parse(&text, ConfigFormat::from_path(path))?.apply(&SystemParams::default())
}
