use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sdea_core::model::{SystemParams, VirtualCoupler};
use serde::Deserialize;

/// Parameter file, keyed by the bench names. J is the actuator inertia.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(rename = "Kf")]
    pub k_f: f64,
    #[serde(rename = "Bf")]
    pub b_f: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "Pm")]
    pub p_m: f64,
    #[serde(rename = "Im")]
    pub i_m: f64,
    #[serde(rename = "Pf")]
    pub p_f: f64,
    #[serde(rename = "If")]
    pub i_f: f64,
    pub alpha: f64,
    #[serde(default)]
    pub k22: Option<f64>,
    #[serde(default)]
    pub b22: Option<f64>,
}

#[derive(Debug)]
pub enum ConfigError {
    Read { path: PathBuf, source: io::Error },
    Parse(serde_json::Error),
    Invalid(sdea_core::Error),
    MissingCoupler,
    UnknownParameter(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Read { path, source } => write!(f, "cannot read {}: {source}", path.display()),
            ConfigError::Parse(e) => write!(f, "bad config: {e}"),
            ConfigError::Invalid(e) => write!(f, "bad config: {e}"),
            ConfigError::MissingCoupler => write!(f, "config needs k22 and b22 for this command"),
            ConfigError::UnknownParameter(name) => write!(f, "unknown parameter {name:?}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let c: Config = serde_json::from_str(text).map_err(ConfigError::Parse)?;
        c.params()?;
        Ok(c)
    }

    pub fn params(&self) -> Result<SystemParams, ConfigError> {
        let p = SystemParams {
            k_f: self.k_f,
            b_f: self.b_f,
            m: self.j,
            b: self.b,
            p_m: self.p_m,
            i_m: self.i_m,
            p_f: self.p_f,
            i_f: self.i_f,
            alpha: self.alpha,
        };
        p.validate().map_err(ConfigError::Invalid)?;
        Ok(p)
    }

    pub fn coupler(&self) -> Result<VirtualCoupler, ConfigError> {
        match (self.k22, self.b22) {
            (Some(k), Some(b)) => {
                let vc = VirtualCoupler::new(k, b);
                vc.validate().map_err(ConfigError::Invalid)?;
                Ok(vc)
            }
            _ => Err(ConfigError::MissingCoupler),
        }
    }

    /// Overwrites one field by its config key.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), ConfigError> {
        match name {
            "Kf" => self.k_f = value,
            "Bf" => self.b_f = value,
            "J" => self.j = value,
            "B" => self.b = value,
            "Pm" => self.p_m = value,
            "Im" => self.i_m = value,
            "Pf" => self.p_f = value,
            "If" => self.i_f = value,
            "alpha" => self.alpha = value,
            "k22" => self.k22 = Some(value),
            "b22" => self.b22 = Some(value),
            _ => return Err(ConfigError::UnknownParameter(name.to_string())),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NOMINAL: &str = include_str!("../configs/nominal.json");

    #[test]
    fn bundled_config_is_nominal() {
        let c = Config::parse(NOMINAL).unwrap();
        assert_eq!(c.params().unwrap(), SystemParams::nominal());
        assert_eq!(c.coupler().unwrap(), VirtualCoupler::new(408.0, 0.17));
    }

    #[test]
    fn strict_keys() {
        let extra = NOMINAL.replace("\"alpha\"", "\"M\": 1.0, \"alpha\"");
        assert!(matches!(Config::parse(&extra), Err(ConfigError::Parse(_))));
        let missing = NOMINAL.replace("\"Kf\": 362.0,", "");
        assert!(matches!(Config::parse(&missing), Err(ConfigError::Parse(_))));
        let bad = NOMINAL.replace("\"alpha\": 1.0", "\"alpha\": 1.5");
        assert!(matches!(Config::parse(&bad), Err(ConfigError::Invalid(_))));
    }
}
