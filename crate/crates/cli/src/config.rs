//! Effective run configuration: config-file values overlaid by flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

/// Environment variable naming a config file; `--config` takes precedence.
pub const CONFIG_ENV: &str = "LAGRANGE_CONFIG";

pub const KEYS: &[&str] = &[
    "m1", "m2", "eps", "c", "component", "samples", "grid", "format", "out", "workers", "kappa", "axis",
    "periods", "integrator", "mask",
];

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub settings: BTreeMap<String, String>,
    pub tol: BTreeMap<String, f64>,
}

fn scalar(key: &str, v: &toml::Value) -> Result<String, CliError> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Ok(format!("{f:?}")),
        toml::Value::Boolean(b) => Ok(b.to_string()),
        _ => Err(CliError::Usage(format!("config key '{key}' must be a scalar"))),
    }
}

impl RunConfig {
    fn absorb(&mut self, table: &toml::Table, skip_sections: bool) -> Result<(), CliError> {
        for (k, v) in table {
            if k == "tol" {
                let t = v
                    .as_table()
                    .ok_or_else(|| CliError::Usage("config 'tol' must be a table".into()))?;
                for (name, val) in t {
                    let x = val
                        .as_float()
                        .or_else(|| val.as_integer().map(|i| i as f64))
                        .ok_or_else(|| CliError::Usage(format!("tolerance '{name}' must be a number")))?;
                    self.tol.insert(name.clone(), x);
                }
            } else if v.is_table() {
                if !skip_sections {
                    return Err(CliError::Usage(format!("nested section '{k}' in config")));
                }
            } else if KEYS.contains(&k.as_str()) {
                self.settings.insert(k.clone(), scalar(k, v)?);
            } else {
                return Err(CliError::Usage(format!("unknown config key '{k}'")));
            }
        }
        Ok(())
    }

    /// Top-level keys first, then the section named after the command.
    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let table: toml::Table = text
            .parse()
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?;
        self.absorb(&table, true)?;
        if let Some(section) = table.get(&self.command) {
            let t = section
                .as_table()
                .ok_or_else(|| CliError::Usage(format!("config '{}' must be a section", self.command)))?;
            self.absorb(t, false)?;
        }
        Ok(())
    }

    pub fn config_path(flag: Option<&PathBuf>) -> Option<PathBuf> {
        flag.cloned()
            .or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
    }

    pub fn set(&mut self, key: &str, value: Option<String>) {
        if let Some(v) = value {
            self.settings.insert(key.to_string(), v);
        }
    }

    pub fn set_tol(&mut self, arg: &str) -> Result<(), CliError> {
        let (name, val) = arg
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--tol expects NAME=VALUE, got '{arg}'")))?;
        let x: f64 = val
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("tolerance '{name}' is not a number")))?;
        self.tol.insert(name.trim().to_string(), x);
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.settings.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::Usage(format!("'{}' needs --{key}", self.command)))
    }

    pub fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("invalid value '{s}' for {key}")))
            })
            .transpose()
    }

    pub fn parse_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.parse(key)?.unwrap_or(default))
    }

    pub fn parse_required<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.require(key)?;
        Ok(self.parse(key)?.expect("present"))
    }

    /// Rejects tolerance names the command does not use.
    pub fn check_tol(&self, allowed: &[&str]) -> Result<(), CliError> {
        match self.tol.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Usage(format!("unknown tolerance '{k}' for {}", self.command))),
            None => Ok(()),
        }
    }

    /// One-line `key=value` rendering for diagnostics.
    pub fn echo(&self) -> String {
        let mut parts = vec![format!("command={}", self.command)];
        parts.extend(self.settings.iter().map(|(k, v)| format!("{k}={v}")));
        parts.extend(self.tol.iter().map(|(k, v)| format!("tol.{k}={v:?}")));
        parts.join(" ")
    }
}
