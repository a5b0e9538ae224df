use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Qfi,
    Ramsey,
    Bounds,
    Estimate,
    #[serde(alias = "faq-catalog")]
    FaqCatalog,
}

impl Scenario {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Qfi => "qfi",
            Self::Ramsey => "ramsey",
            Self::Bounds => "bounds",
            Self::Estimate => "estimate",
            Self::FaqCatalog => "faq_catalog",
        }
    }
}

/// The on-disk config file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Option<Scenario>,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    pub output_path: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read config '{}': {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Validation {
            parameter: None,
            message: format!("malformed config: {e}"),
            location: Some((e.line(), e.column())),
        })
    }
}

/// Merged scenario parameters with typed, validating accessors.
#[derive(Clone, Debug, Default)]
pub struct Params {
    map: Map<String, Value>,
}

impl Params {
    /// File parameters overlaid by command-line ones.
    pub fn merged(file: Map<String, Value>, flags: Map<String, Value>) -> Self {
        let mut map = file;
        map.extend(flags);
        Self { map }
    }

    pub fn reject_unknown(&self, scenario: Scenario, allowed: &[&str]) -> CliResult<()> {
        match self.map.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::param(k, format!("unknown parameter for scenario {}", scenario.as_str()))),
            None => Ok(()),
        }
    }

    pub fn contains(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    pub fn raw_keys(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn raw(&self, key: &str) -> Option<&Value> {
        self.map.get(key)
    }

    pub fn f64_opt(&self, key: &str) -> CliResult<Option<f64>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => match v.as_f64() {
                Some(x) if x.is_finite() => Ok(Some(x)),
                _ => Err(CliError::param(key, format!("expected a finite number, got {v}"))),
            },
        }
    }

    pub fn f64_req(&self, key: &str) -> CliResult<f64> {
        self.f64_opt(key)?.ok_or_else(|| CliError::param(key, "required parameter is missing"))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> CliResult<f64> {
        Ok(self.f64_opt(key)?.unwrap_or(default))
    }

    pub fn u64_opt(&self, key: &str) -> CliResult<Option<u64>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .ok_or_else(|| CliError::param(key, format!("expected a non-negative integer, got {v}"))),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> CliResult<usize> {
        match self.u64_opt(key)? {
            None => Ok(default),
            Some(v) => usize::try_from(v).map_err(|_| CliError::param(key, "value too large")),
        }
    }

    pub fn usize_opt(&self, key: &str) -> CliResult<Option<usize>> {
        if self.contains(key) {
            self.usize_or(key, 0).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn str_opt(&self, key: &str) -> CliResult<Option<&str>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(v) => Err(CliError::param(key, format!("expected a string, got {v}"))),
        }
    }

    /// One of `options`; `default` when absent, required when `default` is `None`.
    pub fn choice<'a>(&self, key: &str, options: &[&'a str], default: Option<&'a str>) -> CliResult<&'a str> {
        let got = match (self.str_opt(key)?, default) {
            (Some(s), _) => s,
            (None, Some(d)) => return Ok(d),
            (None, None) => return Err(CliError::param(key, "required parameter is missing")),
        };
        options
            .iter()
            .find(|o| **o == got)
            .copied()
            .ok_or_else(|| CliError::param(key, format!("'{got}' is not one of {}", options.join(", "))))
    }
}

/// Range checks shared by the scenarios.
pub fn check(key: &str, value: f64, ok: bool, expect: &str) -> CliResult<f64> {
    if ok {
        Ok(value)
    } else {
        Err(CliError::param(key, format!("must be {expect}, got {value}")))
    }
}
