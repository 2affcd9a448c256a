//! Run configuration: a flat `key = value` file overlaid by command-line flags.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub const DEFAULT_TAIL: f64 = 1e-12;
pub const DEFAULT_SEED: u64 = 0;

/// Parses a real number, also accepting multiples and fractions of `pi`:
/// `pi`, `-pi/2`, `3pi/4`, `3*pi/4`, `0.5*pi`.
pub fn parse_value(text: &str) -> CliResult<f64> {
    let bad = || CliError::Config(format!("cannot parse {text:?} as a number"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let value = if let Ok(x) = s.parse::<f64>() {
        x
    } else {
        let lower = s.to_ascii_lowercase();
        let (head, den) = match lower.split_once('/') {
            Some((h, d)) => (h.to_string(), d.parse::<f64>().map_err(|_| bad())?),
            None => (lower.clone(), 1.0),
        };
        let coef = head.strip_suffix("pi").ok_or_else(bad)?;
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let coef = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        coef * PI / den
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    MicroMacro,
    Cat,
    Kondo,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::MicroMacro, Scenario::Cat, Scenario::Kondo];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::MicroMacro => "micro_macro",
            Scenario::Cat => "cat",
            Scenario::Kondo => "kondo",
        }
    }

    /// Parameter names with their default values, as written in configs.
    pub fn defaults(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Scenario::MicroMacro => &[("lambda0", "0.75"), ("g1", "pi/2"), ("g2", "pi/2")],
            Scenario::Cat => &[
                ("n_minus", "2"),
                ("n_plus", "1"),
                ("xi", "pi/4"),
                ("psi", "0"),
                ("theta", "pi"),
            ],
            Scenario::Kondo => &[("theta", "0"), ("g1", "pi/2"), ("g4", "pi/2")],
        }
    }

    fn has_param(self, key: &str) -> bool {
        self.defaults().iter().any(|(k, _)| *k == key)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "unknown scenario {s:?} (expected micro_macro, cat or kondo)"
                ))
            })
    }
}

/// `key=start:stop:count`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRange {
    pub key: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub raw: String,
}

impl SweepRange {
    pub fn parse(raw: &str) -> CliResult<Self> {
        let bad = |why: &str| CliError::Config(format!("malformed sweep {raw:?}: {why}"));
        let (key, range) = raw
            .split_once('=')
            .ok_or_else(|| bad("expected key=start:stop:count"))?;
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:stop:count"));
        }
        let start = parse_value(parts[0]).map_err(|_| bad("start is not a number"))?;
        let stop = parse_value(parts[1]).map_err(|_| bad("stop is not a number"))?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| bad("count is not a positive integer"))?;
        if count == 0 {
            return Err(bad("count must be at least 1"));
        }
        Ok(Self {
            key: key.trim().to_string(),
            start,
            stop,
            count,
            raw: raw.trim().to_string(),
        })
    }

    pub fn points(&self) -> Vec<f64> {
        phasedeficit_core::oracle::linspace(self.start, self.stop, self.count)
    }
}

/// Reads a flat `key = value` file; blank lines and `#` comments are skipped.
pub fn read_config_file(path: &Path) -> CliResult<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut entries = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("config line {}: expected key = value", n + 1))
        })?;
        let k = k.trim();
        if k.is_empty() {
            return Err(CliError::Config(format!(
                "config line {}: empty key",
                n + 1
            )));
        }
        entries.push((k.to_string(), v.trim().to_string()));
    }
    Ok(entries)
}

pub fn parse_assignment(text: &str) -> CliResult<(String, String)> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("expected key=value, got {text:?}")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Settings layered from the config file and then the command line.
#[derive(Debug, Clone, Default)]
pub struct Layers {
    entries: BTreeMap<String, String>,
}

impl Layers {
    pub fn from_file(path: Option<&Path>) -> CliResult<Self> {
        let mut layers = Self::default();
        if let Some(path) = path {
            for (k, v) in read_config_file(path)? {
                layers.entries.insert(k, v);
            }
        }
        Ok(layers)
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.insert(key.into(), value.into());
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    fn take_common(&mut self) -> CliResult<(u64, f64, BTreeMap<String, String>)> {
        let mut resolved = BTreeMap::new();
        let seed_raw = self
            .take("seed")
            .unwrap_or_else(|| DEFAULT_SEED.to_string());
        let seed = seed_raw.parse::<u64>().map_err(|_| {
            CliError::Config(format!("seed {seed_raw:?} is not an unsigned integer"))
        })?;
        let tail_raw = self
            .take("tail")
            .unwrap_or_else(|| format!("{DEFAULT_TAIL:e}"));
        let tail = parse_value(&tail_raw)?;
        if !(tail > 0.0 && tail < 1.0) {
            return Err(CliError::Config(format!(
                "tail {tail_raw} must lie in (0, 1)"
            )));
        }
        resolved.insert("seed".to_string(), seed_raw);
        resolved.insert("tail".to_string(), tail_raw);
        Ok((seed, tail, resolved))
    }

    fn reject_leftovers(&self) -> CliResult<()> {
        match self.entries.keys().next() {
            Some(k) => Err(CliError::Config(format!("unknown config key {k:?}"))),
            None => Ok(()),
        }
    }

    /// Settings for commands that only take a seed and a truncation tail.
    pub fn into_common(mut self) -> CliResult<CommonConfig> {
        let (seed, tail, resolved) = self.take_common()?;
        self.reject_leftovers()?;
        Ok(CommonConfig {
            seed,
            tail,
            resolved,
        })
    }

    pub fn into_run(mut self) -> CliResult<RunConfig> {
        let (seed, tail, mut resolved) = self.take_common()?;
        let scenario: Scenario = self
            .take("scenario")
            .ok_or_else(|| CliError::Config("no scenario given".to_string()))?
            .parse()?;
        let sweep = self
            .take("sweep")
            .map(|s| SweepRange::parse(&s))
            .transpose()?;
        if let Some(sw) = &sweep {
            if !scenario.has_param(&sw.key) {
                return Err(CliError::Config(format!(
                    "malformed sweep {:?}: {} has no parameter {:?}",
                    sw.raw, scenario, sw.key
                )));
            }
        }

        let mut params = BTreeMap::new();
        for &(key, default) in scenario.defaults() {
            let raw = self.take(key).unwrap_or_else(|| default.to_string());
            params.insert(key.to_string(), parse_value(&raw)?);
            if sweep.as_ref().is_none_or(|sw| sw.key != key) {
                resolved.insert(key.to_string(), raw);
            }
        }
        self.reject_leftovers()?;

        resolved.insert("scenario".to_string(), scenario.name().to_string());
        if let Some(sw) = &sweep {
            resolved.insert("sweep".to_string(), sw.raw.clone());
        }
        Ok(RunConfig {
            scenario,
            params,
            sweep,
            common: CommonConfig {
                seed,
                tail,
                resolved,
            },
        })
    }
}

#[derive(Debug, Clone)]
pub struct CommonConfig {
    pub seed: u64,
    pub tail: f64,
    /// Every setting after defaults and overrides, as written.
    pub resolved: BTreeMap<String, String>,
}

impl CommonConfig {
    pub fn render(&self) -> String {
        self.resolved
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub params: BTreeMap<String, f64>,
    pub sweep: Option<SweepRange>,
    pub common: CommonConfig,
}
