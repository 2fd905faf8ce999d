//! Run configuration: a flat `key = value` file overlaid by command-line
//! flags.

use std::path::PathBuf;
use std::str::FromStr;

use dressed_core::{DressedAtomParams, ModeIndex, SuperpositionSpec};

use crate::UsageError;

/// Mode count used when none is configured.
pub const DEFAULT_N_MODES: usize = 200;

/// Which model produces `f_00(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Exact discrete sum over the cavity's normal modes.
    Cavity,
    /// Leading-order small-cavity series.
    SmallCavity,
    /// Closed form of the infinite cavity.
    FreeSpace,
}

impl FromStr for Regime {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        match s {
            "cavity" => Ok(Regime::Cavity),
            "small-cavity" => Ok(Regime::SmallCavity),
            "free-space" => Ok(Regime::FreeSpace),
            other => Err(UsageError(format!(
                "unknown regime '{other}' (expected cavity, small-cavity or free-space)"
            ))),
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Cavity => "cavity",
            Regime::SmallCavity => "small-cavity",
            Regime::FreeSpace => "free-space",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub omega_bar: f64,
    pub g: f64,
    pub delta: f64,
    pub c: f64,
    pub n_modes: Option<usize>,
    pub xi: f64,
    pub phi: f64,
    pub regime: Regime,
    pub t_max: f64,
    pub steps: usize,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub k_min: usize,
    pub k_max: usize,
    pub mu: ModeIndex,
    pub nu: ModeIndex,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            omega_bar: 1.0,
            g: 0.5,
            delta: 0.1,
            c: 1.0,
            n_modes: None,
            xi: 0.5,
            phi: 0.0,
            regime: Regime::Cavity,
            t_max: 25.0,
            steps: 501,
            out: None,
            svg: None,
            k_min: 0,
            k_max: 5,
            mu: ModeIndex::Atom,
            nu: ModeIndex::Atom,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, UsageError> {
    value
        .parse()
        .map_err(|_| UsageError(format!("invalid value '{value}' for '{key}'")))
}

impl RunConfig {
    /// Sets one entry; `-` and `_` are interchangeable in keys.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), UsageError> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "omega_bar" => self.omega_bar = parse(&key, value)?,
            "g" => self.g = parse(&key, value)?,
            "delta" => self.delta = parse(&key, value)?,
            "c" => self.c = parse(&key, value)?,
            "n_modes" => self.n_modes = Some(parse(&key, value)?),
            "xi" => self.xi = parse(&key, value)?,
            "phi" => self.phi = parse(&key, value)?,
            "regime" => self.regime = value.parse()?,
            "t_max" => self.t_max = parse(&key, value)?,
            "steps" => self.steps = parse(&key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "svg" => self.svg = Some(PathBuf::from(value)),
            "k_min" => self.k_min = parse(&key, value)?,
            "k_max" => self.k_max = parse(&key, value)?,
            "mu" => self.mu = parse(&key, value)?,
            "nu" => self.nu = parse(&key, value)?,
            _ => return Err(UsageError(format!("unknown configuration key '{key}'"))),
        }
        Ok(())
    }

    /// Applies a config file body. Blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, text: &str) -> Result<(), UsageError> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| UsageError(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes.unwrap_or(DEFAULT_N_MODES)
    }

    pub fn params(&self) -> Result<DressedAtomParams, UsageError> {
        DressedAtomParams::from_delta(self.omega_bar, self.g, self.delta, self.c, self.n_modes())
            .map_err(|e| UsageError(e.to_string()))
    }

    pub fn superposition(&self) -> Result<SuperpositionSpec, UsageError> {
        SuperpositionSpec::new(self.xi, self.phi).map_err(|e| UsageError(e.to_string()))
    }

    /// Evenly spaced `t` in `[0, t_max]`.
    pub fn times(&self) -> Result<Vec<f64>, UsageError> {
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(UsageError(format!(
                "t_max must be finite and >= 0, got {}",
                self.t_max
            )));
        }
        match self.steps {
            0 => Err(UsageError("steps must be at least 1".into())),
            1 => Ok(vec![0.0]),
            n => Ok((0..n)
                .map(|i| self.t_max * i as f64 / (n - 1) as f64)
                .collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_overrides() {
        let mut cfg = RunConfig::default();
        cfg.apply_file("# fig 2\ndelta = 0.05\nomega-bar=2\n\nregime = free-space # inline\n")
            .unwrap();
        cfg.set("delta", "0.2").unwrap();
        assert_eq!(cfg.delta, 0.2);
        assert_eq!(cfg.omega_bar, 2.0);
        assert_eq!(cfg.regime, Regime::FreeSpace);
    }

    #[test]
    fn rejects_garbage() {
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_file("delta 0.1").is_err());
        assert!(cfg.set("colour", "red").is_err());
        assert!(cfg.set("steps", "-3").is_err());
        assert!(cfg.set("regime", "vacuum").is_err());
    }

    #[test]
    fn time_grid() {
        let cfg = RunConfig {
            t_max: 2.0,
            steps: 5,
            ..RunConfig::default()
        };
        assert_eq!(cfg.times().unwrap(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        let single = RunConfig {
            steps: 1,
            ..RunConfig::default()
        };
        assert_eq!(single.times().unwrap(), vec![0.0]);
    }
}
