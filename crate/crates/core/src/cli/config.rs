//! Flat `key = value` run configuration layered under command-line overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fock::{FockConfig, DEFAULT_TAIL_TOL};
use crate::model::{Interaction, InteractionKind, OscillatorSystem, ThermalPreparation};

/// Every key a config file may set. CLI flags use the same names with a `--` prefix.
pub const KEYS: [&str; 15] = [
    "omega",
    "g",
    "kind",
    "mass",
    "q",
    "beta-a",
    "beta-b",
    "temp-a",
    "temp-b",
    "t-max",
    "samples",
    "tau-threshold",
    "fock-n",
    "tail-tol",
    "out",
];

/// One layer of raw settings (a config file or the command line).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Layer(BTreeMap<String, String>);

impl Layer {
    pub fn new() -> Self {
        Layer::default()
    }

    /// Sets `key` after normalizing `_` to `-`; unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        let key = key.trim().to_ascii_lowercase().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::Domain(format!("unknown configuration key `{key}`")));
        }
        self.0.insert(key, value.into().trim().to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// Parses `key = value` lines. `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut layer = Layer::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Domain(format!("line {}: expected `key = value`, got `{line}`", lineno + 1))
            })?;
            let key_norm = key.trim().to_ascii_lowercase().replace('_', "-");
            if layer.0.contains_key(&key_norm) {
                return Err(Error::Domain(format!("line {}: duplicate key `{key_norm}`", lineno + 1)));
            }
            layer
                .set(key, value)
                .map_err(|e| Error::Domain(format!("line {}: {e}", lineno + 1)))?;
        }
        layer.check_exclusive()?;
        Ok(layer)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read config {}: {e}", path.display())))?;
        Layer::parse(&text)
    }

    fn check_exclusive(&self) -> Result<()> {
        for side in ["a", "b"] {
            let (beta, temp) = (format!("beta-{side}"), format!("temp-{side}"));
            if self.0.contains_key(&beta) && self.0.contains_key(&temp) {
                return Err(Error::Domain(format!("`{beta}` and `{temp}` are mutually exclusive")));
            }
        }
        Ok(())
    }

    /// `self` overridden by `top`. A β or T set in `top` displaces its partner below.
    pub fn overlay(&self, top: &Layer) -> Result<Layer> {
        top.check_exclusive()?;
        let mut merged = self.clone();
        for side in ["a", "b"] {
            let (beta, temp) = (format!("beta-{side}"), format!("temp-{side}"));
            if top.0.contains_key(&beta) {
                merged.0.remove(&temp);
            }
            if top.0.contains_key(&temp) {
                merged.0.remove(&beta);
            }
        }
        merged.0.extend(top.0.iter().map(|(k, v)| (k.clone(), v.clone())));
        Ok(merged)
    }
}

/// Fully resolved settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub omega: f64,
    pub g: f64,
    pub kind: InteractionKind,
    pub mass: f64,
    pub q: f64,
    pub beta_a: f64,
    pub beta_b: f64,
    pub t_max: Option<f64>,
    pub samples: Option<usize>,
    pub tau_threshold: Option<f64>,
    pub fock_n: Option<usize>,
    pub tail_tol: f64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            omega: 1.0,
            g: 0.1,
            kind: InteractionKind::Rwa,
            mass: 1.0,
            q: 0.2,
            beta_a: 0.5,
            beta_b: 1.0,
            t_max: None,
            samples: None,
            tau_threshold: None,
            fock_n: None,
            tail_tol: DEFAULT_TAIL_TOL,
            out: None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Domain(format!("`{key}`: cannot parse `{value}`")))
}

fn positive(key: &str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain(format!("`{key}` must be positive and finite, got {value}")))
    }
}

impl RunConfig {
    pub fn from_layer(layer: &Layer) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let num = |key: &str| -> Result<Option<f64>> {
            layer.get(key).map(|v| parse_num::<f64>(key, v).and_then(|x| positive(key, x))).transpose()
        };
        let count = |key: &str| -> Result<Option<usize>> {
            layer.get(key).map(|v| parse_num::<usize>(key, v)).transpose()
        };
        if let Some(v) = num("omega")? {
            cfg.omega = v;
        }
        if let Some(v) = layer.get("g") {
            let g: f64 = parse_num("g", v)?;
            if !(g >= 0.0 && g.is_finite()) {
                return Err(Error::Domain(format!("`g` must be non-negative, got {g}")));
            }
            cfg.g = g;
        }
        if let Some(v) = layer.get("kind") {
            cfg.kind = v.parse()?;
        }
        if let Some(v) = num("mass")? {
            cfg.mass = v;
        }
        if let Some(v) = num("q")? {
            cfg.q = v;
        }
        match (num("beta-a")?, num("temp-a")?) {
            (Some(b), _) => cfg.beta_a = b,
            (None, Some(t)) => cfg.beta_a = 1.0 / t,
            (None, None) => {}
        }
        match (num("beta-b")?, num("temp-b")?) {
            (Some(b), _) => cfg.beta_b = b,
            (None, Some(t)) => cfg.beta_b = 1.0 / t,
            (None, None) => {}
        }
        cfg.t_max = num("t-max")?;
        cfg.samples = count("samples")?;
        if let Some(n) = cfg.samples {
            if n < 2 {
                return Err(Error::Domain(format!("`samples` must be at least 2, got {n}")));
            }
        }
        cfg.tau_threshold = num("tau-threshold")?;
        cfg.fock_n = count("fock-n")?;
        if let Some(v) = num("tail-tol")? {
            cfg.tail_tol = v;
        }
        cfg.out = layer.get("out").map(PathBuf::from);
        Ok(cfg)
    }

    pub fn interaction(&self) -> Interaction {
        match self.kind {
            InteractionKind::None => Interaction::None,
            InteractionKind::Rwa => Interaction::Rwa { g: self.g },
            InteractionKind::Linear => Interaction::Linear { g: self.g },
            InteractionKind::MinimalA => Interaction::MinimalA {
                mass: self.mass,
                q: self.q,
            },
            InteractionKind::MinimalB => Interaction::MinimalB {
                mass: self.mass,
                q: self.q,
            },
        }
    }

    pub fn system(&self) -> Result<OscillatorSystem> {
        OscillatorSystem::resonant(self.omega, self.interaction())
    }

    pub fn preparation(&self) -> Result<ThermalPreparation> {
        ThermalPreparation::new(self.beta_a, self.beta_b)
    }

    /// `fock-n` levels per mode when given, otherwise the smallest cutoff meeting `tail-tol`.
    pub fn fock_config(&self, sys: &OscillatorSystem, prep: &ThermalPreparation) -> Result<FockConfig> {
        let cfg = match self.fock_n {
            Some(n) => FockConfig::uniform(n, self.tail_tol)?,
            None => FockConfig::auto(sys, prep, self.tail_tol)?,
        };
        cfg.validate(sys, prep)?;
        Ok(cfg)
    }

    pub fn tau_threshold(&self) -> f64 {
        self.tau_threshold
            .unwrap_or(crate::diagnostics::DEFAULT_TAU_THRESHOLD / self.omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_normalizes_keys() {
        let layer = Layer::parse("# run\nomega = 2\nbeta_a=0.25 # hot\n\nkind = linear\n").unwrap();
        let cfg = RunConfig::from_layer(&layer).unwrap();
        assert_eq!(cfg.omega, 2.0);
        assert_eq!(cfg.beta_a, 0.25);
        assert_eq!(cfg.kind, InteractionKind::Linear);
        assert_eq!(cfg.tau_threshold(), 1.5);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(Layer::parse("omega 2").is_err());
        assert!(Layer::parse("colour = red").is_err());
        assert!(Layer::parse("g = 0.1\ng = 0.2").is_err());
        assert!(Layer::parse("beta-a = 1\ntemp-a = 2").is_err());
        assert!(RunConfig::from_layer(&Layer::parse("omega = -1").unwrap()).is_err());
        assert!(RunConfig::from_layer(&Layer::parse("samples = 1").unwrap()).is_err());
        assert!(RunConfig::from_layer(&Layer::parse("kind = quadratic").unwrap()).is_err());
    }

    #[test]
    fn temperatures_convert_and_overrides_displace_partners() {
        let file = Layer::parse("temp-a = 100\ntemp-b = 50\ng = 0.3").unwrap();
        let cfg = RunConfig::from_layer(&file).unwrap();
        assert_eq!((cfg.beta_a, cfg.beta_b), (0.01, 0.02));

        let mut cli = Layer::new();
        cli.set("beta-a", "0.7").unwrap();
        let merged = file.overlay(&cli).unwrap();
        assert_eq!(merged.get("temp-a"), None);
        let cfg = RunConfig::from_layer(&merged).unwrap();
        assert_eq!((cfg.beta_a, cfg.beta_b, cfg.g), (0.7, 0.02, 0.3));
    }
}
