//! Tunable constants for the decomposition pipelines.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable naming a default configuration file.
pub const CONFIG_ENV: &str = "CYCLEDECOMP_CONFIG";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// Constants of the pipelines. The asymptotic hierarchies of the underlying arguments have
/// no numeric values; these defaults are a desk-scale calibration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    /// Edge density left by greedy packing, as a fraction of `n²`.
    pub eta: f64,
    /// Path-load parameter: interiors avoid vertices used `√γ·n` times.
    pub gamma: f64,
    /// Granularity of the cover-down partition: `⌈1/ξ⌉` parts of the outside set.
    pub xi: f64,
    /// Vortex shrink factor.
    pub mu: f64,
    /// Expansion parameter.
    pub nu: f64,
    /// Closeness parameter for the extremal cases.
    pub epsilon: f64,
    /// Vortex terminal bound; defaults to 4 for `C_4` and `2k + 2` otherwise.
    pub m: Option<usize>,
    /// Extremality parameter used to decide the `C_4` case.
    pub m1: usize,
    /// Slack in the minimum degree of spanning subgraphs in the `C_4` case.
    pub m2: usize,
    /// Absorber universe bound for `C_4`; defaults to `m`.
    pub m3: Option<usize>,
    /// Parts of the degree-bounding partition; must be a power of `t`.
    pub s: usize,
    /// Block size of the clique design; must be prime.
    pub t: usize,
    /// Graphs with at most this many vertices go straight to the exact search.
    pub oracle_cutoff: usize,
    /// Node budget of the exact search.
    pub budget: u64,
    /// Vortex level whose inside edges are withheld from the `C_4` absorber.
    pub l0: Option<usize>,
    /// Retries for random partitions and vortex levels.
    pub retry_cap: usize,
    /// Nesting limit for pipelines that delegate dense pieces to the dispatcher.
    pub max_depth: usize,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            eta: 0.02,
            gamma: 0.01,
            xi: 0.25,
            mu: 0.25,
            nu: 0.05,
            epsilon: 0.01,
            m: None,
            m1: 2,
            m2: 2,
            m3: None,
            s: 9,
            t: 3,
            oracle_cutoff: 14,
            budget: 100_000_000,
            l0: None,
            retry_cap: 50,
            max_depth: 4,
            seed: 0,
        }
    }
}

impl EngineConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: EngineConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    /// Vortex terminal bound for cycle length `2k`.
    pub fn m_for(&self, k: usize) -> usize {
        self.m.unwrap_or(if k == 2 { 4 } else { 2 * k + 2 })
    }

    pub fn m3_for(&self, k: usize) -> usize {
        self.m3.unwrap_or_else(|| self.m_for(k))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let unit = [
            ("eta", self.eta),
            ("gamma", self.gamma),
            ("xi", self.xi),
            ("mu", self.mu),
            ("nu", self.nu),
            ("epsilon", self.epsilon),
        ];
        for (name, v) in unit {
            if !(v > 0.0 && v < 1.0) {
                return Err(ConfigError::Invalid(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        super::design::clique_design(self.s, self.t).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.retry_cap == 0 {
            return Err(ConfigError::Invalid("retry_cap must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_toml() {
        let cfg = EngineConfig::default();
        cfg.validate().unwrap();
        assert_eq!(EngineConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
        assert_eq!(cfg.m_for(2), 4);
        assert_eq!(cfg.m_for(4), 10);
    }

    #[test]
    fn partial_files_and_rejections() {
        let cfg = EngineConfig::from_toml("eta = 0.05\nseed = 7\n").unwrap();
        assert_eq!(cfg.eta, 0.05);
        assert_eq!(cfg.seed, 7);
        assert!(EngineConfig::from_toml("s = 8\nt = 3\n").is_err());
        assert!(EngineConfig::from_toml("bogus = 1\n").is_err());
        assert!(EngineConfig::from_toml("mu = 1.5\n").is_err());
    }
}
