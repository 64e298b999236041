//! Run configuration shared by the CLI and the verification suites.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub nu: usize,
    pub k: i64,
    /// Bound on `|index|` for coefficient windows.
    pub mode_window: i64,
    /// Bound on `|m|, |n|, |k|` in component Jacobi identities.
    pub jacobi_window: i64,
    /// Number of random probes drawn per randomized check family.
    pub probe_count: usize,
    /// Fock-degree bound for probe states and vacuum slices.
    pub max_degree: u32,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { nu: 2, k: 1, mode_window: 3, jacobi_window: 3, probe_count: 50, max_degree: 4, seed: 7 }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| Error::schema("config", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        LatticeConfig::new(self.nu, self.k)?;
        if self.mode_window < 0 {
            return Err(Error::schema("mode_window", "must be nonnegative"));
        }
        if self.jacobi_window < 0 {
            return Err(Error::schema("jacobi_window", "must be nonnegative"));
        }
        if self.probe_count == 0 {
            return Err(Error::schema("probe_count", "must be positive"));
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<LatticeConfig> {
        LatticeConfig::new(self.nu, self.k)
    }
}
