//! Optional `key = value` file overriding the per-family `n_max` budgets:
//!
//! ```text
//! sl = 8
//! so = 6
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use gv_core::Family;

#[derive(Debug, Default)]
pub struct Config {
    n_max: BTreeMap<String, u32>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let n_max: BTreeMap<String, u32> = toml::from_str(text).map_err(|e| format!("config: {e}"))?;
        for k in n_max.keys() {
            if !matches!(k.as_str(), "sl" | "so" | "su" | "sp") {
                return Err(format!("config: unknown key {k:?}"));
            }
        }
        Ok(Config { n_max })
    }

    pub fn n_max(&self, family: Family) -> u32 {
        self.n_max.get(family.name()).copied().unwrap_or_else(|| family.n_max())
    }
}
