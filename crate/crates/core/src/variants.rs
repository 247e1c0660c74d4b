//! Named pipeline configurations and config-file overrides.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::Bm25Params;
use crate::query::{BoostWeights, GrandMode};
use crate::sifter::SiftMode;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub boost_weights: BoostWeights,
    pub sift_mode: SiftMode,
    pub grand_mode: GrandMode,
    pub bm25: Bm25Params,
    pub truncate_fraction: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            boost_weights: BoostWeights::default(),
            sift_mode: SiftMode::Filter,
            grand_mode: GrandMode::Mean,
            bm25: Bm25Params::default(),
            truncate_fraction: None,
        }
    }
}

pub const PRESET_NAMES: [&str; 5] = [
    "boostnsift",
    "boostnsift10",
    "bns_qb",
    "bns_cs",
    "plain_bm25",
];

/// Resolves a preset:
///
/// | name           | weights | sift   | truncate |
/// |----------------|---------|--------|----------|
/// | `boostnsift`   | 3, 1, 2 | filter | -        |
/// | `boostnsift10` | 3, 1, 2 | filter | 10%      |
/// | `bns_qb`       | 3, 1, 2 | off    | -        |
/// | `bns_cs`       | 1, 1, 1 | filter | -        |
/// | `plain_bm25`   | 1, 1, 1 | off    | -        |
///
/// All use the mean grand query and `k = 1.2`, `b = 0.75`.
pub fn preset(name: &str) -> Result<PipelineConfig> {
    let base = PipelineConfig::default();
    let cfg = match name {
        "boostnsift" => base,
        "boostnsift10" => PipelineConfig {
            truncate_fraction: Some(0.10),
            ..base
        },
        "bns_qb" => PipelineConfig {
            sift_mode: SiftMode::Off,
            ..base
        },
        "bns_cs" => PipelineConfig {
            boost_weights: BoostWeights::uniform(),
            ..base
        },
        "plain_bm25" => PipelineConfig {
            boost_weights: BoostWeights::uniform(),
            sift_mode: SiftMode::Off,
            ..base
        },
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(cfg)
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.boost_weights.validate()?;
        self.bm25.validate()?;
        if let Some(f) = self.truncate_fraction {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::param(format!(
                    "top fraction must be in (0, 1], got {f}"
                )));
            }
        }
        Ok(())
    }

    /// Applies every field set in `o`, leaving the rest untouched.
    pub fn apply(&mut self, o: &ConfigOverrides) {
        if let Some(v) = o.alpha {
            self.boost_weights.alpha = v;
        }
        if let Some(v) = o.beta {
            self.boost_weights.beta = v;
        }
        if let Some(v) = o.gamma {
            self.boost_weights.gamma = v;
        }
        if let Some(v) = o.k {
            self.bm25.k = v;
        }
        if let Some(v) = o.b {
            self.bm25.b = v;
        }
        if let Some(v) = o.sift_mode {
            self.sift_mode = v;
        }
        if let Some(v) = o.grand_mode {
            self.grand_mode = v;
        }
        if let Some(v) = o.top_fraction {
            self.truncate_fraction = Some(v);
        }
    }
}

/// Optional field overrides, as read from a TOML config file or flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub preset: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub k: Option<f64>,
    pub b: Option<f64>,
    pub sift_mode: Option<SiftMode>,
    pub grand_mode: Option<GrandMode>,
    pub top_fraction: Option<f64>,
}

pub fn load_config_file(path: &Path) -> Result<ConfigOverrides> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    toml::from_str(&text).map_err(|e| Error::Config {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Preset, then config file, then flags; later layers win. The preset named
/// by the flags beats the one named in the file.
pub fn resolve_config(
    file: Option<&ConfigOverrides>,
    flags: &ConfigOverrides,
) -> Result<PipelineConfig> {
    let name = flags
        .preset
        .as_deref()
        .or(file.and_then(|f| f.preset.as_deref()))
        .unwrap_or("boostnsift");
    let mut cfg = preset(name)?;
    if let Some(f) = file {
        cfg.apply(f);
    }
    cfg.apply(flags);
    cfg.validate()?;
    Ok(cfg)
}
