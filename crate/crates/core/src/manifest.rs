//! Run manifest: everything needed to repeat a localization run.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::variants::PipelineConfig;

/// Wall time per phase, in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub index_ms: f64,
    pub query_ms: f64,
    pub sift_ms: f64,
    pub eval_ms: f64,
    pub total_ms: f64,
}

impl PhaseTimings {
    pub fn phase_sum_ms(&self) -> f64 {
        self.index_ms + self.query_ms + self.sift_ms + self.eval_ms
    }
}

pub fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: PipelineConfig,
    pub corpus_hash: String,
    pub index_file: PathBuf,
    pub bug_file: PathBuf,
    pub gold_file: Option<PathBuf>,
    pub stopword_file: Option<PathBuf>,
    pub keyword_file: Option<PathBuf>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub timings: PhaseTimings,
}

pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::parse(path, e.line(), e.to_string()))
    }
}
