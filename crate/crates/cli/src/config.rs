//! JSON config formats consumed by the subcommands.

use serde::Deserialize;

use gicjam_core::avcsim::{JammerStrategy, SimConfig};
use gicjam_core::params::ChannelConfig;
use gicjam_core::regions::AlphaPair;

/// `region` input: a physical channel plus an optional split to expand.
#[derive(Debug, Clone, Deserialize)]
pub struct RegionConfig {
    pub channel: ChannelConfig,
    /// Split used for the fixed-split region and the system dump.
    pub alpha: Option<AlphaPair>,
    /// Grid step of the feasible-split union.
    pub grid_step: Option<f64>,
}

/// Values held fixed during a sweep; which ones are required depends on the
/// swept variable.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
pub struct FixedParams {
    #[serde(rename = "S")]
    pub s: Option<f64>,
    #[serde(rename = "I")]
    pub i: Option<f64>,
    #[serde(rename = "J")]
    pub j: Option<f64>,
    pub beta: Option<f64>,
    pub delta: Option<f64>,
}

/// One-dimensional sweep over `S`, `I`, `J`, `beta` or `delta`.
#[derive(Debug, Clone, Deserialize)]
pub struct SweepSpec {
    pub variable: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    #[serde(default)]
    pub fixed: FixedParams,
    /// Alpha grid used by the achievable-side scans.
    pub alpha_step: Option<f64>,
    /// Top rung of the power ladder for degrees-of-freedom sweeps.
    pub s_max: Option<f64>,
    /// Default output path; the `--out` flag overrides it.
    pub output: Option<String>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(format!("sweep step must be positive, got {}", self.step));
        }
        if self.stop < self.start {
            return Err(format!(
                "sweep range is reversed: start {} stop {}",
                self.start, self.stop
            ));
        }
        Ok(())
    }

    /// Swept grid values, start to stop inclusive (within half a step).
    pub fn grid(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step).round() as usize;
        (0..=count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

/// `simulate` input: the full run description plus the two adversaries.
#[derive(Debug, Clone, Deserialize)]
pub struct SimulateConfig {
    #[serde(flatten)]
    pub sim: SimConfig,
    pub jammer1: JammerStrategy,
    pub jammer2: JammerStrategy,
    /// Optional JSON-lines trial log path.
    pub trial_log: Option<String>,
}
