//! Adversary strategies.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::codebooks::{encode, Codebooks};
use crate::error::{Error, Result};
use crate::params::ChannelConfig;

/// What a jammer transmits. Every emitted block respects the hard norm
/// constraint `||w||^2 <= n * Lambda`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JammerStrategy {
    /// White Gaussian noise at the given per-sample power, projected back
    /// onto the power ball when a realization exceeds it.
    GaussianNoise { power: f64 },
    /// Counterfeit a uniformly random codeword of the target user (1 or 2),
    /// scaled so it arrives with the legitimate user's channel gain.
    Symmetrize { target_user: u8 },
    /// Replay a fixed block.
    FixedVector { vector: Vec<f64> },
}

impl JammerStrategy {
    /// Validate against the channel this jammer acts on. `jammer_index` is
    /// 0-based; jammer `r` is heard by receiver `r` only.
    pub fn validate(&self, jammer_index: usize, cfg: &ChannelConfig, n: usize) -> Result<()> {
        match self {
            JammerStrategy::GaussianNoise { power } => {
                if !(*power >= 0.0 && power.is_finite()) || *power > cfg.lambda + 1e-12 {
                    return Err(Error::Strategy(format!(
                        "noise power {power} must lie in [0, Lambda={}]",
                        cfg.lambda
                    )));
                }
            }
            JammerStrategy::Symmetrize { target_user } => {
                if !matches!(target_user, 1 | 2) {
                    return Err(Error::Strategy(format!(
                        "symmetrize target must be user 1 or 2, got {target_user}"
                    )));
                }
                let g = if jammer_index == 0 { cfg.g1 } else { cfg.g2 };
                if g == 0.0 {
                    return Err(Error::Strategy(
                        "symmetrization needs a nonzero jammer gain".into(),
                    ));
                }
            }
            JammerStrategy::FixedVector { vector } => {
                if vector.len() != n {
                    return Err(Error::Strategy(format!(
                        "fixed vector has length {}, blocklength is {n}",
                        vector.len()
                    )));
                }
                let e: f64 = vector.iter().map(|v| v * v).sum();
                if e > n as f64 * cfg.lambda * (1.0 + 1e-9) {
                    return Err(Error::Strategy(format!(
                        "fixed vector energy {e} exceeds the budget {}",
                        n as f64 * cfg.lambda
                    )));
                }
            }
        }
        Ok(())
    }
}

fn project_to_budget(mut w: Vec<f64>, budget: f64) -> Vec<f64> {
    let e: f64 = w.iter().map(|v| v * v).sum();
    if e > budget && e > 0.0 {
        let s = (budget / e).sqrt();
        for v in &mut w {
            *v *= s;
        }
    }
    w
}

/// Emit one jamming block. The strategy must have been validated for this
/// `(jammer_index, cfg, n)` beforehand.
pub fn jam(
    strategy: &JammerStrategy,
    jammer_index: usize,
    cb: &Codebooks,
    cfg: &ChannelConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    strategy.validate(jammer_index, cfg, cb.n)?;
    let budget = cb.n as f64 * cfg.lambda;
    match strategy {
        JammerStrategy::GaussianNoise { power } => {
            let std = power.sqrt();
            let w: Vec<f64> =
                (0..cb.n).map(|_| std * rng.sample::<f64, _>(StandardNormal)).collect();
            Ok(project_to_budget(w, budget))
        }
        JammerStrategy::Symmetrize { target_user } => {
            let target = (*target_user - 1) as usize;
            let g = if jammer_index == 0 { cfg.g1 } else { cfg.g2 };
            // Gain from the target user to the receiver this jammer hits.
            let h = match (jammer_index, target) {
                (0, 0) => cfg.h11,
                (0, 1) => cfg.h12,
                (1, 0) => cfg.h21,
                _ => cfg.h22,
            };
            let m_c = rng.random_range(0..cb.counts.common[target]);
            let m_p = rng.random_range(0..cb.counts.private[target]);
            let p_limit = if target == 0 { cfg.p1 } else { cfg.p2 };
            let x = encode(cb, target, m_c, m_p, p_limit);
            let scale = h / g;
            let w: Vec<f64> = x.iter().map(|v| scale * v).collect();
            Ok(project_to_budget(w, budget))
        }
        JammerStrategy::FixedVector { vector } => Ok(vector.clone()),
    }
}
