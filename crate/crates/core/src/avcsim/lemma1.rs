//! Empirical packing check for a single Gaussian codebook under jamming.
//!
//! Draws bins of `N = 2^(nR)` unit-variance codewords, plays a small menu of
//! adversarial blocks against a random codeword, and estimates the
//! probability that some other codeword of the same bin lands closer to the
//! received block than the transmitted one. The estimate should decay with
//! `n` for rates below `C(1/(Lambda + sigma2))` and stay bounded away from
//! zero well above it.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest bin size that is still materializable per trial.
pub const MAX_BIN_CODEWORDS: u64 = 1 << 21;
/// Cap on `N * n` so a single bin stays within a desk-scale allocation.
pub const MAX_BIN_SAMPLES: u64 = 1 << 24;

/// Adversarial menu used as a stand-in for the worst-case block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingJammer {
    /// Another codeword from the same bin, scaled to the jammer budget.
    ScaledCodeword,
    /// White noise at the jammer budget, projected onto the ball.
    GaussianNoise,
    /// The deterministic corner `(sqrt(n Lambda), 0, ..., 0)`.
    Boundary,
}

pub const PACKING_MENU: [PackingJammer; 3] =
    [PackingJammer::ScaledCodeword, PackingJammer::GaussianNoise, PackingJammer::Boundary];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PackingConfig {
    /// Codebook rate in bits per sample; the bin holds `2^(n rate)` words.
    pub rate: f64,
    pub lambda: f64,
    pub sigma2: f64,
    pub n: usize,
    /// Number of independent bins; must be at least `n^2`.
    pub bins: usize,
    pub trials: u64,
    /// Power-typicality slack on the codewords.
    pub epsilon: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PackingReport {
    pub n: usize,
    pub rate: f64,
    pub codewords_per_bin: u64,
    /// Confusion estimate per menu entry.
    pub per_jammer: Vec<(PackingJammer, f64)>,
    /// Worst menu entry; the headline estimate.
    pub p2_max: f64,
}

impl PackingConfig {
    pub fn codewords_per_bin(&self) -> u64 {
        2f64.powf(self.n as f64 * self.rate).round().max(1.0) as u64
    }

    fn bin_bits(&self) -> f64 {
        self.n as f64 * self.rate
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.trials == 0 {
            return Err(Error::Config("need a positive blocklength and trial count".into()));
        }
        if !(self.rate >= 0.0 && self.lambda >= 0.0 && self.sigma2 > 0.0 && self.epsilon > 0.0) {
            return Err(Error::Config(format!(
                "need rate >= 0, Lambda >= 0, sigma2 > 0, epsilon > 0; got \
                 rate={} Lambda={} sigma2={} epsilon={}",
                self.rate, self.lambda, self.sigma2, self.epsilon
            )));
        }
        if self.bins < self.n * self.n {
            return Err(Error::Config(format!(
                "bin count {} is below the required n^2 = {}",
                self.bins,
                self.n * self.n
            )));
        }
        let n_words = self.codewords_per_bin();
        if n_words > MAX_BIN_CODEWORDS || n_words.saturating_mul(self.n as u64) > MAX_BIN_SAMPLES
        {
            return Err(Error::Config(format!(
                "a bin would hold 2^{:.1} codewords of length {} (n={} rate={:.4}), past the \
                 desk-scale caps {MAX_BIN_CODEWORDS} words / {MAX_BIN_SAMPLES} samples",
                self.bin_bits(),
                self.n,
                self.n,
                self.rate
            )));
        }
        Ok(())
    }
}

fn unit_words(rng: &mut impl Rng, count: u64, n: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
        .collect()
}

fn power_typical(word: &[f64], epsilon: f64) -> bool {
    let p: f64 = word.iter().map(|v| v * v).sum::<f64>() / word.len() as f64;
    (p - 1.0).abs() <= epsilon
}

/// Estimate the confusion probability for each menu entry.
pub fn packing_spotcheck(cfg: &PackingConfig) -> Result<PackingReport> {
    cfg.validate()?;
    let n_words = cfg.codewords_per_bin();
    let nf = cfg.n as f64;
    let budget = nf * cfg.lambda;

    let mut per_jammer = Vec::new();
    for (menu_idx, jammer) in PACKING_MENU.iter().enumerate() {
        let hits: u64 = crate::exec::map_indexed(cfg.trials as usize, |trial| {
            let mut rng =
                super::stream_rng(cfg.seed, 1_000 + (menu_idx as u64) * cfg.trials + trial as u64);
            let bin = rng.random_range(0..cfg.bins) as u64;
            let i = rng.random_range(0..n_words) as usize;
            let jw = rng.random_range(0..n_words) as usize;

            // The bin is a pure function of (seed, bin index).
            let mut bin_rng = super::stream_rng(cfg.seed, 2_000_000 + bin);
            let words = unit_words(&mut bin_rng, n_words, cfg.n);

            let w: Vec<f64> = match jammer {
                PackingJammer::ScaledCodeword => {
                    let s = cfg.lambda.sqrt();
                    words[jw].iter().map(|v| s * v).collect()
                }
                PackingJammer::GaussianNoise => {
                    let s = cfg.lambda.sqrt();
                    (0..cfg.n).map(|_| s * rng.sample::<f64, _>(StandardNormal)).collect()
                }
                PackingJammer::Boundary => {
                    let mut w = vec![0.0; cfg.n];
                    w[0] = budget.sqrt();
                    w
                }
            };
            let e: f64 = w.iter().map(|v| v * v).sum();
            let w: Vec<f64> = if e > budget && e > 0.0 {
                let s = (budget / e).sqrt();
                w.iter().map(|v| s * v).collect()
            } else {
                w
            };

            let noise_std = cfg.sigma2.sqrt();
            let z: Vec<f64> = (0..cfg.n)
                .map(|t| w[t] + noise_std * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let z_norm2: f64 = z.iter().map(|v| v * v).sum();

            if !power_typical(&words[i], cfg.epsilon) {
                return 0u64;
            }
            let xi = &words[i];
            let confused = words.iter().enumerate().any(|(j, xj)| {
                if j == i || !power_typical(xj, cfg.epsilon) {
                    return false;
                }
                // || x_i + z - x_j ||^2 <= || z ||^2
                let d: f64 = (0..cfg.n)
                    .map(|t| {
                        let u = xi[t] + z[t] - xj[t];
                        u * u
                    })
                    .sum();
                d <= z_norm2
            });
            confused as u64
        })
        .into_iter()
        .sum();
        per_jammer.push((*jammer, hits as f64 / cfg.trials as f64));
    }

    let p2_max = per_jammer.iter().map(|(_, p)| *p).fold(0.0, f64::max);
    Ok(PackingReport { n: cfg.n, rate: cfg.rate, codewords_per_bin: n_words, per_jammer, p2_max })
}
