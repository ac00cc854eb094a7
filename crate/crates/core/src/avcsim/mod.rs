//! Monte-Carlo simulator for the two-user channel under adversarial jamming.
//!
//! Seeded Gaussian superposition codebooks, the power-fallback encoder, a
//! minimum-distance decoder restricted to a second-moment typical set, and a
//! trial harness with per-event error attribution. Trials are independent
//! given per-trial derived RNG streams, so the harness parallelizes with
//! schedule-independent results.

mod codebooks;
mod decoder;
mod jammer;
mod lemma1;
mod trials;

pub use codebooks::{build_codebooks, encode, Codebooks, MessageCounts};
pub use decoder::{decode, DecoderWorkspace};
pub use jammer::{jam, JammerStrategy};
pub use lemma1::{packing_spotcheck, PackingConfig, PackingJammer, PackingReport};
pub use trials::{
    run_trials, run_trials_collect, ErrorEvent, ReceiverStats, SimWorkspace, TrialOutcome,
    TrialStats,
};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ChannelConfig;
use crate::ratesplit::SplitRates;
use crate::regions::AlphaPair;

/// Hard cap on the number of candidate triples a decoder enumerates.
pub const MAX_DECODE_TRIPLES: u64 = 1 << 24;
/// Hard cap on stored codebook samples (f64 values) per simulation.
pub const MAX_STORED_SAMPLES: u64 = 1 << 26;

/// Default typicality slack relative to the checked variance scale. Short
/// blocklengths need a few times `1/sqrt(n)` instead; the field is explicit
/// in [`SimConfig`] for exactly that reason.
pub const DEFAULT_EPSILON: f64 = 0.05;

/// Everything a simulation run is derived from. Reruns with an identical
/// config produce identical trial streams.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub channel: ChannelConfig,
    /// Blocklength (samples per codeword).
    pub n: usize,
    pub rates: SplitRates,
    pub alpha: AlphaPair,
    /// Power backoff of the codebook variances, in (0, 1).
    pub gamma: f64,
    /// Typicality slack, relative to the variance scale of each check.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    pub trials: u64,
    pub seed: u64,
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

/// Codebook sizes derived from the rates: `2^(n R)` rounded, at least one
/// word per book.
impl SimConfig {
    pub fn message_counts(&self) -> MessageCounts {
        let m = |r: f64| (2f64.powf(self.n as f64 * r)).round().max(1.0) as usize;
        MessageCounts {
            common: [m(self.rates.r1c), m(self.rates.r2c)],
            private: [m(self.rates.r1p), m(self.rates.r2p)],
        }
    }

    /// Candidate triples enumerated by the given receiver's decoder,
    /// saturating at `u64::MAX` for absurd configurations.
    pub fn decode_triples(&self, receiver: usize) -> u64 {
        let c = self.message_counts();
        let own = receiver;
        let other = 1 - receiver;
        (c.common[own] as u64)
            .saturating_mul(c.private[own] as u64)
            .saturating_mul(c.common[other] as u64)
    }

    fn decode_triples_estimate(&self, receiver: usize) -> f64 {
        let r = &self.rates;
        let own_bits = match receiver {
            0 => self.n as f64 * (r.r1c + r.r1p + r.r2c),
            _ => self.n as f64 * (r.r2c + r.r2p + r.r1c),
        };
        own_bits
    }

    pub fn validate(&self) -> Result<()> {
        self.channel.validate()?;
        if self.n == 0 {
            return Err(Error::Config("blocklength must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("need at least one trial".into()));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::Config(format!(
                "power backoff must lie in (0,1), got {}",
                self.gamma
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "typicality slack must be positive, got {}",
                self.epsilon
            )));
        }
        let r = &self.rates;
        if [r.r1c, r.r1p, r.r2c, r.r2p].iter().any(|x| !(*x >= 0.0 && x.is_finite())) {
            return Err(Error::Config(format!("rates must be finite and nonnegative, got {r:?}")));
        }
        for receiver in 0..2 {
            let triples = self.decode_triples(receiver);
            if triples > MAX_DECODE_TRIPLES {
                return Err(Error::Config(format!(
                    "receiver {} would enumerate ~2^{:.1} candidate triples, over the \
                     desk-scale cap 2^24; lower n or the rates",
                    receiver + 1,
                    self.decode_triples_estimate(receiver)
                )));
            }
        }
        let c = self.message_counts();
        let stored: u64 = (0..2)
            .map(|u| {
                (c.common[u] as u64)
                    .saturating_add((c.common[u] as u64).saturating_mul(c.private[u] as u64))
                    .saturating_mul(self.n as u64)
            })
            .fold(0u64, u64::saturating_add);
        // Decoder Gram tables grow with the triple space of each receiver.
        let grams = self.decode_triples(0).saturating_add(self.decode_triples(1));
        if stored.saturating_add(grams) > MAX_STORED_SAMPLES {
            return Err(Error::Config(format!(
                "codebooks plus decoder tables need {} stored values, over the cap {}",
                stored.saturating_add(grams),
                MAX_STORED_SAMPLES
            )));
        }
        Ok(())
    }
}

// RNG stream layout: one substream per codebook, then a block of substreams
// per trial. All streams hang off the single run seed.
const STREAM_CODEBOOK_BASE: u64 = 0;
const STREAM_TRIAL_BASE: u64 = 16;
const STREAMS_PER_TRIAL: u64 = 8;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn codebook_stream(seed: u64, book: u64) -> ChaCha8Rng {
    stream_rng(seed, STREAM_CODEBOOK_BASE + book)
}

pub(crate) fn trial_stream(seed: u64, trial: u64, lane: u64) -> ChaCha8Rng {
    debug_assert!(lane < STREAMS_PER_TRIAL);
    stream_rng(seed, STREAM_TRIAL_BASE + trial * STREAMS_PER_TRIAL + lane)
}
