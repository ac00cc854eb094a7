//! Trial harness: run seeded transmissions against the configured jammers
//! and attribute every decoding error to an event class.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::codebooks::{build_codebooks, encode, Codebooks};
use super::decoder::DecoderWorkspace;
use super::jammer::{jam, JammerStrategy};
use super::SimConfig;
use crate::error::Result;
use crate::exec;

/// Error classes at a receiver, attributed when its own message decodes
/// wrong (or not at all).
///
/// `E0`: the transmitted triple itself fell outside the typical set.
/// `E1`: wrong own private word only. `E2`: wrong own common word, the other
/// user's common word right. `E3`: wrong own private and other common.
/// `E4`: wrong own common and other common.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorEvent {
    E0,
    E1,
    E2,
    E3,
    E4,
}

/// Messages drawn for one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentMessages {
    pub m1c: u32,
    pub m1p: u32,
    pub m2c: u32,
    pub m2p: u32,
}

/// Outcome of one trial. Decoded triples are ordered
/// `[own common, own private, other common]` per receiver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub sent: SentMessages,
    pub decoded_1: Option<[u32; 3]>,
    pub decoded_2: Option<[u32; 3]>,
    pub events_1: Vec<ErrorEvent>,
    pub events_2: Vec<ErrorEvent>,
}

impl TrialOutcome {
    /// Whether receiver `r` (0-based) failed on its own message.
    pub fn is_error(&self, r: usize) -> bool {
        match r {
            0 => !self.events_1.is_empty(),
            _ => !self.events_2.is_empty(),
        }
    }
}

/// Per-receiver aggregate counters with a Wilson 95% interval on the error
/// rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReceiverStats {
    pub errors: u64,
    pub error_rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    /// Occurrences of E0..E4, in order.
    pub event_counts: [u64; 5],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trials: u64,
    pub receivers: [ReceiverStats; 2],
}

fn wilson95(errors: u64, trials: u64) -> (f64, f64) {
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn aggregate(outcomes: &[TrialOutcome]) -> TrialStats {
    let trials = outcomes.len() as u64;
    let mut receivers = [ReceiverStats {
        errors: 0,
        error_rate: 0.0,
        wilson_low: 0.0,
        wilson_high: 0.0,
        event_counts: [0; 5],
    }; 2];
    for o in outcomes {
        for (r, events) in [(0usize, &o.events_1), (1usize, &o.events_2)] {
            if !events.is_empty() {
                receivers[r].errors += 1;
            }
            for e in events {
                receivers[r].event_counts[*e as usize] += 1;
            }
        }
    }
    for r in &mut receivers {
        r.error_rate = r.errors as f64 / trials as f64;
        let (lo, hi) = wilson95(r.errors, trials);
        r.wilson_low = lo;
        r.wilson_high = hi;
    }
    TrialStats { trials, receivers }
}

fn classify(decoded: Option<[u32; 3]>, sent: [u32; 3], sent_typical: bool) -> Vec<ErrorEvent> {
    match decoded {
        None => vec![ErrorEvent::E0],
        Some(d) => {
            let own_ok = d[0] == sent[0] && d[1] == sent[1];
            if own_ok {
                return Vec::new();
            }
            let mut events = Vec::new();
            if !sent_typical {
                events.push(ErrorEvent::E0);
            }
            let common_ok = d[0] == sent[0];
            let cross_ok = d[2] == sent[2];
            events.push(match (common_ok, cross_ok) {
                (true, true) => ErrorEvent::E1,
                (false, true) => ErrorEvent::E2,
                (true, false) => ErrorEvent::E3,
                (false, false) => ErrorEvent::E4,
            });
            events
        }
    }
}

/// A validated, fully derived simulation: codebooks plus decode tables plus
/// strategies. Immutable across trials and shared read-only.
pub struct SimWorkspace {
    pub config: SimConfig,
    pub codebooks: Codebooks,
    decoders: [DecoderWorkspace; 2],
    strategies: [JammerStrategy; 2],
}

impl SimWorkspace {
    pub fn new(
        config: SimConfig,
        strategy1: JammerStrategy,
        strategy2: JammerStrategy,
    ) -> Result<Self> {
        config.validate()?;
        strategy1.validate(0, &config.channel, config.n)?;
        strategy2.validate(1, &config.channel, config.n)?;
        let codebooks = build_codebooks(&config)?;
        let decoders = [
            DecoderWorkspace::new(&codebooks, 0, &config.channel, config.epsilon),
            DecoderWorkspace::new(&codebooks, 1, &config.channel, config.epsilon),
        ];
        Ok(SimWorkspace { config, codebooks, decoders, strategies: [strategy1, strategy2] })
    }

    /// Run one trial. Every randomness lane derives from `(seed, trial)`, so
    /// any execution order gives the same outcome for the same index.
    pub fn run_trial(&self, trial: u64) -> TrialOutcome {
        let sc = &self.config;
        let cfg = &sc.channel;
        let n = sc.n;
        let counts = &self.codebooks.counts;

        let mut msg_rng = super::trial_stream(sc.seed, trial, 0);
        let sent = SentMessages {
            m1c: msg_rng.random_range(0..counts.common[0]) as u32,
            m1p: msg_rng.random_range(0..counts.private[0]) as u32,
            m2c: msg_rng.random_range(0..counts.common[1]) as u32,
            m2p: msg_rng.random_range(0..counts.private[1]) as u32,
        };

        let x1 = encode(&self.codebooks, 0, sent.m1c as usize, sent.m1p as usize, cfg.p1);
        let x2 = encode(&self.codebooks, 1, sent.m2c as usize, sent.m2p as usize, cfg.p2);
        let e1: f64 = x1.iter().map(|v| v * v).sum();
        let e2: f64 = x2.iter().map(|v| v * v).sum();
        assert!(e1 <= n as f64 * cfg.p1 * (1.0 + 1e-12), "transmit power violated");
        assert!(e2 <= n as f64 * cfg.p2 * (1.0 + 1e-12), "transmit power violated");

        let noise = |lane: u64, var: f64| -> Vec<f64> {
            let mut rng = super::trial_stream(sc.seed, trial, lane);
            let std = var.sqrt();
            (0..n).map(|_| std * rng.sample::<f64, _>(StandardNormal)).collect()
        };
        let v1 = noise(1, cfg.sigma2);
        let v2 = noise(2, cfg.sigma2);

        let mut w_rng1 = super::trial_stream(sc.seed, trial, 3);
        let mut w_rng2 = super::trial_stream(sc.seed, trial, 4);
        let w1 = jam(&self.strategies[0], 0, &self.codebooks, cfg, &mut w_rng1)
            .expect("strategy validated at workspace construction");
        let w2 = jam(&self.strategies[1], 1, &self.codebooks, cfg, &mut w_rng2)
            .expect("strategy validated at workspace construction");
        let budget = n as f64 * cfg.lambda * (1.0 + 1e-12);
        assert!(w1.iter().map(|v| v * v).sum::<f64>() <= budget, "jammer power violated");
        assert!(w2.iter().map(|v| v * v).sum::<f64>() <= budget, "jammer power violated");

        let y1: Vec<f64> = (0..n)
            .map(|t| cfg.h11 * x1[t] + cfg.h12 * x2[t] + cfg.g1 * w1[t] + v1[t])
            .collect();
        let y2: Vec<f64> = (0..n)
            .map(|t| cfg.h21 * x1[t] + cfg.h22 * x2[t] + cfg.g2 * w2[t] + v2[t])
            .collect();

        let sent1 = [sent.m1c, sent.m1p, sent.m2c];
        let sent2 = [sent.m2c, sent.m2p, sent.m1c];
        let (decoded_1, typical1) = self.decoders[0].decode_with_sent(
            &y1,
            Some([sent.m1c as usize, sent.m1p as usize, sent.m2c as usize]),
        );
        let (decoded_2, typical2) = self.decoders[1].decode_with_sent(
            &y2,
            Some([sent.m2c as usize, sent.m2p as usize, sent.m1c as usize]),
        );

        TrialOutcome {
            trial,
            sent,
            decoded_1,
            decoded_2,
            events_1: classify(decoded_1, sent1, typical1),
            events_2: classify(decoded_2, sent2, typical2),
        }
    }
}

/// Run the configured number of trials and keep every outcome.
pub fn run_trials_collect(
    sc: &SimConfig,
    strategy1: &JammerStrategy,
    strategy2: &JammerStrategy,
) -> Result<(TrialStats, Vec<TrialOutcome>)> {
    let ws = SimWorkspace::new(sc.clone(), strategy1.clone(), strategy2.clone())?;
    let outcomes = exec::map_indexed(sc.trials as usize, |t| ws.run_trial(t as u64));
    Ok((aggregate(&outcomes), outcomes))
}

/// Run the configured number of trials, returning the aggregate statistics.
pub fn run_trials(
    sc: &SimConfig,
    strategy1: &JammerStrategy,
    strategy2: &JammerStrategy,
) -> Result<TrialStats> {
    run_trials_collect(sc, strategy1, strategy2).map(|(stats, _)| stats)
}
