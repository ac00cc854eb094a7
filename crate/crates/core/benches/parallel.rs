//! Data-parallel hot loops against their sequential twins.
//!
//! `exec::map_indexed` is rayon-backed under the default `parallel` feature;
//! `exec::map_indexed_seq` is always a plain loop. The workloads are the two
//! dominant inner loops: the symmetric-capacity alpha scan and Monte-Carlo
//! trial batches. Built without default features both lanes are sequential,
//! which is itself a useful A/B sanity check.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gicjam_core::avcsim::{JammerStrategy, SimConfig, SimWorkspace};
use gicjam_core::exec;
use gicjam_core::params::ChannelConfig;
use gicjam_core::ratesplit::SplitRates;
use gicjam_core::regions::{sym_rate_at_alpha, AlphaPair};

fn bench_alpha_scan(c: &mut Criterion) {
    let points = 20_001usize;
    let eval = |k: usize| {
        let alpha = k as f64 / (points - 1) as f64;
        sym_rate_at_alpha(4.0, 3.0, 1.0, alpha)
    };
    let mut group = c.benchmark_group("symcap_alpha_scan");
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(exec::map_indexed(points, eval)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(exec::map_indexed_seq(points, eval)))
    });
    group.finish();
}

fn bench_trials(c: &mut Criterion) {
    let channel = ChannelConfig {
        h11: 1.0,
        h12: 0.5,
        h21: 0.5,
        h22: 1.0,
        g1: 0.5,
        g2: 0.5,
        p1: 4.0,
        p2: 4.0,
        lambda: 1.0,
        sigma2: 1.0,
    };
    let sc = SimConfig {
        channel,
        n: 128,
        rates: SplitRates::new(0.03, 0.03, 0.03, 0.03),
        alpha: AlphaPair::new(0.5, 0.5).unwrap(),
        gamma: 0.1,
        epsilon: 0.5,
        trials: 256,
        seed: 7,
    };
    let noise = JammerStrategy::GaussianNoise { power: 1.0 };
    let ws = SimWorkspace::new(sc.clone(), noise.clone(), noise).unwrap();

    let mut group = c.benchmark_group("monte_carlo_trials");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(exec::map_indexed(sc.trials as usize, |t| ws.run_trial(t as u64))))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            black_box(exec::map_indexed_seq(sc.trials as usize, |t| ws.run_trial(t as u64)))
        })
    });
    group.finish();
}

criterion_group!(benches, bench_alpha_scan, bench_trials);
criterion_main!(benches);
