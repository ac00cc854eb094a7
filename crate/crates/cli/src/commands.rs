//! Subcommand implementations. Each returns the primary output as a string;
//! the caller decides where it goes. Everything is deterministic in
//! (config, seed), including file contents byte for byte.

use serde::Serialize;
use serde_json::json;

use gicjam_core::avcsim::run_trials_collect;
use gicjam_core::dof::{dof_closed_form, dof_numeric, S_LADDER};
use gicjam_core::params::{normalize, reduce_jammers, CrossMatrix};
use gicjam_core::ratesplit::split_system;
use gicjam_core::regions::{
    half_bit_diagnostics, hk_region, outer_region, regime_classify_search, sym_hk, sym_outer,
    sym_suboptimal_alpha, sym_tilde, tilde_inner_region, AlphaPair, RateRegion, Regime,
    DEFAULT_SYMCAP_STEP, DEFAULT_UNION_STEP,
};

use crate::config::{RegionConfig, SimulateConfig, SweepSpec};
use crate::CliError;

fn region_json(r: &RateRegion) -> serde_json::Value {
    serde_json::to_value(r.export()).expect("region serializes")
}

fn regime_str(r: Regime) -> &'static str {
    match r {
        Regime::Weak => "weak",
        Regime::Strong => "strong",
        Regime::Mixed => "mixed",
    }
}

/// Expand a channel into its outer, fixed-split and feasible-union regions,
/// with the regime label, the half-bit audit block and the split system.
pub fn cmd_region(cfg: &RegionConfig, grid_step: Option<f64>) -> Result<String, CliError> {
    cfg.channel.validate().map_err(CliError::config)?;
    let alpha = match cfg.alpha {
        Some(a) => AlphaPair::new(a.alpha1, a.alpha2).map_err(CliError::config)?,
        None => AlphaPair::new(0.5, 0.5).expect("constant split"),
    };
    let step = grid_step.or(cfg.grid_step).unwrap_or(DEFAULT_UNION_STEP);
    if !(step > 0.0 && step <= 0.1) {
        return Err(CliError::Config(format!("grid step must lie in (0, 0.1], got {step}")));
    }

    let p = normalize(&cfg.channel);
    let union = tilde_inner_region(&p, step);
    let members: Vec<serde_json::Value> = union
        .members
        .iter()
        .map(|(a, r)| json!({ "alpha": a, "region": region_json(r) }))
        .collect();

    let out = json!({
        "schema": "gicjam.region.v1",
        "params": p,
        "empty": p.jammer_dominates(),
        "outer": region_json(&outer_region(&p)),
        "hk": { "alpha": alpha, "region": region_json(&hk_region(&p, alpha)) },
        "tilde": { "grid_step": step, "members": members },
        "regime": regime_str(regime_classify_search(&p)),
        "half_bit": half_bit_diagnostics(&p),
        "split_system": split_system(&p, alpha),
    });
    serde_json::to_string_pretty(&out)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Runtime(e.to_string()))
}

/// Symmetric-capacity sweep: per grid point the outer cap, the
/// feasibility-constrained scan, the unconstrained scan and the closed-form
/// split curve. Rows are zero once the jammer matches the signal.
pub fn cmd_symcap(spec: &SweepSpec, step_override: Option<f64>) -> Result<String, CliError> {
    spec.validate().map_err(CliError::Config)?;
    let astep = step_override.or(spec.alpha_step).unwrap_or(DEFAULT_SYMCAP_STEP);
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| CliError::Config(format!("sweep needs fixed.{name}")))
    };
    let rows: Vec<[f64; 5]> = match spec.variable.as_str() {
        "J" => {
            let s = need(spec.fixed.s, "S")?;
            let i = need(spec.fixed.i, "I")?;
            spec.grid().iter().map(|&j| symcap_row(j, s, i, j, astep)).collect()
        }
        "I" => {
            let s = need(spec.fixed.s, "S")?;
            let j = need(spec.fixed.j, "J")?;
            spec.grid().iter().map(|&i| symcap_row(i, s, i, j, astep)).collect()
        }
        "S" => {
            let i = need(spec.fixed.i, "I")?;
            let j = need(spec.fixed.j, "J")?;
            spec.grid().iter().map(|&s| symcap_row(s, s, i, j, astep)).collect()
        }
        other => {
            return Err(CliError::Config(format!(
                "symcap sweeps over J, I or S, got variable {other:?}"
            )))
        }
    };

    let mut out = String::from("# gicjam.symcap.v1\n");
    out.push_str("x,outer,tilde_inner,hk_inner,hk_suboptimal_alpha\n");
    for row in rows {
        out.push_str(&format!("{},{},{},{},{}\n", row[0], row[1], row[2], row[3], row[4]));
    }
    Ok(out)
}

fn symcap_row(x: f64, s: f64, i: f64, j: f64, astep: f64) -> [f64; 5] {
    [
        x,
        sym_outer(s, i, j),
        sym_tilde(s, i, j, astep),
        sym_hk(s, i, j, astep),
        sym_suboptimal_alpha(s, i, j),
    ]
}

/// Degrees-of-freedom sweep over one exponent with the other fixed:
/// closed form next to the normalized numeric bounds at the top power rung.
pub fn cmd_dof(spec: &SweepSpec, step_override: Option<f64>) -> Result<String, CliError> {
    spec.validate().map_err(CliError::Config)?;
    let astep = step_override.or(spec.alpha_step).unwrap_or(DEFAULT_SYMCAP_STEP);
    let s_max = spec.s_max.unwrap_or(S_LADDER[S_LADDER.len() - 1]);
    if !(s_max > 1.0 && s_max.is_finite()) {
        return Err(CliError::Config(format!("s_max must exceed 1, got {s_max}")));
    }
    let pairs: Vec<(f64, f64)> = match spec.variable.as_str() {
        "beta" => {
            let delta = spec
                .fixed
                .delta
                .ok_or_else(|| CliError::Config("sweep needs fixed.delta".into()))?;
            spec.grid().iter().map(|&b| (b, delta)).collect()
        }
        "delta" => {
            let beta = spec
                .fixed
                .beta
                .ok_or_else(|| CliError::Config("sweep needs fixed.beta".into()))?;
            spec.grid().iter().map(|&d| (beta, d)).collect()
        }
        other => {
            return Err(CliError::Config(format!(
                "dof sweeps over beta or delta, got variable {other:?}"
            )))
        }
    };

    let mut out = String::from("# gicjam.dof.v1\n");
    out.push_str("beta,delta,closed_form,lower_at_smax,upper_at_smax\n");
    for (beta, delta) in pairs {
        let rows = dof_numeric(beta, delta, &[s_max], astep);
        let (_, lo, up) = rows[0];
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            beta,
            delta,
            dof_closed_form(beta, delta),
            lo,
            up
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct TrialLogHeader<'a> {
    schema: &'a str,
    seed: u64,
    trials: u64,
}

/// Run the simulator; returns the summary CSV and, when requested, the
/// JSON-lines trial log as a second string.
pub fn cmd_simulate(cfg: &SimulateConfig) -> Result<(String, Option<String>), CliError> {
    let (stats, outcomes) = run_trials_collect(&cfg.sim, &cfg.jammer1, &cfg.jammer2)
        .map_err(CliError::config)?;

    let kind = |j: &gicjam_core::avcsim::JammerStrategy| match j {
        gicjam_core::avcsim::JammerStrategy::GaussianNoise { .. } => "gaussian_noise",
        gicjam_core::avcsim::JammerStrategy::Symmetrize { .. } => "symmetrize",
        gicjam_core::avcsim::JammerStrategy::FixedVector { .. } => "fixed_vector",
    };
    let mut out = String::from("# gicjam.simulate.v1\n");
    out.push_str("strategy,n,R1,R2,err1,err2,ci1_low,ci1_high,ci2_low,ci2_high\n");
    let r = &stats.receivers;
    out.push_str(&format!(
        "{}+{},{},{},{},{},{},{},{},{},{}\n",
        kind(&cfg.jammer1),
        kind(&cfg.jammer2),
        cfg.sim.n,
        cfg.sim.rates.r1(),
        cfg.sim.rates.r2(),
        r[0].error_rate,
        r[1].error_rate,
        r[0].wilson_low,
        r[0].wilson_high,
        r[1].wilson_low,
        r[1].wilson_high,
    ));
    out.push_str(&format!(
        "# events rx1 E0..E4: {:?}; rx2 E0..E4: {:?}\n",
        r[0].event_counts, r[1].event_counts
    ));

    let log = if cfg.trial_log.is_some() {
        let mut log = serde_json::to_string(&TrialLogHeader {
            schema: "gicjam.trials.v1",
            seed: cfg.sim.seed,
            trials: cfg.sim.trials,
        })
        .expect("header serializes");
        log.push('\n');
        for o in &outcomes {
            log.push_str(&serde_json::to_string(o).expect("outcome serializes"));
            log.push('\n');
        }
        Some(log)
    } else {
        None
    };
    Ok((out, log))
}

/// Collapse a multi-jammer cross matrix to the equivalent two-jammer ratios.
pub fn cmd_reduce(matrix: &CrossMatrix) -> Result<String, CliError> {
    let (j1, j2) = reduce_jammers(matrix).map_err(CliError::config)?;
    let out = json!({
        "schema": "gicjam.reduce.v1",
        "J1": j1,
        "J2": j2,
        "equivalent_gains": {
            "g1": matrix.equivalent_gains().0,
            "g2": matrix.equivalent_gains().1,
        },
    });
    serde_json::to_string_pretty(&out)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Runtime(e.to_string()))
}
