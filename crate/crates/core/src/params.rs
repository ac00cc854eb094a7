//! Channel parameterization and normalization.
//!
//! Physical configurations (gains, powers, noise) are reduced to the
//! signal-, interference- and jammer-to-noise ratios that all region math
//! operates on. Also hosts the reduction of a multi-jammer cross matrix to
//! the equivalent two-jammer ratios.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gaussian capacity in bits per channel use: `0.5 * log2(1 + x)`.
///
/// Panics if `x` is negative or non-finite; every ratio fed to this function
/// is nonnegative by construction.
pub fn capacity(x: f64) -> f64 {
    assert!(
        x >= 0.0 && x.is_finite(),
        "capacity argument must be a finite nonnegative ratio, got {x}"
    );
    0.5 * (1.0 + x).log2()
}

/// Physical parameters of the two-user channel with two independent jammers.
///
/// `h11, h22` are the direct gains, `h12, h21` the cross gains (first index is
/// the receiver), `g1, g2` the jammer gains, `P1, P2` the per-symbol transmit
/// power limits, `Lambda` the per-symbol jammer power limit and `sigma2` the
/// receiver noise variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub h11: f64,
    pub h12: f64,
    pub h21: f64,
    pub h22: f64,
    pub g1: f64,
    pub g2: f64,
    #[serde(rename = "P1")]
    pub p1: f64,
    #[serde(rename = "P2")]
    pub p2: f64,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    pub sigma2: f64,
}

impl ChannelConfig {
    /// Check the type invariants: positive transmit powers and noise,
    /// nonnegative jammer power, finite gains.
    pub fn validate(&self) -> Result<()> {
        let gains = [self.h11, self.h12, self.h21, self.h22, self.g1, self.g2];
        if gains.iter().any(|g| !g.is_finite()) {
            return Err(Error::InvalidParameter("channel gains must be finite".into()));
        }
        if !(self.p1 > 0.0 && self.p1.is_finite()) || !(self.p2 > 0.0 && self.p2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "transmit powers must be positive and finite, got P1={} P2={}",
                self.p1, self.p2
            )));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "jammer power must be nonnegative and finite, got Lambda={}",
                self.lambda
            )));
        }
        if !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "noise variance must be positive and finite, got sigma2={}",
                self.sigma2
            )));
        }
        Ok(())
    }

    /// Build a physical configuration realizing the given power ratios with
    /// the given powers and noise floor. Gains come out nonnegative.
    pub fn from_ratios(
        ratios: NormalizedParams,
        p1: f64,
        p2: f64,
        lambda: f64,
        sigma2: f64,
    ) -> Result<Self> {
        if lambda <= 0.0 && (ratios.j1 > 0.0 || ratios.j2 > 0.0) {
            return Err(Error::InvalidParameter(
                "cannot realize positive jammer ratios with Lambda = 0".into(),
            ));
        }
        let g = |j: f64| if j == 0.0 { 0.0 } else { (j * sigma2 / lambda).sqrt() };
        let cfg = ChannelConfig {
            h11: (ratios.s1 * sigma2 / p1).sqrt(),
            h12: (ratios.i1 * sigma2 / p2).sqrt(),
            h21: (ratios.i2 * sigma2 / p1).sqrt(),
            h22: (ratios.s2 * sigma2 / p2).sqrt(),
            g1: g(ratios.j1),
            g2: g(ratios.j2),
            p1,
            p2,
            lambda,
            sigma2,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Received power ratios: `S` signal-to-noise, `I` interference-to-noise and
/// `J` jammer-to-noise per receiver. All region math runs on these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedParams {
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S2")]
    pub s2: f64,
    #[serde(rename = "I1")]
    pub i1: f64,
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "J1")]
    pub j1: f64,
    #[serde(rename = "J2")]
    pub j2: f64,
}

impl NormalizedParams {
    pub fn new(s1: f64, s2: f64, i1: f64, i2: f64, j1: f64, j2: f64) -> Result<Self> {
        let p = NormalizedParams { s1, s2, i1, i2, j1, j2 };
        p.validate()?;
        Ok(p)
    }

    /// Symmetric parameters: both users see the same `S`, `I`, `J`.
    pub fn symmetric(s: f64, i: f64, j: f64) -> Result<Self> {
        Self::new(s, s, i, i, j, j)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.s1, self.s2, self.i1, self.i2, self.j1, self.j2];
        if vals.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidParameter(format!(
                "power ratios must be finite and nonnegative, got {self:?}"
            )));
        }
        Ok(())
    }

    /// `S1 / (1 + J1)`: signal ratio with the jammer folded into the noise.
    pub fn s1_prime(&self) -> f64 {
        self.s1 / (1.0 + self.j1)
    }

    pub fn s2_prime(&self) -> f64 {
        self.s2 / (1.0 + self.j2)
    }

    pub fn i1_prime(&self) -> f64 {
        self.i1 / (1.0 + self.j1)
    }

    pub fn i2_prime(&self) -> f64 {
        self.i2 / (1.0 + self.j2)
    }

    /// True when the jammer at either receiver is at least as strong as the
    /// intended signal, which forces an empty capacity region.
    pub fn jammer_dominates(&self) -> bool {
        self.s1 <= self.j1 || self.s2 <= self.j2
    }
}

/// Gains of `G >= 1` jammers as seen by the two receivers, with the shared
/// per-jammer power limit and the noise floor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossMatrix {
    /// Two rows of `G` gains each; `rows[r][k]` is jammer `k`'s gain at receiver `r`.
    pub rows: [Vec<f64>; 2],
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    pub sigma2: f64,
}

impl CrossMatrix {
    pub fn validate(&self) -> Result<()> {
        if self.rows[0].is_empty() || self.rows[1].is_empty() {
            return Err(Error::Config("cross matrix must have at least one jammer".into()));
        }
        if self.rows[0].len() != self.rows[1].len() {
            return Err(Error::Config(format!(
                "cross matrix rows must have equal length, got {} and {}",
                self.rows[0].len(),
                self.rows[1].len()
            )));
        }
        if self.rows.iter().flatten().any(|g| !g.is_finite()) {
            return Err(Error::InvalidParameter("cross matrix entries must be finite".into()));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) || !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "need Lambda >= 0 and sigma2 > 0, got Lambda={} sigma2={}",
                self.lambda, self.sigma2
            )));
        }
        Ok(())
    }

    /// Equivalent single-jammer gain per receiver: the sum of gain magnitudes.
    /// Jammers may align their signals, so magnitudes add in the worst case.
    pub fn equivalent_gains(&self) -> (f64, f64) {
        let mag = |row: &[f64]| row.iter().map(|g| g.abs()).sum::<f64>();
        (mag(&self.rows[0]), mag(&self.rows[1]))
    }
}

/// Reduce a physical configuration to its power ratios:
/// `S1 = h11^2 P1 / sigma2`, `I1 = h12^2 P2 / sigma2`, `J1 = g1^2 Lambda / sigma2`
/// and the mirrored expressions for receiver 2.
pub fn normalize(cfg: &ChannelConfig) -> NormalizedParams {
    let s2 = cfg.sigma2;
    NormalizedParams {
        s1: cfg.h11 * cfg.h11 * cfg.p1 / s2,
        s2: cfg.h22 * cfg.h22 * cfg.p2 / s2,
        i1: cfg.h12 * cfg.h12 * cfg.p2 / s2,
        i2: cfg.h21 * cfg.h21 * cfg.p1 / s2,
        j1: cfg.g1 * cfg.g1 * cfg.lambda / s2,
        j2: cfg.g2 * cfg.g2 * cfg.lambda / s2,
    }
}

/// Collapse a `G`-jammer cross matrix to the equivalent two-jammer ratios
/// `J_r = (sum_k |g_rk|)^2 * Lambda / sigma2`.
///
/// Magnitudes are summed: a coordinated set of jammers can phase-align at a
/// receiver, so mixed-sign rows still produce the full combined power.
pub fn reduce_jammers(m: &CrossMatrix) -> Result<(f64, f64)> {
    m.validate()?;
    let (g1, g2) = m.equivalent_gains();
    Ok((g1 * g1 * m.lambda / m.sigma2, g2 * g2 * m.lambda / m.sigma2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn base_cfg() -> ChannelConfig {
        ChannelConfig {
            h11: 1.0,
            h12: 0.0,
            h21: 0.0,
            h22: 1.0,
            g1: 0.0,
            g2: 0.0,
            p1: 1.0,
            p2: 1.0,
            lambda: 0.0,
            sigma2: 1.0,
        }
    }

    #[test]
    fn capacity_reference_points() {
        assert_eq!(capacity(0.0), 0.0);
        assert!((capacity(3.0) - 1.0).abs() < 1e-15);
        assert!((capacity(1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    #[should_panic(expected = "capacity argument")]
    fn capacity_rejects_negative() {
        capacity(-0.5);
    }

    #[test]
    fn capacity_chain_identity() {
        // C(x) + C(y / (1 + x)) == C(x + y)
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let x: f64 = rng.random_range(0.0..50.0);
            let y: f64 = rng.random_range(0.0..50.0);
            let lhs = capacity(x) + capacity(y / (1.0 + x));
            let rhs = capacity(x + y);
            assert!((lhs - rhs).abs() < 1e-12, "x={x} y={y} lhs={lhs} rhs={rhs}");
        }
    }

    #[test]
    fn normalize_snr_definition() {
        let cfg = ChannelConfig { p1: 4.0, ..base_cfg() };
        assert_eq!(normalize(&cfg).s1, 4.0);

        let zero_gains = ChannelConfig {
            h11: 0.0,
            h22: 0.0,
            ..base_cfg()
        };
        let p = normalize(&zero_gains);
        assert_eq!((p.s1, p.s2, p.i1, p.i2, p.j1, p.j2), (0.0, 0.0, 0.0, 0.0, 0.0, 0.0));

        let jam = ChannelConfig { g1: 2.0, lambda: 1.0, ..base_cfg() };
        assert_eq!(normalize(&jam).j1, 4.0);
    }

    #[test]
    fn normalize_scale_consistency() {
        // Scaling all energies by the same factor leaves the ratios unchanged.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let cfg = ChannelConfig {
                h11: rng.random_range(0.1..3.0),
                h12: rng.random_range(0.0..2.0),
                h21: rng.random_range(0.0..2.0),
                h22: rng.random_range(0.1..3.0),
                g1: rng.random_range(0.0..2.0),
                g2: rng.random_range(0.0..2.0),
                p1: rng.random_range(0.1..10.0),
                p2: rng.random_range(0.1..10.0),
                lambda: rng.random_range(0.0..5.0),
                sigma2: rng.random_range(0.1..4.0),
            };
            let c: f64 = rng.random_range(0.01..100.0);
            let scaled = ChannelConfig {
                p1: cfg.p1 * c,
                p2: cfg.p2 * c,
                lambda: cfg.lambda * c,
                sigma2: cfg.sigma2 * c,
                ..cfg
            };
            let a = normalize(&cfg);
            let b = normalize(&scaled);
            for (x, y) in [
                (a.s1, b.s1),
                (a.s2, b.s2),
                (a.i1, b.i1),
                (a.i2, b.i2),
                (a.j1, b.j1),
                (a.j2, b.j2),
            ] {
                let tol = 1e-12 * x.max(1.0);
                assert!((x - y).abs() <= tol, "ratio changed under energy scaling: {x} vs {y}");
            }
        }
    }

    #[test]
    fn reduce_jammers_magnitude_sum() {
        let m = CrossMatrix {
            rows: [vec![1.0, 0.5, 0.5], vec![0.0, 0.0, 0.0]],
            lambda: 1.0,
            sigma2: 1.0,
        };
        let (j1, j2) = reduce_jammers(&m).unwrap();
        assert!((j1 - 4.0).abs() < 1e-15);
        assert_eq!(j2, 0.0);

        // Mixed signs still add in magnitude: aligned jammers w and -w with
        // gains (1, -1) superpose to twice the signal at the receiver.
        let mixed = CrossMatrix {
            rows: [vec![1.0, -1.0], vec![0.5, 0.5]],
            lambda: 1.0,
            sigma2: 1.0,
        };
        let (j1, _) = reduce_jammers(&mixed).unwrap();
        assert!((j1 - 4.0).abs() < 1e-15);

        let w: Vec<f64> = (0..64).map(|k| ((k * 37 + 5) % 13) as f64 - 6.0).collect();
        let received: Vec<f64> = w.iter().map(|x| 1.0 * x + (-1.0) * (-x)).collect();
        let pw: f64 = w.iter().map(|x| x * x).sum();
        let pr: f64 = received.iter().map(|x| x * x).sum();
        assert!((pr - 4.0 * pw).abs() < 1e-9 * pw);
    }

    #[test]
    fn reduce_jammers_single_matches_normalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g1: f64 = rng.random_range(-2.0..2.0);
            let g2: f64 = rng.random_range(-2.0..2.0);
            let lambda: f64 = rng.random_range(0.0..4.0);
            let sigma2: f64 = rng.random_range(0.2..3.0);
            let m = CrossMatrix { rows: [vec![g1], vec![g2]], lambda, sigma2 };
            let (j1, j2) = reduce_jammers(&m).unwrap();
            let cfg = ChannelConfig { g1, g2, lambda, sigma2, ..base_cfg() };
            let p = normalize(&cfg);
            assert!((j1 - p.j1).abs() <= 1e-12 * (1.0 + p.j1));
            assert!((j2 - p.j2).abs() <= 1e-12 * (1.0 + p.j2));
        }
    }

    #[test]
    fn reduce_jammers_rejects_empty() {
        let m = CrossMatrix { rows: [vec![], vec![]], lambda: 1.0, sigma2: 1.0 };
        assert!(reduce_jammers(&m).is_err());
    }

    #[test]
    fn primed_accessors_exact() {
        let p = NormalizedParams::new(4.0, 4.0, 3.0, 3.0, 1.0, 3.0).unwrap();
        assert_eq!(p.s1_prime(), 4.0 / 2.0);
        assert_eq!(p.i1_prime(), 3.0 / 2.0);
        assert_eq!(p.s2_prime(), 4.0 / 4.0);
        assert_eq!(p.i2_prime(), 3.0 / 4.0);
    }

    #[test]
    fn channel_config_json_field_names() {
        let cfg = ChannelConfig { g1: 2.0, lambda: 1.5, ..base_cfg() };
        let json = serde_json::to_value(&cfg).unwrap();
        for key in ["h11", "h12", "h21", "h22", "g1", "g2", "P1", "P2", "Lambda", "sigma2"] {
            assert!(json.get(key).is_some(), "missing field {key}");
        }
        let back: ChannelConfig = serde_json::from_value(json).unwrap();
        assert_eq!(back, cfg);

        let m = CrossMatrix { rows: [vec![1.0], vec![2.0]], lambda: 1.0, sigma2: 1.0 };
        let json = serde_json::to_value(&m).unwrap();
        assert!(json.get("Lambda").is_some() && json.get("rows").is_some());
    }

    #[test]
    fn from_ratios_round_trips() {
        let want = NormalizedParams::new(4.0, 2.0, 3.0, 0.5, 1.0, 0.0).unwrap();
        let cfg = ChannelConfig::from_ratios(want, 2.0, 5.0, 1.5, 0.7).unwrap();
        let got = normalize(&cfg);
        for (a, b) in [
            (want.s1, got.s1),
            (want.s2, got.s2),
            (want.i1, got.i1),
            (want.i2, got.i2),
            (want.j1, got.j1),
            (want.j2, got.j2),
        ] {
            assert!((a - b).abs() < 1e-12 * (1.0 + a));
        }
    }
}
