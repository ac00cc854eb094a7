//! Split-rate feasibility and its projection onto the rate plane.
//!
//! Each user's rate splits into a common part (decoded by both receivers)
//! and a private part. The eight-inequality feasibility system over
//! `(R1c, R1p, R2c, R2p)` is evaluated in the zero-backoff limit, and
//! Fourier–Motzkin elimination projects it to halfspaces over `(R1, R2)`.
//!
//! The projection keeps every constraint the elimination produces. Beyond
//! the seven standard constraints this includes two corner caps of the form
//! `R1 <= C(a1 S1/D1) + C((a2 S2 + (1-a1) I2)/D2)`; at some splits these cut
//! strictly into the seven-constraint shape, and the split-witness search
//! below confirms the projection is the correct object there.

use serde::{Deserialize, Serialize};

use crate::params::{capacity, NormalizedParams};
use crate::regions::{alpha_feasible, AlphaPair, Halfspace, RateRegion};

/// Common/private rate split per user, in bits per channel use.
/// `R_i = R_ic + R_ip`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitRates {
    #[serde(rename = "R1c")]
    pub r1c: f64,
    #[serde(rename = "R1p")]
    pub r1p: f64,
    #[serde(rename = "R2c")]
    pub r2c: f64,
    #[serde(rename = "R2p")]
    pub r2p: f64,
}

impl SplitRates {
    pub fn new(r1c: f64, r1p: f64, r2c: f64, r2p: f64) -> Self {
        SplitRates { r1c, r1p, r2c, r2p }
    }

    pub fn zero() -> Self {
        SplitRates::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn r1(&self) -> f64 {
        self.r1c + self.r1p
    }

    pub fn r2(&self) -> f64 {
        self.r2c + self.r2p
    }
}

/// Right-hand sides of the eight split inequalities at zero power backoff.
///
/// Order: receiver 1 rows `R1p`, `R1p+R1c`, `R1p+R2c`, `R1p+R1c+R2c`
/// (bounds 0..3), then the mirrored receiver 2 rows (bounds 4..7).
/// Denominators use the raw ratios with the jammer folded in:
/// `D1 = 1 + J1 + alpha2 I1`.
pub fn split_bounds(p: &NormalizedParams, a: AlphaPair) -> [f64; 8] {
    let d1 = 1.0 + p.j1 + a.alpha2 * p.i1;
    let d2 = 1.0 + p.j2 + a.alpha1 * p.i2;
    let (b1, b2) = (1.0 - a.alpha1, 1.0 - a.alpha2);
    [
        capacity(a.alpha1 * p.s1 / d1),
        capacity(p.s1 / d1),
        capacity((a.alpha1 * p.s1 + b2 * p.i1) / d1),
        capacity((p.s1 + b2 * p.i1) / d1),
        capacity(a.alpha2 * p.s2 / d2),
        capacity(p.s2 / d2),
        capacity((a.alpha2 * p.s2 + b1 * p.i2) / d2),
        capacity((p.s2 + b1 * p.i2) / d2),
    ]
}

/// True when the split rates satisfy all eight inequalities strictly.
/// Requires a jammer-feasible alpha and `S > J` per receiver; returns false
/// otherwise.
pub fn split_feasible(p: &NormalizedParams, a: AlphaPair, s: &SplitRates) -> bool {
    if p.jammer_dominates() || !alpha_feasible(p, a) {
        return false;
    }
    let b = split_bounds(p, a);
    s.r1p < b[0]
        && s.r1p + s.r1c < b[1]
        && s.r1p + s.r2c < b[2]
        && s.r1p + s.r1c + s.r2c < b[3]
        && s.r2p < b[4]
        && s.r2p + s.r2c < b[5]
        && s.r2p + s.r1c < b[6]
        && s.r2p + s.r1c + s.r2c < b[7]
}

/// Margin of the tightest inequality; positive iff the split is feasible.
pub fn split_margin(p: &NormalizedParams, a: AlphaPair, s: &SplitRates) -> f64 {
    let b = split_bounds(p, a);
    [
        b[0] - s.r1p,
        b[1] - (s.r1p + s.r1c),
        b[2] - (s.r1p + s.r2c),
        b[3] - (s.r1p + s.r1c + s.r2c),
        b[4] - s.r2p,
        b[5] - (s.r2p + s.r2c),
        b[6] - (s.r2p + s.r1c),
        b[7] - (s.r2p + s.r1c + s.r2c),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// Grid search for a feasible split realizing the rate pair `(r1, r2)`.
///
/// Sweeps the common-rate pair on a `steps x steps` grid and returns the
/// split with the largest margin, if any positive one exists. This is the
/// independent witness check for the projected region.
pub fn find_split(
    p: &NormalizedParams,
    a: AlphaPair,
    r1: f64,
    r2: f64,
    steps: usize,
) -> Option<SplitRates> {
    if r1 < 0.0 || r2 < 0.0 {
        return None;
    }
    let mut best: Option<(f64, SplitRates)> = None;
    for k1 in 0..=steps {
        let c1 = r1 * k1 as f64 / steps as f64;
        for k2 in 0..=steps {
            let c2 = r2 * k2 as f64 / steps as f64;
            let s = SplitRates::new(c1, r1 - c1, c2, r2 - c2);
            let m = split_margin(p, a, &s);
            if m > 0.0 && best.map_or(true, |(bm, _)| m > bm) {
                best = Some((m, s));
            }
        }
    }
    best.map(|(_, s)| s)
}

/// One row of the split system, for audit dumps.
#[derive(Debug, Clone, Serialize)]
pub struct SplitSystemRow {
    pub terms: Vec<&'static str>,
    pub bound: f64,
}

/// The full eight-inequality system as data, for audit dumps.
#[derive(Debug, Clone, Serialize)]
pub struct SplitSystem {
    pub alpha: AlphaPair,
    pub gamma: f64,
    pub rows: Vec<SplitSystemRow>,
}

/// Serialize the split system at `(p, a)`; backoff is pinned at its limit 0.
pub fn split_system(p: &NormalizedParams, a: AlphaPair) -> SplitSystem {
    let b = split_bounds(p, a);
    let term_sets: [Vec<&'static str>; 8] = [
        vec!["R1p"],
        vec!["R1p", "R1c"],
        vec!["R1p", "R2c"],
        vec!["R1p", "R1c", "R2c"],
        vec!["R2p"],
        vec!["R2p", "R2c"],
        vec!["R2p", "R1c"],
        vec!["R2p", "R1c", "R2c"],
    ];
    SplitSystem {
        alpha: a,
        gamma: 0.0,
        rows: term_sets
            .into_iter()
            .zip(b)
            .map(|(terms, bound)| SplitSystemRow { terms, bound })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin elimination
// ---------------------------------------------------------------------------

/// A row `coef . x <= bound` over the variables `[R1, R2, c1, c2]`.
#[derive(Debug, Clone, Copy)]
struct Row {
    coef: [f64; 4],
    bound: f64,
}

const COEF_EPS: f64 = 1e-12;

fn eliminate(rows: Vec<Row>, var: usize) -> Vec<Row> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut zero = Vec::new();
    for r in rows {
        if r.coef[var] > COEF_EPS {
            pos.push(r);
        } else if r.coef[var] < -COEF_EPS {
            neg.push(r);
        } else {
            zero.push(r);
        }
    }
    let mut out = zero;
    for p in &pos {
        for m in &neg {
            let sp = -m.coef[var];
            let sm = p.coef[var];
            let mut coef = [0.0; 4];
            for k in 0..4 {
                coef[k] = p.coef[k] * sp + m.coef[k] * sm;
            }
            coef[var] = 0.0;
            out.push(Row { coef, bound: p.bound * sp + m.bound * sm });
        }
    }
    out
}

/// Exact projection of the split system onto `(R1, R2)`.
///
/// Eliminates the two common rates from the eight inequalities plus the
/// nonnegativity bounds (`0 <= R_ic`, `R_ip >= 0` i.e. `R_ic <= R_i`), then
/// normalizes and strips redundant halfspaces. Returns the empty region when
/// the precondition (`S > J`, jammer-feasible alpha) fails or the base
/// system is infeasible.
pub fn fme_project(p: &NormalizedParams, a: AlphaPair) -> RateRegion {
    if p.jammer_dominates() || !alpha_feasible(p, a) {
        return RateRegion::empty_region();
    }
    let b = split_bounds(p, a);
    // Variables [R1, R2, c1, c2] with c = common rates, R_ip = R_i - c_i.
    let rows = vec![
        Row { coef: [1.0, 0.0, -1.0, 0.0], bound: b[0] },
        Row { coef: [1.0, 0.0, 0.0, 0.0], bound: b[1] },
        Row { coef: [1.0, 0.0, -1.0, 1.0], bound: b[2] },
        Row { coef: [1.0, 0.0, 0.0, 1.0], bound: b[3] },
        Row { coef: [0.0, 1.0, 0.0, -1.0], bound: b[4] },
        Row { coef: [0.0, 1.0, 0.0, 0.0], bound: b[5] },
        Row { coef: [0.0, 1.0, 1.0, -1.0], bound: b[6] },
        Row { coef: [0.0, 1.0, 1.0, 0.0], bound: b[7] },
        Row { coef: [0.0, 0.0, -1.0, 0.0], bound: 0.0 },
        Row { coef: [-1.0, 0.0, 1.0, 0.0], bound: 0.0 },
        Row { coef: [0.0, 0.0, 0.0, -1.0], bound: 0.0 },
        Row { coef: [0.0, -1.0, 0.0, 1.0], bound: 0.0 },
    ];
    let projected = eliminate(eliminate(rows, 2), 3);

    let mut halfspaces: Vec<Halfspace> = Vec::new();
    for r in projected {
        let a1 = r.coef[0].round();
        let a2 = r.coef[1].round();
        debug_assert!((r.coef[0] - a1).abs() < 1e-9 && (r.coef[1] - a2).abs() < 1e-9);
        if a1.abs() < COEF_EPS && a2.abs() < COEF_EPS {
            if r.bound < -1e-9 {
                return RateRegion::empty_region();
            }
            continue;
        }
        if a1 < 0.0 || a2 < 0.0 {
            // Only pure sign-reversed nonnegativity rows reach this point;
            // they are implied by R1, R2 >= 0.
            debug_assert!(a1 <= 0.0 && a2 <= 0.0 && r.bound >= -1e-9);
            continue;
        }
        let g = gcd(a1 as u64, a2 as u64).max(1) as f64;
        halfspaces.push(Halfspace::new(
            (a1 / g) as u32,
            (a2 / g) as u32,
            r.bound / g,
        ));
    }

    // Per-direction minimum, then geometric redundancy removal.
    halfspaces.sort_by(|x, y| (x.a1, x.a2).cmp(&(y.a1, y.a2)).then(x.b.partial_cmp(&y.b).unwrap()));
    halfspaces.dedup_by(|next, kept| (next.a1, next.a2) == (kept.a1, kept.a2));
    let halfspaces = drop_redundant(halfspaces);

    RateRegion { halfspaces, empty: false, open: true }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn drop_redundant(halfspaces: Vec<Halfspace>) -> Vec<Halfspace> {
    let mut kept: Vec<Halfspace> = halfspaces.clone();
    let mut idx = 0;
    while idx < kept.len() {
        let h = kept[idx];
        let others: Vec<Halfspace> =
            kept.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, v)| *v).collect();
        // The functional a1*R1 + a2*R2 is bounded over the others only if
        // each axis direction it uses is capped by some other constraint.
        let capped1 = h.a1 == 0 || others.iter().any(|o| o.a1 > 0);
        let capped2 = h.a2 == 0 || others.iter().any(|o| o.a2 > 0);
        if !capped1 || !capped2 {
            idx += 1;
            continue;
        }
        let probe = RateRegion { halfspaces: others.clone(), empty: false, open: true };
        let max_val = probe
            .vertices()
            .iter()
            .map(|v| h.a1 as f64 * v[0] + h.a2 as f64 * v[1])
            .fold(0.0_f64, f64::max);
        if max_val <= h.b + 1e-9 {
            kept.remove(idx);
        } else {
            idx += 1;
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::{hk_region, Membership};

    fn params(s1: f64, s2: f64, i1: f64, i2: f64, j1: f64, j2: f64) -> NormalizedParams {
        NormalizedParams::new(s1, s2, i1, i2, j1, j2).unwrap()
    }

    #[test]
    fn zero_rates_always_feasible_under_precondition() {
        let p = params(4.0, 4.0, 3.0, 3.0, 1.0, 1.0);
        let a = AlphaPair::new(0.5, 0.5).unwrap();
        assert!(split_feasible(&p, a, &SplitRates::zero()));

        // Precondition violations flip the answer regardless of rates.
        let dead = params(1.0, 1.0, 0.0, 0.0, 2.0, 2.0);
        assert!(!split_feasible(&dead, a, &SplitRates::zero()));
        let infeasible_alpha = params(4.0, 4.0, 3.0, 3.0, 3.5, 3.5);
        assert!(!split_feasible(
            &infeasible_alpha,
            AlphaPair::new(0.0, 0.0).unwrap(),
            &SplitRates::zero()
        ));
    }

    #[test]
    fn all_private_binds_on_private_row() {
        let p = params(4.0, 4.0, 3.0, 3.0, 1.0, 1.0);
        let a = AlphaPair::new(1.0, 1.0).unwrap();
        let cap = capacity(4.0 / (1.0 + 1.0 + 3.0));
        let below = SplitRates::new(0.0, cap - 1e-9, 0.0, 0.0);
        let above = SplitRates::new(0.0, cap + 1e-9, 0.0, 0.0);
        assert!(split_feasible(&p, a, &below));
        assert!(!split_feasible(&p, a, &above));
    }

    #[test]
    fn saturating_the_triple_sum_row() {
        let p = params(4.0, 4.0, 3.0, 3.0, 1.0, 1.0);
        let a = AlphaPair::new(0.5, 0.5).unwrap();
        let b = split_bounds(&p, a);
        // d = 3.5 on both sides; the triple row caps R1p + R1c + R2c.
        assert!((b[3] - capacity(5.5 / 3.5)).abs() < 1e-12);
        let r1p = 0.2;
        let r1c = 0.25;
        let r2c = b[3] - 1e-6 - r1p - r1c;
        let s = SplitRates::new(r1c, r1p, r2c, 0.05);
        assert!(split_feasible(&p, a, &s));
        let bumped = SplitRates::new(r1c, r1p + 2e-6, r2c, 0.05);
        assert!(!split_feasible(&p, a, &bumped));
    }

    #[test]
    fn projection_matches_region_shape_without_jammer() {
        // Mid-range symmetric parameters: the corner caps are slack, so the
        // projection and the seven-constraint shape agree pointwise.
        let p = params(4.0, 4.0, 3.0, 3.0, 0.0, 0.0);
        for (a1, a2) in [(0.5, 0.5), (1.0, 1.0), (0.2, 0.7)] {
            let a = AlphaPair::new(a1, a2).unwrap();
            let proj = fme_project(&p, a);
            let shape = hk_region(&p, a);
            let lim1 = capacity(p.s1) + 0.1;
            let lim2 = capacity(p.s2) + 0.1;
            for gi in 0..60 {
                for gj in 0..60 {
                    let r1 = lim1 * gi as f64 / 59.0;
                    let r2 = lim2 * gj as f64 / 59.0;
                    if proj.face_distance(r1, r2) < 1e-6 || shape.face_distance(r1, r2) < 1e-6 {
                        continue;
                    }
                    assert_eq!(
                        proj.membership(r1, r2),
                        shape.membership(r1, r2),
                        "mismatch at ({r1},{r2}) alpha=({a1},{a2})"
                    );
                }
            }
        }
    }

    #[test]
    fn projection_corner_caps_can_bind() {
        // Asymmetric powers with user 1 almost all-common: the elimination
        // yields R2 <= C((a1 S1 + (1-a2) I1)/D1) + C(a2 S2 / D2), which cuts
        // below every cap the seven-constraint shape puts on R2 near R1 = 0.
        let p = params(0.01, 100.0, 0.01, 100.0, 0.0, 0.0);
        let a = AlphaPair::new(0.02, 0.5).unwrap();
        let b = split_bounds(&p, a);
        let corner_cap = b[2] + b[4];
        let proj = fme_project(&p, a);
        let shape = hk_region(&p, a);

        // Tightest cap the seven-constraint shape puts on R2 at this R1.
        let r1 = 1e-3;
        let shape_cap = shape
            .halfspaces
            .iter()
            .filter(|h| h.a2 > 0)
            .map(|h| (h.b - h.a1 as f64 * r1) / h.a2 as f64)
            .fold(f64::INFINITY, f64::min);
        assert!(
            corner_cap + 3e-3 < shape_cap,
            "corner cap {corner_cap} does not undercut the shape cap {shape_cap}"
        );

        // A point in the sliver: inside the shape, outside the projection,
        // and the split-witness oracle sides with the projection.
        let sliver = 0.5 * (corner_cap + shape_cap);
        assert_eq!(shape.membership(r1, sliver), Membership::Inside);
        assert_eq!(proj.membership(r1, sliver), Membership::Outside);
        assert!(find_split(&p, a, r1, sliver, 400).is_none());

        let inside = corner_cap - 0.03;
        assert_eq!(proj.membership(r1, inside), Membership::Inside);
        assert!(find_split(&p, a, r1, inside, 400).is_some());
    }

    #[test]
    fn projection_collapses_at_vanishing_ratios() {
        // All-zero ratios violate the S > J precondition, so the projection
        // is empty; with tiny positive ratios it collapses to the origin.
        let zero = params(0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let a = AlphaPair::new(0.5, 0.5).unwrap();
        assert!(fme_project(&zero, a).empty);

        let tiny = params(1e-12, 1e-12, 1e-12, 1e-12, 0.0, 0.0);
        let proj = fme_project(&tiny, a);
        assert!(!proj.empty);
        assert_eq!(proj.membership(0.0, 0.0), Membership::Boundary);
        assert_eq!(proj.membership(1e-6, 0.0), Membership::Outside);
        for v in proj.vertices() {
            assert!(v[0] < 1e-9 && v[1] < 1e-9);
        }
    }

    #[test]
    fn projection_empty_on_precondition_violation() {
        let dead = params(1.0, 1.0, 0.0, 0.0, 2.0, 2.0);
        assert!(fme_project(&dead, AlphaPair::new(0.5, 0.5).unwrap()).empty);
        let p = params(4.0, 4.0, 3.0, 3.0, 3.5, 3.5);
        assert!(fme_project(&p, AlphaPair::new(0.0, 0.0).unwrap()).empty);
    }

    #[test]
    fn system_dump_shape() {
        let p = params(4.0, 4.0, 3.0, 3.0, 1.0, 1.0);
        let a = AlphaPair::new(0.5, 0.5).unwrap();
        let sys = split_system(&p, a);
        assert_eq!(sys.rows.len(), 8);
        assert_eq!(sys.gamma, 0.0);
        let json = serde_json::to_value(&sys).unwrap();
        assert_eq!(json["rows"][0]["terms"][0], "R1p");
        assert!(json["rows"][3]["bound"].as_f64().unwrap() > 0.0);
    }
}
