//! Rate-region construction and queries.
//!
//! Builds the outer bound on the capacity region, the fixed power-split
//! achievable region (Han–Kobayashi shape), and the feasibility-constrained
//! union of split regions. All bounds are evaluated at the jammer-lifted
//! ratios `S' = S/(1+J)`, `I' = I/(1+J)`; the split feasibility test
//! `alpha_i S_i + (1-alpha_j) I_i > J_i` runs on the raw ratios. Also hosts
//! the symmetric-capacity bounds, interference-regime classification and the
//! half-bit gap certificate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::params::{capacity, NormalizedParams};

/// Default alpha grid step for one-dimensional symmetric scans.
pub const DEFAULT_SYMCAP_STEP: f64 = 1e-3;
/// Default alpha grid step for the two-dimensional union of split regions.
pub const DEFAULT_UNION_STEP: f64 = 1e-2;
/// Slack below which a point counts as sitting on a region face.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// One linear rate constraint `a1*R1 + a2*R2 <= b`.
///
/// The only coefficient shapes that occur are (1,0), (0,1), (1,1), (2,1)
/// and (1,2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub a1: u32,
    pub a2: u32,
    pub b: f64,
}

impl Halfspace {
    pub fn new(a1: u32, a2: u32, b: f64) -> Self {
        debug_assert!(
            matches!((a1, a2), (1, 0) | (0, 1) | (1, 1) | (2, 1) | (1, 2)),
            "unexpected constraint shape ({a1},{a2})"
        );
        Halfspace { a1, a2, b }
    }

    /// `b - a1*R1 - a2*R2`; nonnegative inside the halfspace.
    pub fn slack(&self, r1: f64, r2: f64) -> f64 {
        self.b - self.a1 as f64 * r1 - self.a2 as f64 * r2
    }

    fn norm(&self) -> f64 {
        ((self.a1 * self.a1 + self.a2 * self.a2) as f64).sqrt()
    }
}

/// Three-valued membership so tests can pin boundary behavior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// Intersection of [`Halfspace`]s over nonnegative rates, or the empty region.
///
/// Achievable-type regions use strict inequalities in their definition;
/// `open` records that so callers can interpret `Boundary` accordingly.
/// Stored constraints are always the closed versions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRegion {
    pub halfspaces: Vec<Halfspace>,
    pub empty: bool,
    pub open: bool,
}

impl RateRegion {
    pub fn empty_region() -> Self {
        RateRegion { halfspaces: Vec::new(), empty: true, open: false }
    }

    /// Minimum constraint slack at `(r1, r2)`, infinite when unconstrained.
    pub fn min_slack(&self, r1: f64, r2: f64) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| h.slack(r1, r2))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from `(r1, r2)` to the nearest constraint face.
    pub fn face_distance(&self, r1: f64, r2: f64) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| (h.slack(r1, r2) / h.norm()).abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn membership(&self, r1: f64, r2: f64) -> Membership {
        if self.empty || r1 < 0.0 || r2 < 0.0 {
            return Membership::Outside;
        }
        let slack = self.min_slack(r1, r2);
        if slack > MEMBERSHIP_TOL {
            Membership::Inside
        } else if slack >= -MEMBERSHIP_TOL {
            Membership::Boundary
        } else {
            Membership::Outside
        }
    }

    /// Corner points of the polygon, in counterclockwise order.
    ///
    /// Enumerates pairwise intersections of the constraint lines together
    /// with the two axes, keeps the feasible ones and deduplicates. Parallel
    /// line pairs are skipped.
    pub fn vertices(&self) -> Vec<[f64; 2]> {
        if self.empty {
            return Vec::new();
        }
        // Lines as (a1, a2, b) with a1*x + a2*y = b; axes included.
        let mut lines: Vec<[f64; 3]> = self
            .halfspaces
            .iter()
            .map(|h| [h.a1 as f64, h.a2 as f64, h.b])
            .collect();
        lines.push([1.0, 0.0, 0.0]);
        lines.push([0.0, 1.0, 0.0]);

        let mut verts: Vec<[f64; 2]> = Vec::new();
        for i in 0..lines.len() {
            for j in (i + 1)..lines.len() {
                let [a, b, e] = lines[i];
                let [c, d, f] = lines[j];
                let det = a * d - b * c;
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = (e * d - b * f) / det;
                let y = (a * f - e * c) / det;
                if x < -MEMBERSHIP_TOL || y < -MEMBERSHIP_TOL {
                    continue;
                }
                if self.min_slack(x, y) < -MEMBERSHIP_TOL {
                    continue;
                }
                let x = x.max(0.0);
                let y = y.max(0.0);
                if !verts.iter().any(|v| (v[0] - x).abs() < 1e-9 && (v[1] - y).abs() < 1e-9) {
                    verts.push([x, y]);
                }
            }
        }
        if verts.len() > 2 {
            let cx = verts.iter().map(|v| v[0]).sum::<f64>() / verts.len() as f64;
            let cy = verts.iter().map(|v| v[1]).sum::<f64>() / verts.len() as f64;
            verts.sort_by(|p, q| {
                let ap = (p[1] - cy).atan2(p[0] - cx);
                let aq = (q[1] - cy).atan2(q[0] - cx);
                ap.partial_cmp(&aq).unwrap()
            });
        } else {
            verts.sort_by(|p, q| p.partial_cmp(q).unwrap());
        }
        verts
    }

    /// Serializable form with precomputed vertices.
    pub fn export(&self) -> RegionExport {
        RegionExport {
            halfspaces: self.halfspaces.clone(),
            vertices: self.vertices(),
            empty: self.empty,
        }
    }
}

/// JSON export shape for a region: constraints, corner points, emptiness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionExport {
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<[f64; 2]>,
    pub empty: bool,
}

/// Private-power fractions of the two users, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaPair {
    pub alpha1: f64,
    pub alpha2: f64,
}

impl AlphaPair {
    pub fn new(alpha1: f64, alpha2: f64) -> Result<Self> {
        for a in [alpha1, alpha2] {
            if !(0.0..=1.0).contains(&a) || !a.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "power split must lie in [0,1], got ({alpha1}, {alpha2})"
                )));
            }
        }
        Ok(AlphaPair { alpha1, alpha2 })
    }

    pub fn symmetric(alpha: f64) -> Result<Self> {
        Self::new(alpha, alpha)
    }
}

/// Union of split regions indexed by the split that achieves each member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionRegion {
    pub members: Vec<(AlphaPair, RateRegion)>,
}

impl UnionRegion {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// A point is in the union when some member contains it.
    pub fn membership(&self, r1: f64, r2: f64) -> Membership {
        let mut best = Membership::Outside;
        for (_, region) in &self.members {
            match region.membership(r1, r2) {
                Membership::Inside => return Membership::Inside,
                Membership::Boundary => best = Membership::Boundary,
                Membership::Outside => {}
            }
        }
        best
    }
}

/// Outer bound on the capacity region.
///
/// Empty as soon as the jammer matches the intended signal at either
/// receiver; otherwise the standard seven-constraint outer bound evaluated at
/// the lifted ratios.
pub fn outer_region(p: &NormalizedParams) -> RateRegion {
    if p.jammer_dominates() {
        return RateRegion::empty_region();
    }
    let (s1, s2, i1, i2) = (p.s1_prime(), p.s2_prime(), p.i1_prime(), p.i2_prime());
    let sum1 = (s1 + i1 + i1 * i2) / (1.0 + i2);
    let sum2 = (s2 + i2 + i1 * i2) / (1.0 + i1);
    let halfspaces = vec![
        Halfspace::new(1, 0, capacity(s1)),
        Halfspace::new(0, 1, capacity(s2)),
        Halfspace::new(1, 1, capacity(s1 / (1.0 + i2)) + capacity(i2 + s2)),
        Halfspace::new(1, 1, capacity(s2 / (1.0 + i1)) + capacity(i1 + s1)),
        Halfspace::new(1, 1, capacity(sum1) + capacity(sum2)),
        Halfspace::new(2, 1, capacity(s1 / (1.0 + i2)) + capacity(s1 + i1) + capacity(sum2)),
        Halfspace::new(1, 2, capacity(s2 / (1.0 + i1)) + capacity(s2 + i2) + capacity(sum1)),
    ];
    RateRegion { halfspaces, empty: false, open: false }
}

/// Fixed-split achievable region shape at the lifted ratios.
///
/// The seven standard constraints for private fractions `a`; definitions are
/// strict, so the region carries `open = true`.
pub fn hk_region(p: &NormalizedParams, a: AlphaPair) -> RateRegion {
    let (s1, s2, i1, i2) = (p.s1_prime(), p.s2_prime(), p.i1_prime(), p.i2_prime());
    let (a1, a2) = (a.alpha1, a.alpha2);
    let (b1, b2) = (1.0 - a1, 1.0 - a2);
    let d1 = 1.0 + a2 * i1;
    let d2 = 1.0 + a1 * i2;

    let own1 = capacity(s1 / d1);
    let own2 = capacity(s2 / d2);
    let full1 = capacity((s1 + b2 * i1) / d1);
    let full2 = capacity((s2 + b1 * i2) / d2);
    let priv1 = capacity(a1 * s1 / d1);
    let priv2 = capacity(a2 * s2 / d2);
    let mix1 = capacity((a1 * s1 + b2 * i1) / d1);
    let mix2 = capacity((a2 * s2 + b1 * i2) / d2);

    let halfspaces = vec![
        Halfspace::new(1, 0, own1),
        Halfspace::new(0, 1, own2),
        Halfspace::new(1, 1, full1 + priv2),
        Halfspace::new(1, 1, full2 + priv1),
        Halfspace::new(1, 1, mix1 + mix2),
        Halfspace::new(2, 1, full1 + priv1 + mix2),
        Halfspace::new(1, 2, full2 + priv2 + mix1),
    ];
    RateRegion { halfspaces, empty: false, open: true }
}

/// Split feasibility against the jammers: `alpha_i S_i + (1-alpha_j) I_i > J_i`
/// strictly, for both receiver orderings, on the raw (unlifted) ratios.
pub fn alpha_feasible(p: &NormalizedParams, a: AlphaPair) -> bool {
    a.alpha1 * p.s1 + (1.0 - a.alpha2) * p.i1 > p.j1
        && a.alpha2 * p.s2 + (1.0 - a.alpha1) * p.i2 > p.j2
}

/// Evenly spaced grid `0, 1/n, ..., 1` realizing the requested step.
fn alpha_grid(step: f64) -> (usize, f64) {
    assert!(
        step > 0.0 && step <= 0.1 && step.is_finite(),
        "alpha grid step must lie in (0, 0.1], got {step}"
    );
    let n = (1.0 / step).round().max(1.0) as usize;
    (n, n as f64)
}

/// Union of the fixed-split regions over the feasible part of the alpha grid.
///
/// Requires `S_i > J_i` for both receivers; otherwise the union is empty.
/// Grid evaluation is order-independent, so it runs data-parallel.
pub fn tilde_inner_region(p: &NormalizedParams, grid_step: f64) -> UnionRegion {
    let (n, nf) = alpha_grid(grid_step);
    if p.jammer_dominates() {
        return UnionRegion { members: Vec::new() };
    }
    let per_axis = n + 1;
    let members: Vec<Option<(AlphaPair, RateRegion)>> =
        exec::map_indexed(per_axis * per_axis, |idx| {
            let a1 = (idx / per_axis) as f64 / nf;
            let a2 = (idx % per_axis) as f64 / nf;
            let a = AlphaPair { alpha1: a1, alpha2: a2 };
            if alpha_feasible(p, a) {
                Some((a, hk_region(p, a)))
            } else {
                None
            }
        });
    UnionRegion { members: members.into_iter().flatten().collect() }
}

/// Largest symmetric rate of the fixed-split region at symmetric parameters.
///
/// The minimum of the four diagonal caps implied by the seven constraints.
pub fn sym_rate_at_alpha(s: f64, i: f64, j: f64, alpha: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&alpha));
    let sp = s / (1.0 + j);
    let ip = i / (1.0 + j);
    let den = 1.0 + alpha * ip;
    let full = capacity((sp + (1.0 - alpha) * ip) / den);
    let privc = capacity(alpha * sp / den);
    let mix = capacity((alpha * sp + (1.0 - alpha) * ip) / den);
    let t1 = capacity(sp / den);
    let t2 = 0.5 * (full + privc);
    let t4 = (full + privc + mix) / 3.0;
    t1.min(t2).min(mix).min(t4)
}

/// Symmetric-rate cap of the outer bound; zero once the jammer dominates.
pub fn sym_outer(s: f64, i: f64, j: f64) -> f64 {
    if s <= j {
        return 0.0;
    }
    let sp = s / (1.0 + j);
    let ip = i / (1.0 + j);
    let pair = 0.5 * (capacity(sp / (1.0 + ip)) + capacity(sp + ip));
    let sum = capacity((sp + ip + ip * ip) / (1.0 + ip));
    let triple = (capacity(sp / (1.0 + ip)) + capacity(sp + ip) + sum) / 3.0;
    capacity(sp).min(pair).min(sum).min(triple)
}

/// Grid maximum of [`sym_rate_at_alpha`] over all splits, ignoring jammer
/// feasibility. Ties break toward the smaller alpha.
pub fn sym_hk(s: f64, i: f64, j: f64, grid_step: f64) -> f64 {
    if s <= j {
        return 0.0;
    }
    let (n, nf) = alpha_grid(grid_step);
    let vals = exec::map_indexed(n + 1, |k| sym_rate_at_alpha(s, i, j, k as f64 / nf));
    vals.into_iter().fold(0.0, |best, v| if v > best { v } else { best })
}

/// Grid maximum over the jammer-feasible splits only; zero when the jammer
/// dominates or no grid point is feasible.
pub fn sym_tilde(s: f64, i: f64, j: f64, grid_step: f64) -> f64 {
    if s <= j {
        return 0.0;
    }
    let (n, nf) = alpha_grid(grid_step);
    let vals = exec::map_indexed(n + 1, |k| {
        let a = k as f64 / nf;
        if a * s + (1.0 - a) * i > j {
            sym_rate_at_alpha(s, i, j, a)
        } else {
            f64::NEG_INFINITY
        }
    });
    vals.into_iter().fold(0.0, |best, v| if v > best { v } else { best })
}

/// Symmetric rate at the closed-form split `alpha = 1 / (1 + I')`.
pub fn sym_suboptimal_alpha(s: f64, i: f64, j: f64) -> f64 {
    if s <= j {
        return 0.0;
    }
    let ip = i / (1.0 + j);
    sym_rate_at_alpha(s, i, j, 1.0 / (1.0 + ip))
}

/// Symmetric-capacity sandwich `(lower, upper)`: the feasible-split grid
/// maximum against the outer-bound cap. Both are zero once `S <= J`.
pub fn symcap_bounds(s: f64, i: f64, j: f64, grid_step: f64) -> (f64, f64) {
    (sym_tilde(s, i, j, grid_step), sym_outer(s, i, j))
}

/// Interference-regime label for the lifted ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Weak,
    Strong,
    Mixed,
}

fn weak_lhs(ij_prime: f64, si_prime: f64, ii_prime: f64) -> f64 {
    if ij_prime == 0.0 {
        0.0
    } else if si_prime == 0.0 {
        f64::INFINITY
    } else {
        (ij_prime / si_prime).sqrt() * (1.0 + ii_prime)
    }
}

/// Classify at a supplied correlation pair `(rho1, rho2)`:
/// strong when `I2' >= S1'` and `I1' >= S2'`; weak when
/// `sqrt(I_j'/S_i') (1 + I_i') <= rho_i (1 - rho_j)` for both orders.
pub fn regime_classify(p: &NormalizedParams, rho1: f64, rho2: f64) -> Regime {
    if p.i2_prime() >= p.s1_prime() && p.i1_prime() >= p.s2_prime() {
        return Regime::Strong;
    }
    let lhs1 = weak_lhs(p.i2_prime(), p.s1_prime(), p.i1_prime());
    let lhs2 = weak_lhs(p.i1_prime(), p.s2_prime(), p.i2_prime());
    if lhs1 <= rho1 * (1.0 - rho2) && lhs2 <= rho2 * (1.0 - rho1) {
        Regime::Weak
    } else {
        Regime::Mixed
    }
}

/// Classification with the correlation pair searched on a 0.01 grid over
/// `[0,1]^2`.
pub fn regime_classify_search(p: &NormalizedParams) -> Regime {
    if p.i2_prime() >= p.s1_prime() && p.i1_prime() >= p.s2_prime() {
        return Regime::Strong;
    }
    let lhs1 = weak_lhs(p.i2_prime(), p.s1_prime(), p.i1_prime());
    let lhs2 = weak_lhs(p.i1_prime(), p.s2_prime(), p.i2_prime());
    for r1 in 0..=100 {
        let rho1 = r1 as f64 / 100.0;
        for r2 in 0..=100 {
            let rho2 = r2 as f64 / 100.0;
            if lhs1 <= rho1 * (1.0 - rho2) && lhs2 <= rho2 * (1.0 - rho1) {
                return Regime::Weak;
            }
        }
    }
    Regime::Mixed
}

/// The split used by the constant-gap argument: `alpha_1 = 1/(1+I2')`,
/// `alpha_2 = 1/(1+I1')`.
pub fn half_bit_alpha(p: &NormalizedParams) -> AlphaPair {
    AlphaPair {
        alpha1: 1.0 / (1.0 + p.i2_prime()),
        alpha2: 1.0 / (1.0 + p.i1_prime()),
    }
}

/// True when the constant-gap split is jammer-feasible, so the achievable
/// bound is guaranteed within half a bit of the outer bound. Requires
/// `S > J` componentwise; returns false otherwise.
pub fn half_bit_certificate(p: &NormalizedParams) -> bool {
    if p.jammer_dominates() {
        return false;
    }
    alpha_feasible(p, half_bit_alpha(p))
}

/// Both ways of writing the certificate condition, for audit output.
///
/// `feasibility_lhs[i] > jnr[i]` is the implemented test (the split
/// feasibility condition evaluated at the constant-gap split).
/// `printed_rhs` is the alternative closed form `S_i/(1+I_j') + I_i^2/(1+I_i')`
/// sometimes quoted for the same condition; the two do not agree
/// algebraically, which is why both are surfaced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfBitDiagnostics {
    pub alpha: AlphaPair,
    pub feasibility_lhs: [f64; 2],
    pub jnr: [f64; 2],
    pub printed_rhs: [f64; 2],
    pub certificate: bool,
    pub printed_holds: bool,
}

pub fn half_bit_diagnostics(p: &NormalizedParams) -> HalfBitDiagnostics {
    let a = half_bit_alpha(p);
    let lhs1 = a.alpha1 * p.s1 + (1.0 - a.alpha2) * p.i1;
    let lhs2 = a.alpha2 * p.s2 + (1.0 - a.alpha1) * p.i2;
    let printed1 = p.s1 / (1.0 + p.i2_prime()) + p.i1 * p.i1 / (1.0 + p.i1_prime());
    let printed2 = p.s2 / (1.0 + p.i1_prime()) + p.i2 * p.i2 / (1.0 + p.i2_prime());
    HalfBitDiagnostics {
        alpha: a,
        feasibility_lhs: [lhs1, lhs2],
        jnr: [p.j1, p.j2],
        printed_rhs: [printed1, printed2],
        certificate: half_bit_certificate(p),
        printed_holds: p.j1 < printed1 && p.j2 < printed2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s1: f64, s2: f64, i1: f64, i2: f64, j1: f64, j2: f64) -> NormalizedParams {
        NormalizedParams::new(s1, s2, i1, i2, j1, j2).unwrap()
    }

    #[test]
    fn outer_no_interference_point_to_point() {
        let p = params(4.0, 4.0, 0.0, 0.0, 0.0, 0.0);
        let r = outer_region(&p);
        let c4 = capacity(4.0);
        assert!((c4 - 1.1609640474436813).abs() < 1e-12);
        assert_eq!(r.membership(1.16, 1.16), Membership::Inside);
        assert_eq!(r.membership(1.17, 0.0), Membership::Outside);
        assert_eq!(r.membership(c4, 0.0), Membership::Boundary);
    }

    #[test]
    fn outer_empty_when_jammer_dominates() {
        let p = params(1.0, 1.0, 0.0, 0.0, 2.0, 2.0);
        assert!(outer_region(&p).empty);
        assert_eq!(outer_region(&p).membership(0.1, 0.1), Membership::Outside);

        // Boundary case S == J is empty too.
        let q = params(1.0, 1.0, 0.5, 0.5, 1.0, 0.0);
        assert!(outer_region(&q).empty);
    }

    #[test]
    fn outer_depends_only_on_lifted_ratios() {
        let jammed = params(4.0, 4.0, 3.0, 3.0, 1.0, 1.0);
        let lifted = params(2.0, 2.0, 1.5, 1.5, 0.0, 0.0);
        let a = outer_region(&jammed);
        let b = outer_region(&lifted);
        for (ha, hb) in a.halfspaces.iter().zip(&b.halfspaces) {
            assert_eq!((ha.a1, ha.a2), (hb.a1, hb.a2));
            assert!((ha.b - hb.b).abs() < 1e-12);
        }
    }

    #[test]
    fn hk_tin_sum_constraint() {
        // All-private splits: the mixed sum cap is C(S'/(1+I')) per user.
        let p = params(4.0, 4.0, 3.0, 3.0, 0.0, 0.0);
        let r = hk_region(&p, AlphaPair::new(1.0, 1.0).unwrap());
        let tin = capacity(4.0 / 4.0) + capacity(4.0 / 4.0);
        let sum = r
            .halfspaces
            .iter()
            .filter(|h| (h.a1, h.a2) == (1, 1))
            .map(|h| h.b)
            .fold(f64::INFINITY, f64::min);
        assert!((sum - tin).abs() < 1e-12);
        assert!(r.open);
    }

    #[test]
    fn hk_common_only_strong_interference() {
        // All-common splits with I' >= S': single-rate caps C(S'), pair caps C(S'+I').
        let p = params(2.0, 2.0, 3.0, 3.0, 0.0, 0.0);
        let r = hk_region(&p, AlphaPair::new(0.0, 0.0).unwrap());
        let single: Vec<f64> = r
            .halfspaces
            .iter()
            .filter(|h| h.a1 + h.a2 == 1)
            .map(|h| h.b)
            .collect();
        for b in single {
            assert!((b - capacity(2.0)).abs() < 1e-12);
        }
        let pair_min = r
            .halfspaces
            .iter()
            .filter(|h| (h.a1, h.a2) == (1, 1))
            .map(|h| h.b)
            .fold(f64::INFINITY, f64::min);
        assert!((pair_min - capacity(5.0)).abs() < 1e-12);
    }

    #[test]
    fn hk_symmetric_vertex_common_only() {
        // S' = I' = 2, alpha = 0: symmetric corner at C(4)/2.
        let p = params(2.0, 2.0, 2.0, 2.0, 0.0, 0.0);
        let r = hk_region(&p, AlphaPair::new(0.0, 0.0).unwrap());
        let expect = 0.5 * capacity(4.0);
        assert!((expect - 0.5804820237218406).abs() < 1e-12);

        // Independent check: densely scan the diagonal for the largest
        // contained rate.
        let mut best = 0.0;
        let mut r_diag = 0.0;
        while r_diag < 1.0 {
            if r.membership(r_diag, r_diag) != Membership::Outside {
                best = r_diag;
            }
            r_diag += 1e-4;
        }
        assert!((best - expect).abs() < 2e-4, "scan found {best}, expected {expect}");
        assert!((sym_rate_at_alpha(2.0, 2.0, 0.0, 0.0) - expect).abs() < 1e-12);
    }

    #[test]
    fn alpha_feasibility_cases() {
        let p = params(4.0, 4.0, 3.0, 3.0, 3.5, 3.5);
        assert!(alpha_feasible(&p, AlphaPair::new(1.0, 1.0).unwrap()));
        assert!(!alpha_feasible(&p, AlphaPair::new(0.0, 0.0).unwrap()));

        let free = params(4.0, 4.0, 3.0, 3.0, 0.0, 0.0);
        for a in [0.0, 0.3, 1.0] {
            assert!(alpha_feasible(&free, AlphaPair::new(a, a).unwrap()));
        }
    }

    #[test]
    fn tilde_union_feasibility_filtering() {
        // Without jammers the constraint only removes the two grid corners
        // where one user is all-common while the other is all-private, since
        // there the left side is exactly zero and the inequality is strict.
        let free = params(4.0, 4.0, 3.0, 3.0, 0.0, 0.0);
        let union = tilde_inner_region(&free, 0.1);
        assert_eq!(union.members.len(), 11 * 11 - 2);
        assert!(!union
            .members
            .iter()
            .any(|(a, _)| (a.alpha1, a.alpha2) == (0.0, 1.0) || (a.alpha1, a.alpha2) == (1.0, 0.0)));

        // Jammer at least as strong as the signal: empty union.
        let dead = params(1.0, 1.0, 0.0, 0.0, 2.0, 2.0);
        assert!(tilde_inner_region(&dead, 0.1).is_empty());
        assert_eq!(tilde_inner_region(&dead, 0.1).membership(0.01, 0.01), Membership::Outside);

        // Treat-interference-as-noise corner is in the union when alpha = 1 is
        // feasible, and the union's symmetric reach matches the grid scan.
        let p = params(4.0, 4.0, 3.0, 3.0, 3.5, 3.5);
        let union = tilde_inner_region(&p, 0.01);
        assert!(!union.is_empty());
        let tin = capacity(p.s1_prime() / (1.0 + p.i1_prime()));
        assert_ne!(union.membership(tin - 1e-6, tin - 1e-6), Membership::Outside);

        let mut reach = 0.0;
        let mut r = 0.0;
        while r < 1.0 {
            if union.membership(r, r) != Membership::Outside {
                reach = r;
            }
            r += 1e-4;
        }
        let want = sym_tilde(4.0, 3.0, 3.5, 0.01);
        assert!((reach - want).abs() < 2e-4, "diagonal reach {reach} vs scan {want}");
        assert!(want >= tin);
    }

    #[test]
    fn union_membership_monotone_in_grid_refinement() {
        let p = params(5.0, 4.0, 2.0, 3.0, 1.5, 1.0);
        let coarse = tilde_inner_region(&p, 0.1);
        let fine = tilde_inner_region(&p, 0.05);
        // Coarse grid points are a subset of fine grid points, so coarse
        // membership implies fine membership.
        for k in 0..40 {
            let r1 = k as f64 * 0.03;
            let r2 = (39 - k) as f64 * 0.02;
            if coarse.membership(r1, r2) == Membership::Inside {
                assert_eq!(fine.membership(r1, r2), Membership::Inside);
            }
        }
        assert!(fine.members.len() >= coarse.members.len());
    }

    #[test]
    fn symcap_no_jammer_reduces_to_unconstrained() {
        // J = 0 keeps every split feasible, so tilde and the unconstrained
        // scan agree exactly.
        let (lo, up) = symcap_bounds(4.0, 3.0, 0.0, 1e-3);
        assert_eq!(lo, sym_hk(4.0, 3.0, 0.0, 1e-3));
        assert!(lo <= up);
        assert!(lo > 0.5 && up < 1.2);
    }

    #[test]
    fn symcap_zero_when_jammer_dominates() {
        assert_eq!(symcap_bounds(4.0, 3.0, 5.0, 1e-3), (0.0, 0.0));
        assert_eq!(symcap_bounds(4.0, 3.0, 4.0, 1e-3), (0.0, 0.0));
        assert_eq!(sym_hk(4.0, 3.0, 4.0, 1e-3), 0.0);
        assert_eq!(sym_suboptimal_alpha(4.0, 3.0, 4.0), 0.0);
    }

    #[test]
    fn symcap_reference_values() {
        // Frozen from an independent implementation of the same formulas.
        let (lo, up) = symcap_bounds(4.0, 3.0, 1.0, 1e-3);
        assert!((lo - 0.5499180509650183).abs() < 1e-12, "lower={lo}");
        assert!((up - 0.7544804769993155).abs() < 1e-12, "upper={up}");
    }

    #[test]
    fn membership_edge_cases() {
        assert_eq!(RateRegion::empty_region().membership(0.1, 0.1), Membership::Outside);

        let p = params(4.0, 4.0, 0.0, 0.0, 0.0, 0.0);
        let r = outer_region(&p);
        assert_eq!(r.membership(0.0, 0.0), Membership::Inside);
        assert_eq!(r.membership(-0.01, 0.1), Membership::Outside);
    }

    #[test]
    fn regime_examples() {
        let no_interference = params(4.0, 4.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(regime_classify(&no_interference, 0.5, 0.5), Regime::Weak);

        let strong = params(2.0, 2.0, 2.0, 2.0, 0.0, 0.0);
        assert_eq!(regime_classify_search(&strong), Regime::Strong);

        let p = params(4.0, 4.0, 3.0, 3.0, 3.5, 3.5);
        assert!(p.i2_prime() < p.s1_prime());
        assert_ne!(regime_classify_search(&p), Regime::Strong);
        assert_eq!(regime_classify_search(&p), Regime::Mixed);
    }

    #[test]
    fn half_bit_certificate_cases() {
        // No jammer: always certified.
        let free = params(6.0, 2.0, 4.0, 1.0, 0.0, 0.0);
        assert!(half_bit_certificate(&free));

        // High signal-to-noise with a moderate jammer: certified.
        let high = params(10.0, 10.0, 3.0, 3.0, 3.5, 3.5);
        assert!(half_bit_certificate(&high));

        // S=4, I=3, J=3.9: the constant-gap split gives
        // 0.6203*4 + 0.3797*3 = 3.620 < 3.9, so not certified.
        let tight = params(4.0, 4.0, 3.0, 3.0, 3.9, 3.9);
        assert!(!half_bit_certificate(&tight));
        let diag = half_bit_diagnostics(&tight);
        assert!((diag.feasibility_lhs[0] - 3.620).abs() < 1e-3);
        assert!(!diag.certificate);

        // Jammer-dominated params are never certified.
        let dead = params(1.0, 1.0, 3.0, 3.0, 2.0, 0.0);
        assert!(!half_bit_certificate(&dead));
    }
}
