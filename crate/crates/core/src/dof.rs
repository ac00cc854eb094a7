//! Symmetric degrees of freedom.
//!
//! High-power scaling of the symmetric capacity when interference and jammer
//! powers grow as `S^beta` and `S^delta`: closed form plus the numeric
//! bound ladder used to sanity-check it.

use serde::{Deserialize, Serialize};

use crate::params::capacity;
use crate::regions::{sym_outer, sym_tilde};

/// Geometric power ladder used for limit checks; tolerances apply at the top
/// rung only since convergence is logarithmic in `S`.
pub const S_LADDER: [f64; 5] = [1e2, 1e3, 1e4, 1e5, 1e6];

/// One evaluated point of the degrees-of-freedom surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DofPoint {
    pub beta: f64,
    pub delta: f64,
    pub value: f64,
}

/// Closed-form symmetric degrees of freedom:
/// `min{ max(0, 1-d), max(0, 1-b, b-d), max(0, 1-b/2-d/2, b/2-d/2) }`.
pub fn dof_closed_form(beta: f64, delta: f64) -> f64 {
    assert!(beta >= 0.0 && delta >= 0.0, "exponents must be nonnegative");
    let m1 = (1.0 - delta).max(0.0);
    let m2 = (1.0 - beta).max(beta - delta).max(0.0);
    let m3 = (1.0 - beta / 2.0 - delta / 2.0).max(beta / 2.0 - delta / 2.0).max(0.0);
    m1.min(m2).min(m3)
}

/// Normalized symmetric-capacity bounds along an `S` ladder:
/// for each `S`, `(S, lower/C(S), upper/C(S))` with `I = S^beta`,
/// `J = S^delta`. Both sequences approach [`dof_closed_form`] as `S` grows.
pub fn dof_numeric(
    beta: f64,
    delta: f64,
    s_list: &[f64],
    alpha_step: f64,
) -> Vec<(f64, f64, f64)> {
    s_list
        .iter()
        .map(|&s| {
            assert!(s > 0.0, "S ladder entries must be positive");
            let i = s.powf(beta);
            let j = s.powf(delta);
            let c = capacity(s);
            (s, sym_tilde(s, i, j, alpha_step) / c, sym_outer(s, i, j) / c)
        })
        .collect()
}

/// Whether the closed-form split `alpha = (1+S^delta)/(1+S^delta+S^beta)`
/// is jammer-feasible at scale `S`: evaluates
/// `alpha S + (1-alpha) S^beta > S^delta`. Holds for every large enough `S`
/// when `delta < 1`.
pub fn suboptimal_alpha_feasible_at_scale(beta: f64, delta: f64, s: f64) -> bool {
    debug_assert!(delta < 1.0, "only meaningful below the emptiness threshold");
    let i = s.powf(beta);
    let j = s.powf(delta);
    let alpha = (1.0 + j) / (1.0 + j + i);
    alpha * s + (1.0 - alpha) * i > j
}
