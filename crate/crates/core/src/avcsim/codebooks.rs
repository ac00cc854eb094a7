//! Seeded Gaussian codebooks and the power-fallback encoder.

use rand::Rng;
use rand_distr::StandardNormal;

use super::SimConfig;
use crate::error::Result;

/// Number of common and private codewords per user.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MessageCounts {
    pub common: [usize; 2],
    pub private: [usize; 2],
}

/// The four codebooks of a run. Private books are indexed by the pair
/// `(m_common, m_private)` because each common word carries its own cloud of
/// private words.
#[derive(Debug, Clone)]
pub struct Codebooks {
    pub n: usize,
    pub counts: MessageCounts,
    /// Per-sample variance of each user's common book: `(1-gamma)(1-alpha_u) P_u`.
    pub common_var: [f64; 2],
    /// Per-sample variance of each user's private book: `(1-gamma) alpha_u P_u`.
    pub private_var: [f64; 2],
    pub(crate) common: [Vec<Vec<f64>>; 2],
    pub(crate) private: [Vec<Vec<f64>>; 2],
}

impl Codebooks {
    pub fn common_word(&self, user: usize, m: usize) -> &[f64] {
        &self.common[user][m]
    }

    pub fn private_word(&self, user: usize, m_common: usize, m_private: usize) -> &[f64] {
        &self.private[user][m_common * self.counts.private[user] + m_private]
    }
}

fn gaussian_word(rng: &mut impl Rng, n: usize, std: f64) -> Vec<f64> {
    (0..n).map(|_| std * rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Draw all four codebooks from the run seed. Bit-identical for identical
/// `(seed, config)`.
pub fn build_codebooks(sc: &SimConfig) -> Result<Codebooks> {
    sc.validate()?;
    let counts = sc.message_counts();
    let powers = [sc.channel.p1, sc.channel.p2];
    let alphas = [sc.alpha.alpha1, sc.alpha.alpha2];
    let scale = 1.0 - sc.gamma;

    let mut common: [Vec<Vec<f64>>; 2] = [Vec::new(), Vec::new()];
    let mut private: [Vec<Vec<f64>>; 2] = [Vec::new(), Vec::new()];
    let mut common_var = [0.0; 2];
    let mut private_var = [0.0; 2];

    for user in 0..2 {
        common_var[user] = scale * (1.0 - alphas[user]) * powers[user];
        private_var[user] = scale * alphas[user] * powers[user];
        let c_std = common_var[user].sqrt();
        let p_std = private_var[user].sqrt();

        let mut rng = super::codebook_stream(sc.seed, 2 * user as u64);
        common[user] = (0..counts.common[user])
            .map(|_| gaussian_word(&mut rng, sc.n, c_std))
            .collect();

        let mut rng = super::codebook_stream(sc.seed, 2 * user as u64 + 1);
        private[user] = (0..counts.common[user] * counts.private[user])
            .map(|_| gaussian_word(&mut rng, sc.n, p_std))
            .collect();
    }

    Ok(Codebooks { n: sc.n, counts, common_var, private_var, common, private })
}

/// Superpose the selected common and private words, falling back to the
/// all-zero block when the sum would break the transmit power constraint.
/// The output always satisfies `||x||^2 <= n * power_limit`.
pub fn encode(
    cb: &Codebooks,
    user: usize,
    m_common: usize,
    m_private: usize,
    power_limit: f64,
) -> Vec<f64> {
    let c = cb.common_word(user, m_common);
    let p = cb.private_word(user, m_common, m_private);
    let x: Vec<f64> = c.iter().zip(p).map(|(a, b)| a + b).collect();
    let energy: f64 = x.iter().map(|v| v * v).sum();
    if energy <= cb.n as f64 * power_limit {
        x
    } else {
        vec![0.0; cb.n]
    }
}
