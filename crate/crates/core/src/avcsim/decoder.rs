//! Minimum-distance decoding over a second-moment typical set.
//!
//! A receiver enumerates every (own common, own private, other common)
//! triple, keeps the candidates whose scaled codewords and residual pass the
//! pairwise second-moment checks, and returns the surviving triple with the
//! smallest residual norm (ties broken toward the lexicographically smallest
//! triple). Codeword-only quantities are precomputed per codebook so a trial
//! costs one inner product per codeword plus a constant-time candidate scan.

use super::codebooks::Codebooks;
use crate::params::ChannelConfig;

/// Per-receiver decode tables: scaled codewords, their Gram products and the
/// codeword-only typicality verdicts.
#[derive(Debug, Clone)]
pub struct DecoderWorkspace {
    n: usize,
    epsilon: f64,
    counts: [usize; 3],
    books: [Vec<Vec<f64>>; 3],
    norms: [Vec<f64>; 3],
    vars: [f64; 3],
    /// Gram tables between book pairs: (own-common, own-private) indexed by
    /// the private word's flat index, (own-common, other-common), and
    /// (own-private, other-common).
    gram_cp: Vec<f64>,
    gram_cx: Vec<f64>,
    gram_px: Vec<f64>,
    static_ok_cp: Vec<bool>,
    static_ok_cx: Vec<bool>,
    static_ok_px: Vec<bool>,
    pow_ok: [Vec<bool>; 3],
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl DecoderWorkspace {
    /// Build the tables for `receiver` (0-based) from the run codebooks.
    pub fn new(cb: &Codebooks, receiver: usize, cfg: &ChannelConfig, epsilon: f64) -> Self {
        let own = receiver;
        let other = 1 - receiver;
        let (g_own, g_cross) = match receiver {
            0 => (cfg.h11, cfg.h12),
            _ => (cfg.h22, cfg.h21),
        };
        let n = cb.n;
        let m_c = cb.counts.common[own];
        let m_p = cb.counts.private[own];
        let m_x = cb.counts.common[other];

        let scale_book = |words: Vec<&[f64]>, g: f64| -> Vec<Vec<f64>> {
            words.into_iter().map(|w| w.iter().map(|v| g * v).collect()).collect()
        };
        let book_c = scale_book((0..m_c).map(|m| cb.common_word(own, m)).collect(), g_own);
        let book_p = scale_book(
            (0..m_c)
                .flat_map(|mc| (0..m_p).map(move |mp| (mc, mp)))
                .map(|(mc, mp)| cb.private_word(own, mc, mp))
                .collect(),
            g_own,
        );
        let book_x = scale_book((0..m_x).map(|m| cb.common_word(other, m)).collect(), g_cross);

        let vars = [
            g_own * g_own * cb.common_var[own],
            g_own * g_own * cb.private_var[own],
            g_cross * g_cross * cb.common_var[other],
        ];
        let norms = [
            book_c.iter().map(|w| dot(w, w)).collect::<Vec<_>>(),
            book_p.iter().map(|w| dot(w, w)).collect::<Vec<_>>(),
            book_x.iter().map(|w| dot(w, w)).collect::<Vec<_>>(),
        ];

        let nf = n as f64;
        let cross_thr = |va: f64, vb: f64| epsilon * (va * vb).sqrt();
        let pow_ok = |norm2: &Vec<f64>, v: f64| -> Vec<bool> {
            norm2.iter().map(|e| (e / nf - v).abs() <= epsilon * v).collect()
        };

        // Private words only ever pair with their own common word.
        let mut gram_cp = vec![0.0; m_c * m_p];
        let mut static_ok_cp = vec![false; m_c * m_p];
        for mc in 0..m_c {
            for mp in 0..m_p {
                let idx = mc * m_p + mp;
                let g = dot(&book_c[mc], &book_p[idx]);
                gram_cp[idx] = g;
                static_ok_cp[idx] = (g / nf).abs() <= cross_thr(vars[0], vars[1]);
            }
        }
        let mut gram_cx = vec![0.0; m_c * m_x];
        let mut static_ok_cx = vec![false; m_c * m_x];
        for mc in 0..m_c {
            for mx in 0..m_x {
                let g = dot(&book_c[mc], &book_x[mx]);
                gram_cx[mc * m_x + mx] = g;
                static_ok_cx[mc * m_x + mx] = (g / nf).abs() <= cross_thr(vars[0], vars[2]);
            }
        }
        let mut gram_px = vec![0.0; m_c * m_p * m_x];
        let mut static_ok_px = vec![false; m_c * m_p * m_x];
        for pi in 0..m_c * m_p {
            for mx in 0..m_x {
                let g = dot(&book_p[pi], &book_x[mx]);
                gram_px[pi * m_x + mx] = g;
                static_ok_px[pi * m_x + mx] = (g / nf).abs() <= cross_thr(vars[1], vars[2]);
            }
        }

        DecoderWorkspace {
            n,
            epsilon,
            counts: [m_c, m_p, m_x],
            pow_ok: [
                pow_ok(&norms[0], vars[0]),
                pow_ok(&norms[1], vars[1]),
                pow_ok(&norms[2], vars[2]),
            ],
            books: [book_c, book_p, book_x],
            norms,
            vars,
            gram_cp,
            gram_cx,
            gram_px,
            static_ok_cp,
            static_ok_cx,
            static_ok_px,
        }
    }

    /// Residual statistics for one candidate, or `None` when it falls
    /// outside the typical set. Returns the squared residual norm.
    #[allow(clippy::too_many_arguments)]
    fn candidate(
        &self,
        y_norm2: f64,
        dy: &[Vec<f64>; 3],
        mc: usize,
        mp: usize,
        mx: usize,
    ) -> Option<f64> {
        let pi = mc * self.counts[1] + mp;
        if !(self.pow_ok[0][mc] && self.pow_ok[1][pi] && self.pow_ok[2][mx]) {
            return None;
        }
        if !(self.static_ok_cp[pi]
            && self.static_ok_cx[mc * self.counts[2] + mx]
            && self.static_ok_px[pi * self.counts[2] + mx])
        {
            return None;
        }
        let g_cp = self.gram_cp[pi];
        let g_cx = self.gram_cx[mc * self.counts[2] + mx];
        let g_px = self.gram_px[pi * self.counts[2] + mx];
        let (d1, d2, d3) = (dy[0][mc], dy[1][pi], dy[2][mx]);
        let (n1, n2, n3) = (self.norms[0][mc], self.norms[1][pi], self.norms[2][mx]);

        let r_norm2 = (y_norm2 - 2.0 * (d1 + d2 + d3)
            + n1
            + n2
            + n3
            + 2.0 * (g_cp + g_cx + g_px))
            .max(0.0);
        let r_pow = r_norm2 / self.n as f64;

        // Residual must be uncorrelated with each scaled codeword. The small
        // variance-relative floor keeps exact-recovery residuals (all
        // rounding noise) inside the set.
        let nf = self.n as f64;
        let r_dot = [
            d1 - n1 - g_cp - g_cx,
            d2 - g_cp - n2 - g_px,
            d3 - g_cx - g_px - n3,
        ];
        for (k, rd) in r_dot.iter().enumerate() {
            let thr = self.epsilon * (self.vars[k] * r_pow).sqrt() + 1e-9 * self.vars[k];
            if (rd / nf).abs() > thr {
                return None;
            }
        }
        Some(r_norm2)
    }

    fn y_products(&self, y: &[f64]) -> (f64, [Vec<f64>; 3]) {
        let y_norm2 = dot(y, y);
        let dy = [
            self.books[0].iter().map(|w| dot(y, w)).collect::<Vec<_>>(),
            self.books[1].iter().map(|w| dot(y, w)).collect::<Vec<_>>(),
            self.books[2].iter().map(|w| dot(y, w)).collect::<Vec<_>>(),
        ];
        (y_norm2, dy)
    }

    /// Decode one received block: `Some([own_common, own_private,
    /// other_common])` or `None` when no candidate is typical.
    pub fn decode(&self, y: &[f64]) -> Option<[u32; 3]> {
        self.decode_with_sent(y, None).0
    }

    /// Decode and simultaneously report whether the transmitted triple
    /// itself lies in the typical set (needed for error attribution).
    pub fn decode_with_sent(
        &self,
        y: &[f64],
        sent: Option<[usize; 3]>,
    ) -> (Option<[u32; 3]>, bool) {
        assert_eq!(y.len(), self.n, "received block has the wrong length");
        let (y_norm2, dy) = self.y_products(y);
        let mut best: Option<(f64, [u32; 3])> = None;
        for mc in 0..self.counts[0] {
            for mp in 0..self.counts[1] {
                for mx in 0..self.counts[2] {
                    if let Some(d) = self.candidate(y_norm2, &dy, mc, mp, mx) {
                        // Strict improvement keeps the lexicographically
                        // smallest triple on exact ties.
                        if best.map_or(true, |(bd, _)| d < bd) {
                            best = Some((d, [mc as u32, mp as u32, mx as u32]));
                        }
                    }
                }
            }
        }
        let sent_typical = sent
            .map(|[mc, mp, mx]| self.candidate(y_norm2, &dy, mc, mp, mx).is_some())
            .unwrap_or(false);
        (best.map(|(_, t)| t), sent_typical)
    }
}

/// One-shot decode for receiver `receiver` without keeping the workspace.
pub fn decode(
    cb: &Codebooks,
    receiver: usize,
    y: &[f64],
    cfg: &ChannelConfig,
    epsilon: f64,
) -> Option<[u32; 3]> {
    DecoderWorkspace::new(cb, receiver, cfg, epsilon).decode(y)
}
