//! Iterative centralities: eigenvector centrality, PageRank (TextRank
//! weighting) and PositionRank.

use crate::error::{Error, Result};
use crate::graph::TextGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankConfig {
    /// PageRank damping factor.
    pub damping: f64,
    /// PositionRank damping factor.
    pub alpha: f64,
    /// Stop when successive iterates differ by less than this in max-norm.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for RankConfig {
    fn default() -> Self {
        Self {
            damping: 0.85,
            alpha: 0.85,
            tolerance: 1e-6,
            max_iterations: 200,
        }
    }
}

impl RankConfig {
    pub fn validate(&self) -> Result<()> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if !open_unit(self.damping) {
            return Err(Error::InvalidConfig(format!(
                "damping {} not in (0, 1)",
                self.damping
            )));
        }
        if !open_unit(self.alpha) {
            return Err(Error::InvalidConfig(format!(
                "alpha {} not in (0, 1)",
                self.alpha
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tolerance {} must be > 0",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        Ok(())
    }
}

/// Result of an iterative ranking. When `converged` is false the values are
/// the last iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct Scores {
    pub values: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Dominant eigenvector of the weighted adjacency matrix, unit Euclidean
/// length, nonnegative.
///
/// Iterates `x <- (W + I) x` from the uniform vector. The shift leaves the
/// dominant eigenvector unchanged and keeps bipartite graphs (stars, paths)
/// from oscillating between two iterates.
pub fn eigenvector_centrality(g: &TextGraph, cfg: &RankConfig) -> Scores {
    let n = g.node_count();
    if n == 0 {
        return Scores {
            values: Vec::new(),
            iterations: 0,
            converged: true,
        };
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for it in 1..=cfg.max_iterations {
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = x[i]
                + g.neighbors(i)
                    .iter()
                    .map(|&(j, w)| w as f64 * x[j])
                    .sum::<f64>();
        }
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        next.iter_mut().for_each(|v| *v /= norm);
        let delta = max_abs_diff(&x, &next);
        std::mem::swap(&mut x, &mut next);
        if delta < cfg.tolerance {
            return Scores {
                values: x,
                iterations: it,
                converged: true,
            };
        }
    }
    Scores {
        values: x,
        iterations: cfg.max_iterations,
        converged: false,
    }
}

/// Weighted out-strength used to normalize transition weights.
fn strengths(g: &TextGraph) -> Vec<f64> {
    (0..g.node_count())
        .map(|i| g.neighbors(i).iter().map(|&(_, w)| w as f64).sum())
        .collect()
}

/// One application of `S_i = base_i + d * sum_j (w_ji / s_j) S_j`.
fn propagate(
    g: &TextGraph,
    strength: &[f64],
    damping: f64,
    base: &[f64],
    from: &[f64],
    to: &mut [f64],
) {
    for (i, slot) in to.iter_mut().enumerate() {
        let flow: f64 = g
            .neighbors(i)
            .iter()
            .map(|&(j, w)| w as f64 / strength[j] * from[j])
            .sum();
        *slot = base[i] + damping * flow;
    }
}

fn iterate_biased(
    g: &TextGraph,
    damping: f64,
    base: Vec<f64>,
    start: Vec<f64>,
    cfg: &RankConfig,
) -> Scores {
    let strength = strengths(g);
    let mut x = start;
    let mut next = vec![0.0; x.len()];
    for it in 1..=cfg.max_iterations {
        propagate(g, &strength, damping, &base, &x, &mut next);
        let delta = max_abs_diff(&x, &next);
        std::mem::swap(&mut x, &mut next);
        if delta < cfg.tolerance {
            return Scores {
                values: x,
                iterations: it,
                converged: true,
            };
        }
    }
    Scores {
        values: x,
        iterations: cfg.max_iterations,
        converged: false,
    }
}

/// TextRank word score `WS_i = (1 - d) + d * sum_j (w_ji / s_j) WS_j`,
/// started from all ones. Scores are not normalized to sum to one.
pub fn pagerank(g: &TextGraph, cfg: &RankConfig) -> Scores {
    let n = g.node_count();
    let d = cfg.damping;
    iterate_biased(g, d, vec![1.0 - d; n], vec![1.0; n], cfg)
}

/// Normalized position bias: each node weighs `sum 1/p` over its occurrence
/// positions, then the weights are scaled to sum to one.
pub fn position_bias(g: &TextGraph) -> Vec<f64> {
    let raw: Vec<f64> = (0..g.node_count())
        .map(|i| g.positions(i).iter().map(|&p| 1.0 / p as f64).sum())
        .collect();
    let total: f64 = raw.iter().sum();
    if total > 0.0 {
        raw.iter().map(|w| w / total).collect()
    } else {
        vec![1.0 / raw.len().max(1) as f64; raw.len()]
    }
}

/// `S_i = (1 - a) p_i + a * sum_j (w_ji / s_j) S_j` with `p` from
/// [`position_bias`], started from `p`.
pub fn position_rank(g: &TextGraph, cfg: &RankConfig) -> Scores {
    let bias = position_bias(g);
    let a = cfg.alpha;
    let base = bias.iter().map(|p| (1.0 - a) * p).collect();
    iterate_biased(g, a, base, bias, cfg)
}
