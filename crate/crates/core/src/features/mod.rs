//! Node properties of a text graph and the per-document feature vectors
//! built from them.

mod rank;
mod structure;

pub use rank::{
    eigenvector_centrality, pagerank, position_bias, position_rank, RankConfig, Scores,
};
pub use structure::{clustering_coefficient, coreness, strength};

use crate::graph::TextGraph;

/// Column names, in the order used by [`FeatureVector::to_array`].
pub const FEATURE_NAMES: [&str; 6] = [
    "strength",
    "eigenvector",
    "pagerank",
    "positionrank",
    "coreness",
    "clustering_coefficient",
];

pub const FEATURE_COUNT: usize = FEATURE_NAMES.len();

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FeatureVector {
    pub strength: f64,
    pub eigenvector: f64,
    pub pagerank: f64,
    pub positionrank: f64,
    pub coreness: f64,
    pub clustering_coefficient: f64,
}

impl FeatureVector {
    pub fn to_array(&self) -> [f64; FEATURE_COUNT] {
        [
            self.strength,
            self.eigenvector,
            self.pagerank,
            self.positionrank,
            self.coreness,
            self.clustering_coefficient,
        ]
    }

    pub fn from_array(a: [f64; FEATURE_COUNT]) -> Self {
        Self {
            strength: a[0],
            eigenvector: a[1],
            pagerank: a[2],
            positionrank: a[3],
            coreness: a[4],
            clustering_coefficient: a[5],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// Raw (unnormalized) properties of every node of one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeProperties {
    pub strength: Vec<f64>,
    pub eigenvector: Scores,
    pub pagerank: Scores,
    pub positionrank: Scores,
    pub coreness: Vec<u32>,
    pub clustering_coefficient: Vec<f64>,
}

impl NodeProperties {
    pub fn compute(g: &TextGraph, cfg: &RankConfig) -> Self {
        let (
            (strength, coreness),
            (clustering_coefficient, (eigenvector, (pagerank, positionrank))),
        ) = rayon::join(
            || (structure::strength(g), structure::coreness(g)),
            || {
                rayon::join(
                    || structure::clustering_coefficient(g),
                    || {
                        rayon::join(
                            || rank::eigenvector_centrality(g, cfg),
                            || {
                                rayon::join(
                                    || rank::pagerank(g, cfg),
                                    || rank::position_rank(g, cfg),
                                )
                            },
                        )
                    },
                )
            },
        );
        Self {
            strength,
            eigenvector,
            pagerank,
            positionrank,
            coreness,
            clustering_coefficient,
        }
    }

    pub fn converged(&self) -> bool {
        self.eigenvector.converged && self.pagerank.converged && self.positionrank.converged
    }

    pub fn raw_vector(&self, node: usize) -> FeatureVector {
        FeatureVector {
            strength: self.strength[node],
            eigenvector: self.eigenvector.values[node],
            pagerank: self.pagerank.values[node],
            positionrank: self.positionrank.values[node],
            coreness: self.coreness[node] as f64,
            clustering_coefficient: self.clustering_coefficient[node],
        }
    }
}

/// Min-max scaling to `[0, 1]`. A constant column maps to all zeros.
pub fn min_max(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    // also catches NaN and an empty input (-inf)
    if range.is_nan() || range <= 0.0 {
        return vec![0.0; values.len()];
    }
    values
        .iter()
        .map(|v| ((v - lo) / range).clamp(0.0, 1.0))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRecords {
    /// One `(word, normalized features)` row per graph node, in node order.
    pub rows: Vec<(String, FeatureVector)>,
    pub converged: bool,
}

/// Computes the six properties and range-normalizes each within the graph.
pub fn build_feature_records(g: &TextGraph, cfg: &RankConfig) -> FeatureRecords {
    let n = g.node_count();
    if n == 0 {
        return FeatureRecords {
            rows: Vec::new(),
            converged: true,
        };
    }
    let props = NodeProperties::compute(g, cfg);
    if !props.converged() {
        log::warn!(
            "rank iteration did not converge within {} iterations",
            cfg.max_iterations
        );
    }
    if n == 1 {
        log::warn!("single-node graph; features set to 0");
    }
    let raw: Vec<[f64; FEATURE_COUNT]> = (0..n).map(|i| props.raw_vector(i).to_array()).collect();
    let mut normalized = vec![[0.0; FEATURE_COUNT]; n];
    for f in 0..FEATURE_COUNT {
        let column: Vec<f64> = raw.iter().map(|r| r[f]).collect();
        for (row, v) in normalized.iter_mut().zip(min_max(&column)) {
            row[f] = v;
        }
    }
    FeatureRecords {
        rows: g
            .words()
            .iter()
            .cloned()
            .zip(normalized.into_iter().map(FeatureVector::from_array))
            .collect(),
        converged: props.converged(),
    }
}
