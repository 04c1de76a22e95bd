//! Gradient-boosted regression trees with logistic loss.
//!
//! Trees grow level by level. Each split maximizes the reduction in squared
//! error of the residuals `y - p` over thresholds at midpoints between
//! distinct feature values; leaves take the Newton step
//! `sum(r) / (sum(h) + lambda)` with `h = p (1 - p)`.

use super::Samples;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbdtParams {
    pub trees: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub lambda: f64,
}

impl Default for GbdtParams {
    fn default() -> Self {
        Self {
            trees: 100,
            max_depth: 3,
            learning_rate: 0.1,
            lambda: 1.0,
        }
    }
}

impl GbdtParams {
    pub fn validate(&self) -> Result<()> {
        if self.trees == 0 || self.max_depth == 0 {
            return Err(Error::InvalidConfig(
                "GBDT needs trees >= 1 and max_depth >= 1".into(),
            ));
        }
        if self.learning_rate.is_nan()
            || self.learning_rate <= 0.0
            || self.lambda.is_nan()
            || self.lambda < 0.0
        {
            return Err(Error::InvalidConfig(
                "GBDT needs learning_rate > 0 and lambda >= 0".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Node {
    /// Rows with `x[feature] < threshold` go to `left`.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf(f64),
}

/// Flat tree; node 0 is the root.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf(v) => return v,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[feature] < threshold { left } else { right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match nodes[at] {
                Node::Leaf(_) => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gbdt {
    pub initial_score: f64,
    pub learning_rate: f64,
    pub trees: Vec<Tree>,
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Mean logistic loss of raw scores `f` against `labels`.
pub fn logistic_loss(f: &[f64], labels: &[bool]) -> f64 {
    let total: f64 = f
        .iter()
        .zip(labels)
        .map(|(&z, &y)| {
            // log(1 + e^z) - y z, computed stably
            let softplus = if z > 0.0 {
                z + (-z).exp().ln_1p()
            } else {
                z.exp().ln_1p()
            };
            softplus - if y { z } else { 0.0 }
        })
        .sum();
    total / f.len() as f64
}

#[derive(Clone, Copy, Default)]
struct Stats {
    count: f64,
    grad: f64,
}

impl Stats {
    fn add(&mut self, r: f64) {
        self.count += 1.0;
        self.grad += r;
    }

    /// Contribution to the reduction in squared error; `sum^2 / n`.
    fn score(&self) -> f64 {
        if self.count > 0.0 {
            self.grad * self.grad / self.count
        } else {
            0.0
        }
    }
}

#[derive(Clone, Copy)]
struct BestSplit {
    gain: f64,
    feature: usize,
    threshold: f64,
}

/// Row indices sorted by each feature, shared across trees.
struct Presorted {
    by_feature: Vec<Vec<usize>>,
}

impl Presorted {
    fn new(data: &Samples) -> Self {
        let by_feature = (0..data.dim())
            .map(|f| {
                let mut idx: Vec<usize> = (0..data.len()).collect();
                idx.sort_by(|&a, &b| data.row(a)[f].total_cmp(&data.row(b)[f]).then(a.cmp(&b)));
                idx
            })
            .collect();
        Self { by_feature }
    }
}

const MIN_GAIN: f64 = 1e-12;

fn grow_tree(
    data: &Samples,
    sorted: &Presorted,
    resid: &[f64],
    hess: &[f64],
    params: &GbdtParams,
) -> Tree {
    let n = data.len();
    let mut nodes = vec![Node::Leaf(0.0)];
    // node currently holding each row; rows in finished leaves get usize::MAX
    let mut node_of = vec![0usize; n];
    let mut frontier = vec![0usize];

    for _ in 0..params.max_depth {
        if frontier.is_empty() {
            break;
        }
        // slot of each frontier node in the per-level arrays
        let mut slot = vec![usize::MAX; nodes.len()];
        for (s, &node) in frontier.iter().enumerate() {
            slot[node] = s;
        }
        let mut totals = vec![Stats::default(); frontier.len()];
        for i in 0..n {
            if node_of[i] != usize::MAX {
                totals[slot[node_of[i]]].add(resid[i]);
            }
        }
        let mut best: Vec<Option<BestSplit>> = vec![None; frontier.len()];
        for (f, order) in sorted.by_feature.iter().enumerate() {
            let mut left = vec![Stats::default(); frontier.len()];
            let mut last_value = vec![f64::NAN; frontier.len()];
            for &i in order {
                let node = node_of[i];
                if node == usize::MAX {
                    continue;
                }
                let s = slot[node];
                let x = data.row(i)[f];
                if left[s].count > 0.0 && x > last_value[s] {
                    let right = Stats {
                        count: totals[s].count - left[s].count,
                        grad: totals[s].grad - left[s].grad,
                    };
                    let gain = left[s].score() + right.score() - totals[s].score();
                    if gain > MIN_GAIN && best[s].is_none_or(|b| gain > b.gain) {
                        best[s] = Some(BestSplit {
                            gain,
                            feature: f,
                            threshold: 0.5 * (last_value[s] + x),
                        });
                    }
                }
                left[s].add(resid[i]);
                last_value[s] = x;
            }
        }

        let mut next_frontier = Vec::new();
        let mut children = vec![(usize::MAX, usize::MAX); frontier.len()];
        for (s, &node) in frontier.iter().enumerate() {
            if let Some(b) = best[s] {
                let left = nodes.len();
                nodes.push(Node::Leaf(0.0));
                nodes.push(Node::Leaf(0.0));
                nodes[node] = Node::Split {
                    feature: b.feature,
                    threshold: b.threshold,
                    left,
                    right: left + 1,
                };
                children[s] = (left, left + 1);
                next_frontier.extend([left, left + 1]);
            }
        }
        for (i, assigned) in node_of.iter_mut().enumerate() {
            let node = *assigned;
            if node == usize::MAX {
                continue;
            }
            *assigned = match nodes[node] {
                Node::Split {
                    feature, threshold, ..
                } => {
                    let (l, r) = children[slot[node]];
                    if data.row(i)[feature] < threshold {
                        l
                    } else {
                        r
                    }
                }
                Node::Leaf(_) => usize::MAX,
            };
        }
        frontier = next_frontier;
    }

    let mut sums = vec![(0.0, 0.0); nodes.len()];
    let tree = Tree { nodes };
    for i in 0..n {
        let leaf = leaf_index(&tree, data.row(i));
        sums[leaf].0 += resid[i];
        sums[leaf].1 += hess[i];
    }
    let mut nodes = tree.nodes;
    for (node, (g, h)) in nodes.iter_mut().zip(sums) {
        if let Node::Leaf(v) = node {
            *v = g / (h + params.lambda);
        }
    }
    Tree { nodes }
}

fn leaf_index(tree: &Tree, x: &[f64]) -> usize {
    let mut at = 0;
    while let Node::Split {
        feature,
        threshold,
        left,
        right,
    } = tree.nodes[at]
    {
        at = if x[feature] < threshold { left } else { right };
    }
    at
}

impl Gbdt {
    pub fn fit(data: &Samples, params: &GbdtParams) -> Result<Self> {
        Ok(Self::fit_traced(data, params)?.0)
    }

    /// Also returns the mean training loss before the first tree and after
    /// each tree.
    pub fn fit_traced(data: &Samples, params: &GbdtParams) -> Result<(Self, Vec<f64>)> {
        params.validate()?;
        let labels = data.labels();
        let pos = labels.iter().filter(|&&y| y).count();
        if pos == 0 || pos == labels.len() {
            return Err(Error::DegenerateTrainingSet(
                "GBDT needs both classes".into(),
            ));
        }
        let rate = pos as f64 / labels.len() as f64;
        let initial_score = (rate / (1.0 - rate)).ln();
        let sorted = Presorted::new(data);

        let mut f = vec![initial_score; labels.len()];
        let mut losses = vec![logistic_loss(&f, labels)];
        let mut trees = Vec::with_capacity(params.trees);
        let mut resid = vec![0.0; labels.len()];
        let mut hess = vec![0.0; labels.len()];
        for _ in 0..params.trees {
            for i in 0..labels.len() {
                let p = sigmoid(f[i]);
                resid[i] = f64::from(u8::from(labels[i])) - p;
                hess[i] = p * (1.0 - p);
            }
            let tree = grow_tree(data, &sorted, &resid, &hess, params);
            for (i, fi) in f.iter_mut().enumerate() {
                *fi += params.learning_rate * tree.eval(data.row(i));
            }
            losses.push(logistic_loss(&f, labels));
            trees.push(tree);
        }
        Ok((
            Self {
                initial_score,
                learning_rate: params.learning_rate,
                trees,
            },
            losses,
        ))
    }

    pub fn raw_score(&self, x: &[f64]) -> f64 {
        self.initial_score + self.learning_rate * self.trees.iter().map(|t| t.eval(x)).sum::<f64>()
    }

    pub fn score(&self, x: &[f64]) -> f64 {
        sigmoid(self.raw_score(x))
    }
}
