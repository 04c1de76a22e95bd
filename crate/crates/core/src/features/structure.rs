//! Local structural properties: strength, coreness, clustering coefficient.

use crate::graph::TextGraph;

/// Weighted degree of every node.
pub fn strength(g: &TextGraph) -> Vec<f64> {
    (0..g.node_count())
        .map(|i| g.neighbors(i).iter().map(|&(_, w)| w as f64).sum())
        .collect()
}

/// Core number of every node on the unweighted degree structure
/// (Batagelj-Zaversnik bucket peeling).
pub fn coreness(g: &TextGraph) -> Vec<u32> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    // bin[d] = start of the block of nodes with current degree d in `order`
    let mut bin = vec![0usize; max_degree + 1];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for slot in bin.iter_mut() {
        let count = *slot;
        *slot = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        order[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_degree).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = order[i];
        for &(u, _) in g.neighbors(v) {
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree.into_iter().map(|d| d as u32).collect()
}

/// Topological (unweighted) local clustering coefficient. Nodes with fewer
/// than two neighbors get 0.
pub fn clustering_coefficient(g: &TextGraph) -> Vec<f64> {
    let n = g.node_count();
    let mut mark = vec![usize::MAX; n];
    (0..n)
        .map(|i| {
            let k = g.degree(i);
            if k < 2 {
                return 0.0;
            }
            for &(j, _) in g.neighbors(i) {
                mark[j] = i;
            }
            let mut links = 0usize;
            for &(j, _) in g.neighbors(i) {
                links += g
                    .neighbors(j)
                    .iter()
                    .filter(|&&(m, _)| m > j && mark[m] == i)
                    .count();
            }
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}
