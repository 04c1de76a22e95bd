//! Weighted, undirected co-occurrence graph over candidate words.
//!
//! The co-occurrence window is two consecutive sentences: `(S1, S2)`,
//! `(S2, S3)`, ..., so no window size has to be chosen. A single-sentence
//! document forms one window.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::io::{self, Write};

use crate::candidates::CandidateSet;
use crate::corpus::Document;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextGraph {
    words: Vec<String>,
    /// Neighbor lists sorted by neighbor index.
    adjacency: Vec<Vec<(usize, u32)>>,
    /// Sorted token positions of each node.
    positions: Vec<Vec<usize>>,
}

impl TextGraph {
    pub fn empty() -> Self {
        Self {
            words: Vec::new(),
            adjacency: Vec::new(),
            positions: Vec::new(),
        }
    }

    /// Builds a graph from explicit weighted edges. Parallel edges are
    /// summed and zero-weight edges ignored; self-loops and isolated nodes
    /// are rejected.
    pub fn from_edges<I>(words: Vec<String>, edges: I, positions: Vec<Vec<usize>>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let n = words.len();
        if positions.len() != n {
            return Err(Error::InvalidConfig(format!(
                "{} position lists for {n} nodes",
                positions.len()
            )));
        }
        let mut merged: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidConfig(format!(
                    "edge ({a}, {b}) out of range"
                )));
            }
            if a == b {
                return Err(Error::InvalidConfig(format!("self-loop on node {a}")));
            }
            if w > 0 {
                *merged.entry((a.min(b), a.max(b))).or_default() += w;
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (&(a, b), &w) in &merged {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        if let Some(i) = adjacency.iter().position(Vec::is_empty) {
            return Err(Error::InvalidConfig(format!(
                "node {i} ({}) is isolated",
                words[i]
            )));
        }
        Ok(Self {
            words,
            adjacency,
            positions,
        })
    }

    /// Unweighted graph on `n` nodes named `v0..v{n-1}`, every node at position `i + 1`.
    pub fn unit_weighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(
            (0..n).map(|i| format!("v{i}")).collect(),
            edges.iter().map(|&(a, b)| (a, b, 1)),
            (1..=n).map(|p| vec![p]).collect(),
        )
    }

    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn word(&self, node: usize) -> &str {
        &self.words[node]
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.words.iter().position(|w| w == word)
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, u32)] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn weight(&self, a: usize, b: usize) -> u32 {
        self.adjacency[a]
            .binary_search_by_key(&b, |&(j, _)| j)
            .map(|k| self.adjacency[a][k].1)
            .unwrap_or(0)
    }

    pub fn positions(&self, node: usize) -> &[usize] {
        &self.positions[node]
    }

    /// Edges as `word1 TAB word2 TAB weight`, each edge once.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (a, list) in self.adjacency.iter().enumerate() {
            for &(b, w) in list.iter().filter(|&&(b, _)| b > a) {
                writeln!(out, "{}\t{}\t{}", self.words[a], self.words[b], w)?;
            }
        }
        Ok(())
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (a, list) in self.adjacency.iter().enumerate() {
            for &(b, w) in list.iter().filter(|&&(b, _)| b > a) {
                let _ = writeln!(s, "{}\t{}\t{}", self.words[a], self.words[b], w);
            }
        }
        s
    }
}

/// How a window contributes to an edge weight.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Cooccurrence {
    /// `+1` per window in which both words appear.
    #[default]
    Types,
    /// `+count(a) * count(b)` per window: every pair of token instances.
    Instances,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphConfig {
    pub cooccurrence: Cooccurrence,
}

pub fn build_graph(doc: &Document, cand: &CandidateSet, cfg: &GraphConfig) -> TextGraph {
    let wanted: HashSet<&str> = cand.candidates.iter().map(|c| c.word.as_str()).collect();

    // provisional ids in order of first occurrence
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut words: Vec<&str> = Vec::new();
    let mut positions: Vec<Vec<usize>> = Vec::new();
    let mut sentence_counts: Vec<BTreeMap<usize, u32>> = Vec::with_capacity(doc.sentences.len());
    for sentence in &doc.sentences {
        let mut counts = BTreeMap::new();
        for tok in sentence
            .tokens
            .iter()
            .filter(|t| wanted.contains(t.surface.as_str()))
        {
            let id = *ids.entry(tok.surface.as_str()).or_insert_with(|| {
                words.push(tok.surface.as_str());
                positions.push(Vec::new());
                words.len() - 1
            });
            positions[id].push(tok.position);
            *counts.entry(id).or_insert(0u32) += 1;
        }
        sentence_counts.push(counts);
    }

    let mut weights: HashMap<(usize, usize), u32> = HashMap::new();
    let mut add_window = |window: &BTreeMap<usize, u32>| {
        let members: Vec<(usize, u32)> = window.iter().map(|(&k, &v)| (k, v)).collect();
        for (i, &(a, ca)) in members.iter().enumerate() {
            for &(b, cb) in &members[i + 1..] {
                let inc = match cfg.cooccurrence {
                    Cooccurrence::Types => 1,
                    Cooccurrence::Instances => ca * cb,
                };
                *weights.entry((a, b)).or_default() += inc;
            }
        }
    };
    match sentence_counts.len() {
        0 => {}
        1 => add_window(&sentence_counts[0]),
        _ => {
            for pair in sentence_counts.windows(2) {
                let mut window = pair[0].clone();
                for (&k, &v) in &pair[1] {
                    *window.entry(k).or_default() += v;
                }
                add_window(&window);
            }
        }
    }

    // drop isolated nodes, keep first-occurrence order
    let mut connected = vec![false; words.len()];
    for &(a, b) in weights.keys() {
        connected[a] = true;
        connected[b] = true;
    }
    let mut remap = vec![usize::MAX; words.len()];
    let mut kept_words = Vec::new();
    let mut kept_positions = Vec::new();
    for (old, keep) in connected.iter().enumerate() {
        if *keep {
            remap[old] = kept_words.len();
            kept_words.push(words[old].to_string());
            kept_positions.push(std::mem::take(&mut positions[old]));
        }
    }
    let mut adjacency = vec![Vec::new(); kept_words.len()];
    for (&(a, b), &w) in &weights {
        let (a, b) = (remap[a], remap[b]);
        adjacency[a].push((b, w));
        adjacency[b].push((a, w));
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    TextGraph {
        words: kept_words,
        adjacency,
        positions: kept_positions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::{Candidate, CandidateSet, SelectionMode};
    use crate::corpus::{preprocess, Stoplist};

    fn all_candidates(doc: &Document) -> CandidateSet {
        let mut seen = Vec::<String>::new();
        for t in &doc.tokens {
            if !seen.contains(&t.surface) {
                seen.push(t.surface.clone());
            }
        }
        CandidateSet {
            doc_id: doc.id.clone(),
            candidates: seen
                .into_iter()
                .map(|word| Candidate {
                    word,
                    sigma: 0.0,
                    count: 1,
                    first_position: 1,
                })
                .collect(),
            mode: SelectionMode::AllWordsShortDoc,
        }
    }

    fn edge(g: &TextGraph, a: &str, b: &str) -> u32 {
        g.weight(g.index_of(a).unwrap(), g.index_of(b).unwrap())
    }

    #[test]
    fn sliding_two_sentence_windows() {
        let doc = preprocess("a b. c a. d.", &Stoplist::empty());
        let g = build_graph(&doc, &all_candidates(&doc), &GraphConfig::default());
        assert_eq!(edge(&g, "a", "b"), 1);
        assert_eq!(edge(&g, "a", "c"), 2);
        assert_eq!(edge(&g, "b", "c"), 1);
        assert_eq!(edge(&g, "a", "d"), 1);
        assert_eq!(edge(&g, "c", "d"), 1);
        assert_eq!(edge(&g, "b", "d"), 0);
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn single_sentence_is_one_window() {
        let doc = preprocess("a b c", &Stoplist::empty());
        let g = build_graph(&doc, &all_candidates(&doc), &GraphConfig::default());
        assert_eq!(g.edge_count(), 3);
        for (x, y) in [("a", "b"), ("a", "c"), ("b", "c")] {
            assert_eq!(edge(&g, x, y), 1);
        }
    }

    #[test]
    fn two_single_word_sentences() {
        let doc = preprocess("a. b.", &Stoplist::empty());
        let g = build_graph(&doc, &all_candidates(&doc), &GraphConfig::default());
        assert_eq!(g.node_count(), 2);
        assert_eq!(edge(&g, "a", "b"), 1);
    }

    #[test]
    fn no_self_loops_and_isolated_nodes_dropped() {
        let doc = preprocess("a a a. b. c. d e.", &Stoplist::empty());
        let mut cand = all_candidates(&doc);
        cand.candidates.retain(|c| c.word != "c");
        let g = build_graph(&doc, &cand, &GraphConfig::default());
        // windows: {a,b}, {b}, {d,e}
        assert_eq!(g.words(), ["a", "b", "d", "e"]);
        assert_eq!(edge(&g, "a", "b"), 1);
        assert_eq!(edge(&g, "d", "e"), 1);
        for i in 0..g.node_count() {
            assert_eq!(g.weight(i, i), 0);
            assert!(g.degree(i) > 0);
        }
        assert_eq!(g.positions(0), [1, 2, 3]);
    }

    #[test]
    fn instance_counting_multiplies_counts() {
        let doc = preprocess("a a b. c.", &Stoplist::empty());
        let cfg = GraphConfig {
            cooccurrence: Cooccurrence::Instances,
        };
        let g = build_graph(&doc, &all_candidates(&doc), &cfg);
        assert_eq!(edge(&g, "a", "b"), 2);
        assert_eq!(edge(&g, "a", "c"), 2);
        assert_eq!(edge(&g, "b", "c"), 1);
    }

    #[test]
    fn no_cooccurrence_gives_empty_graph() {
        let doc = preprocess("a. b. c.", &Stoplist::empty());
        let mut cand = all_candidates(&doc);
        cand.candidates.retain(|c| c.word != "b");
        let g = build_graph(&doc, &cand, &GraphConfig::default());
        assert!(g.is_empty());
    }

    #[test]
    fn edge_list_export() {
        let g = TextGraph::unit_weighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.to_edge_list(), "v0\tv1\t1\nv1\tv2\t1\n");
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), g.to_edge_list());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(TextGraph::unit_weighted(2, &[(0, 0)]).is_err());
        assert!(TextGraph::unit_weighted(3, &[(0, 1)]).is_err());
        assert!(TextGraph::unit_weighted(2, &[(0, 5)]).is_err());
        let g = TextGraph::from_edges(
            vec!["a".into(), "b".into()],
            [(0, 1, 2), (1, 0, 3)],
            vec![vec![1], vec![2]],
        )
        .unwrap();
        assert_eq!(g.weight(1, 0), 5);
    }
}
