//! Candidate keyword selection with the sigma index.
//!
//! The sigma index of a word is the standard deviation of the gaps between
//! its successive occurrences divided by the mean gap, where the stream is
//! padded with virtual occurrences at `0` and `N + 1`. Words whose
//! occurrences cluster together score high.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::corpus::Document;
use crate::error::{Error, Result};

/// Positions of one word in a token stream of length `stream_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceIndex {
    word: String,
    positions: Vec<usize>,
    stream_len: usize,
}

impl OccurrenceIndex {
    /// Positions must be 1-based, strictly increasing and `<= stream_len`.
    pub fn new(word: impl Into<String>, positions: Vec<usize>, stream_len: usize) -> Result<Self> {
        let word = word.into();
        let invalid = |reason: String| Error::InvalidOccurrences {
            word: word.clone(),
            reason,
        };
        if positions.first().is_some_and(|&p| p == 0) {
            return Err(invalid("positions are 1-based".into()));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("positions must be strictly increasing".into()));
        }
        if positions.last().is_some_and(|&p| p > stream_len) {
            return Err(invalid(format!(
                "position beyond stream length {stream_len}"
            )));
        }
        Ok(Self {
            word,
            positions,
            stream_len,
        })
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn count(&self) -> usize {
        self.positions.len()
    }

    pub fn stream_len(&self) -> usize {
        self.stream_len
    }
}

pub fn sigma_index(occ: &OccurrenceIndex) -> Result<f64> {
    let n = occ.count();
    if n < 2 {
        return Err(Error::InsufficientOccurrences {
            word: occ.word.clone(),
            count: n,
        });
    }
    let mean_gap = (occ.stream_len + 1) as f64 / (n + 1) as f64;
    let mut prev = 0usize;
    let mut sum_sq = 0.0;
    for &p in occ
        .positions
        .iter()
        .chain(std::iter::once(&(occ.stream_len + 1)))
    {
        let dev = (p - prev) as f64 - mean_gap;
        sum_sq += dev * dev;
        prev = p;
    }
    Ok((sum_sq / (n - 1) as f64).sqrt() / mean_gap)
}

/// Which token stream positions and `N` are measured on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum PositionStream {
    /// The stream after stopword removal.
    #[default]
    Filtered,
    /// The stream before stopword removal.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateConfig {
    pub position_stream: PositionStream,
    /// Documents with fewer unique words than this keep every word.
    pub short_doc_threshold: usize,
    /// Share of eligible words kept, in percent (rounded up).
    pub keep_percent: usize,
}

impl Default for CandidateConfig {
    fn default() -> Self {
        Self {
            position_stream: PositionStream::Filtered,
            short_doc_threshold: 100,
            keep_percent: 33,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    SigmaTopThird,
    AllWordsShortDoc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub word: String,
    pub sigma: f64,
    pub count: usize,
    pub first_position: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub doc_id: String,
    /// Ranked by sigma (descending), then count, first position, word.
    pub candidates: Vec<Candidate>,
    pub mode: SelectionMode,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.candidates.iter().any(|c| c.word == word)
    }
}

/// Per-word occurrence indices, ordered by first occurrence.
pub fn occurrence_indices(doc: &Document, stream: PositionStream) -> Vec<OccurrenceIndex> {
    let stream_len = match stream {
        PositionStream::Filtered => doc.tokens.len(),
        PositionStream::Raw => doc.raw_token_count,
    };
    let mut slot: HashMap<&str, usize> = HashMap::new();
    let mut grouped: Vec<(&str, Vec<usize>)> = Vec::new();
    for tok in &doc.tokens {
        let pos = match stream {
            PositionStream::Filtered => tok.position,
            PositionStream::Raw => tok.raw_position,
        };
        let i = *slot.entry(tok.surface.as_str()).or_insert_with(|| {
            grouped.push((tok.surface.as_str(), Vec::new()));
            grouped.len() - 1
        });
        grouped[i].1.push(pos);
    }
    grouped
        .into_iter()
        .map(|(word, positions)| OccurrenceIndex {
            word: word.to_string(),
            positions,
            stream_len,
        })
        .collect()
}

fn rank_order(a: &Candidate, b: &Candidate) -> Ordering {
    b.sigma
        .total_cmp(&a.sigma)
        .then(b.count.cmp(&a.count))
        .then(a.first_position.cmp(&b.first_position))
        .then_with(|| a.word.cmp(&b.word))
}

pub fn select_candidates(doc: &Document, cfg: &CandidateConfig) -> CandidateSet {
    let first_positions: HashMap<&str, usize> = doc
        .tokens
        .iter()
        .rev()
        .map(|t| (t.surface.as_str(), t.position))
        .collect();
    let occurrences = occurrence_indices(doc, cfg.position_stream);
    let short = occurrences.len() < cfg.short_doc_threshold;

    let mut candidates: Vec<Candidate> = occurrences
        .iter()
        .filter(|occ| short || occ.count() >= 2)
        .map(|occ| Candidate {
            word: occ.word.clone(),
            sigma: sigma_index(occ).unwrap_or(0.0),
            count: occ.count(),
            first_position: first_positions[occ.word.as_str()],
        })
        .collect();
    candidates.sort_by(rank_order);

    let mode = if short {
        SelectionMode::AllWordsShortDoc
    } else {
        let keep = (cfg.keep_percent * candidates.len()).div_ceil(100);
        candidates.truncate(keep);
        SelectionMode::SigmaTopThird
    };
    CandidateSet {
        doc_id: doc.id.clone(),
        candidates,
        mode,
    }
}
