//! Keyphrases assembled from predicted keywords.

mod porter;

pub use porter::porter_stem;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::corpus::Document;
use crate::error::Error;
use crate::models::Prediction;

/// How member word scores combine into a phrase score.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum PhraseScoring {
    #[default]
    Mean,
    Sum,
    Max,
}

impl PhraseScoring {
    pub fn as_str(self) -> &'static str {
        match self {
            PhraseScoring::Mean => "mean",
            PhraseScoring::Sum => "sum",
            PhraseScoring::Max => "max",
        }
    }

    fn combine(self, scores: &[f64]) -> f64 {
        match self {
            PhraseScoring::Mean => scores.iter().sum::<f64>() / scores.len() as f64,
            PhraseScoring::Sum => scores.iter().sum(),
            PhraseScoring::Max => scores.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

impl fmt::Display for PhraseScoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhraseScoring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "mean" => Ok(PhraseScoring::Mean),
            "sum" => Ok(PhraseScoring::Sum),
            "max" => Ok(PhraseScoring::Max),
            _ => Err(Error::InvalidConfig(format!(
                "unknown phrase scoring {s:?} (expected mean, sum or max)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Keyphrase {
    pub words: Vec<String>,
    pub score: f64,
    /// 1-based position of the first word in the stopword-free stream.
    pub first_position: usize,
}

impl Keyphrase {
    pub fn text(&self) -> String {
        self.words.join(" ")
    }
}

fn rank_order(a: &Keyphrase, b: &Keyphrase) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then(a.first_position.cmp(&b.first_position))
        .then_with(|| a.words.cmp(&b.words))
}

fn contains_run(hay: &[String], needle: &[String]) -> bool {
    needle.len() < hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Maximal runs of positively predicted words inside the document's
/// segments, deduplicated, with runs contained in longer runs removed, in
/// ranking order (score descending, then first position).
pub fn generate_keyphrases(
    doc: &Document,
    predictions: &[Prediction],
    scoring: PhraseScoring,
) -> Vec<Keyphrase> {
    let positive: HashMap<&str, f64> = predictions
        .iter()
        .filter(|p| p.label.is_positive())
        .map(|p| (p.word.as_str(), p.score))
        .collect();
    if positive.is_empty() {
        return Vec::new();
    }

    let mut seen: HashSet<Vec<String>> = HashSet::new();
    let mut phrases: Vec<Keyphrase> = Vec::new();
    let mut emit = |run: &[usize]| {
        if run.is_empty() {
            return;
        }
        let words: Vec<String> = run.iter().map(|&i| doc.tokens[i].surface.clone()).collect();
        if !seen.insert(words.clone()) {
            return;
        }
        let scores: Vec<f64> = words.iter().map(|w| positive[w.as_str()]).collect();
        phrases.push(Keyphrase {
            score: scoring.combine(&scores),
            first_position: doc.tokens[run[0]].position,
            words,
        });
    };
    for seg in &doc.segments {
        let mut run = Vec::new();
        for i in seg.clone() {
            if positive.contains_key(doc.tokens[i].surface.as_str()) {
                run.push(i);
            } else {
                emit(&run);
                run.clear();
            }
        }
        emit(&run);
    }

    let kept: Vec<Keyphrase> = phrases
        .iter()
        .filter(|p| !phrases.iter().any(|q| contains_run(&q.words, &p.words)))
        .cloned()
        .collect();
    let mut kept = kept;
    kept.sort_by(rank_order);
    kept
}

/// The first `k` phrases of a ranking from [`generate_keyphrases`].
pub fn top_k(phrases: &[Keyphrase], k: usize) -> &[Keyphrase] {
    &phrases[..k.min(phrases.len())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{preprocess, Stoplist};
    use crate::training::Label;

    fn preds(words: &[(&str, f64)]) -> Vec<Prediction> {
        words
            .iter()
            .map(|&(w, s)| Prediction {
                word: w.to_string(),
                score: s,
                label: Label::from_bool(s >= 0.5),
            })
            .collect()
    }

    fn texts(phrases: &[Keyphrase]) -> Vec<String> {
        phrases.iter().map(Keyphrase::text).collect()
    }

    #[test]
    fn negative_token_splits_phrases() {
        let doc = preprocess(
            "complex network based keyword extraction",
            &Stoplist::empty(),
        );
        let p = preds(&[
            ("complex", 0.9),
            ("network", 0.8),
            ("based", 0.2),
            ("keyword", 0.7),
            ("extraction", 0.6),
        ]);
        let phrases = generate_keyphrases(&doc, &p, PhraseScoring::Mean);
        assert_eq!(texts(&phrases), ["complex network", "keyword extraction"]);
        assert!((phrases[0].score - 0.85).abs() < 1e-12);
        assert_eq!(phrases[1].first_position, 4);
    }

    #[test]
    fn contained_phrases_are_dropped() {
        let doc = preprocess(
            "We study complex network models. The network is large.",
            &Stoplist::english(),
        );
        let p = preds(&[
            ("complex", 0.9),
            ("network", 0.9),
            ("study", 0.1),
            ("models", 0.2),
            ("large", 0.3),
        ]);
        assert_eq!(
            texts(&generate_keyphrases(&doc, &p, PhraseScoring::Mean)),
            ["complex network"]
        );
    }

    #[test]
    fn stopwords_and_punctuation_split() {
        let doc = preprocess("extraction of keyword, graph. theory", &Stoplist::english());
        let p = preds(&[
            ("extraction", 0.9),
            ("keyword", 0.8),
            ("graph", 0.7),
            ("theory", 0.6),
        ]);
        let phrases = generate_keyphrases(&doc, &p, PhraseScoring::Mean);
        assert_eq!(
            texts(&phrases),
            ["extraction", "keyword", "graph", "theory"]
        );
    }

    #[test]
    fn ties_go_to_earlier_phrase_and_top_k_is_a_prefix() {
        let doc = preprocess("alpha x beta x gamma", &Stoplist::empty());
        let p = preds(&[("alpha", 0.7), ("beta", 0.7), ("gamma", 0.9), ("x", 0.0)]);
        let all = generate_keyphrases(&doc, &p, PhraseScoring::Mean);
        assert_eq!(texts(&all), ["gamma", "alpha", "beta"]);
        assert_eq!(top_k(&all, 5).len(), 3);
        assert_eq!(top_k(&all, 2), &all[..2]);
    }

    #[test]
    fn scoring_variants() {
        let doc = preprocess("a b", &Stoplist::empty());
        let p = preds(&[("a", 0.6), ("b", 1.0)]);
        let score = |s| generate_keyphrases(&doc, &p, s)[0].score;
        assert!((score(PhraseScoring::Mean) - 0.8).abs() < 1e-12);
        assert!((score(PhraseScoring::Sum) - 1.6).abs() < 1e-12);
        assert_eq!(score(PhraseScoring::Max), 1.0);
        assert_eq!("max".parse::<PhraseScoring>().unwrap(), PhraseScoring::Max);
    }

    #[test]
    fn no_positive_predictions() {
        let doc = preprocess("a b", &Stoplist::empty());
        assert!(generate_keyphrases(&doc, &preds(&[("a", 0.1)]), PhraseScoring::Mean).is_empty());
    }
}
