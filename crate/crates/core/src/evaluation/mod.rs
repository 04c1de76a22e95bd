//! Precision, recall and F1 at word and phrase level.

mod bootstrap;
mod crossval;

pub use bootstrap::{bootstrap_pvalue, SignificanceReport, BOOTSTRAP_CHUNK};
pub use crossval::{cross_validate, stratified_folds, CrossValReport};

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::io::{BufRead, Write};

use crate::corpus::{tokenize, Stoplist};
use crate::error::{Error, Result};
use crate::models::Prediction;
use crate::phrases::{porter_stem, Keyphrase};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Metrics {
    pub fn from_pr(precision: f64, recall: f64) -> Self {
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Self {
            precision,
            recall,
            f1,
        }
    }

    /// From true positive, predicted and gold counts.
    pub fn from_counts(hits: usize, predicted: usize, gold: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        Self::from_pr(ratio(hits, predicted), ratio(hits, gold))
    }
}

pub fn prf<T: Eq + Hash>(predicted: &HashSet<T>, gold: &HashSet<T>) -> Metrics {
    Metrics::from_counts(
        predicted.intersection(gold).count(),
        predicted.len(),
        gold.len(),
    )
}

/// Componentwise mean; all zeros for an empty slice.
pub fn macro_average(per_doc: &[Metrics]) -> Metrics {
    if per_doc.is_empty() {
        return Metrics::default();
    }
    let n = per_doc.len() as f64;
    Metrics {
        precision: per_doc.iter().map(|m| m.precision).sum::<f64>() / n,
        recall: per_doc.iter().map(|m| m.recall).sum::<f64>() / n,
        f1: per_doc.iter().map(|m| m.f1).sum::<f64>() / n,
    }
}

/// Gold keywords for word-level scoring: the non-stopword tokens of the gold
/// phrases.
pub fn gold_words(gold_phrases: &[String], stoplist: &Stoplist) -> HashSet<String> {
    gold_phrases
        .iter()
        .flat_map(|p| p.split_whitespace())
        .filter(|w| !stoplist.contains(w))
        .map(str::to_string)
        .collect()
}

pub fn stem_sequence<'a>(words: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    words.into_iter().map(porter_stem).collect()
}

/// Gold phrases for phrase-level scoring: tokenized, stopwords removed and
/// stemmed word by word. Phrases left empty are dropped.
pub fn gold_phrase_stems(gold_phrases: &[String], stoplist: &Stoplist) -> HashSet<Vec<String>> {
    gold_phrases
        .iter()
        .map(|p| {
            let toks = tokenize(p);
            stem_sequence(
                toks.iter()
                    .map(String::as_str)
                    .filter(|w| !stoplist.contains(w)),
            )
        })
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn evaluate_words(
    predictions: &[Prediction],
    gold_phrases: &[String],
    stoplist: &Stoplist,
) -> Metrics {
    let predicted: HashSet<String> = predictions
        .iter()
        .filter(|p| p.label.is_positive())
        .map(|p| p.word.clone())
        .collect();
    prf(&predicted, &gold_words(gold_phrases, stoplist))
}

/// Scores `phrases` (already cut to the top k) against the gold phrases by
/// exact match of stemmed word sequences.
pub fn evaluate_phrases(
    phrases: &[Keyphrase],
    gold_phrases: &[String],
    stoplist: &Stoplist,
) -> Metrics {
    let predicted: HashSet<Vec<String>> = phrases
        .iter()
        .map(|p| stem_sequence(p.words.iter().map(String::as_str)))
        .collect();
    prf(&predicted, &gold_phrase_stems(gold_phrases, stoplist))
}

/// What an [`EvalReport`] scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalLevel {
    Words,
    TopK(usize),
}

impl fmt::Display for EvalLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalLevel::Words => f.write_str("words"),
            EvalLevel::TopK(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for EvalLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "words" => Ok(EvalLevel::Words),
            _ => s
                .parse()
                .ok()
                .filter(|&k| k > 0)
                .map(EvalLevel::TopK)
                .ok_or_else(|| {
                    Error::InvalidConfig(format!(
                        "level {s:?} is neither \"words\" nor a positive k"
                    ))
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub corpus: String,
    pub model_kind: String,
    pub level: EvalLevel,
    /// Documents with gold phrases, in input order.
    pub per_document: Vec<(String, Metrics)>,
    pub macro_avg: Metrics,
}

impl EvalReport {
    pub fn new(
        corpus: impl Into<String>,
        model_kind: impl Into<String>,
        level: EvalLevel,
        per_document: Vec<(String, Metrics)>,
    ) -> Self {
        let metrics: Vec<Metrics> = per_document.iter().map(|(_, m)| *m).collect();
        Self {
            corpus: corpus.into(),
            model_kind: model_kind.into(),
            level,
            macro_avg: macro_average(&metrics),
            per_document,
        }
    }

    pub fn doc_f1(&self) -> Vec<f64> {
        self.per_document.iter().map(|(_, m)| m.f1).collect()
    }

    /// Percentages with two decimals.
    pub fn render_table(&self) -> String {
        let m = &self.macro_avg;
        format!(
            "corpus       {}\nmodel        {}\nlevel        {}\ndocuments    {}\n\n{:>10} {:>10} {:>10}\n{:>10.2} {:>10.2} {:>10.2}\n",
            self.corpus,
            self.model_kind,
            self.level,
            self.per_document.len(),
            "P",
            "R",
            "F1",
            100.0 * m.precision,
            100.0 * m.recall,
            100.0 * m.f1
        )
    }

    /// `# key value` comment lines, then `doc_id precision recall f1` rows
    /// and a final `MACRO` row.
    pub fn write_tsv<W: Write>(&self, mut out: W, comments: &[String]) -> std::io::Result<()> {
        writeln!(out, "# corpus {}", self.corpus)?;
        writeln!(out, "# model {}", self.model_kind)?;
        writeln!(out, "# level {}", self.level)?;
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "doc_id\tprecision\trecall\tf1")?;
        for (id, m) in self
            .per_document
            .iter()
            .chain(std::iter::once(&("MACRO".to_string(), self.macro_avg)))
        {
            writeln!(out, "{id}\t{}\t{}\t{}", m.precision, m.recall, m.f1)?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(input: R) -> Result<Self> {
        let mut corpus = String::new();
        let mut model = String::new();
        let mut level = EvalLevel::Words;
        let mut rows = Vec::new();
        let mut header_seen = false;
        for (i, line) in input.lines().enumerate() {
            let parse_err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let line = line.map_err(|e| parse_err(e.to_string()))?;
            if let Some(comment) = line.strip_prefix("# ") {
                match comment.split_once(' ') {
                    Some(("corpus", v)) => corpus = v.to_string(),
                    Some(("model", v)) => model = v.to_string(),
                    Some(("level", v)) => {
                        level = v.parse().map_err(|e: Error| parse_err(e.to_string()))?
                    }
                    _ => {}
                }
                continue;
            }
            if !header_seen {
                if line != "doc_id\tprecision\trecall\tf1" {
                    return Err(parse_err("unexpected header".into()));
                }
                header_seen = true;
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(parse_err(format!("expected 4 fields, got {}", f.len())));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| parse_err(format!("bad number {s:?}")))
            };
            let m = Metrics {
                precision: num(f[1])?,
                recall: num(f[2])?,
                f1: num(f[3])?,
            };
            if f[0] != "MACRO" {
                rows.push((f[0].to_string(), m));
            }
        }
        if !header_seen {
            return Err(Error::Parse {
                line: 0,
                message: "missing header".into(),
            });
        }
        Ok(Self::new(corpus, model, level, rows))
    }
}
