//! Document analysis from text to feature records, and keyword/keyphrase
//! extraction with a trained model.

use rayon::prelude::*;

use crate::candidates::{select_candidates, CandidateConfig, CandidateSet, PositionStream};
use crate::corpus::{Corpus, Document, Stoplist};
use crate::error::{Error, Result};
use crate::evaluation::{evaluate_phrases, evaluate_words, EvalLevel, EvalReport, Metrics};
use crate::features::{build_feature_records, FeatureVector, RankConfig};
use crate::graph::{build_graph, Cooccurrence, GraphConfig, TextGraph};
use crate::models::{Prediction, TrainedModel};
use crate::phrases::{generate_keyphrases, top_k, Keyphrase, PhraseScoring};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PipelineConfig {
    pub candidates: CandidateConfig,
    pub graph: GraphConfig,
    pub rank: RankConfig,
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.rank.validate()?;
        if self.candidates.keep_percent == 0 || self.candidates.keep_percent > 100 {
            return Err(Error::InvalidConfig(format!(
                "keep_percent {} not in 1..=100",
                self.candidates.keep_percent
            )));
        }
        Ok(())
    }

    /// Settings as `pipeline.*` key/value pairs, for embedding in artifacts.
    pub fn to_settings(&self) -> Vec<(String, String)> {
        let c = &self.candidates;
        let r = &self.rank;
        [
            (
                "position_stream",
                match c.position_stream {
                    PositionStream::Filtered => "filtered".to_string(),
                    PositionStream::Raw => "raw".to_string(),
                },
            ),
            ("short_doc_threshold", c.short_doc_threshold.to_string()),
            ("keep_percent", c.keep_percent.to_string()),
            (
                "cooccurrence",
                match self.graph.cooccurrence {
                    Cooccurrence::Types => "types".to_string(),
                    Cooccurrence::Instances => "instances".to_string(),
                },
            ),
            ("damping", r.damping.to_string()),
            ("alpha", r.alpha.to_string()),
            ("tolerance", r.tolerance.to_string()),
            ("max_iterations", r.max_iterations.to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (format!("pipeline.{k}"), v))
        .collect()
    }

    /// Reads the `pipeline.*` entries written by [`Self::to_settings`];
    /// missing keys keep their defaults.
    pub fn from_settings(settings: &[(String, String)]) -> Result<Self> {
        let mut cfg = Self::default();
        for (key, value) in settings {
            let Some(key) = key.strip_prefix("pipeline.") else {
                continue;
            };
            let bad = || Error::InvalidConfig(format!("bad value {value:?} for pipeline.{key}"));
            match key {
                "position_stream" => {
                    cfg.candidates.position_stream = match value.as_str() {
                        "filtered" => PositionStream::Filtered,
                        "raw" => PositionStream::Raw,
                        _ => return Err(bad()),
                    }
                }
                "short_doc_threshold" => {
                    cfg.candidates.short_doc_threshold = value.parse().map_err(|_| bad())?
                }
                "keep_percent" => cfg.candidates.keep_percent = value.parse().map_err(|_| bad())?,
                "cooccurrence" => {
                    cfg.graph.cooccurrence = match value.as_str() {
                        "types" => Cooccurrence::Types,
                        "instances" => Cooccurrence::Instances,
                        _ => return Err(bad()),
                    }
                }
                "damping" => cfg.rank.damping = value.parse().map_err(|_| bad())?,
                "alpha" => cfg.rank.alpha = value.parse().map_err(|_| bad())?,
                "tolerance" => cfg.rank.tolerance = value.parse().map_err(|_| bad())?,
                "max_iterations" => cfg.rank.max_iterations = value.parse().map_err(|_| bad())?,
                _ => log::warn!("ignoring unknown setting pipeline.{key}"),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Intermediate products of analyzing one document.
#[derive(Debug, Clone)]
pub struct DocumentAnalysis {
    pub candidates: CandidateSet,
    pub graph: TextGraph,
    /// Normalized features, one row per graph node.
    pub features: Vec<(String, FeatureVector)>,
    pub converged: bool,
}

pub fn analyze(doc: &Document, cfg: &PipelineConfig) -> DocumentAnalysis {
    let candidates = select_candidates(doc, &cfg.candidates);
    let graph = build_graph(doc, &candidates, &cfg.graph);
    let records = build_feature_records(&graph, &cfg.rank);
    DocumentAnalysis {
        candidates,
        graph,
        features: records.rows,
        converged: records.converged,
    }
}

/// A trained model bundled with the analysis settings it was trained with.
#[derive(Debug, Clone)]
pub struct KeywordExtractor {
    pub model: TrainedModel,
    pub config: PipelineConfig,
}

impl KeywordExtractor {
    pub fn new(model: TrainedModel, config: PipelineConfig) -> Self {
        Self { model, config }
    }

    /// One prediction per graph node, in node order.
    pub fn predict(&self, doc: &Document) -> Vec<Prediction> {
        analyze(doc, &self.config)
            .features
            .iter()
            .map(|(word, fv)| self.model.predict(word, fv))
            .collect()
    }

    /// Ranked keyphrases built from the positive predictions.
    pub fn keyphrases(&self, doc: &Document, scoring: PhraseScoring) -> Vec<Keyphrase> {
        generate_keyphrases(doc, &self.predict(doc), scoring)
    }

    /// Scores every document with gold phrases. `stoplist` filters the gold
    /// side and should be the one the corpus was loaded with.
    pub fn evaluate(
        &self,
        corpus: &Corpus,
        level: EvalLevel,
        scoring: PhraseScoring,
        stoplist: &Stoplist,
    ) -> EvalReport {
        let per_document: Vec<Option<(String, Metrics)>> = corpus
            .documents
            .par_iter()
            .map(|doc| {
                if doc.gold_phrases.is_empty() {
                    return None;
                }
                let predictions = self.predict(doc);
                let m = match level {
                    EvalLevel::Words => evaluate_words(&predictions, &doc.gold_phrases, stoplist),
                    EvalLevel::TopK(k) => {
                        let phrases = generate_keyphrases(doc, &predictions, scoring);
                        evaluate_phrases(top_k(&phrases, k), &doc.gold_phrases, stoplist)
                    }
                };
                Some((doc.id.clone(), m))
            })
            .collect();
        let skipped = per_document.iter().filter(|d| d.is_none()).count();
        if skipped > 0 {
            log::warn!(
                "{}: {skipped} document(s) without gold phrases left out of the averages",
                corpus.name
            );
        }
        EvalReport::new(
            corpus.name.clone(),
            self.model.kind().as_str(),
            level,
            per_document.into_iter().flatten().collect(),
        )
    }
}
