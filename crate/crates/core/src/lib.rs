//! Supervised keyword and keyphrase extraction from word co-occurrence
//! graphs.
//!
//! A document is reduced to candidate words by the sigma index, the
//! candidates become nodes of a co-occurrence graph over consecutive
//! sentence pairs, and six node properties (strength, eigenvector
//! centrality, PageRank, PositionRank, coreness, clustering coefficient)
//! feed a binary classifier. Runs of predicted keywords form keyphrases.

pub mod candidates;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod graph;
pub mod models;
pub mod phrases;
pub mod pipeline;
pub mod synthetic;
pub mod training;

pub use candidates::{
    select_candidates, sigma_index, CandidateConfig, CandidateSet, OccurrenceIndex,
};
pub use corpus::{load_corpus, preprocess, Corpus, Document, Stoplist};
pub use error::{Error, Result};
pub use evaluation::{EvalLevel, EvalReport, Metrics, SignificanceReport};
pub use features::{FeatureVector, RankConfig, FEATURE_NAMES};
pub use graph::{build_graph, GraphConfig, TextGraph};
pub use models::{load_model, save_model, ModelKind, ModelSpec, Prediction, TrainedModel};
pub use phrases::{generate_keyphrases, porter_stem, top_k, Keyphrase, PhraseScoring};
pub use pipeline::{analyze, DocumentAnalysis, KeywordExtractor, PipelineConfig};
pub use training::{
    assemble_training_set, label_candidates, smote, Label, SmoteConfig, TrainingSet,
};
