//! Classifiers over candidate feature vectors.

mod ensemble;
mod format;
mod gbdt;
mod naive_bayes;

pub use ensemble::{AdaBoostNb, BaggedNb, BoostRound, PERFECT_LEARNER_ALPHA};
pub use format::{load_model, save_model, FORMAT_VERSION};
pub use gbdt::{logistic_loss, Gbdt, GbdtParams, Node, Tree};
pub use naive_bayes::{GaussianNb, VARIANCE_FLOOR};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_NAMES};
use crate::training::{Label, TrainingSet};

/// Dense row-major feature matrix with binary labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    dim: usize,
    values: Vec<f64>,
    labels: Vec<bool>,
}

impl Samples {
    pub fn new(dim: usize, values: Vec<f64>, labels: Vec<bool>) -> Result<Self> {
        if dim == 0 || values.len() != dim * labels.len() {
            return Err(Error::InvalidConfig(format!(
                "{} values do not form {} rows of width {dim}",
                values.len(),
                labels.len()
            )));
        }
        Ok(Self {
            dim,
            values,
            labels,
        })
    }

    pub fn from_training_set(ts: &TrainingSet) -> Self {
        Self {
            dim: FEATURE_NAMES.len(),
            values: ts
                .records
                .iter()
                .flat_map(|r| r.features.to_array())
                .collect(),
            labels: ts.labels(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> bool {
        self.labels[i]
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    NaiveBayes,
    NaiveBayesBagging,
    NaiveBayesAdaBoost,
    Gbdt,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::NaiveBayes,
        ModelKind::NaiveBayesBagging,
        ModelKind::NaiveBayesAdaBoost,
        ModelKind::Gbdt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::NaiveBayes => "nb",
            ModelKind::NaiveBayesBagging => "nb_bagging",
            ModelKind::NaiveBayesAdaBoost => "nb_adaboost",
            ModelKind::Gbdt => "gbdt",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown model kind {s:?} (expected nb, nb_bagging, nb_adaboost or gbdt)"
                ))
            })
    }
}

/// Which classifier to train and its hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub seed: u64,
    /// Bagging ensemble size.
    pub members: usize,
    /// Boosting rounds.
    pub rounds: usize,
    pub gbdt: GbdtParams,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self {
            kind,
            seed: 42,
            members: 10,
            rounds: 10,
            gbdt: GbdtParams::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Hyperparameters relevant to `kind`, as key/value pairs.
    pub fn params(&self) -> Vec<(String, String)> {
        match self.kind {
            ModelKind::NaiveBayes => Vec::new(),
            ModelKind::NaiveBayesBagging => vec![("members".into(), self.members.to_string())],
            ModelKind::NaiveBayesAdaBoost => vec![("rounds".into(), self.rounds.to_string())],
            ModelKind::Gbdt => vec![
                ("trees".into(), self.gbdt.trees.to_string()),
                ("max_depth".into(), self.gbdt.max_depth.to_string()),
                ("learning_rate".into(), self.gbdt.learning_rate.to_string()),
                ("lambda".into(), self.gbdt.lambda.to_string()),
            ],
        }
    }

    pub fn train(&self, data: &Samples) -> Result<Classifier> {
        Ok(match self.kind {
            ModelKind::NaiveBayes => Classifier::NaiveBayes(GaussianNb::fit(data)?),
            ModelKind::NaiveBayesBagging => {
                Classifier::Bagging(BaggedNb::fit(data, self.members, self.seed)?)
            }
            ModelKind::NaiveBayesAdaBoost => {
                Classifier::AdaBoost(AdaBoostNb::fit(data, self.rounds, self.seed)?)
            }
            ModelKind::Gbdt => Classifier::Gbdt(Gbdt::fit(data, &self.gbdt)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classifier {
    NaiveBayes(GaussianNb),
    Bagging(BaggedNb),
    AdaBoost(AdaBoostNb),
    Gbdt(Gbdt),
}

impl Classifier {
    pub fn kind(&self) -> ModelKind {
        match self {
            Classifier::NaiveBayes(_) => ModelKind::NaiveBayes,
            Classifier::Bagging(_) => ModelKind::NaiveBayesBagging,
            Classifier::AdaBoost(_) => ModelKind::NaiveBayesAdaBoost,
            Classifier::Gbdt(_) => ModelKind::Gbdt,
        }
    }

    /// Probability of the positive class.
    pub fn score(&self, x: &[f64]) -> f64 {
        match self {
            Classifier::NaiveBayes(m) => m.score(x),
            Classifier::Bagging(m) => m.score(x),
            Classifier::AdaBoost(m) => m.score(x),
            Classifier::Gbdt(m) => m.score(x),
        }
    }
}

/// Provenance stored alongside a model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelMetadata {
    pub feature_names: Vec<String>,
    pub seed: u64,
    pub corpora: Vec<String>,
    /// Free-form settings (hyperparameters, pipeline configuration).
    pub settings: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub classifier: Classifier,
    pub metadata: ModelMetadata,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub word: String,
    pub score: f64,
    pub label: Label,
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        self.classifier.kind()
    }

    /// Trains `spec` on `ts`; metadata gets the feature names, seed and
    /// hyperparameters.
    pub fn train(spec: &ModelSpec, ts: &TrainingSet, corpora: Vec<String>) -> Result<Self> {
        let classifier = spec.train(&Samples::from_training_set(ts))?;
        Ok(Self {
            classifier,
            metadata: ModelMetadata {
                feature_names: FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
                seed: spec.seed,
                corpora,
                settings: spec.params(),
            },
        })
    }

    /// Scores one candidate. Features outside `[0, 1]` are clamped.
    pub fn predict(&self, word: &str, fv: &FeatureVector) -> Prediction {
        let raw = fv.to_array();
        let x = raw.map(|v| if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) });
        if x != raw {
            log::warn!("features of {word:?} outside [0, 1]; clamped");
        }
        let score = self.classifier.score(&x);
        Prediction {
            word: word.to_string(),
            score,
            label: Label::from_bool(score >= 0.5),
        }
    }
}
