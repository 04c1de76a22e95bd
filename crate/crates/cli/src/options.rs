//! Command-line arguments and the optional TOML config file. Flags win over
//! file values, which win over built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand};
use keygraph::evaluation::EvalLevel;
use keygraph::{ModelKind, PhraseScoring};
use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "keygraph",
    version,
    about = "Supervised keyword and keyphrase extraction from word co-occurrence graphs"
)]
pub struct Cli {
    /// TOML file with default settings; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the unbalanced candidate features of one or more corpora.
    Extract {
        #[arg(long = "corpus", required = true, value_name = "DIR")]
        corpora: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        #[command(flatten)]
        pipeline: PipelineOptions,
        #[command(flatten)]
        common: CommonOptions,
    },
    /// Train a classifier and write a model file.
    Train {
        #[arg(
            long = "corpus",
            value_name = "DIR",
            required_unless_present = "training_set"
        )]
        corpora: Vec<PathBuf>,
        /// Train on a feature file written by `extract` instead of corpora.
        #[arg(long, value_name = "FILE", conflicts_with = "corpora")]
        training_set: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[command(flatten)]
        pipeline: PipelineOptions,
        #[command(flatten)]
        classifier: ClassifierOptions,
        #[command(flatten)]
        smote: SmoteOptions,
        #[command(flatten)]
        common: CommonOptions,
    },
    /// Score every candidate word of every document.
    Predict {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOptions,
    },
    /// Emit the top-k keyphrases of every document.
    Keyphrases {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        #[command(flatten)]
        phrases: PhraseOptions,
        #[command(flatten)]
        common: CommonOptions,
    },
    /// Score predictions against the gold phrases of a corpus.
    Evaluate {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        /// `words` or a keyphrase cutoff k (default: the configured k).
        #[arg(long)]
        level: Option<EvalLevel>,
        /// Per-document report file.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        #[command(flatten)]
        phrases: PhraseOptions,
        #[command(flatten)]
        common: CommonOptions,
    },
    /// Stratified k-fold cross-validation on candidate records.
    Crossval {
        #[arg(
            long = "corpus",
            value_name = "DIR",
            required_unless_present = "training_set"
        )]
        corpora: Vec<PathBuf>,
        #[arg(long, value_name = "FILE", conflicts_with = "corpora")]
        training_set: Option<PathBuf>,
        #[arg(long)]
        folds: Option<usize>,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        #[command(flatten)]
        pipeline: PipelineOptions,
        #[command(flatten)]
        classifier: ClassifierOptions,
        #[command(flatten)]
        smote: SmoteOptions,
        #[command(flatten)]
        common: CommonOptions,
    },
    /// Bootstrap p-value for the macro F1 difference of two evaluate reports.
    Significance {
        #[arg(long, value_name = "FILE")]
        ours: PathBuf,
        #[arg(long, value_name = "FILE")]
        baseline: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOptions,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonOptions {
    /// Seed for every random choice (default 42).
    #[arg(long)]
    pub seed: Option<u64>,
    /// `smart-en` (built in), `none`, or a file with one word per line.
    #[arg(long)]
    pub stoplist: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineOptions {
    /// `filtered` or `raw` token stream for occurrence positions.
    #[arg(long)]
    pub position_stream: Option<String>,
    /// Documents with fewer unique words keep every word as a candidate.
    #[arg(long)]
    pub short_doc_threshold: Option<usize>,
    /// Percent of repeated words kept as candidates, by sigma rank.
    #[arg(long)]
    pub keep_percent: Option<usize>,
    /// `types` or `instances` co-occurrence counting.
    #[arg(long)]
    pub cooccurrence: Option<String>,
    /// PageRank damping factor.
    #[arg(long)]
    pub damping: Option<f64>,
    /// PositionRank damping factor.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Convergence tolerance of the iterative rankings (max-norm).
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Iteration cap of the iterative rankings.
    #[arg(long)]
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierOptions {
    /// nb, nb_bagging, nb_adaboost or gbdt (default).
    #[arg(long)]
    #[serde(default, deserialize_with = "from_str_opt")]
    pub classifier: Option<ModelKind>,
    /// Bagging ensemble size.
    #[arg(long)]
    pub members: Option<usize>,
    /// AdaBoost rounds.
    #[arg(long)]
    pub rounds: Option<usize>,
    /// GBDT trees.
    #[arg(long)]
    pub trees: Option<usize>,
    /// GBDT tree depth.
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// GBDT shrinkage.
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// GBDT leaf L2 regularization.
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoteOptions {
    /// Oversampling in percent (200 = two synthetic rows per positive).
    #[arg(long)]
    #[serde(rename = "percentage")]
    pub smote_percentage: Option<u32>,
    /// SMOTE neighbours.
    #[arg(long)]
    #[serde(rename = "k")]
    pub smote_k: Option<usize>,
    /// Train on the unbalanced candidate set.
    #[arg(long)]
    #[serde(rename = "disabled", default)]
    pub no_smote: bool,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhraseOptions {
    /// Keyphrases kept per document (default 10).
    #[arg(short, long)]
    pub k: Option<usize>,
    /// How word scores combine into a phrase score: mean, sum or max.
    #[arg(long)]
    #[serde(default, deserialize_with = "from_str_opt")]
    pub scoring: Option<PhraseScoring>,
}

/// Contents of the `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub stoplist: Option<String>,
    #[serde(default)]
    pub pipeline: PipelineOptions,
    #[serde(default)]
    pub classifier: ClassifierOptions,
    #[serde(default)]
    pub smote: SmoteOptions,
    #[serde(default)]
    pub phrases: PhraseOptions,
    pub folds: Option<usize>,
    pub samples: Option<usize>,
}

fn from_str_opt<'de, D, T>(de: D) -> Result<Option<T>, D::Error>
where
    D: serde::Deserializer<'de>,
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    let s: Option<String> = Option::deserialize(de)?;
    s.map(|s| s.parse().map_err(serde::de::Error::custom))
        .transpose()
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| {
            let first = e
                .message()
                .lines()
                .next()
                .unwrap_or("invalid TOML")
                .to_string();
            CliError::usage(format!("config {}: {first}", path.display()))
        })
    }
}

impl CommonOptions {
    pub fn or(self, file: &FileConfig) -> Self {
        Self {
            seed: self.seed.or(file.seed),
            stoplist: self.stoplist.or_else(|| file.stoplist.clone()),
        }
    }
}

impl PipelineOptions {
    pub fn or(self, file: Self) -> Self {
        Self {
            position_stream: self.position_stream.or(file.position_stream),
            short_doc_threshold: self.short_doc_threshold.or(file.short_doc_threshold),
            keep_percent: self.keep_percent.or(file.keep_percent),
            cooccurrence: self.cooccurrence.or(file.cooccurrence),
            damping: self.damping.or(file.damping),
            alpha: self.alpha.or(file.alpha),
            tolerance: self.tolerance.or(file.tolerance),
            max_iterations: self.max_iterations.or(file.max_iterations),
        }
    }

    /// The given values as `pipeline.*` settings.
    pub fn settings(&self) -> Vec<(String, String)> {
        let entries = [
            ("position_stream", self.position_stream.clone()),
            (
                "short_doc_threshold",
                self.short_doc_threshold.map(|v| v.to_string()),
            ),
            ("keep_percent", self.keep_percent.map(|v| v.to_string())),
            ("cooccurrence", self.cooccurrence.clone()),
            ("damping", self.damping.map(|v| v.to_string())),
            ("alpha", self.alpha.map(|v| v.to_string())),
            ("tolerance", self.tolerance.map(|v| v.to_string())),
            ("max_iterations", self.max_iterations.map(|v| v.to_string())),
        ];
        entries
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (format!("pipeline.{k}"), v)))
            .collect()
    }
}

impl ClassifierOptions {
    pub fn or(self, file: Self) -> Self {
        Self {
            classifier: self.classifier.or(file.classifier),
            members: self.members.or(file.members),
            rounds: self.rounds.or(file.rounds),
            trees: self.trees.or(file.trees),
            max_depth: self.max_depth.or(file.max_depth),
            learning_rate: self.learning_rate.or(file.learning_rate),
            lambda: self.lambda.or(file.lambda),
        }
    }
}

impl SmoteOptions {
    pub fn or(self, file: Self) -> Self {
        Self {
            smote_percentage: self.smote_percentage.or(file.smote_percentage),
            smote_k: self.smote_k.or(file.smote_k),
            no_smote: self.no_smote || file.no_smote,
        }
    }
}

impl PhraseOptions {
    pub fn or(self, file: Self) -> Self {
        Self {
            k: self.k.or(file.k),
            scoring: self.scoring.or(file.scoring),
        }
    }
}
