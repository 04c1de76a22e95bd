//! Candidate labeling, training set assembly and SMOTE oversampling.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_COUNT};
use crate::pipeline::{analyze, PipelineConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn is_positive(self) -> bool {
        self == Label::Positive
    }

    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Positive => "positive",
            Label::Negative => "negative",
        }
    }
}

/// Document and word a record was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub doc_id: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateRecord {
    /// `None` for synthetic rows.
    pub origin: Option<Origin>,
    pub features: FeatureVector,
    pub label: Label,
}

impl CandidateRecord {
    pub fn is_synthetic(&self) -> bool {
        self.origin.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainingSet {
    pub records: Vec<CandidateRecord>,
}

impl TrainingSet {
    pub fn new(records: Vec<CandidateRecord>) -> Self {
        Self { records }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// `(positives, negatives)`.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self
            .records
            .iter()
            .filter(|r| r.label.is_positive())
            .count();
        (pos, self.records.len() - pos)
    }

    pub fn feature_rows(&self) -> Vec<[f64; FEATURE_COUNT]> {
        self.records.iter().map(|r| r.features.to_array()).collect()
    }

    pub fn labels(&self) -> Vec<bool> {
        self.records.iter().map(|r| r.label.is_positive()).collect()
    }

    /// Writes a header row and one tab-separated row per record. `comments`
    /// become leading `# ` lines.
    pub fn write_tsv<W: Write>(&self, mut out: W, comments: &[String]) -> std::io::Result<()> {
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "{}", TSV_HEADER.join("\t"))?;
        for r in &self.records {
            let (doc, word) = r
                .origin
                .as_ref()
                .map_or(("", ""), |o| (o.doc_id.as_str(), o.word.as_str()));
            write!(out, "{doc}\t{word}")?;
            for v in r.features.to_array() {
                write!(out, "\t{v}")?;
            }
            writeln!(
                out,
                "\t{}\t{}",
                r.label.as_str(),
                u8::from(r.is_synthetic())
            )?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(input: R) -> Result<Self> {
        let mut records = Vec::new();
        let mut header_seen = false;
        for (i, line) in input.lines().enumerate() {
            let line_no = i + 1;
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let line = line.map_err(|e| parse_err(e.to_string()))?;
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if !header_seen {
                if fields != TSV_HEADER {
                    return Err(parse_err("unexpected header".into()));
                }
                header_seen = true;
                continue;
            }
            if fields.len() != TSV_HEADER.len() {
                return Err(parse_err(format!(
                    "expected {} fields, got {}",
                    TSV_HEADER.len(),
                    fields.len()
                )));
            }
            let mut values = [0.0; FEATURE_COUNT];
            for (slot, text) in values.iter_mut().zip(&fields[2..2 + FEATURE_COUNT]) {
                *slot = text
                    .parse()
                    .map_err(|_| parse_err(format!("bad number {text:?}")))?;
            }
            let label = match fields[8] {
                "positive" => Label::Positive,
                "negative" => Label::Negative,
                other => return Err(parse_err(format!("bad label {other:?}"))),
            };
            let origin = match fields[9] {
                "1" => None,
                "0" => Some(Origin {
                    doc_id: fields[0].to_string(),
                    word: fields[1].to_string(),
                }),
                other => return Err(parse_err(format!("bad synthetic flag {other:?}"))),
            };
            records.push(CandidateRecord {
                origin,
                features: FeatureVector::from_array(values),
                label,
            });
        }
        if !header_seen {
            return Err(Error::Parse {
                line: 0,
                message: "missing header".into(),
            });
        }
        Ok(Self { records })
    }
}

/// Column layout of the training set file; the first nine columns are the
/// feature dump layout.
pub const TSV_HEADER: [&str; 10] = [
    "doc_id",
    "word",
    "strength",
    "eigen",
    "pr",
    "posr",
    "core",
    "cc",
    "label",
    "synthetic",
];

/// Marks a word positive when it equals a whitespace-separated token of any
/// gold phrase. Gold phrases are expected lowercased; no stemming is applied.
pub fn label_candidates(
    doc_id: &str,
    rows: &[(String, FeatureVector)],
    gold_phrases: &[String],
) -> Vec<CandidateRecord> {
    let gold: HashSet<&str> = gold_phrases
        .iter()
        .flat_map(|p| p.split_whitespace())
        .collect();
    rows.iter()
        .map(|(word, fv)| CandidateRecord {
            origin: Some(Origin {
                doc_id: doc_id.to_string(),
                word: word.clone(),
            }),
            features: *fv,
            label: Label::from_bool(gold.contains(word.as_str())),
        })
        .collect()
}

/// Labeled records of every document with gold phrases, in corpus, document
/// id and graph node order. Record ids are `<corpus>/<doc id>`.
pub fn assemble_training_set(corpora: &[Corpus], cfg: &PipelineConfig) -> TrainingSet {
    let mut records = Vec::new();
    for corpus in corpora {
        let per_doc: Vec<Option<Vec<CandidateRecord>>> = corpus
            .documents
            .par_iter()
            .map(|doc| {
                if doc.gold_phrases.is_empty() {
                    return None;
                }
                let analysis = analyze(doc, cfg);
                let id = format!("{}/{}", corpus.name, doc.id);
                Some(label_candidates(&id, &analysis.features, &doc.gold_phrases))
            })
            .collect();
        let mut no_gold = 0;
        let mut empty = 0;
        for recs in per_doc {
            match recs {
                None => no_gold += 1,
                Some(r) if r.is_empty() => empty += 1,
                Some(r) => records.extend(r),
            }
        }
        if no_gold > 0 {
            log::warn!(
                "{}: {no_gold} document(s) without gold phrases skipped",
                corpus.name
            );
        }
        if empty > 0 {
            log::info!(
                "{}: {empty} document(s) produced an empty graph",
                corpus.name
            );
        }
    }
    TrainingSet { records }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoteConfig {
    /// Synthetic rows per positive, in percent; a positive multiple of 100.
    pub percentage: u32,
    pub k: usize,
    pub seed: u64,
}

impl Default for SmoteConfig {
    fn default() -> Self {
        Self {
            percentage: 200,
            k: 5,
            seed: 42,
        }
    }
}

fn squared_distance(a: &[f64; FEATURE_COUNT], b: &[f64; FEATURE_COUNT]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Indices (into `points`) of the `k` nearest points to `points[i]`,
/// excluding `i`; distance ties go to the lower index.
pub(crate) fn nearest_neighbors(points: &[[f64; FEATURE_COUNT]], i: usize, k: usize) -> Vec<usize> {
    let mut dist: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(j, p)| (squared_distance(&points[i], p), j))
        .collect();
    let k = k.min(dist.len());
    if k == 0 {
        return Vec::new();
    }
    let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    dist.select_nth_unstable_by(k - 1, cmp);
    dist.truncate(k);
    dist.sort_by(cmp);
    dist.into_iter().map(|(_, j)| j).collect()
}

/// Appends `percentage / 100` synthetic positives per positive record.
/// Each is `x + gap * (nb - x)` for a neighbor `nb` drawn uniformly from the
/// `k` nearest positives of `x` and `gap ~ U(0, 1)`.
pub fn smote(ts: &TrainingSet, cfg: &SmoteConfig) -> Result<TrainingSet> {
    if cfg.percentage == 0 || cfg.percentage % 100 != 0 {
        return Err(Error::InvalidConfig(format!(
            "SMOTE percentage {} is not a positive multiple of 100",
            cfg.percentage
        )));
    }
    if cfg.k == 0 {
        return Err(Error::InvalidConfig("SMOTE k must be >= 1".into()));
    }
    let minority: Vec<[f64; FEATURE_COUNT]> = ts
        .records
        .iter()
        .filter(|r| r.label.is_positive())
        .map(|r| r.features.to_array())
        .collect();
    if minority.is_empty() {
        return Err(Error::NoMinoritySamples);
    }
    let mut k = cfg.k;
    if minority.len() <= k {
        k = minority.len() - 1;
        log::warn!(
            "only {} positive record(s); SMOTE k reduced to {k}",
            minority.len()
        );
    }
    let per_record = (cfg.percentage / 100) as usize;
    let neighbors: Vec<Vec<usize>> = (0..minority.len())
        .into_par_iter()
        .map(|i| nearest_neighbors(&minority, i, k))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut records = ts.records.clone();
    records.reserve(per_record * minority.len());
    for (x, nbs) in minority.iter().zip(&neighbors) {
        for _ in 0..per_record {
            let synthetic = if nbs.is_empty() {
                *x
            } else {
                let nb = &minority[nbs[rng.random_range(0..nbs.len())]];
                let gap: f64 = rng.random();
                std::array::from_fn(|f| (x[f] + gap * (nb[f] - x[f])).clamp(0.0, 1.0))
            };
            records.push(CandidateRecord {
                origin: None,
                features: FeatureVector::from_array(synthetic),
                label: Label::Positive,
            });
        }
    }
    Ok(TrainingSet { records })
}
