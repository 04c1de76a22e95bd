//! Deterministic synthetic corpora for tests, benchmarks and demos.
//!
//! Each document mixes uniformly scattered filler words and stopwords with a
//! few two-word topic phrases that recur in bursts. The topic phrases are the
//! gold keyphrases.

use std::fs;
use std::path::Path;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const SYLLABLES: [&str; 20] = [
    "ka", "lo", "mi", "ne", "po", "ru", "sa", "ti", "vo", "ze", "bra", "cle", "dro", "fin", "gal",
    "hep", "jor", "kel", "mon", "tus",
];
const STOPWORDS: [&str; 8] = ["the", "of", "and", "a", "in", "to", "is", "with"];
const TOPIC_WORDS: usize = 60;
const FILLER_WORDS: usize = 700;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticDoc {
    pub id: String,
    pub text: String,
    pub gold: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntheticConfig {
    pub documents: usize,
    pub sentences: usize,
    pub topics_per_doc: usize,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            documents: 20,
            sentences: 30,
            topics_per_doc: 3,
            seed: 7,
        }
    }
}

/// Three syllables indexed by `i` in base 20.
fn pseudo_word(i: usize) -> String {
    let n = SYLLABLES.len();
    format!(
        "{}{}{}",
        SYLLABLES[i / (n * n) % n],
        SYLLABLES[i / n % n],
        SYLLABLES[i % n]
    )
}

pub fn generate(cfg: &SyntheticConfig) -> Vec<SyntheticDoc> {
    let vocab: Vec<String> = (0..TOPIC_WORDS + FILLER_WORDS)
        .map(|i| pseudo_word(i * 7 + 3))
        .collect();
    let (topic_vocab, filler) = vocab.split_at(TOPIC_WORDS);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let width = cfg.documents.max(1).to_string().len();

    (0..cfg.documents)
        .map(|d| {
            let topics: Vec<(String, String)> = (0..cfg.topics_per_doc)
                .map(|_| {
                    let a = topic_vocab.choose(&mut rng).expect("nonempty").clone();
                    let b = topic_vocab.choose(&mut rng).expect("nonempty").clone();
                    (a, b)
                })
                .filter(|(a, b)| a != b)
                .collect();
            // each topic is concentrated in a window of sentences
            let windows: Vec<usize> = topics
                .iter()
                .map(|_| rng.random_range(0..cfg.sentences.max(1)))
                .collect();
            let mut sentences = Vec::with_capacity(cfg.sentences);
            for s in 0..cfg.sentences {
                let len = rng.random_range(8..16);
                let mut words: Vec<String> = Vec::with_capacity(len + 4);
                for _ in 0..len {
                    if rng.random_bool(0.3) {
                        words.push(STOPWORDS.choose(&mut rng).expect("nonempty").to_string());
                    } else {
                        words.push(filler.choose(&mut rng).expect("nonempty").clone());
                    }
                }
                for ((a, b), &center) in topics.iter().zip(&windows) {
                    let near = s.abs_diff(center) <= 3;
                    if (near && rng.random_bool(0.8)) || rng.random_bool(0.03) {
                        let at = rng.random_range(0..=words.len());
                        words.insert(at, b.clone());
                        words.insert(at, a.clone());
                    }
                }
                let mut sentence = words.join(" ");
                if let Some(first) = sentence.get_mut(0..1) {
                    first.make_ascii_uppercase();
                }
                sentence.push('.');
                sentences.push(sentence);
            }
            SyntheticDoc {
                id: format!("doc{d:0width$}"),
                text: sentences.join(" ") + "\n",
                gold: topics.iter().map(|(a, b)| format!("{a} {b}")).collect(),
            }
        })
        .collect()
}

/// Writes `<id>.txt` and `<id>.key` files into `dir`, creating it if needed.
pub fn write_corpus(dir: &Path, docs: &[SyntheticDoc]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for doc in docs {
        let txt = dir.join(format!("{}.txt", doc.id));
        fs::write(&txt, &doc.text).map_err(|e| Error::io(&txt, e))?;
        let key = dir.join(format!("{}.key", doc.id));
        let gold: String = doc.gold.iter().map(|g| format!("{g}\n")).collect();
        fs::write(&key, gold).map_err(|e| Error::io(&key, e))?;
    }
    Ok(())
}
