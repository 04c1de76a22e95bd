//! Document collections, stop lists and orthographic preprocessing.
//!
//! Tokenization is purely orthographic: a token is a maximal run of Unicode
//! letters, combining marks and digits, optionally joined by internal
//! hyphens. No language-specific tooling is involved, so any script works
//! as long as a matching stop list is supplied.

use std::collections::HashSet;
use std::fs;
use std::ops::Range;
use std::path::Path;
use std::sync::LazyLock;

use log::warn;
use rayon::prelude::*;
use regex::Regex;

use crate::error::{Error, Result};

static TOKEN_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"[\p{L}\p{M}\p{N}]+(?:-[\p{L}\p{M}\p{N}]+)*").expect("token pattern")
});

const SENTENCE_TERMINALS: &[char] = &['.', '!', '?', '…', '।', '॥'];

const ENGLISH_SMART: &str = include_str!("../resources/stoplist_en_smart.txt");

/// A set of words removed before any further processing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stoplist {
    id: String,
    words: HashSet<String>,
}

impl Stoplist {
    /// The 571-word SMART English list.
    pub fn english() -> Self {
        Self::parse("smart-en", ENGLISH_SMART)
    }

    pub fn empty() -> Self {
        Self {
            id: "none".to_string(),
            words: HashSet::new(),
        }
    }

    /// Parses one word per line; blank lines and `#` comments are skipped.
    pub fn parse(id: impl Into<String>, text: &str) -> Self {
        let words = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|w| !w.is_empty())
            .map(|w| w.to_lowercase())
            .collect();
        Self {
            id: id.into(),
            words,
        }
    }

    /// Loads a UTF-8 stop list file. The id is the file stem.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".to_string());
        Ok(Self::parse(id, text.trim_start_matches('\u{feff}')))
    }

    pub fn from_words<I, S>(id: impl Into<String>, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            id: id.into(),
            words: words
                .into_iter()
                .map(|w| w.as_ref().to_lowercase())
                .collect(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Lowercased surface form.
    pub surface: String,
    /// 1-based position in the stopword-free token stream.
    pub position: usize,
    /// 1-based position in the token stream before stopword removal.
    pub raw_position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub index: usize,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub raw_text: String,
    /// Sentences holding at least one surviving token, in text order.
    pub sentences: Vec<Sentence>,
    /// All surviving tokens; equal to the concatenation of `sentences`.
    pub tokens: Vec<Token>,
    pub gold_phrases: Vec<String>,
    /// Number of tokens before stopword removal.
    pub raw_token_count: usize,
    /// Index ranges into `tokens` that are not interrupted by punctuation,
    /// a sentence boundary or a removed stopword.
    pub segments: Vec<Range<usize>>,
}

impl Document {
    pub fn unique_word_count(&self) -> usize {
        self.tokens
            .iter()
            .map(|t| t.surface.as_str())
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn with_gold(mut self, gold: Vec<String>) -> Self {
        self.gold_phrases = normalize_gold(gold.iter().map(String::as_str));
        self
    }
}

/// Splits `text` into lowercased orthographic tokens, stopwords included.
pub fn tokenize(text: &str) -> Vec<String> {
    TOKEN_RE
        .find_iter(text)
        .map(|m| m.as_str().to_lowercase())
        .collect()
}

/// Segments, tokenizes and stopword-filters `raw_text`.
///
/// Sentences end at a terminal mark (`.`, `!`, `?`, `…`, `।`, `॥`) that is
/// followed by whitespace or the end of the text.
pub fn preprocess(raw_text: &str, stoplist: &Stoplist) -> Document {
    let mut sentences: Vec<Sentence> = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    let mut segments = Vec::new();
    let mut segment_start = 0usize;
    let mut emitted = 0usize;
    let mut raw_count = 0usize;
    let mut prev_end = 0usize;

    let close_segment = |segments: &mut Vec<Range<usize>>, start: &mut usize, end: usize| {
        if end > *start {
            segments.push(*start..end);
        }
        *start = end;
    };

    for m in TOKEN_RE.find_iter(raw_text) {
        let gap = &raw_text[prev_end..m.start()];
        prev_end = m.end();
        if ends_sentence(gap) && !current.is_empty() {
            sentences.push(Sentence {
                index: sentences.len(),
                tokens: std::mem::take(&mut current),
            });
        }
        if gap.chars().any(|c| !c.is_whitespace()) {
            close_segment(&mut segments, &mut segment_start, emitted);
        }

        raw_count += 1;
        let surface = m.as_str().to_lowercase();
        if stoplist.contains(&surface) {
            close_segment(&mut segments, &mut segment_start, emitted);
            continue;
        }
        emitted += 1;
        current.push(Token {
            surface,
            position: emitted,
            raw_position: raw_count,
        });
    }
    close_segment(&mut segments, &mut segment_start, emitted);
    if !current.is_empty() {
        sentences.push(Sentence {
            index: sentences.len(),
            tokens: current,
        });
    }

    let tokens = sentences
        .iter()
        .flat_map(|s| s.tokens.iter().cloned())
        .collect();
    Document {
        id: String::new(),
        raw_text: raw_text.to_string(),
        sentences,
        tokens,
        gold_phrases: Vec::new(),
        raw_token_count: raw_count,
        segments,
    }
}

fn ends_sentence(gap: &str) -> bool {
    let mut chars = gap.chars().peekable();
    while let Some(c) = chars.next() {
        if SENTENCE_TERMINALS.contains(&c) {
            if let Some(next) = chars.peek() {
                if next.is_whitespace() {
                    return true;
                }
            }
        }
    }
    false
}

fn normalize_gold<'a>(lines: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = HashSet::new();
    lines
        .map(|l| l.trim().to_lowercase())
        .filter(|l| !l.is_empty())
        .filter(|l| seen.insert(l.clone()))
        .collect()
}

/// Counters for files the loader skipped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub skipped_empty: usize,
    pub skipped_invalid_utf8: usize,
    pub missing_keys: usize,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub name: String,
    /// Sorted by id.
    pub documents: Vec<Document>,
    pub stoplist_id: String,
    pub stats: LoadStats,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }
}

enum Loaded {
    Doc(Box<Document>, bool),
    Empty,
    BadUtf8,
}

/// Loads every `<id>.txt` under `root` (non-recursive) with its optional
/// `<id>.key` gold list, one phrase per line.
pub fn load_corpus(root: &Path, stoplist: &Stoplist) -> Result<Corpus> {
    let entries = fs::read_dir(root).map_err(|e| Error::io(root, e))?;
    let mut ids = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(root, e))?.path();
        if path.extension().is_some_and(|ext| ext == "txt") && path.is_file() {
            if let Some(stem) = path.file_stem() {
                ids.push(stem.to_string_lossy().into_owned());
            }
        }
    }
    ids.sort();

    let loaded: Vec<Loaded> = ids
        .par_iter()
        .map(|id| load_document(root, id, stoplist))
        .collect::<Result<_>>()?;

    let mut stats = LoadStats::default();
    let mut documents = Vec::with_capacity(loaded.len());
    for item in loaded {
        match item {
            Loaded::Doc(doc, has_key) => {
                if !has_key {
                    stats.missing_keys += 1;
                }
                documents.push(*doc);
            }
            Loaded::Empty => stats.skipped_empty += 1,
            Loaded::BadUtf8 => stats.skipped_invalid_utf8 += 1,
        }
    }
    if stats.skipped_empty > 0 {
        warn!(
            "{}: skipped {} empty document(s)",
            root.display(),
            stats.skipped_empty
        );
    }
    if stats.skipped_invalid_utf8 > 0 {
        warn!(
            "{}: skipped {} file(s) with malformed UTF-8",
            root.display(),
            stats.skipped_invalid_utf8
        );
    }

    let name = root
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());
    Ok(Corpus {
        name,
        documents,
        stoplist_id: stoplist.id().to_string(),
        stats,
    })
}

fn load_document(root: &Path, id: &str, stoplist: &Stoplist) -> Result<Loaded> {
    let text_path = root.join(format!("{id}.txt"));
    let bytes = fs::read(&text_path).map_err(|e| Error::io(&text_path, e))?;
    let Ok(text) = String::from_utf8(bytes) else {
        warn!("{}: malformed UTF-8, skipped", text_path.display());
        return Ok(Loaded::BadUtf8);
    };
    let text = text.trim_start_matches('\u{feff}');
    if text.trim().is_empty() {
        return Ok(Loaded::Empty);
    }

    let key_path = root.join(format!("{id}.key"));
    let (gold, has_key) = if key_path.is_file() {
        let bytes = fs::read(&key_path).map_err(|e| Error::io(&key_path, e))?;
        let Ok(keys) = String::from_utf8(bytes) else {
            warn!("{}: malformed UTF-8, skipped", key_path.display());
            return Ok(Loaded::BadUtf8);
        };
        (
            normalize_gold(keys.trim_start_matches('\u{feff}').lines()),
            true,
        )
    } else {
        (Vec::new(), false)
    };

    let mut doc = preprocess(text, stoplist).with_id(id);
    doc.gold_phrases = gold;
    Ok(Loaded::Doc(Box::new(doc), has_key))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(s: &Sentence) -> Vec<&str> {
        s.tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    #[test]
    fn splits_sentences_and_removes_stopwords() {
        let stop = Stoplist::from_words("t", ["the"]);
        let doc = preprocess("The cat sat. The dog ran!", &stop);
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(surfaces(&doc.sentences[0]), ["cat", "sat"]);
        assert_eq!(surfaces(&doc.sentences[1]), ["dog", "ran"]);
        let positions: Vec<_> = doc.tokens.iter().map(|t| t.position).collect();
        assert_eq!(positions, [1, 2, 3, 4]);
        let raw: Vec<_> = doc.tokens.iter().map(|t| t.raw_position).collect();
        assert_eq!(raw, [2, 3, 5, 6]);
        assert_eq!(doc.raw_token_count, 6);
    }

    #[test]
    fn only_stopwords_gives_empty_document() {
        let stop = Stoplist::from_words("t", ["the", "a", "of"]);
        let doc = preprocess("The a of. Of the!", &stop);
        assert!(doc.tokens.is_empty());
        assert!(doc.sentences.is_empty());
        assert!(doc.segments.is_empty());
    }

    #[test]
    fn danda_splits_hindi_sentences() {
        let stop = Stoplist::from_words("hi", ["है", "एक"]);
        let doc = preprocess("यह एक परीक्षण है। दूसरा वाक्य यहाँ है।", &stop);
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(surfaces(&doc.sentences[0]), ["यह", "परीक्षण"]);
        assert_eq!(surfaces(&doc.sentences[1]), ["दूसरा", "वाक्य", "यहाँ"]);
    }

    #[test]
    fn decimal_point_does_not_end_sentence() {
        let doc = preprocess("Version 3.5 ships today. Next sentence", &Stoplist::empty());
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(
            surfaces(&doc.sentences[0]),
            ["version", "3", "5", "ships", "today"]
        );
    }

    #[test]
    fn hyphenated_tokens_stay_whole() {
        let toks = tokenize("State-of-the-art co-occurrence -- networks-");
        assert_eq!(toks, ["state-of-the-art", "co-occurrence", "networks"]);
    }

    #[test]
    fn segments_break_at_punctuation_and_stopwords() {
        let stop = Stoplist::from_words("t", ["of", "the"]);
        let doc = preprocess(
            "complex network analysis, graph of the words. new topic",
            &stop,
        );
        let segs: Vec<Vec<&str>> = doc
            .segments
            .iter()
            .map(|r| {
                doc.tokens[r.clone()]
                    .iter()
                    .map(|t| t.surface.as_str())
                    .collect()
            })
            .collect();
        assert_eq!(
            segs,
            vec![
                vec!["complex", "network", "analysis"],
                vec!["graph"],
                vec!["words"],
                vec!["new", "topic"]
            ]
        );
    }

    #[test]
    fn stoplist_parsing_handles_comments_and_case() {
        let s = Stoplist::parse("x", "# header\nThe\n  and # trailing\n\n");
        assert!(s.contains("the"));
        assert!(s.contains("and"));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn english_stoplist_is_loaded() {
        let s = Stoplist::english();
        assert!(s.len() > 500);
        for w in ["the", "of", "and", "which", "however"] {
            assert!(s.contains(w), "{w}");
        }
        assert!(!s.contains("network"));
    }

    #[test]
    fn gold_normalization_trims_lowercases_dedups() {
        let gold =
            normalize_gold(["  Complex Network\r", "complex network", "", "Graph"].into_iter());
        assert_eq!(gold, ["complex network", "graph"]);
    }
}
