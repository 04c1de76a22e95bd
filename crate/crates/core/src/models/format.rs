//! Model file: a line-oriented `key: value` header followed by a base64
//! binary payload.
//!
//! ```text
//! keygraph-model: 1
//! kind: gbdt
//! feature_names: strength,eigenvector,pagerank,positionrank,coreness,clustering_coefficient
//! seed: 42
//! corpora: hulth2003,semeval2010
//! setting.trees: 100
//! payload_length: 12345
//! payload_sha256: <hex digest of the decoded payload>
//! payload:
//! <base64, wrapped at 76 columns>
//! ```
//!
//! The payload holds the classifier parameters as little-endian integers and
//! IEEE-754 doubles.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use sha2::{Digest, Sha256};

use super::{
    AdaBoostNb, BaggedNb, Classifier, GaussianNb, Gbdt, ModelKind, ModelMetadata, Node,
    TrainedModel, Tree,
};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "keygraph-model";
const WRAP: usize = 76;

fn format_err(msg: impl Into<String>) -> Error {
    Error::ModelFormat(msg.into())
}

#[derive(Default)]
struct Encoder(Vec<u8>);

impl Encoder {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }

    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn len(&mut self, v: usize) {
        self.u64(v as u64);
    }

    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn f64s(&mut self, v: &[f64]) {
        self.len(v.len());
        v.iter().for_each(|&x| self.f64(x));
    }

    fn nb(&mut self, m: &GaussianNb) {
        self.f64(m.priors[0]);
        self.f64(m.priors[1]);
        for c in 0..2 {
            self.f64s(&m.means[c]);
            self.f64s(&m.variances[c]);
        }
    }

    fn classifier(&mut self, c: &Classifier) {
        match c {
            Classifier::NaiveBayes(m) => self.nb(m),
            Classifier::Bagging(m) => {
                self.len(m.members.len());
                m.members.iter().for_each(|nb| self.nb(nb));
            }
            Classifier::AdaBoost(m) => {
                self.len(m.stages.len());
                for (nb, alpha) in &m.stages {
                    self.f64(*alpha);
                    self.nb(nb);
                }
            }
            Classifier::Gbdt(m) => {
                self.f64(m.initial_score);
                self.f64(m.learning_rate);
                self.len(m.trees.len());
                for t in &m.trees {
                    self.len(t.nodes.len());
                    for node in &t.nodes {
                        match *node {
                            Node::Leaf(v) => {
                                self.u8(0);
                                self.f64(v);
                            }
                            Node::Split {
                                feature,
                                threshold,
                                left,
                                right,
                            } => {
                                self.u8(1);
                                self.len(feature);
                                self.f64(threshold);
                                self.len(left);
                                self.len(right);
                            }
                        }
                    }
                }
            }
        }
    }
}

struct Decoder<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Decoder<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.at.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| format_err("payload truncated"))?;
        let s = &self.bytes[self.at..end];
        self.at = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    /// A length or index, bounded by the bytes left so corrupt input cannot
    /// trigger huge allocations.
    fn len(&mut self) -> Result<usize> {
        let v = self.u64()?;
        if v > self.bytes.len() as u64 {
            return Err(format_err(format!("implausible length {v}")));
        }
        Ok(v as usize)
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    fn f64s(&mut self) -> Result<Vec<f64>> {
        let n = self.len()?;
        (0..n).map(|_| self.f64()).collect()
    }

    fn nb(&mut self, dim: usize) -> Result<GaussianNb> {
        let priors = [self.f64()?, self.f64()?];
        let (m0, v0, m1, v1) = (self.f64s()?, self.f64s()?, self.f64s()?, self.f64s()?);
        if [&m0, &v0, &m1, &v1].iter().any(|v| v.len() != dim) {
            return Err(format_err("naive Bayes parameter width mismatch"));
        }
        if v0.iter().chain(&v1).any(|v| v.is_nan() || *v <= 0.0) {
            return Err(format_err("non-positive variance"));
        }
        Ok(GaussianNb {
            priors,
            means: [m0, m1],
            variances: [v0, v1],
        })
    }

    fn classifier(&mut self, kind: ModelKind, dim: usize) -> Result<Classifier> {
        Ok(match kind {
            ModelKind::NaiveBayes => Classifier::NaiveBayes(self.nb(dim)?),
            ModelKind::NaiveBayesBagging => {
                let n = self.len()?;
                if n == 0 {
                    return Err(format_err("empty bagging ensemble"));
                }
                let members = (0..n).map(|_| self.nb(dim)).collect::<Result<_>>()?;
                Classifier::Bagging(BaggedNb { members })
            }
            ModelKind::NaiveBayesAdaBoost => {
                let n = self.len()?;
                let stages = (0..n)
                    .map(|_| {
                        let alpha = self.f64()?;
                        if !alpha.is_finite() {
                            return Err(format_err("non-finite stage weight"));
                        }
                        Ok((self.nb(dim)?, alpha))
                    })
                    .collect::<Result<_>>()?;
                Classifier::AdaBoost(AdaBoostNb { stages })
            }
            ModelKind::Gbdt => {
                let initial_score = self.f64()?;
                let learning_rate = self.f64()?;
                let n = self.len()?;
                let trees = (0..n).map(|_| self.tree(dim)).collect::<Result<_>>()?;
                Classifier::Gbdt(Gbdt {
                    initial_score,
                    learning_rate,
                    trees,
                })
            }
        })
    }

    fn tree(&mut self, dim: usize) -> Result<Tree> {
        let n = self.len()?;
        let mut nodes = Vec::with_capacity(n);
        for i in 0..n {
            nodes.push(match self.u8()? {
                0 => Node::Leaf(self.f64()?),
                1 => {
                    let feature = self.len()?;
                    let threshold = self.f64()?;
                    let (left, right) = (self.len()?, self.len()?);
                    // children always follow their parent, which rules out cycles
                    if feature >= dim || left <= i || right <= i || left >= n || right >= n {
                        return Err(format_err("invalid tree node"));
                    }
                    Node::Split {
                        feature,
                        threshold,
                        left,
                        right,
                    }
                }
                tag => return Err(format_err(format!("unknown node tag {tag}"))),
            });
        }
        if nodes.is_empty() {
            return Err(format_err("empty tree"));
        }
        Ok(Tree { nodes })
    }
}

fn check_value(key: &str, value: &str) -> Result<()> {
    if value.contains(['\n', '\r']) || key.contains([':', '\n', '\r']) {
        return Err(format_err(format!(
            "metadata entry {key:?} contains a line break or colon"
        )));
    }
    Ok(())
}

/// Serializes `m`. Output is a deterministic function of the model.
pub fn save_model(m: &TrainedModel) -> Result<Vec<u8>> {
    let meta = &m.metadata;
    let mut enc = Encoder::default();
    enc.classifier(&m.classifier);
    let payload = enc.0;

    let mut header = vec![
        (MAGIC.to_string(), FORMAT_VERSION.to_string()),
        ("kind".into(), m.kind().as_str().into()),
        ("feature_names".into(), meta.feature_names.join(",")),
        ("seed".into(), meta.seed.to_string()),
        ("corpora".into(), meta.corpora.join(",")),
    ];
    for (k, v) in &meta.settings {
        header.push((format!("setting.{k}"), v.clone()));
    }
    header.push(("payload_length".into(), payload.len().to_string()));
    header.push((
        "payload_sha256".into(),
        hex::encode(Sha256::digest(&payload)),
    ));

    let mut out = String::new();
    for (k, v) in &header {
        check_value(k, v)?;
        out.push_str(&format!("{k}: {v}\n"));
    }
    if meta
        .feature_names
        .iter()
        .chain(&meta.corpora)
        .any(|s| s.contains(','))
    {
        return Err(format_err(
            "feature and corpus names must not contain commas",
        ));
    }
    out.push_str("payload:\n");
    let encoded = STANDARD.encode(&payload);
    for chunk in encoded.as_bytes().chunks(WRAP) {
        out.push_str(std::str::from_utf8(chunk).expect("base64 is ASCII"));
        out.push('\n');
    }
    Ok(out.into_bytes())
}

fn split_list(s: &str) -> Vec<String> {
    if s.is_empty() {
        Vec::new()
    } else {
        s.split(',').map(str::to_string).collect()
    }
}

pub fn load_model(bytes: &[u8]) -> Result<TrainedModel> {
    let text = std::str::from_utf8(bytes).map_err(|_| format_err("not UTF-8"))?;
    let mut lines = text.lines();
    let mut fields: Vec<(&str, &str)> = Vec::new();
    loop {
        let line = lines
            .next()
            .ok_or_else(|| format_err("missing payload section"))?;
        if line == "payload:" {
            break;
        }
        let (k, v) = line
            .split_once(": ")
            .ok_or_else(|| format_err(format!("malformed header line {line:?}")))?;
        fields.push((k, v));
    }
    let get = |key: &str| {
        fields
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| format_err(format!("missing header field {key:?}")))
    };
    match fields.first() {
        Some((MAGIC, v)) if *v == FORMAT_VERSION.to_string() => {}
        Some((MAGIC, v)) => return Err(format_err(format!("unsupported format version {v}"))),
        _ => return Err(format_err("not a keygraph model file")),
    }
    let kind: ModelKind = get("kind")?
        .parse()
        .map_err(|_| format_err("unknown model kind"))?;
    let feature_names = split_list(get("feature_names")?);
    let seed = get("seed")?.parse().map_err(|_| format_err("bad seed"))?;
    let corpora = split_list(get("corpora")?);
    let settings = fields
        .iter()
        .filter_map(|(k, v)| {
            k.strip_prefix("setting.")
                .map(|k| (k.to_string(), v.to_string()))
        })
        .collect();
    let length: usize = get("payload_length")?
        .parse()
        .map_err(|_| format_err("bad payload length"))?;
    let digest = get("payload_sha256")?;

    let encoded: String = lines.collect();
    let payload = STANDARD
        .decode(encoded.as_bytes())
        .map_err(|e| format_err(format!("bad base64: {e}")))?;
    if payload.len() != length {
        return Err(format_err(format!(
            "payload is {} bytes, header says {length}",
            payload.len()
        )));
    }
    if hex::encode(Sha256::digest(&payload)) != digest {
        return Err(format_err("payload checksum mismatch"));
    }
    if feature_names.is_empty() {
        return Err(format_err("no feature names"));
    }
    let mut dec = Decoder {
        bytes: &payload,
        at: 0,
    };
    let classifier = dec.classifier(kind, feature_names.len())?;
    if dec.at != payload.len() {
        return Err(format_err("trailing bytes in payload"));
    }
    Ok(TrainedModel {
        classifier,
        metadata: ModelMetadata {
            feature_names,
            seed,
            corpora,
            settings,
        },
    })
}
