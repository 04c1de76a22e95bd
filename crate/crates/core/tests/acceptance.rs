//! Acceptance criteria. `acceptance_report` prints one line per criterion
//! and fails if any runnable criterion fails. Criteria that need the public
//! keyphrase datasets read them from `$KEYGRAPH_DATA` and report BLOCKED when
//! the data is absent; the `#[ignore]`d `strict_*` tests demand them.
//!
//! Expected layout of `$KEYGRAPH_DATA` (one `<id>.txt` plus `<id>.key` per
//! document):
//!
//! ```text
//! hulth2003-train/        1500 abstracts (train + test splits)
//! hulth2003-validation/    500 abstracts
//! semeval2010-train/       244 full articles (train + test splits)
//! www/  kdd/               cross-collection abstracts
//! marujo2012-train/        news stories, training split
//! ```

use std::collections::HashSet;
use std::io::Write;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

use keygraph::evaluation::{bootstrap_pvalue, cross_validate};
use keygraph::features::{
    clustering_coefficient, coreness, eigenvector_centrality, pagerank, position_rank,
};
use keygraph::graph::TextGraph;
use keygraph::synthetic::{generate, write_corpus, SyntheticConfig};
use keygraph::training::{CandidateRecord, Origin};
use keygraph::*;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug)]
enum Outcome {
    Pass(String),
    Fail(String),
    Blocked(String),
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

// ---------------------------------------------------------------- C1 oracles

struct RandomGraph {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
    positions: Vec<Vec<usize>>,
}

impl RandomGraph {
    /// Connected: a random spanning tree plus extra random edges.
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        let n = rng.random_range(2..=15);
        let density: f64 = rng.random_range(0.0..0.6);
        let mut present = HashSet::new();
        let mut edges = Vec::new();
        for v in 1..n {
            let u = rng.random_range(0..v);
            present.insert((u, v));
            edges.push((u, v, rng.random_range(1..=5)));
        }
        for a in 0..n {
            for b in a + 1..n {
                if !present.contains(&(a, b)) && rng.random_bool(density) {
                    edges.push((a, b, rng.random_range(1..=5)));
                }
            }
        }
        let positions = (0..n)
            .map(|_| {
                let mut p: Vec<usize> = (0..rng.random_range(1..4))
                    .map(|_| rng.random_range(1..200))
                    .collect();
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        Self {
            n,
            edges,
            positions,
        }
    }

    fn graph(&self) -> TextGraph {
        TextGraph::from_edges(
            (0..self.n).map(|i| format!("n{i}")).collect(),
            self.edges.clone(),
            self.positions.clone(),
        )
        .unwrap()
    }

    fn matrix(&self) -> DMatrix<f64> {
        let mut w = DMatrix::zeros(self.n, self.n);
        for &(a, b, x) in &self.edges {
            w[(a, b)] += x as f64;
            w[(b, a)] += x as f64;
        }
        w
    }
}

fn sigma_oracle(positions: &[usize], stream_len: usize) -> f64 {
    // s^2 = (sum g^2 - (n+1) mu^2) / (n - 1) over the n + 1 padded gaps
    let mut padded = vec![0];
    padded.extend_from_slice(positions);
    padded.push(stream_len + 1);
    let gaps: Vec<f64> = padded.windows(2).map(|w| (w[1] - w[0]) as f64).collect();
    let mu = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let sum_sq: f64 = gaps.iter().map(|g| g * g).sum();
    let var = (sum_sq - gaps.len() as f64 * mu * mu) / (positions.len() - 1) as f64;
    var.max(0.0).sqrt() / mu
}

fn coreness_oracle(w: &DMatrix<f64>) -> Vec<u32> {
    let n = w.nrows();
    let mut core = vec![0u32; n];
    for k in 1..n as u32 {
        let mut alive = vec![true; n];
        loop {
            let drop: Vec<usize> = (0..n)
                .filter(|&i| {
                    alive[i] && (0..n).filter(|&j| alive[j] && w[(i, j)] > 0.0).count() < k as usize
                })
                .collect();
            if drop.is_empty() {
                break;
            }
            drop.into_iter().for_each(|i| alive[i] = false);
        }
        for i in 0..n {
            if alive[i] {
                core[i] = k;
            }
        }
    }
    core
}

fn cc_oracle(w: &DMatrix<f64>) -> Vec<f64> {
    let n = w.nrows();
    (0..n)
        .map(|i| {
            let nb: Vec<usize> = (0..n).filter(|&j| w[(i, j)] > 0.0).collect();
            if nb.len() < 2 {
                return 0.0;
            }
            let mut links = 0;
            for a in 0..nb.len() {
                for b in a + 1..nb.len() {
                    if w[(nb[a], nb[b])] > 0.0 {
                        links += 1;
                    }
                }
            }
            links as f64 / (nb.len() * (nb.len() - 1) / 2) as f64
        })
        .collect()
}

/// Solves `x = base + d * M x` with `M[i][j] = w_ji / s_j`.
fn linear_rank_oracle(w: &DMatrix<f64>, damping: f64, base: &DVector<f64>) -> DVector<f64> {
    let n = w.nrows();
    let strength: Vec<f64> = (0..n).map(|j| w.column(j).sum()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| w[(j, i)] / strength[j]);
    let a = DMatrix::identity(n, n) - m * damping;
    a.lu().solve(base).expect("nonsingular")
}

fn eigen_oracle(w: &DMatrix<f64>) -> Vec<f64> {
    let eig = SymmetricEigen::new(w.clone());
    let top = eig.eigenvalues.imax();
    let v = eig.eigenvectors.column(top);
    let sign = if v.sum() < 0.0 { -1.0 } else { 1.0 };
    v.iter().map(|x| x * sign).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn criterion_formula_oracles() -> Outcome {
    const GRAPHS: usize = 150;
    const TOL: f64 = 1e-6;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    // tight stopping rule so the iterate is within TOL of the fixed point;
    // with the default rule the distance can reach tolerance * d / (1 - d)
    let tight = RankConfig {
        tolerance: 1e-11,
        max_iterations: 100_000,
        ..RankConfig::default()
    };
    let mut worst = [0.0f64; 5];
    let mut core_mismatch = 0;

    for _ in 0..GRAPHS {
        let rg = RandomGraph::sample(&mut rng);
        let g = rg.graph();
        let w = rg.matrix();

        let stream_len = rng.random_range(10..300);
        let mut pos: Vec<usize> = (0..rng.random_range(2..12))
            .map(|_| rng.random_range(1..=stream_len))
            .collect();
        pos.sort_unstable();
        pos.dedup();
        if pos.len() >= 2 {
            let occ = OccurrenceIndex::new("w", pos.clone(), stream_len).unwrap();
            worst[0] =
                worst[0].max((sigma_index(&occ).unwrap() - sigma_oracle(&pos, stream_len)).abs());
        }

        if coreness(&g) != coreness_oracle(&w) {
            core_mismatch += 1;
        }
        worst[1] = worst[1].max(max_diff(&clustering_coefficient(&g), &cc_oracle(&w)));

        let d = tight.damping;
        let pr = linear_rank_oracle(&w, d, &DVector::from_element(rg.n, 1.0 - d));
        worst[2] = worst[2].max(max_diff(&pagerank(&g, &tight).values, pr.as_slice()));

        let raw: Vec<f64> = rg
            .positions
            .iter()
            .map(|p| p.iter().map(|&x| 1.0 / x as f64).sum())
            .collect();
        let total: f64 = raw.iter().sum();
        let a = tight.alpha;
        let base = DVector::from_iterator(rg.n, raw.iter().map(|r| (1.0 - a) * r / total));
        let posr = linear_rank_oracle(&w, a, &base);
        worst[3] = worst[3].max(max_diff(&position_rank(&g, &tight).values, posr.as_slice()));

        worst[4] = worst[4].max(max_diff(
            &eigenvector_centrality(&g, &tight).values,
            &eigen_oracle(&w),
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    let names = ["sigma", "cc", "pagerank", "positionrank", "eigenvector"];
    let detail = format!(
        "{GRAPHS} graphs in {secs:.2}s; coreness mismatches {core_mismatch}; max errors {}",
        names
            .iter()
            .zip(worst)
            .map(|(n, e)| format!("{n}={e:.1e}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    check(
        core_mismatch == 0 && worst.iter().all(|&e| e <= TOL) && secs < 10.0,
        detail,
    )
}

// ---------------------------------------------------------------- C2

fn hub_graph(extra: &[(usize, usize)]) -> TextGraph {
    let mut edges: Vec<(usize, usize)> = (1..=6).map(|i| (0, i)).collect();
    edges.extend([(1, 2), (3, 4), (5, 6)]);
    edges.extend_from_slice(extra);
    TextGraph::unit_weighted(7, &edges).unwrap()
}

fn criterion_hub_clustering() -> Outcome {
    let unrelated = clustering_coefficient(&hub_graph(&[]))[0];
    let related = clustering_coefficient(&hub_graph(&[(2, 3), (4, 5), (6, 1), (1, 3), (2, 4)]))[0];
    check(
        unrelated == 3.0 / 15.0
            && related == 8.0 / 15.0
            && (unrelated - 0.20).abs() < 1e-12
            && (related - 0.53).abs() < 0.005,
        format!("CC(w) = {unrelated:.4} and {related:.4}"),
    )
}

// ---------------------------------------------------------------- C3

fn random_training_set(rng: &mut ChaCha8Rng) -> TrainingSet {
    let n = rng.random_range(20..120);
    let share: f64 = rng.random_range(0.1..0.5);
    let records = (0..n)
        .map(|i| {
            let positive = rng.random_bool(share) || i == 0;
            // coarse grid values so distance ties occur
            let features = FeatureVector::from_array(std::array::from_fn(|_| {
                (rng.random_range(0..=8) as f64) / 8.0
            }));
            CandidateRecord {
                origin: Some(Origin {
                    doc_id: "d".into(),
                    word: format!("w{i}"),
                }),
                features,
                label: Label::from_bool(positive),
            }
        })
        .collect();
    TrainingSet::new(records)
}

fn dist2(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

/// `s` lies on the segment from `p` to `q`.
fn on_segment(p: &[f64; 6], q: &[f64; 6], s: &[f64; 6]) -> bool {
    let gap = (0..6)
        .filter(|&f| (q[f] - p[f]).abs() > 1e-12)
        .map(|f| (s[f] - p[f]) / (q[f] - p[f]))
        .next()
        .unwrap_or(0.0);
    (-1e-12..=1.0 + 1e-12).contains(&gap)
        && (0..6).all(|f| (p[f] + gap * (q[f] - p[f]) - s[f]).abs() < 1e-12)
}

fn criterion_smote_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut sets = 0;
    let mut violations = Vec::new();
    for trial in 0..60 {
        let ts = random_training_set(&mut rng);
        let pct = 100 * rng.random_range(1..=5u32);
        let cfg = SmoteConfig {
            percentage: pct,
            k: 5,
            seed: trial,
        };
        let (pos, neg) = ts.class_counts();
        let out = smote(&ts, &cfg).unwrap();
        sets += 1;
        let expected_pos = pos * (1 + pct as usize / 100);
        if out.class_counts() != (expected_pos, neg) || out.records[..ts.len()] != ts.records[..] {
            violations.push(format!(
                "trial {trial}: counts {:?}, expected ({expected_pos}, {neg})",
                out.class_counts()
            ));
            continue;
        }
        let parents: Vec<[f64; 6]> = ts
            .records
            .iter()
            .filter(|r| r.label.is_positive())
            .map(|r| r.features.to_array())
            .collect();
        let k = 5.min(parents.len() - 1);
        let per = pct as usize / 100;
        for (s_idx, rec) in out.records[ts.len()..].iter().enumerate() {
            let pi = s_idx / per;
            let p = &parents[pi];
            let s = rec.features.to_array();
            let mut d: Vec<f64> = (0..parents.len())
                .filter(|&j| j != pi)
                .map(|j| dist2(p, &parents[j]))
                .collect();
            d.sort_by(f64::total_cmp);
            let ok = if k == 0 {
                s == *p
            } else {
                let kth = d[k - 1];
                (0..parents.len()).any(|j| {
                    j != pi && dist2(p, &parents[j]) <= kth && on_segment(p, &parents[j], &s)
                })
            };
            if !ok || !rec.is_synthetic() || !rec.label.is_positive() {
                violations.push(format!("trial {trial}: synthetic row {s_idx} is not between parent {pi} and a nearest neighbor"));
            }
        }
    }
    check(
        violations.is_empty(),
        if violations.is_empty() {
            format!("{sets} random sets, percentages 100..500")
        } else {
            violations[..violations.len().min(3)].join("; ")
        },
    )
}

// ---------------------------------------------------------------- data

fn data_dir(name: &str) -> Result<PathBuf, String> {
    let root =
        std::env::var_os("KEYGRAPH_DATA").ok_or_else(|| "KEYGRAPH_DATA not set".to_string())?;
    let dir = PathBuf::from(root).join(name);
    if dir.is_dir() {
        Ok(dir)
    } else {
        Err(format!("{} missing", dir.display()))
    }
}

fn load(name: &str) -> Result<Corpus, String> {
    let dir = data_dir(name)?;
    load_corpus(&dir, &Stoplist::english()).map_err(|e| e.to_string())
}

struct Trained {
    training: TrainingSet,
    gbdt: KeywordExtractor,
}

const SEED: u64 = 42;

fn trained() -> &'static Result<Trained, String> {
    static CELL: OnceLock<Result<Trained, String>> = OnceLock::new();
    CELL.get_or_init(|| {
        let corpora = vec![load("hulth2003-train")?, load("semeval2010-train")?];
        let cfg = PipelineConfig::default();
        let training = assemble_training_set(&corpora, &cfg);
        let balanced = smote(&training, &SmoteConfig::default()).map_err(|e| e.to_string())?;
        let spec = ModelSpec::new(ModelKind::Gbdt).with_seed(SEED);
        let names = corpora.iter().map(|c| c.name.clone()).collect();
        let model = TrainedModel::train(&spec, &balanced, names).map_err(|e| e.to_string())?;
        Ok(Trained {
            training,
            gbdt: KeywordExtractor::new(model, cfg),
        })
    })
}

fn hulth_validation_report() -> &'static Result<EvalReport, String> {
    static CELL: OnceLock<Result<EvalReport, String>> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = trained().as_ref().map_err(Clone::clone)?;
        let corpus = load("hulth2003-validation")?;
        Ok(t.gbdt.evaluate(
            &corpus,
            EvalLevel::TopK(10),
            PhraseScoring::Mean,
            &Stoplist::english(),
        ))
    })
}

fn criterion_table2() -> Outcome {
    let t = match trained() {
        Ok(t) => t,
        Err(e) => return Outcome::Blocked(e.clone()),
    };
    let targets = [
        (ModelKind::NaiveBayes, 58.95, 5.0),
        (ModelKind::NaiveBayesAdaBoost, 61.41, 5.0),
        (ModelKind::Gbdt, 77.59, 10.0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (kind, target, tol) in targets {
        let spec = ModelSpec::new(kind).with_seed(SEED);
        match cross_validate(&t.training, 10, &spec, Some(&SmoteConfig::default()), SEED) {
            Ok(r) => {
                let f1 = 100.0 * r.metrics.f1;
                ok &= (f1 - target).abs() <= tol;
                parts.push(format!("{kind} F1 {f1:.2} (target {target}±{tol})"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{kind}: {e}"));
            }
        }
    }
    check(ok, parts.join("; "))
}

fn criterion_table6() -> Outcome {
    match hulth_validation_report() {
        Err(e) => Outcome::Blocked(e.clone()),
        Ok(r) => {
            let f1 = 100.0 * r.macro_avg.f1;
            check(
                (f1 - 54.7).abs() <= 5.0,
                format!("keyphrases@10 macro F1 {f1:.2} (target 54.7±5)"),
            )
        }
    }
}

fn criterion_cross_collection() -> Outcome {
    let t = match trained() {
        Ok(t) => t,
        Err(e) => return Outcome::Blocked(e.clone()),
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["www", "kdd"] {
        let corpus = match load(name) {
            Ok(c) => c,
            Err(e) => return Outcome::Blocked(e),
        };
        let r = t.gbdt.evaluate(
            &corpus,
            EvalLevel::Words,
            PhraseScoring::Mean,
            &Stoplist::english(),
        );
        let (p, rec) = (100.0 * r.macro_avg.precision, 100.0 * r.macro_avg.recall);
        ok &= rec >= 65.0 && p <= 30.0;
        parts.push(format!("{name} P {p:.1} R {rec:.1}"));
    }
    check(ok, parts.join("; ") + " (need R >= 65, P <= 30)")
}

fn criterion_cross_domain() -> Outcome {
    let t = match trained() {
        Ok(t) => t,
        Err(e) => return Outcome::Blocked(e.clone()),
    };
    let corpus = match load("marujo2012-train") {
        Ok(c) => c,
        Err(e) => return Outcome::Blocked(e),
    };
    let r = t.gbdt.evaluate(
        &corpus,
        EvalLevel::TopK(10),
        PhraseScoring::Mean,
        &Stoplist::english(),
    );
    let p = 100.0 * r.macro_avg.precision;
    check(
        p >= 80.0,
        format!("keyphrases@10 precision {p:.2} (need >= 80)"),
    )
}

fn criterion_bootstrap() -> Outcome {
    // self versus self: delta 0 must never look significant
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut min_p = 1.0f64;
    for trial in 0..20 {
        let n = rng.random_range(5..400);
        let scores: Vec<f64> = (0..n).map(|_| rng.random::<f64>().powi(2)).collect();
        let r = bootstrap_pvalue(&scores, 0.0, 20_000, trial).unwrap();
        min_p = min_p.min(r.p_value);
    }
    let self_ok = min_p >= 0.05;
    let self_detail = format!("self-vs-self min p {min_p:.3} over 20 vectors");
    match hulth_validation_report() {
        Err(e) if self_ok => Outcome::Blocked(format!("{self_detail} (pass); sd check: {e}")),
        Err(e) => Outcome::Fail(format!("{self_detail}; sd check: {e}")),
        Ok(report) => {
            let r = bootstrap_pvalue(&report.doc_f1(), 0.0, 100_000, SEED).unwrap();
            let rel = (r.bootstrap_sd - 0.0077).abs() / 0.0077;
            check(
                self_ok && rel <= 0.25 && r.p_value >= 0.05,
                format!(
                    "{self_detail}; Hulth sd {:.5} ({:.0}% off 0.0077), mean {:.4}",
                    r.bootstrap_sd,
                    100.0 * rel,
                    r.bootstrap_mean
                ),
            )
        }
    }
}

// ---------------------------------------------------------------- C9

fn end_to_end(dir: &std::path::Path) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
    let stop = Stoplist::english();
    let train = load_corpus(&dir.join("train"), &stop).unwrap();
    let test = load_corpus(&dir.join("test"), &stop).unwrap();
    let cfg = PipelineConfig::default();
    let ts = smote(
        &assemble_training_set(&[train], &cfg),
        &SmoteConfig::default(),
    )
    .unwrap();
    let model = TrainedModel::train(
        &ModelSpec::new(ModelKind::Gbdt).with_seed(SEED),
        &ts,
        vec!["train".into()],
    )
    .unwrap();
    let model_bytes = save_model(&model).unwrap();
    let ex = KeywordExtractor::new(load_model(&model_bytes).unwrap(), cfg);

    let mut phrases = Vec::new();
    for doc in &test.documents {
        for (rank, p) in top_k(&ex.keyphrases(doc, PhraseScoring::Mean), 10)
            .iter()
            .enumerate()
        {
            phrases.extend(
                format!("{}\t{}\t{}\t{}\n", doc.id, rank + 1, p.text(), p.score).into_bytes(),
            );
        }
    }
    let mut report = Vec::new();
    ex.evaluate(&test, EvalLevel::TopK(10), PhraseScoring::Mean, &stop)
        .write_tsv(&mut report, &[format!("seed {SEED}")])
        .unwrap();
    (model_bytes, phrases, report)
}

fn criterion_determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let base = SyntheticConfig {
        documents: 30,
        ..SyntheticConfig::default()
    };
    write_corpus(&tmp.path().join("train"), &generate(&base)).unwrap();
    write_corpus(
        &tmp.path().join("test"),
        &generate(&SyntheticConfig {
            documents: 10,
            seed: 77,
            ..base
        }),
    )
    .unwrap();
    let a = end_to_end(tmp.path());
    let b = end_to_end(tmp.path());
    check(
        a == b && !a.1.is_empty(),
        format!(
            "model {} bytes, keyphrases {} bytes, report {} bytes",
            a.0.len(),
            a.1.len(),
            a.2.len()
        ),
    )
}

// ---------------------------------------------------------------- runner

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    (
        "C1 formula oracles on random graphs",
        criterion_formula_oracles,
    ),
    (
        "C2 hub clustering coefficients 3/15 and 8/15",
        criterion_hub_clustering,
    ),
    (
        "C3 SMOTE counts and segment property",
        criterion_smote_contract,
    ),
    ("C4 10-fold CV F1 (NB, NB-AdaBoost, GBDT)", criterion_table2),
    ("C5 Hulth2003 validation keyphrases@10 F1", criterion_table6),
    (
        "C6 WWW/KDD word-level recall and precision",
        criterion_cross_collection,
    ),
    (
        "C7 Marujo2012 keyphrases@10 precision",
        criterion_cross_domain,
    ),
    (
        "C8 bootstrap sd and self-vs-self p-value",
        criterion_bootstrap,
    ),
    ("C9 end-to-end determinism", criterion_determinism),
];

#[test]
fn acceptance_report() {
    let mut failed = Vec::new();
    let _ = writeln!(std::io::stderr().lock());
    for (name, run) in CRITERIA {
        let (tag, detail) = match run() {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed.push(name);
                ("FAIL", d)
            }
            Outcome::Blocked(d) => ("BLOCKED", d),
        };
        // the raw handle bypasses the test harness capture, so the report
        // shows up in a plain `cargo test` run
        let _ = writeln!(std::io::stderr().lock(), "[{tag:7}] {name}: {detail}");
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

fn strict(index: usize) {
    let (name, run) = CRITERIA[index];
    match run() {
        Outcome::Pass(d) => println!("[PASS] {name}: {d}"),
        other => panic!("{name}: {other:?}"),
    }
}

#[test]
#[ignore = "needs the datasets under $KEYGRAPH_DATA; runs for tens of minutes"]
fn strict_cross_validation_f1() {
    strict(3);
}

#[test]
#[ignore = "needs the datasets under $KEYGRAPH_DATA"]
fn strict_hulth_validation_f1() {
    strict(4);
}

#[test]
#[ignore = "needs the datasets under $KEYGRAPH_DATA"]
fn strict_cross_collection() {
    strict(5);
}

#[test]
#[ignore = "needs the datasets under $KEYGRAPH_DATA"]
fn strict_cross_domain() {
    strict(6);
}

#[test]
#[ignore = "needs the datasets under $KEYGRAPH_DATA"]
fn strict_bootstrap_sd() {
    strict(7);
}
