//! One function per subcommand. Inputs are validated before any work starts;
//! artifacts are rendered in memory and written in one go.

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use keygraph::evaluation::{bootstrap_pvalue, cross_validate, CrossValReport, EvalLevel};
use keygraph::{
    assemble_training_set, load_corpus, load_model, save_model, smote, Corpus, EvalReport,
    KeywordExtractor, ModelKind, ModelSpec, PhraseScoring, PipelineConfig, SmoteConfig, Stoplist,
    TrainedModel, TrainingSet,
};
use rayon::prelude::*;

use crate::error::CliError;
use crate::options::{
    ClassifierOptions, Command, CommonOptions, FileConfig, PipelineOptions, SmoteOptions,
    DEFAULT_SEED,
};

const DEFAULT_K: usize = 10;
const DEFAULT_FOLDS: usize = 10;
const DEFAULT_BOOTSTRAP_SAMPLES: usize = 1_000_000;
const BUILTIN_STOPLISTS: [&str; 2] = ["smart-en", "none"];

pub fn run(command: Command, file: &FileConfig) -> Result<(), CliError> {
    match command {
        Command::Extract {
            corpora,
            output,
            pipeline,
            common,
        } => extract(
            &corpora,
            output.as_deref(),
            pipeline.or(file.pipeline.clone()),
            common.or(file),
        ),
        Command::Train {
            corpora,
            training_set,
            model,
            pipeline,
            classifier,
            smote,
            common,
        } => train(
            Source::new(corpora, training_set),
            &model,
            pipeline.or(file.pipeline.clone()),
            classifier.or(file.classifier.clone()),
            smote.or(file.smote.clone()),
            common.or(file),
        ),
        Command::Predict {
            model,
            corpus,
            output,
            common,
        } => predict(&model, &corpus, output.as_deref(), common.or(file)),
        Command::Keyphrases {
            model,
            corpus,
            output,
            phrases,
            common,
        } => {
            let phrases = phrases.or(file.phrases.clone());
            let k = phrases.k.unwrap_or(DEFAULT_K);
            keyphrases(
                &model,
                &corpus,
                output.as_deref(),
                k,
                phrases.scoring.unwrap_or_default(),
                common.or(file),
            )
        }
        Command::Evaluate {
            model,
            corpus,
            level,
            output,
            phrases,
            common,
        } => {
            let phrases = phrases.or(file.phrases.clone());
            let level = level.unwrap_or(EvalLevel::TopK(phrases.k.unwrap_or(DEFAULT_K)));
            evaluate(
                &model,
                &corpus,
                output.as_deref(),
                level,
                phrases.scoring.unwrap_or_default(),
                common.or(file),
            )
        }
        Command::Crossval {
            corpora,
            training_set,
            folds,
            output,
            pipeline,
            classifier,
            smote,
            common,
        } => crossval(
            Source::new(corpora, training_set),
            folds.or(file.folds).unwrap_or(DEFAULT_FOLDS),
            output.as_deref(),
            pipeline.or(file.pipeline.clone()),
            classifier.or(file.classifier.clone()),
            smote.or(file.smote.clone()),
            common.or(file),
        ),
        Command::Significance {
            ours,
            baseline,
            samples,
            output,
            common,
        } => significance(
            &ours,
            &baseline,
            samples
                .or(file.samples)
                .unwrap_or(DEFAULT_BOOTSTRAP_SAMPLES),
            output.as_deref(),
            common.or(file),
        ),
    }
}

/// Where candidate records come from.
enum Source {
    Corpora(Vec<PathBuf>),
    TrainingSet(PathBuf),
}

impl Source {
    fn new(corpora: Vec<PathBuf>, training_set: Option<PathBuf>) -> Self {
        match training_set {
            Some(path) => Source::TrainingSet(path),
            None => Source::Corpora(corpora),
        }
    }

    fn check(&self) -> Result<(), CliError> {
        match self {
            Source::Corpora(dirs) => dirs.iter().try_for_each(|d| check_dir(d)),
            Source::TrainingSet(path) => check_file(path),
        }
    }
}

/// Candidate records with their corpus names and the settings that built them.
struct Records {
    set: TrainingSet,
    corpora: Vec<String>,
    settings: Vec<(String, String)>,
}

fn check_dir(path: &Path) -> Result<(), CliError> {
    if path.is_dir() {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "{} is not a directory",
            path.display()
        )))
    }
}

fn check_file(path: &Path) -> Result<(), CliError> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "{} is not a readable file",
            path.display()
        )))
    }
}

fn check_output(path: Option<&Path>) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    if path.is_dir() {
        return Err(CliError::usage(format!(
            "output {} is a directory",
            path.display()
        )));
    }
    match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() && !parent.is_dir() => Err(CliError::usage(
            format!("output directory {} does not exist", parent.display()),
        )),
        _ => Ok(()),
    }
}

fn check_stoplist(name: Option<&str>) -> Result<(), CliError> {
    match name {
        Some(name) if !BUILTIN_STOPLISTS.contains(&name) => check_file(Path::new(name)),
        _ => Ok(()),
    }
}

fn load_stoplist(name: Option<&str>) -> Result<Stoplist, CliError> {
    Ok(match name.unwrap_or("smart-en") {
        "smart-en" => Stoplist::english(),
        "none" => Stoplist::empty(),
        path => Stoplist::from_file(Path::new(path))?,
    })
}

/// Writes `bytes` to `path`, or to stdout when no path is given.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::write(path, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::write(Path::new("stdout"), e))
        }
    }
}

/// Provenance comment lines shared by every artifact.
fn provenance(command: &str, seed: u64, settings: &[(String, String)]) -> Vec<String> {
    let mut lines = vec![
        format!("keygraph {}", env!("CARGO_PKG_VERSION")),
        format!("command {command}"),
        format!("seed {seed}"),
    ];
    lines.extend(settings.iter().map(|(k, v)| format!("{k} {v}")));
    lines
}

fn comment_block(lines: &[String]) -> String {
    lines.iter().map(|l| format!("# {l}\n")).collect()
}

fn load_corpora(dirs: &[PathBuf], stoplist: &Stoplist) -> Result<Vec<Corpus>, CliError> {
    let mut corpora = Vec::with_capacity(dirs.len());
    for dir in dirs {
        let corpus = load_corpus(dir, stoplist)?;
        if corpus.is_empty() {
            return Err(CliError::data(format!(
                "{} contains no usable .txt documents",
                dir.display()
            )));
        }
        log::info!("{}: {} document(s)", corpus.name, corpus.len());
        corpora.push(corpus);
    }
    Ok(corpora)
}

fn pipeline_config(settings: &[(String, String)]) -> Result<PipelineConfig, CliError> {
    PipelineConfig::from_settings(settings).map_err(CliError::usage)
}

fn model_spec(opts: &ClassifierOptions, seed: u64) -> Result<ModelSpec, CliError> {
    let mut spec = ModelSpec::new(opts.classifier.unwrap_or(ModelKind::Gbdt)).with_seed(seed);
    spec.members = opts.members.unwrap_or(spec.members);
    spec.rounds = opts.rounds.unwrap_or(spec.rounds);
    spec.gbdt.trees = opts.trees.unwrap_or(spec.gbdt.trees);
    spec.gbdt.max_depth = opts.max_depth.unwrap_or(spec.gbdt.max_depth);
    spec.gbdt.learning_rate = opts.learning_rate.unwrap_or(spec.gbdt.learning_rate);
    spec.gbdt.lambda = opts.lambda.unwrap_or(spec.gbdt.lambda);
    if spec.members == 0 || spec.rounds == 0 {
        return Err(CliError::usage("--members and --rounds must be at least 1"));
    }
    spec.gbdt.validate().map_err(CliError::usage)?;
    Ok(spec)
}

fn smote_config(opts: &SmoteOptions, seed: u64) -> Option<SmoteConfig> {
    if opts.no_smote {
        return None;
    }
    let defaults = SmoteConfig::default();
    Some(SmoteConfig {
        percentage: opts.smote_percentage.unwrap_or(defaults.percentage),
        k: opts.smote_k.unwrap_or(defaults.k),
        seed,
    })
}

fn smote_settings(cfg: Option<&SmoteConfig>) -> Vec<(String, String)> {
    match cfg {
        Some(c) => vec![
            ("smote.percentage".into(), c.percentage.to_string()),
            ("smote.k".into(), c.k.to_string()),
        ],
        None => vec![("smote.percentage".into(), "0".into())],
    }
}

/// `# key value` comment lines of a previously written artifact.
fn comment_settings(text: &str) -> Vec<(String, String)> {
    text.lines()
        .map_while(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once(' '))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

/// Candidate records from corpora, or from a file written by `extract`
/// whose recorded settings are overridden by `pipeline` flags.
fn gather_records(
    source: &Source,
    pipeline: &PipelineOptions,
    stoplist_name: Option<&str>,
) -> Result<(Records, PipelineConfig), CliError> {
    match source {
        Source::Corpora(dirs) => {
            let cfg = pipeline_config(&pipeline.settings())?;
            let stoplist = load_stoplist(stoplist_name)?;
            let corpora = load_corpora(dirs, &stoplist)?;
            let set = assemble_training_set(&corpora, &cfg);
            let names: Vec<String> = corpora.iter().map(|c| c.name.clone()).collect();
            let mut settings = vec![
                ("corpora".to_string(), names.join(",")),
                ("stoplist".to_string(), stoplist.id().to_string()),
            ];
            settings.extend(cfg.to_settings());
            Ok((
                Records {
                    set,
                    corpora: names,
                    settings,
                },
                cfg,
            ))
        }
        Source::TrainingSet(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
            let set = TrainingSet::read_tsv(BufReader::new(text.as_bytes()))
                .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
            let recorded = comment_settings(&text);
            let lookup = |key: &str| {
                recorded
                    .iter()
                    .find(|(k, _)| k == key)
                    .map(|(_, v)| v.clone())
            };
            let mut merged: Vec<(String, String)> = recorded
                .iter()
                .filter(|(k, _)| k.starts_with("pipeline."))
                .cloned()
                .collect();
            merged.extend(pipeline.settings());
            let cfg = pipeline_config(&merged)?;
            let corpora: Vec<String> = lookup("corpora")
                .map(|c| {
                    c.split(',')
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect()
                })
                .unwrap_or_default();
            let stoplist = stoplist_name
                .map(|s| load_stoplist(Some(s)).map(|s| s.id().to_string()))
                .transpose()?;
            let mut settings = vec![
                ("corpora".to_string(), corpora.join(",")),
                (
                    "stoplist".to_string(),
                    stoplist
                        .or_else(|| lookup("stoplist"))
                        .unwrap_or_else(|| "smart-en".into()),
                ),
            ];
            settings.extend(cfg.to_settings());
            Ok((
                Records {
                    set,
                    corpora,
                    settings,
                },
                cfg,
            ))
        }
    }
}

fn extract(
    dirs: &[PathBuf],
    output: Option<&Path>,
    pipeline: PipelineOptions,
    common: CommonOptions,
) -> Result<(), CliError> {
    dirs.iter().try_for_each(|d| check_dir(d))?;
    check_output(output)?;
    check_stoplist(common.stoplist.as_deref())?;
    let seed = common.seed.unwrap_or(DEFAULT_SEED);

    let (records, _) = gather_records(
        &Source::Corpora(dirs.to_vec()),
        &pipeline,
        common.stoplist.as_deref(),
    )?;
    let (pos, neg) = records.set.class_counts();
    log::info!(
        "{} candidate record(s): {pos} positive, {neg} negative",
        records.set.len()
    );
    let mut out = Vec::new();
    records
        .set
        .write_tsv(&mut out, &provenance("extract", seed, &records.settings))
        .map_err(|e| CliError::data(e.to_string()))?;
    emit(output, &out)
}

fn train(
    source: Source,
    model_path: &Path,
    pipeline: PipelineOptions,
    classifier: ClassifierOptions,
    smote_opts: SmoteOptions,
    common: CommonOptions,
) -> Result<(), CliError> {
    source.check()?;
    check_output(Some(model_path))?;
    check_stoplist(common.stoplist.as_deref())?;
    let seed = common.seed.unwrap_or(DEFAULT_SEED);
    let spec = model_spec(&classifier, seed)?;
    let smote_cfg = smote_config(&smote_opts, seed);

    let (records, _) = gather_records(&source, &pipeline, common.stoplist.as_deref())?;
    let balanced = match &smote_cfg {
        Some(cfg) => smote(&records.set, cfg)?,
        None => records.set,
    };
    let (pos, neg) = balanced.class_counts();
    log::info!(
        "training {} on {} record(s): {pos} positive, {neg} negative",
        spec.kind,
        balanced.len()
    );

    let mut model = TrainedModel::train(&spec, &balanced, records.corpora)?;
    model
        .metadata
        .settings
        .extend(records.settings.into_iter().filter(|(k, _)| k != "corpora"));
    model
        .metadata
        .settings
        .extend(smote_settings(smote_cfg.as_ref()));
    let bytes = save_model(&model)?;
    emit(Some(model_path), &bytes)
}

/// A model with the pipeline settings and stop list it was trained with.
struct Loaded {
    extractor: KeywordExtractor,
    stoplist: Stoplist,
}

impl Loaded {
    fn seed(&self) -> u64 {
        self.extractor.model.metadata.seed
    }

    fn settings(&self) -> Vec<(String, String)> {
        let meta = &self.extractor.model.metadata;
        let mut settings = vec![
            (
                "classifier".to_string(),
                self.extractor.model.kind().to_string(),
            ),
            ("trained_on".to_string(), meta.corpora.join(",")),
        ];
        settings.extend(
            meta.settings
                .iter()
                .filter(|(k, _)| k != "stoplist")
                .cloned(),
        );
        settings.push(("stoplist".to_string(), self.stoplist.id().to_string()));
        settings
    }
}

fn load_extractor(path: &Path, stoplist_flag: Option<&str>) -> Result<Loaded, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
    let model =
        load_model(&bytes).map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    let config = PipelineConfig::from_settings(&model.metadata.settings)
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    let trained_with = model
        .metadata
        .settings
        .iter()
        .find(|(k, _)| k == "stoplist")
        .map(|(_, v)| v.as_str());
    let stoplist = match (stoplist_flag, trained_with) {
        (Some(flag), _) => {
            let s = load_stoplist(Some(flag))?;
            if trained_with.is_some_and(|t| t != s.id()) {
                log::warn!(
                    "model was trained with stop list {:?}, using {:?}",
                    trained_with.unwrap_or_default(),
                    s.id()
                );
            }
            s
        }
        (None, None) => Stoplist::english(),
        (None, Some(name)) if BUILTIN_STOPLISTS.contains(&name) => load_stoplist(Some(name))?,
        (None, Some(name)) => {
            return Err(CliError::usage(format!(
                "model was trained with stop list file {name:?}; pass it with --stoplist"
            )));
        }
    };
    Ok(Loaded {
        extractor: KeywordExtractor::new(model, config),
        stoplist,
    })
}

fn predict(
    model: &Path,
    corpus: &Path,
    output: Option<&Path>,
    common: CommonOptions,
) -> Result<(), CliError> {
    check_file(model)?;
    check_dir(corpus)?;
    check_output(output)?;
    check_stoplist(common.stoplist.as_deref())?;
    warn_ignored_seed(&common);
    let loaded = load_extractor(model, common.stoplist.as_deref())?;
    let corpus = load_corpora(&[corpus.to_path_buf()], &loaded.stoplist)?.remove(0);

    let blocks: Vec<String> = corpus
        .documents
        .par_iter()
        .map(|doc| {
            loaded
                .extractor
                .predict(doc)
                .iter()
                .map(|p| {
                    format!(
                        "{}\t{}\t{}\t{}\n",
                        doc.id,
                        p.word,
                        p.score,
                        p.label.as_str()
                    )
                })
                .collect()
        })
        .collect();
    let mut settings = vec![("corpus".to_string(), corpus.name.clone())];
    settings.extend(loaded.settings());
    let mut out = comment_block(&provenance("predict", loaded.seed(), &settings));
    out.push_str("doc_id\tword\tscore\tlabel\n");
    out.extend(blocks);
    emit(output, out.as_bytes())
}

fn keyphrases(
    model: &Path,
    corpus: &Path,
    output: Option<&Path>,
    k: usize,
    scoring: PhraseScoring,
    common: CommonOptions,
) -> Result<(), CliError> {
    check_file(model)?;
    check_dir(corpus)?;
    check_output(output)?;
    check_stoplist(common.stoplist.as_deref())?;
    if k == 0 {
        return Err(CliError::usage("-k must be at least 1"));
    }
    warn_ignored_seed(&common);
    let loaded = load_extractor(model, common.stoplist.as_deref())?;
    let corpus = load_corpora(&[corpus.to_path_buf()], &loaded.stoplist)?.remove(0);

    let blocks: Vec<String> = corpus
        .documents
        .par_iter()
        .map(|doc| {
            let phrases = loaded.extractor.keyphrases(doc, scoring);
            keygraph::top_k(&phrases, k)
                .iter()
                .enumerate()
                .map(|(rank, p)| format!("{}\t{}\t{}\t{}\n", doc.id, rank + 1, p.text(), p.score))
                .collect()
        })
        .collect();
    let mut settings = vec![
        ("corpus".to_string(), corpus.name.clone()),
        ("k".to_string(), k.to_string()),
        ("scoring".to_string(), scoring.to_string()),
    ];
    settings.extend(loaded.settings());
    let mut out = comment_block(&provenance("keyphrases", loaded.seed(), &settings));
    out.push_str("doc_id\trank\tphrase\tscore\n");
    out.extend(blocks);
    emit(output, out.as_bytes())
}

fn evaluate(
    model: &Path,
    corpus: &Path,
    output: Option<&Path>,
    level: EvalLevel,
    scoring: PhraseScoring,
    common: CommonOptions,
) -> Result<(), CliError> {
    check_file(model)?;
    check_dir(corpus)?;
    check_output(output)?;
    check_stoplist(common.stoplist.as_deref())?;
    warn_ignored_seed(&common);
    let loaded = load_extractor(model, common.stoplist.as_deref())?;
    let corpus = load_corpora(&[corpus.to_path_buf()], &loaded.stoplist)?.remove(0);

    let report = loaded
        .extractor
        .evaluate(&corpus, level, scoring, &loaded.stoplist);
    if report.per_document.is_empty() {
        return Err(CliError::data(format!(
            "{}: no document has gold phrases",
            corpus.name
        )));
    }
    let mut settings = vec![("scoring".to_string(), scoring.to_string())];
    settings.extend(loaded.settings());
    let comments = provenance("evaluate", loaded.seed(), &settings);
    if output.is_some() {
        let mut tsv = Vec::new();
        report
            .write_tsv(&mut tsv, &comments)
            .map_err(|e| CliError::data(e.to_string()))?;
        emit(output, &tsv)?;
    }
    emit(None, report.render_table().as_bytes())
}

fn warn_ignored_seed(common: &CommonOptions) {
    if common.seed.is_some() {
        log::warn!("--seed has no effect here; the model's training seed is recorded instead");
    }
}

fn render_crossval(r: &CrossValReport) -> String {
    let m = &r.metrics;
    format!(
        "folds        {}\nconfusion    TP {}  FP {}  FN {}  TN {}\n\n{:>10} {:>10} {:>10}\n{:>10.2} {:>10.2} {:>10.2}\n",
        r.folds,
        r.true_positives,
        r.false_positives,
        r.false_negatives,
        r.true_negatives,
        "P",
        "R",
        "F1",
        100.0 * m.precision,
        100.0 * m.recall,
        100.0 * m.f1
    )
}

fn crossval(
    source: Source,
    folds: usize,
    output: Option<&Path>,
    pipeline: PipelineOptions,
    classifier: ClassifierOptions,
    smote_opts: SmoteOptions,
    common: CommonOptions,
) -> Result<(), CliError> {
    source.check()?;
    check_output(output)?;
    check_stoplist(common.stoplist.as_deref())?;
    let seed = common.seed.unwrap_or(DEFAULT_SEED);
    let spec = model_spec(&classifier, seed)?;
    let smote_cfg = smote_config(&smote_opts, seed);

    let (records, _) = gather_records(&source, &pipeline, common.stoplist.as_deref())?;
    let report = cross_validate(&records.set, folds, &spec, smote_cfg.as_ref(), seed)?;

    let mut settings = vec![("classifier".to_string(), spec.kind.to_string())];
    settings.extend(spec.params());
    settings.extend(records.settings);
    settings.extend(smote_settings(smote_cfg.as_ref()));
    if output.is_some() {
        let m = &report.metrics;
        let mut tsv = comment_block(&provenance("crossval", seed, &settings));
        tsv.push_str("folds\ttp\tfp\tfn\ttn\tprecision\trecall\tf1\n");
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            report.folds,
            report.true_positives,
            report.false_positives,
            report.false_negatives,
            report.true_negatives,
            m.precision,
            m.recall,
            m.f1
        ));
        emit(output, tsv.as_bytes())?;
    }
    emit(None, render_crossval(&report).as_bytes())
}

fn read_report(path: &Path) -> Result<EvalReport, CliError> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
    EvalReport::read_tsv(BufReader::new(file))
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn significance(
    ours: &Path,
    baseline: &Path,
    samples: usize,
    output: Option<&Path>,
    common: CommonOptions,
) -> Result<(), CliError> {
    check_file(ours)?;
    check_file(baseline)?;
    check_output(output)?;
    if samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    let seed = common.seed.unwrap_or(DEFAULT_SEED);
    let a = read_report(ours)?;
    let b = read_report(baseline)?;
    if a.per_document.is_empty() {
        return Err(CliError::data(format!(
            "{} has no per-document rows",
            ours.display()
        )));
    }
    let ids = |r: &EvalReport| {
        r.per_document
            .iter()
            .map(|(id, _)| id.clone())
            .collect::<Vec<_>>()
    };
    if ids(&a) != ids(&b) {
        log::warn!("the two reports cover different documents");
    }
    let delta = a.macro_avg.f1 - b.macro_avg.f1;
    let report = bootstrap_pvalue(&a.doc_f1(), delta, samples, seed)?;

    let rows = [
        ("ours_macro_f1", a.macro_avg.f1.to_string()),
        ("baseline_macro_f1", b.macro_avg.f1.to_string()),
        ("delta", report.delta.to_string()),
        ("p_value", report.p_value.to_string()),
        ("samples", report.samples.to_string()),
        ("bootstrap_mean", report.bootstrap_mean.to_string()),
        ("bootstrap_sd", report.bootstrap_sd.to_string()),
    ];
    if output.is_some() {
        let settings = vec![
            (
                "ours".to_string(),
                format!("{} {} {}", a.corpus, a.model_kind, a.level),
            ),
            (
                "baseline".to_string(),
                format!("{} {} {}", b.corpus, b.model_kind, b.level),
            ),
        ];
        let mut tsv = comment_block(&provenance("significance", seed, &settings));
        tsv.push_str("statistic\tvalue\n");
        for (k, v) in &rows {
            tsv.push_str(&format!("{k}\t{v}\n"));
        }
        emit(output, tsv.as_bytes())?;
    }
    let table = format!(
        "ours F1      {:.2}\nbaseline F1  {:.2}\ndelta        {:.2}\np            {:.4}\nsamples      {}\nbootstrap sd {:.4}\n",
        100.0 * a.macro_avg.f1,
        100.0 * b.macro_avg.f1,
        100.0 * report.delta,
        report.p_value,
        report.samples,
        report.bootstrap_sd
    );
    emit(None, table.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comment_settings_stop_at_the_header() {
        let text = "# seed 3\n# pipeline.damping 0.8\ndoc_id\tword\n# not a comment\n";
        assert_eq!(
            comment_settings(text),
            vec![
                ("seed".to_string(), "3".to_string()),
                ("pipeline.damping".to_string(), "0.8".to_string())
            ]
        );
    }

    #[test]
    fn output_checks() {
        assert!(check_output(None).is_ok());
        assert!(check_output(Some(Path::new("relative.tsv"))).is_ok());
        assert!(check_output(Some(Path::new("/no/such/dir/out.tsv"))).is_err());
        assert!(check_output(Some(Path::new("/"))).is_err());
    }

    #[test]
    fn builtin_stoplists_resolve() {
        assert_eq!(load_stoplist(None).unwrap().id(), "smart-en");
        assert_eq!(load_stoplist(Some("none")).unwrap().id(), "none");
        assert!(check_stoplist(Some("/no/such/list.txt")).is_err());
    }
}
