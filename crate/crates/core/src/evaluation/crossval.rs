//! Stratified k-fold cross-validation with oversampling applied to the
//! training folds only.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Metrics;
use crate::error::{Error, Result};
use crate::models::{ModelSpec, Samples};
use crate::training::{smote, SmoteConfig, TrainingSet};

#[derive(Debug, Clone, PartialEq)]
pub struct CrossValReport {
    pub folds: usize,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub true_negatives: usize,
    /// Positive-class metrics from the pooled confusion counts.
    pub metrics: Metrics,
}

/// Fold index of every record. Positives and negatives are shuffled
/// separately and dealt round-robin, negatives continuing where positives
/// stopped so fold sizes differ by at most one.
pub fn stratified_folds(labels: &[bool], folds: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<usize> = (0..labels.len()).filter(|&i| labels[i]).collect();
    let mut neg: Vec<usize> = (0..labels.len()).filter(|&i| !labels[i]).collect();
    pos.shuffle(&mut rng);
    neg.shuffle(&mut rng);
    let mut assignment = vec![0; labels.len()];
    for (slot, i) in pos.into_iter().chain(neg).enumerate() {
        assignment[i] = slot % folds;
    }
    assignment
}

/// Trains on all folds but one (oversampled with `smote` when given) and
/// predicts the held-out fold, for every fold. Synthetic rows in `ts` are
/// ignored.
pub fn cross_validate(
    ts: &TrainingSet,
    folds: usize,
    spec: &ModelSpec,
    smote_cfg: Option<&SmoteConfig>,
    seed: u64,
) -> Result<CrossValReport> {
    let originals: Vec<_> = ts
        .records
        .iter()
        .filter(|r| !r.is_synthetic())
        .cloned()
        .collect();
    if folds < 2 || folds > originals.len() {
        return Err(Error::InvalidConfig(format!(
            "cannot make {folds} folds from {} records",
            originals.len()
        )));
    }
    let labels: Vec<bool> = originals.iter().map(|r| r.label.is_positive()).collect();
    let positives = labels.iter().filter(|&&y| y).count();
    if positives < folds {
        log::warn!("{positives} positive record(s) for {folds} folds; some held-out folds have no positives");
    }
    let assignment = stratified_folds(&labels, folds, seed);

    let (mut tp, mut fp, mut fneg, mut tn) = (0, 0, 0, 0);
    for fold in 0..folds {
        let train = TrainingSet::new(
            originals
                .iter()
                .zip(&assignment)
                .filter(|(_, &f)| f != fold)
                .map(|(r, _)| r.clone())
                .collect(),
        );
        let train = match smote_cfg {
            Some(cfg) => smote(&train, cfg)?,
            None => train,
        };
        let model = spec.train(&Samples::from_training_set(&train))?;
        for ((r, &f), &y) in originals.iter().zip(&assignment).zip(&labels) {
            if f != fold {
                continue;
            }
            let predicted = model.score(&r.features.to_array()) >= 0.5;
            match (predicted, y) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fneg += 1,
                (false, false) => tn += 1,
            }
        }
    }
    Ok(CrossValReport {
        folds,
        true_positives: tp,
        false_positives: fp,
        false_negatives: fneg,
        true_negatives: tn,
        metrics: Metrics::from_counts(tp, tp + fp, tp + fneg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureVector;
    use crate::models::{GaussianNb, ModelKind};
    use crate::training::{CandidateRecord, Label, Origin};

    fn toy(n: usize) -> TrainingSet {
        TrainingSet::new(
            (0..n)
                .map(|i| {
                    let t = (i as f64 * 0.618_034).fract();
                    CandidateRecord {
                        origin: Some(Origin {
                            doc_id: "d".into(),
                            word: format!("w{i}"),
                        }),
                        features: FeatureVector::from_array([
                            t,
                            (t * 3.0).fract(),
                            1.0 - t,
                            0.3,
                            t * t,
                            0.0,
                        ]),
                        label: Label::from_bool(t > 0.55 || i == 3),
                    }
                })
                .collect(),
        )
    }

    #[test]
    fn folds_are_stratified_and_balanced() {
        let labels: Vec<bool> = (0..103).map(|i| i % 5 == 0).collect();
        let a = stratified_folds(&labels, 10, 4);
        assert_eq!(a, stratified_folds(&labels, 10, 4));
        for f in 0..10 {
            let size = a.iter().filter(|&&x| x == f).count();
            assert!((10..=11).contains(&size));
            let pos = a.iter().zip(&labels).filter(|(&x, &y)| x == f && y).count();
            assert!((2..=3).contains(&pos));
        }
    }

    #[test]
    fn leave_one_out_matches_direct_enumeration() {
        let ts = toy(10);
        let spec = ModelSpec::new(ModelKind::NaiveBayes);
        let report = cross_validate(&ts, 10, &spec, None, 1).unwrap();

        let rows = ts.feature_rows();
        let (mut tp, mut fp, mut fneg) = (0, 0, 0);
        for held in 0..10 {
            let mut values = Vec::new();
            let mut labels = Vec::new();
            for j in (0..10).filter(|&j| j != held) {
                values.extend(rows[j]);
                labels.push(ts.records[j].label.is_positive());
            }
            let nb = GaussianNb::fit(&Samples::new(6, values, labels).unwrap()).unwrap();
            let y = ts.records[held].label.is_positive();
            match (nb.score(&rows[held]) >= 0.5, y) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fneg += 1,
                _ => {}
            }
        }
        assert_eq!(report.true_positives, tp);
        assert_eq!(report.false_positives, fp);
        assert_eq!(report.false_negatives, fneg);
        assert_eq!(report.metrics, Metrics::from_counts(tp, tp + fp, tp + fneg));
    }

    #[test]
    fn seeded_runs_agree() {
        let ts = toy(60);
        let spec = ModelSpec::new(ModelKind::Gbdt);
        let smote_cfg = SmoteConfig::default();
        let a = cross_validate(&ts, 5, &spec, Some(&smote_cfg), 7).unwrap();
        let b = cross_validate(&ts, 5, &spec, Some(&smote_cfg), 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.true_positives + a.false_positives + a.false_negatives + a.true_negatives,
            60
        );
    }

    #[test]
    fn bad_fold_counts() {
        let spec = ModelSpec::new(ModelKind::NaiveBayes);
        assert!(cross_validate(&toy(10), 1, &spec, None, 0).is_err());
        assert!(cross_validate(&toy(10), 11, &spec, None, 0).is_err());
    }
}
