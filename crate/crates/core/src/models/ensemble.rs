//! Bagging and AdaBoost.M1 ensembles of naive Bayes learners.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::naive_bayes::GaussianNb;
use super::Samples;
use crate::error::{Error, Result};

/// Stage weight used when a learner makes no weighted training error.
pub const PERFECT_LEARNER_ALPHA: f64 = 10.0;

const MAX_RESAMPLE_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct BaggedNb {
    pub members: Vec<GaussianNb>,
}

impl BaggedNb {
    /// Each member is fit on a bootstrap resample of the same size as the
    /// data. Resamples that lack a class are redrawn.
    pub fn fit(data: &Samples, members: usize, seed: u64) -> Result<Self> {
        if members == 0 {
            return Err(Error::InvalidConfig(
                "bagging needs at least one member".into(),
            ));
        }
        let n = data.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut fitted = Vec::with_capacity(members);
        for _ in 0..members {
            let mut attempt = 0;
            let member = loop {
                let idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
                match GaussianNb::fit_indices(data, &idx) {
                    Ok(m) => break m,
                    Err(e) if attempt + 1 >= MAX_RESAMPLE_ATTEMPTS => return Err(e),
                    Err(_) => attempt += 1,
                }
            };
            fitted.push(member);
        }
        Ok(Self { members: fitted })
    }

    pub fn score(&self, x: &[f64]) -> f64 {
        self.members.iter().map(|m| m.score(x)).sum::<f64>() / self.members.len() as f64
    }
}

/// Per-round record of a boosting run.
#[derive(Debug, Clone, PartialEq)]
pub struct BoostRound {
    pub epsilon: f64,
    pub alpha: f64,
    /// Sample weights after the update of this round.
    pub weights: Vec<f64>,
}

pub(crate) enum BoostOutcome<L> {
    Stages(Vec<(L, f64)>, Vec<BoostRound>),
    /// The first learner was no better than chance.
    FirstLearnerFailed,
}

/// AdaBoost.M1 over an arbitrary weak learner. `fit` receives a weighted
/// resample of row indices; `predict(learner, i)` classifies training row `i`.
pub(crate) fn adaboost_m1<L, F, P>(
    labels: &[bool],
    rounds: usize,
    rng: &mut ChaCha8Rng,
    mut fit: F,
    predict: P,
) -> Result<BoostOutcome<L>>
where
    F: FnMut(&[usize], &mut ChaCha8Rng) -> Result<L>,
    P: Fn(&L, usize) -> bool,
{
    let n = labels.len();
    let mut weights = vec![1.0 / n as f64; n];
    let mut stages = Vec::new();
    let mut trace = Vec::new();
    for round in 0..rounds {
        let dist = WeightedIndex::new(&weights)
            .map_err(|e| Error::DegenerateTrainingSet(e.to_string()))?;
        let idx: Vec<usize> = (0..n).map(|_| dist.sample(rng)).collect();
        let learner = fit(&idx, rng)?;
        let wrong: Vec<bool> = (0..n).map(|i| predict(&learner, i) != labels[i]).collect();
        let epsilon: f64 = weights
            .iter()
            .zip(&wrong)
            .filter(|(_, &w)| w)
            .map(|(x, _)| x)
            .sum();
        if epsilon >= 0.5 {
            if round == 0 {
                return Ok(BoostOutcome::FirstLearnerFailed);
            }
            log::debug!(
                "boosting stopped at round {}: error {epsilon:.4} >= 0.5",
                round + 1
            );
            break;
        }
        if epsilon <= 0.0 {
            stages.push((learner, PERFECT_LEARNER_ALPHA));
            trace.push(BoostRound {
                epsilon: 0.0,
                alpha: PERFECT_LEARNER_ALPHA,
                weights: weights.clone(),
            });
            break;
        }
        let alpha = 0.5 * ((1.0 - epsilon) / epsilon).ln();
        for (w, &miss) in weights.iter_mut().zip(&wrong) {
            *w *= if miss { alpha.exp() } else { (-alpha).exp() };
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        stages.push((learner, alpha));
        trace.push(BoostRound {
            epsilon,
            alpha,
            weights: weights.clone(),
        });
    }
    Ok(BoostOutcome::Stages(stages, trace))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaBoostNb {
    /// `(learner, stage weight)` pairs.
    pub stages: Vec<(GaussianNb, f64)>,
}

impl AdaBoostNb {
    pub fn fit(data: &Samples, rounds: usize, seed: u64) -> Result<Self> {
        Ok(Self::fit_traced(data, rounds, seed)?.0)
    }

    pub fn fit_traced(data: &Samples, rounds: usize, seed: u64) -> Result<(Self, Vec<BoostRound>)> {
        if rounds == 0 {
            return Err(Error::InvalidConfig(
                "boosting needs at least one round".into(),
            ));
        }
        let labels = data.labels().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fit = |idx: &[usize], rng: &mut ChaCha8Rng| {
            let mut idx = idx.to_vec();
            for attempt in 0..MAX_RESAMPLE_ATTEMPTS {
                match GaussianNb::fit_indices(data, &idx) {
                    Ok(m) => return Ok(m),
                    Err(e) if attempt + 1 == MAX_RESAMPLE_ATTEMPTS => return Err(e),
                    Err(_) => {
                        idx = (0..data.len())
                            .map(|_| rng.random_range(0..data.len()))
                            .collect()
                    }
                }
            }
            unreachable!()
        };
        let predict = |m: &GaussianNb, i: usize| m.score(data.row(i)) >= 0.5;
        match adaboost_m1(&labels, rounds, &mut rng, fit, predict)? {
            BoostOutcome::Stages(stages, trace) => Ok((Self { stages }, trace)),
            BoostOutcome::FirstLearnerFailed => {
                log::warn!(
                    "first boosted learner no better than chance; using a single naive Bayes model"
                );
                Ok((
                    Self {
                        stages: vec![(GaussianNb::fit(data)?, 1.0)],
                    },
                    Vec::new(),
                ))
            }
        }
    }

    /// Logistic of the signed weighted vote `sum_t alpha_t * h_t(x)` with
    /// `h_t(x)` in `{-1, +1}`.
    pub fn score(&self, x: &[f64]) -> f64 {
        let vote: f64 = self
            .stages
            .iter()
            .map(|(m, a)| if m.score(x) >= 0.5 { *a } else { -*a })
            .sum();
        1.0 / (1.0 + (-vote).exp())
    }
}
