//! Gaussian naive Bayes for two classes.

use std::f64::consts::PI;

use super::Samples;
use crate::error::{Error, Result};

pub const VARIANCE_FLOOR: f64 = 1e-9;

/// Per-class prior and per-feature mean and variance. Index 0 is the
/// negative class, 1 the positive class.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianNb {
    pub priors: [f64; 2],
    pub means: [Vec<f64>; 2],
    pub variances: [Vec<f64>; 2],
}

impl GaussianNb {
    pub fn fit(data: &Samples) -> Result<Self> {
        let all: Vec<usize> = (0..data.len()).collect();
        Self::fit_indices(data, &all)
    }

    /// Fits on the rows `idx` (repeats allowed) with maximum-likelihood
    /// estimates.
    pub fn fit_indices(data: &Samples, idx: &[usize]) -> Result<Self> {
        let dim = data.dim();
        let mut count = [0usize; 2];
        let mut sum = [vec![0.0; dim], vec![0.0; dim]];
        for &i in idx {
            let c = usize::from(data.label(i));
            count[c] += 1;
            for (s, x) in sum[c].iter_mut().zip(data.row(i)) {
                *s += x;
            }
        }
        if count[0] == 0 || count[1] == 0 {
            return Err(Error::DegenerateTrainingSet(format!(
                "naive Bayes needs both classes (positives {}, negatives {})",
                count[1], count[0]
            )));
        }
        let means: [Vec<f64>; 2] =
            std::array::from_fn(|c| sum[c].iter().map(|s| s / count[c] as f64).collect());
        let mut sq = [vec![0.0; dim], vec![0.0; dim]];
        for &i in idx {
            let c = usize::from(data.label(i));
            for ((s, x), m) in sq[c].iter_mut().zip(data.row(i)).zip(&means[c]) {
                *s += (x - m) * (x - m);
            }
        }
        let variances = std::array::from_fn(|c| {
            sq[c]
                .iter()
                .map(|s| (s / count[c] as f64).max(VARIANCE_FLOOR))
                .collect()
        });
        let total = idx.len() as f64;
        Ok(Self {
            priors: [count[0] as f64 / total, count[1] as f64 / total],
            means,
            variances,
        })
    }

    pub fn dim(&self) -> usize {
        self.means[0].len()
    }

    fn log_joint(&self, c: usize, x: &[f64]) -> f64 {
        let mut lp = self.priors[c].ln();
        for ((xi, m), v) in x.iter().zip(&self.means[c]).zip(&self.variances[c]) {
            lp -= 0.5 * (2.0 * PI * v).ln() + (xi - m) * (xi - m) / (2.0 * v);
        }
        lp
    }

    /// Posterior probabilities `[P(negative | x), P(positive | x)]`.
    pub fn posterior(&self, x: &[f64]) -> [f64; 2] {
        let diff = self.log_joint(0, x) - self.log_joint(1, x);
        let pos = 1.0 / (1.0 + diff.exp());
        [1.0 - pos, pos]
    }

    /// Probability of the positive class.
    pub fn score(&self, x: &[f64]) -> f64 {
        self.posterior(x)[1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_feature(values: &[(f64, bool)]) -> Samples {
        Samples::new(
            1,
            values.iter().map(|v| v.0).collect(),
            values.iter().map(|v| v.1).collect(),
        )
        .unwrap()
    }

    #[test]
    fn class_mean_is_predicted() {
        let data = one_feature(&[
            (0.1, false),
            (0.2, false),
            (0.3, false),
            (0.7, true),
            (0.8, true),
            (0.9, true),
        ]);
        let nb = GaussianNb::fit(&data).unwrap();
        assert!(nb.score(&[0.8]) > 0.99);
        assert!(nb.score(&[0.2]) < 0.01);
        assert!((nb.score(&[0.5]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn posterior_sums_to_one() {
        let data = one_feature(&[
            (0.0, false),
            (0.4, false),
            (0.5, true),
            (1.0, true),
            (0.9, true),
        ]);
        let nb = GaussianNb::fit(&data).unwrap();
        for x in [0.0, 0.3, 0.77, 1.0, 5.0] {
            let p = nb.posterior(&[x]);
            assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_class_is_degenerate() {
        let data = one_feature(&[(0.1, true), (0.2, true)]);
        assert!(matches!(
            GaussianNb::fit(&data),
            Err(Error::DegenerateTrainingSet(_))
        ));
    }

    #[test]
    fn constant_feature_is_floored() {
        let data = one_feature(&[(0.5, false), (0.5, false), (0.5, true), (0.5, true)]);
        let nb = GaussianNb::fit(&data).unwrap();
        assert_eq!(nb.variances[0][0], VARIANCE_FLOOR);
        assert!(nb.score(&[0.5]).is_finite());
    }
}
