//! Paired bootstrap significance over document-level F1 scores.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Samples drawn per RNG stream. Fixed so results do not depend on the
/// number of threads.
pub const BOOTSTRAP_CHUNK: usize = 10_000;

/// Slack for floating point noise in the `>= 2 delta` comparison.
const TIE_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceReport {
    /// Our macro F1 minus the baseline macro F1.
    pub delta: f64,
    pub p_value: f64,
    pub samples: usize,
    pub bootstrap_mean: f64,
    pub bootstrap_sd: f64,
}

/// Resamples `doc_f1` (our per-document F1) `samples` times. A sample counts
/// against the null hypothesis when its mean exceeds the baseline macro F1
/// (`mean(doc_f1) - delta`) by at least `2 * delta`; `p` is the share of such
/// samples. Ties count, so a zero delta gives `p` near 1.
pub fn bootstrap_pvalue(
    doc_f1: &[f64],
    delta: f64,
    samples: usize,
    seed: u64,
) -> Result<SignificanceReport> {
    if doc_f1.is_empty() {
        return Err(Error::InvalidConfig(
            "bootstrap needs at least one document score".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::InvalidConfig(
            "bootstrap needs at least one sample".into(),
        ));
    }
    let n = doc_f1.len();
    let ours = doc_f1.iter().sum::<f64>() / n as f64;
    let baseline = ours - delta;

    let chunks = samples.div_ceil(BOOTSTRAP_CHUNK);
    let means: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let size = BOOTSTRAP_CHUNK.min(samples - c * BOOTSTRAP_CHUNK);
            (0..size)
                .map(move |_| {
                    (0..n).map(|_| doc_f1[rng.random_range(0..n)]).sum::<f64>() / n as f64
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let count = means
        .iter()
        .filter(|&&m| m - baseline >= 2.0 * delta - TIE_EPSILON)
        .count();
    let mean = means.iter().sum::<f64>() / samples as f64;
    let var = if samples > 1 {
        means.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / (samples - 1) as f64
    } else {
        0.0
    };
    Ok(SignificanceReport {
        delta,
        p_value: count as f64 / samples as f64,
        samples,
        bootstrap_mean: mean,
        bootstrap_sd: var.sqrt(),
    })
}
