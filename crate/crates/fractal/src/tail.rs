//! Block-based tail-index estimation and the BG-index aggregate.
//!
//! The estimator centers the samples, partitions them into `k2` consecutive
//! blocks of `k1`, and compares the mean log magnitude of block sums against
//! the mean log magnitude of individual samples:
//!
//! `1/alpha = (1/ln k1) * [ mean_j ln|Y_j| - mean_i ln|X_i| ]`
//!
//! For strictly stable data the block sums scale like `k1^{1/alpha}`, which
//! makes the difference of log means an unbiased read of `1/alpha`.

use crate::FractalError;

/// Per-group tail estimates and their maximum, the BG index.
#[derive(Debug, Clone)]
pub struct TailEstimate {
    /// `(group name, alpha_hat, samples used)` per parameter group.
    pub groups: Vec<(String, f64, usize)>,
    /// `max` over the group estimates, in (0, 2].
    pub bg_index: f64,
}

impl TailEstimate {
    pub fn from_groups(groups: Vec<(String, f64, usize)>) -> Result<Self, FractalError> {
        let bg = bg_index(&groups.iter().map(|g| g.1).collect::<Vec<_>>())?;
        Ok(Self {
            groups,
            bg_index: bg,
        })
    }
}

/// Estimates the stability index from centered samples with block size `k1`.
///
/// Exact zeros (after centering) are dropped before blocking; the result is
/// clamped to (0, 2].
pub fn estimate_tail_index(samples: &[f64], k1: usize) -> Result<f64, FractalError> {
    if k1 < 2 {
        return Err(FractalError::BadBlockSize(k1));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(FractalError::NonFinite("tail-index samples"));
    }
    let mean = samples.iter().sum::<f64>() / samples.len().max(1) as f64;
    let centered: Vec<f64> = samples
        .iter()
        .map(|x| x - mean)
        .filter(|x| *x != 0.0)
        .collect();
    if centered.is_empty() {
        return Err(FractalError::DegenerateSamples);
    }
    let n = centered.len();
    if n < 2 * k1 {
        return Err(FractalError::TooFewSamples { need: 2 * k1, got: n });
    }
    let k2 = n / k1;
    let used = k1 * k2;

    let mut log_blocks = 0.0;
    let mut log_samples = 0.0;
    for j in 0..k2 {
        let block = &centered[j * k1..(j + 1) * k1];
        let sum: f64 = block.iter().sum();
        // A block summing to exactly zero would send ln|Y| to -inf; nudge to
        // the smallest magnitude in the block instead.
        let mag = if sum == 0.0 {
            block.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min)
        } else {
            sum.abs()
        };
        log_blocks += mag.ln();
        for x in block {
            log_samples += x.abs().ln();
        }
    }
    log_blocks /= k2 as f64;
    log_samples /= used as f64;

    let inv_alpha = (log_blocks - log_samples) / (k1 as f64).ln();
    // inv_alpha <= 1/2 means lighter-than-Gaussian scaling; clamp to 2.
    let alpha = if inv_alpha <= 0.5 {
        2.0
    } else {
        1.0 / inv_alpha
    };
    Ok(alpha)
}

/// `estimate_tail_index` with the default block size `k1 = floor(sqrt(n))`.
pub fn estimate_tail_index_auto(samples: &[f64]) -> Result<f64, FractalError> {
    let k1 = ((samples.len() as f64).sqrt().floor() as usize).max(2);
    estimate_tail_index(samples, k1)
}

/// BG index: the maximum of the per-group tail estimates.
pub fn bg_index(estimates: &[f64]) -> Result<f64, FractalError> {
    estimates
        .iter()
        .copied()
        .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))))
        .ok_or(FractalError::NoGroups)
}
