//! Gaussian kernel density estimation with a Silverman bandwidth rule.
//!
//! The bandwidth parameter `t` is the *squared* kernel scale: the estimate at
//! `x` is `(1/N) sum_i exp(-(x - X_i)^2 / (2t)) / sqrt(2*pi*t)`.

use crate::FractalError;

/// Silverman rule of thumb, returned as the squared bandwidth:
/// `t = (0.9 * min(std, IQR/1.34) * N^{-1/5})^2`.
pub fn kde_bandwidth(samples: &[f64]) -> Result<f64, FractalError> {
    let n = samples.len();
    if n < 2 || samples.iter().any(|x| !x.is_finite()) {
        return Err(FractalError::DegenerateKde);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    let std = var.sqrt();

    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);

    let spread = if iqr > 0.0 { std.min(iqr / 1.34) } else { std };
    if !(spread > 0.0) {
        return Err(FractalError::DegenerateKde);
    }
    let h = 0.9 * spread * (n as f64).powf(-0.2);
    Ok(h * h)
}

/// Linear-interpolation quantile of pre-sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Evaluates the Gaussian KDE with squared bandwidth `t` at `x`.
pub fn kde_evaluate(samples: &[f64], t: f64, x: f64) -> f64 {
    assert!(t > 0.0, "squared bandwidth must be positive");
    let norm = 1.0 / (2.0 * std::f64::consts::PI * t).sqrt();
    let inv2t = 1.0 / (2.0 * t);
    let sum: f64 = samples
        .iter()
        .map(|xi| (-(x - xi) * (x - xi) * inv2t).exp())
        .sum();
    norm * sum / samples.len() as f64
}

/// Evaluates the KDE on `points` equally spaced grid nodes spanning the
/// sample range widened by `pad` bandwidths on each side.
pub fn kde_grid(samples: &[f64], t: f64, points: usize, pad: f64) -> Vec<(f64, f64)> {
    assert!(points >= 2);
    let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let h = t.sqrt();
    let (a, b) = (lo - pad * h, hi + pad * h);
    (0..points)
        .map(|i| {
            let x = a + (b - a) * i as f64 / (points - 1) as f64;
            (x, kde_evaluate(samples, t, x))
        })
        .collect()
}

/// Counts strict local maxima of a density curve (plateaus count once).
pub fn count_modes(grid: &[(f64, f64)]) -> usize {
    let mut modes = 0;
    let mut rising = false;
    for w in grid.windows(2) {
        if w[1].1 > w[0].1 {
            rising = true;
        } else if w[1].1 < w[0].1 {
            if rising {
                modes += 1;
            }
            rising = false;
        }
    }
    if rising {
        modes += 1;
    }
    modes
}
