//! Euler-Maruyama simulation of an Ornstein-Uhlenbeck process driven by
//! symmetric alpha-stable noise.

use rand::Rng;

use crate::stable::sample_alpha_stable;
use crate::FractalError;

#[derive(Debug, Clone)]
pub struct OuConfig {
    /// Stability index of the driving noise, in (0, 2].
    pub alpha: f64,
    /// Mean-reversion rate (1/ms).
    pub drift_rate: f64,
    /// Noise scale.
    pub scale: f64,
    /// Step size (ms).
    pub dt: f64,
    /// Number of stored states (row 0 is the initial state).
    pub steps: usize,
    /// Spatial dimensions.
    pub dims: usize,
    /// Initial value applied to every dimension.
    pub x0: f64,
}

impl Default for OuConfig {
    fn default() -> Self {
        Self {
            alpha: 1.5,
            drift_rate: 0.1,
            scale: 1.0,
            dt: 0.1,
            steps: 10_000,
            dims: 3,
            x0: 0.0,
        }
    }
}

/// A simulated trajectory: `steps` rows of `dims` coordinates, row-major.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub steps: usize,
    pub dims: usize,
    data: Vec<f64>,
}

impl Trajectory {
    pub fn row(&self, k: usize) -> &[f64] {
        &self.data[k * self.dims..(k + 1) * self.dims]
    }

    /// Per-step increments of one coordinate.
    pub fn increments(&self, dim: usize) -> Vec<f64> {
        (1..self.steps)
            .map(|k| self.row(k)[dim] - self.row(k - 1)[dim])
            .collect()
    }

    /// Increments of all coordinates, pooled dimension-major.
    pub fn pooled_increments(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dims * (self.steps.saturating_sub(1)));
        for d in 0..self.dims {
            out.extend(self.increments(d));
        }
        out
    }

    pub fn values(&self, dim: usize) -> Vec<f64> {
        (0..self.steps).map(|k| self.row(k)[dim]).collect()
    }
}

/// Simulates `X_{k+1} = X_k - drift_rate*X_k*dt + scale*dt^{1/alpha}*xi_k`
/// with i.i.d. symmetric alpha-stable `xi` per dimension.
pub fn simulate_ou_levy<R: Rng + ?Sized>(
    cfg: &OuConfig,
    rng: &mut R,
) -> Result<Trajectory, FractalError> {
    if !(cfg.alpha > 0.0 && cfg.alpha <= 2.0) {
        return Err(FractalError::AlphaOutOfRange(cfg.alpha));
    }
    assert!(cfg.dims >= 1, "dims must be at least 1");
    assert!(cfg.dt > 0.0, "dt must be positive");
    assert!(cfg.steps >= 1, "steps must be at least 1");

    let noise_mag = cfg.scale * cfg.dt.powf(1.0 / cfg.alpha);
    let mut data = Vec::with_capacity(cfg.steps * cfg.dims);
    let mut state = vec![cfg.x0; cfg.dims];
    data.extend_from_slice(&state);
    for _ in 1..cfg.steps {
        for x in state.iter_mut() {
            let xi = if cfg.scale == 0.0 {
                0.0
            } else {
                sample_alpha_stable(cfg.alpha, 1.0, rng)?
            };
            *x += -cfg.drift_rate * *x * cfg.dt + noise_mag * xi;
        }
        data.extend_from_slice(&state);
    }
    Ok(Trajectory {
        steps: cfg.steps,
        dims: cfg.dims,
        data,
    })
}
