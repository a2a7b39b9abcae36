//! Log/add/mult STDP: weight-dependent scaling functions, the pair window,
//! the noisy update, and the trace-based implementation used by the network.
//!
//! A pre-synaptic spike depresses its synapses in proportion to the
//! post-synaptic trace; a post-synaptic spike potentiates in proportion to
//! the pre-synaptic traces. Traces decay with the window constants, so the
//! accumulated update equals all-to-all pair summation.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::SnnError;

/// Traces below this are treated as zero; the skipped update is smaller than
/// any tolerance used by the pair-equivalence checks.
const TRACE_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StdpRule {
    Log,
    Add,
    Mult,
}

impl std::fmt::Display for StdpRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StdpRule::Log => write!(f, "log"),
            StdpRule::Add => write!(f, "add"),
            StdpRule::Mult => write!(f, "mult"),
        }
    }
}

/// Rule variant plus every hyperparameter of the update.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StdpConfig {
    pub rule: StdpRule,
    /// Learning rate.
    pub eta: f64,
    /// Standard deviation of the multiplicative noise `zeta`.
    pub sigma: f64,
    /// Potentiation amplitude.
    pub c_plus: f64,
    /// Depression amplitude.
    pub c_minus: f64,
    /// Potentiation window constant (ms); also the pre-trace decay.
    pub tau_plus: f64,
    /// Depression window constant (ms); also the post-trace decay.
    pub tau_minus: f64,
    /// Degree of the log-like depression saturation (log rule).
    pub s_sat: f64,
    /// Potentiation decay factor: `a_plus` falls off as `exp(-W/(w0*gamma))`
    /// (log rule).
    pub gamma_decay: f64,
    /// Fixed-point weight (log and mult rules).
    pub w0: f64,
    /// Hard lower weight bound.
    pub w_min: f64,
    /// Hard upper weight bound.
    pub w_max: f64,
    /// Pre-trace increment per pre-synaptic spike.
    pub a_pre0: f64,
    /// Post-trace increment per post-synaptic spike.
    pub a_post0: f64,
}

impl StdpConfig {
    /// Log-STDP at image-classification scale.
    pub fn log_default() -> Self {
        Self {
            rule: StdpRule::Log,
            eta: 0.1,
            sigma: 0.5,
            c_plus: 0.5,
            c_minus: 0.45,
            tau_plus: 15.0,
            tau_minus: 30.0,
            s_sat: 3.0,
            gamma_decay: 45.0,
            w0: 0.5,
            w_min: 0.0,
            w_max: 1.0,
            a_pre0: 1.0,
            a_post0: 0.5,
        }
    }

    /// Add-STDP at image-classification scale.
    pub fn add_default() -> Self {
        Self {
            rule: StdpRule::Add,
            a_post0: 0.55,
            s_sat: 1.0,
            gamma_decay: 1.0,
            ..Self::log_default()
        }
    }

    /// Mult-STDP at image-classification scale. The post-trace increment is
    /// rescaled so that the depression term `c_minus*W*x_post` balances
    /// potentiation at mid-range weights rather than near zero.
    pub fn mult_default() -> Self {
        Self {
            rule: StdpRule::Mult,
            a_post0: 1.1,
            s_sat: 1.0,
            gamma_decay: 1.0,
            ..Self::log_default()
        }
    }

    pub fn defaults_for(rule: StdpRule) -> Self {
        match rule {
            StdpRule::Log => Self::log_default(),
            StdpRule::Add => Self::add_default(),
            StdpRule::Mult => Self::mult_default(),
        }
    }

    pub fn validate(&self) -> Result<(), SnnError> {
        let positive = [
            ("eta", self.eta),
            ("c_plus", self.c_plus),
            ("c_minus", self.c_minus),
            ("tau_plus", self.tau_plus),
            ("tau_minus", self.tau_minus),
        ];
        for (name, v) in positive {
            if !(v > 0.0) {
                return Err(SnnError::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.sigma < 0.0 {
            return Err(SnnError::InvalidConfig(format!(
                "sigma must be nonnegative, got {}",
                self.sigma
            )));
        }
        if !(self.w_min < self.w_max) {
            return Err(SnnError::InvalidConfig(format!(
                "weight bounds must satisfy w_min < w_max, got [{}, {}]",
                self.w_min, self.w_max
            )));
        }
        if matches!(self.rule, StdpRule::Log) {
            if self.s_sat < 1.0 {
                return Err(SnnError::InvalidConfig(format!(
                    "s_sat must be at least 1, got {}",
                    self.s_sat
                )));
            }
            if self.gamma_decay < 1.0 {
                return Err(SnnError::InvalidConfig(format!(
                    "gamma_decay must be at least 1, got {}",
                    self.gamma_decay
                )));
            }
        }
        if matches!(self.rule, StdpRule::Log | StdpRule::Mult) && !(self.w0 > 0.0) {
            return Err(SnnError::InvalidConfig(format!(
                "w0 must be positive, got {}",
                self.w0
            )));
        }
        Ok(())
    }
}

/// Potentiation scaling `a_+(W)`.
pub fn a_plus(cfg: &StdpConfig, w: f64) -> f64 {
    match cfg.rule {
        StdpRule::Log => cfg.c_plus * (-w / (cfg.w0 * cfg.gamma_decay)).exp(),
        StdpRule::Add | StdpRule::Mult => cfg.c_plus,
    }
}

/// Depression scaling `a_-(W)`.
///
/// Log rule: linear `c_-*W/W0` up to the fixed point, then the saturating
/// branch `c_-*[1 + ln(1 + S*(W/W0 - 1))/S]`. The log argument
/// `1 + S*(W/W0 - 1)` is at least 1 for `W >= W0`, `S >= 1`, so the branch
/// cannot take a nonpositive logarithm.
pub fn a_minus(cfg: &StdpConfig, w: f64) -> f64 {
    match cfg.rule {
        StdpRule::Log => {
            let ratio = w / cfg.w0;
            if ratio <= 1.0 {
                cfg.c_minus * ratio
            } else {
                cfg.c_minus * (1.0 + (1.0 + cfg.s_sat * (ratio - 1.0)).ln() / cfg.s_sat)
            }
        }
        StdpRule::Add => cfg.c_minus,
        StdpRule::Mult => cfg.c_minus * w,
    }
}

/// The pair window `H(W; u)` with `u = t_pre - t_post` (ms): potentiation for
/// `u < 0`, depression for `u > 0`, no update at the `u = 0` tie.
pub fn window_h(cfg: &StdpConfig, w: f64, u: f64) -> f64 {
    if u < 0.0 {
        a_plus(cfg, w) * (-(-u) / cfg.tau_plus).exp()
    } else if u > 0.0 {
        -a_minus(cfg, w) * (-u / cfg.tau_minus).exp()
    } else {
        0.0
    }
}

/// One noisy pairwise update `eta*(1 + zeta)*H(W; u)` with
/// `zeta ~ N(0, sigma^2)`. The caller clamps `W + delta` to the bounds.
pub fn delta_w<R: Rng + ?Sized>(cfg: &StdpConfig, w: f64, u: f64, rng: &mut R) -> f64 {
    cfg.eta * (1.0 + noise(cfg, rng)) * window_h(cfg, w, u)
}

#[inline]
fn noise<R: Rng + ?Sized>(cfg: &StdpConfig, rng: &mut R) -> f64 {
    if cfg.sigma == 0.0 {
        0.0
    } else {
        let z: f64 = rng.sample(StandardNormal);
        cfg.sigma * z
    }
}

/// Exponentially decaying spike memories: one per input synapse (pre) and
/// one per excitatory neuron (post).
#[derive(Debug, Clone)]
pub struct TraceState {
    pub x_pre: Vec<f64>,
    pub x_post: Vec<f64>,
    last_time: f64,
}

impl TraceState {
    pub fn new(n_pre: usize, n_post: usize) -> Self {
        Self {
            x_pre: vec![0.0; n_pre],
            x_post: vec![0.0; n_post],
            last_time: 0.0,
        }
    }

    pub fn last_time(&self) -> f64 {
        self.last_time
    }

    /// Decays all traces from the last update time to `now`. Values falling
    /// below the cutoff are flushed to zero so update loops can skip them.
    pub fn advance_to(&mut self, now: f64, cfg: &StdpConfig) -> Result<(), SnnError> {
        if now < self.last_time {
            return Err(SnnError::TimeRegression {
                now,
                last: self.last_time,
            });
        }
        let dt = now - self.last_time;
        if dt > 0.0 {
            let f_pre = (-dt / cfg.tau_plus).exp();
            let f_post = (-dt / cfg.tau_minus).exp();
            for x in self.x_pre.iter_mut() {
                *x *= f_pre;
                if *x < TRACE_CUTOFF {
                    *x = 0.0;
                }
            }
            for x in self.x_post.iter_mut() {
                *x *= f_post;
                if *x < TRACE_CUTOFF {
                    *x = 0.0;
                }
            }
            self.last_time = now;
        }
        Ok(())
    }

    pub fn bump_pre(&mut self, i: usize, cfg: &StdpConfig) {
        self.x_pre[i] += cfg.a_pre0;
    }

    pub fn bump_post(&mut self, j: usize, cfg: &StdpConfig) {
        self.x_post[j] += cfg.a_post0;
    }
}

/// Depression of one pre-synaptic row against the post traces. Traces must
/// already be decayed to the event time. Each applied nonzero weight change
/// is passed to `sink`.
pub fn depress_on_pre<R: Rng + ?Sized>(
    traces: &TraceState,
    weights_row: &mut [f64],
    cfg: &StdpConfig,
    rng: &mut R,
    sink: &mut impl FnMut(f64),
) {
    debug_assert_eq!(weights_row.len(), traces.x_post.len());
    for (w, &xp) in weights_row.iter_mut().zip(traces.x_post.iter()) {
        if xp == 0.0 {
            continue;
        }
        let dw = -cfg.eta * (1.0 + noise(cfg, rng)) * a_minus(cfg, *w) * xp;
        let new = (*w + dw).clamp(cfg.w_min, cfg.w_max);
        let applied = new - *w;
        if applied != 0.0 {
            sink(applied);
            *w = new;
        }
    }
}

/// Potentiation of one post-synaptic column (stride `n_post`) against the
/// pre traces. Traces must already be decayed to the event time.
pub fn potentiate_on_post<R: Rng + ?Sized>(
    traces: &TraceState,
    weights: &mut [f64],
    n_post: usize,
    post: usize,
    cfg: &StdpConfig,
    rng: &mut R,
    sink: &mut impl FnMut(f64),
) {
    debug_assert_eq!(weights.len(), traces.x_pre.len() * n_post);
    for (i, &xp) in traces.x_pre.iter().enumerate() {
        if xp == 0.0 {
            continue;
        }
        let w = &mut weights[i * n_post + post];
        let dw = cfg.eta * (1.0 + noise(cfg, rng)) * a_plus(cfg, *w) * xp;
        let new = (*w + dw).clamp(cfg.w_min, cfg.w_max);
        let applied = new - *w;
        if applied != 0.0 {
            sink(applied);
            *w = new;
        }
    }
}

/// A pre-synaptic spike at `now` on the synapse row of input `pre`:
/// depression against the post traces, then the pre-trace increment.
pub fn on_pre_spike<R: Rng + ?Sized>(
    traces: &mut TraceState,
    pre: usize,
    weights_row: &mut [f64],
    cfg: &StdpConfig,
    now: f64,
    rng: &mut R,
    sink: &mut impl FnMut(f64),
) -> Result<(), SnnError> {
    traces.advance_to(now, cfg)?;
    depress_on_pre(traces, weights_row, cfg, rng, sink);
    traces.bump_pre(pre, cfg);
    Ok(())
}

/// A post-synaptic spike of neuron `post` at `now`: potentiation against the
/// pre traces, then the post-trace increment.
pub fn on_post_spike<R: Rng + ?Sized>(
    traces: &mut TraceState,
    post: usize,
    weights: &mut [f64],
    n_post: usize,
    cfg: &StdpConfig,
    now: f64,
    rng: &mut R,
    sink: &mut impl FnMut(f64),
) -> Result<(), SnnError> {
    traces.advance_to(now, cfg)?;
    potentiate_on_post(traces, weights, n_post, post, cfg, rng, sink);
    traces.bump_post(post, cfg);
    Ok(())
}
