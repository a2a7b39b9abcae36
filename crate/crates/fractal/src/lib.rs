//! Heavy-tail analysis toolkit: symmetric alpha-stable sampling, Levy-driven
//! Ornstein-Uhlenbeck trajectories, block-based tail-index estimation with the
//! derived BG index, and Gaussian kernel density estimation.

pub mod increments;
pub mod kde;
pub mod ou;
pub mod stable;
pub mod tail;

mod error;

pub use error::FractalError;
pub use increments::IncrementLog;
pub use kde::{kde_bandwidth, kde_evaluate, kde_grid};
pub use ou::{simulate_ou_levy, OuConfig, Trajectory};
pub use stable::sample_alpha_stable;
pub use tail::{bg_index, estimate_tail_index, estimate_tail_index_auto, TailEstimate};
