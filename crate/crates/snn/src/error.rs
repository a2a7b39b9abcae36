use thiserror::Error;

#[derive(Debug, Error)]
pub enum SnnError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("integration diverged: non-finite membrane state at neuron {neuron}")]
    IntegrationDiverged { neuron: usize },
    #[error("neuron index {index} out of range (population size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("non-finite value passed to {0}")]
    NonFinite(&'static str),
    #[error("time regression: now {now} ms precedes last update {last} ms")]
    TimeRegression { now: f64, last: f64 },
    #[error("spike schedule entry at {time} ms outside presentation window [0, {duration}) ms")]
    ScheduleOutOfRange { time: f64, duration: f64 },
    #[error("encoding failure: fewer than {min_spikes} spikes after {max_boost} rate boosts")]
    EncodingFailure { min_spikes: u64, max_boost: u32 },
    #[error("image has zero pixel sum, cannot normalize")]
    ZeroSumImage,
    #[error("label {0} outside the 0-9 class range")]
    BadLabel(u8),
}
