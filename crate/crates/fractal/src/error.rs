use thiserror::Error;

#[derive(Debug, Error)]
pub enum FractalError {
    #[error("stability index alpha must lie in (0, 2], got {0}")]
    AlphaOutOfRange(f64),
    #[error("too few samples for tail estimation: need at least {need}, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("block size k1 must be at least 2, got {0}")]
    BadBlockSize(usize),
    #[error("samples are degenerate (all zero after centering)")]
    DegenerateSamples,
    #[error("no tail-index groups to aggregate")]
    NoGroups,
    #[error("bandwidth selection needs at least 2 distinct finite samples")]
    DegenerateKde,
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
}
