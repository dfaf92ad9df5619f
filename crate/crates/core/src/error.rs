use thiserror::Error;

/// Errors raised by tuple construction, distance engines and the loop tracker.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("brute force too large: {what} = {size} exceeds the cap of {cap}")]
    BruteForceTooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("non-finite component at index {index}")]
    NonFinite { index: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid block partition: {0}")]
    InvalidPartition(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error(
        "undersampled loop: step {step} has matching distance {distance:.6e}, \
         which is not below half the minimal gap {half_gap:.6e}; try at least {suggested_steps} steps"
    )]
    Undersampled {
        step: usize,
        distance: f64,
        half_gap: f64,
        suggested_steps: usize,
    },

    #[error("too few steps: {steps} given, at least {minimum} required")]
    TooFewSteps { steps: usize, minimum: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate loop: sample {sample} has coincident components")]
    DegenerateLoop { sample: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
