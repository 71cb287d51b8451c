use thiserror::Error;

/// Errors produced by the simulator and the analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid metric: hopping J = {value} is not positive at site x = {site}")]
    NonPositiveHopping { site: usize, value: f64 },

    #[error("chain length {0} is not supported (need an even number of sites >= 2)")]
    InvalidLength(usize),

    #[error("index {index} out of range [{min}, {max}]")]
    OutOfRange { index: usize, min: usize, max: usize },

    #[error("eigenvalue {index} did not converge after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    #[error("half filling needs an even number of sites, got {0}")]
    UnsupportedFilling(usize),

    #[error("gamma must lie in (0, 1], got {0}")]
    InvalidGamma(f64),

    #[error("fit failed: {0}")]
    FitFailure(String),

    #[error("no crossover below N = {0}")]
    NoCrossover(usize),

    #[error("config: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(index: usize, min: usize, max: usize) -> Result<()> {
    if index < min || index > max {
        Err(Error::OutOfRange { index, min, max })
    } else {
        Ok(())
    }
}
