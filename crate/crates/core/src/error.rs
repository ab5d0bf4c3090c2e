//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must live on the same space do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A NaN or infinity tried to enter a state object.
    #[error("non-finite component in {what}")]
    NonFinite { what: &'static str },

    /// A vector that must be a state vector is not normalized.
    #[error("vector is not normalized: |norm^2 - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    /// A numeric parameter lies outside its documented domain.
    #[error("parameter {name} = {value} outside its domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A counter-state radicand came out negative beyond rounding noise,
    /// which signals inconsistent inputs rather than floating-point error.
    #[error("negative radicand {value:.3e} in counter-state construction")]
    NegativeRadicand { value: f64 },

    /// Selective conditioning on a branch whose probability is numerically zero.
    #[error("branch probability {probability:.3e} too small to condition on")]
    VanishingBranch { probability: f64 },

    /// For a degenerate mixture the weight is constantly 1/2, so no
    /// range-state parameter can be recovered from it.
    #[error("weight is constant 1/2 for a degenerate mixture; p is undetermined by w")]
    DegenerateWeight,

    /// The two sampled waves combined to a numerically zero vector.
    #[error("superposition vanishes: the combined wave has zero norm")]
    VanishingSuperposition,

    /// A statistic over histograms was requested but the report has none.
    #[error("report carries no histograms (simulation ran without a screen)")]
    MissingHistograms,

    /// Histogram and analytic density are defined over different supports.
    #[error("histogram/density mismatch: {detail}")]
    GridMismatch { detail: &'static str },
}
