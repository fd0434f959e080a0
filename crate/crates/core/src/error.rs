use thiserror::Error;

/// Errors raised by the walk engines and transforms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("chebyshev argument {0} lies outside [-1, 1]")]
    OutOfRange(f64),

    #[error("chebyshev degree {0} is below -1")]
    NegativeDegree(i64),

    #[error("pole at z = 0")]
    Pole,

    #[error("{what} has squared norm {norm_sqr}, expected 1")]
    Unnormalized { what: &'static str, norm_sqr: f64 },

    #[error("momentum grid must have at least one node")]
    EmptyGrid,

    #[error("grid of {grid_size} nodes aliases a support of half-width {halfwidth} (need at least {})", 2 * halfwidth + 1)]
    Aliasing { grid_size: usize, halfwidth: usize },

    #[error("position state has {0}")]
    InvalidState(&'static str),
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
