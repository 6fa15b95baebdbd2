use thiserror::Error;

/// Errors raised by the profile, geometry, criterion and liminf operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("abscissa {x} outside the profile domain [-{half_width}, {half_width}]")]
    Domain { x: f64, half_width: f64 },

    #[error("argument {x} outside the function domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },

    #[error("ordinate {y} outside the profile range [0, {cap}]")]
    Range { y: f64, cap: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("point ({u}, {w}) is not in the bounded lens component")]
    Membership { u: f64, w: f64 },

    #[error("neighbourhoods are anchored at different points ({inner} vs {outer})")]
    AnchorMismatch { inner: f64, outer: f64 },

    #[error("unsupported target family {0}: exponent varies with the index")]
    UnsupportedTarget(String),

    #[error("unsupported family {0}: no power-law form and no registered proxy")]
    UnsupportedFamily(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no root bracketed in (0, {upper})")]
    NoRoot { upper: f64 },

    #[error("function could not be evaluated at {x}: {reason}")]
    Evaluation { x: f64, reason: String },

    #[error("every sample has a zero denominator (function locally constant)")]
    AllDegenerate,

    #[error("postcondition violated: {0}")]
    Postcondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
