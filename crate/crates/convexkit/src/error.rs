use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument fell outside the closed domain of a function.
    #[error("argument {x} outside domain [{lo}, {hi}] of `{id}`")]
    Domain {
        id: String,
        x: f64,
        lo: f64,
        hi: f64,
    },

    /// A function rule produced NaN or an infinity.
    #[error("`{id}` produced a non-finite value at x = {x}")]
    NonFinite { id: String, x: f64 },

    /// Catalog id did not parse or is not registered.
    #[error("unknown function id `{0}`")]
    UnknownFunction(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Weight vector fails its structural constraints.
    #[error("invalid weights: {0}")]
    Weight(String),

    /// An operation demands a certificate the function does not carry.
    #[error("missing or mismatched certificate: {0}")]
    Certificate(String),

    /// Adaptive quadrature hit the subdivision depth cap.
    #[error("quadrature did not converge on [{a}, {b}] within depth {depth}")]
    NonConvergence { a: f64, b: f64, depth: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
