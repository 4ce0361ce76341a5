use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("delta argument must be linear and odd, found a `{monomial}` term")]
    InvalidDeltaArgument { monomial: String },

    #[error("transfer-matrix block is not diagonal (largest off-diagonal entry {max_off_diagonal:.3e}); canonicalize the channel first")]
    NonDiagonalBlock { max_off_diagonal: f64 },

    #[error("map is not trace preserving (deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },

    #[error("channel is not completely positive (minimum Choi eigenvalue {min_eigenvalue:.3e})")]
    NotCptp { min_eigenvalue: f64 },

    #[error("characteristic function is not normalized (constant term {constant})")]
    NotNormalized { constant: String },

    #[error("recovered state is not physical (p = {p}, |gamma|^2 = {gamma_sq})")]
    NotPhysical { p: f64, gamma_sq: f64 },

    #[error("no angle parametrization: {0}")]
    NoSolution(String),

    #[error("parameter `{name}` = {value} is out of range [0, 1]")]
    OutOfRange { name: String, value: f64 },

    #[error("unknown channel `{0}`")]
    UnknownChannel(String),

    #[error("missing parameter `{0}`")]
    MissingParam(String),

    #[error("unexpected parameter `{0}`")]
    UnexpectedParam(String),

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// True for errors raised by physical validation rather than by
    /// malformed input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotTracePreserving { .. }
                | Error::NotCptp { .. }
                | Error::NotNormalized { .. }
                | Error::NotPhysical { .. }
                | Error::NonDiagonalBlock { .. }
                | Error::OutOfRange { .. }
                | Error::NoSolution(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
