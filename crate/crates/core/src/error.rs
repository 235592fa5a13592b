use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("energy {epsilon} lies outside the open lattice band (0, 2)")]
    OutOfBand { epsilon: f64 },

    #[error("energy {epsilon} is not below the barrier height {upsilon0}; only tunneling (0 < epsilon < upsilon0) is supported")]
    UnsupportedRegime { epsilon: f64, upsilon0: f64 },

    #[error("energy {epsilon} is within {margin:e} of the edge at {edge}")]
    NearEdge { epsilon: f64, edge: f64, margin: f64 },

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular scattering system at epsilon = {epsilon} (condition estimate {condition:e})")]
    SingularSystem { epsilon: f64, condition: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
