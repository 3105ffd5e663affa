use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bound not applicable: {0}")]
    BoundNotApplicable(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("cell {algorithm} n={n} run={run}: {source}")]
    Cell {
        algorithm: String,
        n: usize,
        run: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
