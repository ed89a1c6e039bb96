use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {0} is not admissible")]
    NotAdmissible(String),
    #[error("level m = -2 is excluded")]
    LevelExcluded,
    #[error("the curve family D is not defined for non-negative integral level {0}")]
    DNotDefined(String),
    #[error("result leaves the working window: {0}")]
    WindowExceeded(String),
    #[error("unsupported state shape: {0}")]
    UnsupportedShape(String),
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
