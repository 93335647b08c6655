use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("player {player} is out of range for {n} players")]
    InvalidPlayer { player: usize, n: usize },

    #[error("a link needs two distinct players, got {0} twice")]
    SelfLink(usize),

    #[error("cannot add links already present: {0}")]
    LinkPresent(String),

    #[error("cannot remove links that are absent: {0}")]
    LinkAbsent(String),

    #[error("{what} needs {required}, which exceeds the limit of {limit}; raise the limit explicitly if the memory is available")]
    Capacity {
        what: String,
        required: u64,
        limit: u64,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid correlation device: {0}")]
    InvalidDevice(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
