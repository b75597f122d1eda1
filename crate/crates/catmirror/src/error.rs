use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {kind}: {}", violations.join("; "))]
    Invalid {
        kind: &'static str,
        violations: Vec<String>,
    },

    #[error("{0}")]
    Argument(String),

    #[error("cell with {0} corners, expected 4")]
    NotQuadrangular(usize),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("structure is not reconstructible: {0}")]
    Reconstruction(String),
}
