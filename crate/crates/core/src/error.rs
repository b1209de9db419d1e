use thiserror::Error;

/// Errors raised by the order backends, the matrix kernel and the theorem layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation contains a directed cycle through `{0}`")]
    Cycle(String),
    #[error("element `{0}` listed more than once")]
    DuplicateElement(String),
    #[error("cover `{0}<{1}` listed more than once")]
    DuplicateCover(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("`{0}` and `{1}` have no meet")]
    NoMeet(String, String),
    #[error("`{0}` and `{1}` have no join")]
    NoJoin(String, String),
    #[error("selection is not {0} closed")]
    NotClosed(&'static str),
    #[error("invalid selection: {0}")]
    InvalidSelection(String),
    #[error("closure set is not admissible: {0}")]
    NotAdmissible(String),
    #[error("f{row} has no value at `{element}`")]
    MissingValue { row: usize, element: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("diagonal psi value vanishes at index {0}")]
    SingularPsi(usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("theorem/oracle mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
