use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("missing value for variable `{0}`")]
    MissingVariable(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("image of {0} leaves the codomain window")]
    OutOfWindow(String),

    #[error("automorphism error: {0}")]
    Automorphism(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
