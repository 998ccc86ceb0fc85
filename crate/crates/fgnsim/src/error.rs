use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, FgnError>;

#[derive(Debug, Error)]
pub enum FgnError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("config error at line {line}, field `{field}`: {msg}")]
    Config {
        line: usize,
        field: String,
        msg: String,
    },
    #[error("numerical error: {0}")]
    Numeric(#[from] fgnsim_core::Error),
    #[error("no records to plot")]
    EmptyInput,
}

impl FgnError {
    pub fn config(line: usize, field: &str, msg: impl Into<String>) -> Self {
        Self::Config {
            line,
            field: field.to_owned(),
            msg: msg.into(),
        }
    }

    /// Process exit code: 2 for usage/config problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } => 2,
            _ => 1,
        }
    }
}
