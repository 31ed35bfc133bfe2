use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Output(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

pub fn parse_err<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> CliError {
    move |e| CliError::Parse(format!("{context}: {e}"))
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        assert_eq!(CliError::Domain("x".into()).exit_code(), 3);
        let e = CliError::Io {
            path: "a.gml".into(),
            source: io::Error::from(io::ErrorKind::NotFound),
        };
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().starts_with("a.gml: "));
    }
}
