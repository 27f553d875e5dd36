use std::io::Write;
use std::path::{Path, PathBuf};

use polyreal::format::{write_document, Document};

use crate::Global;

pub enum Status {
    Ok,
    /// A postcondition check failed; the outputs describe how.
    Failed,
}

impl Status {
    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Failed
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn precondition(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<polyreal::Error> for CliError {
    fn from(e: polyreal::Error) -> Self {
        let code = match e {
            polyreal::Error::Parse(_) | polyreal::Error::Syntax { .. } => 3,
            _ => 4,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: 3,
            message: e.to_string(),
        }
    }
}

/// Adds a module name to library errors.
pub fn context<T>(module: &str, r: polyreal::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| {
        let mut c = CliError::from(e);
        c.message = format!("{module}: {}", c.message);
        c
    })
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError {
        code: 3,
        message: format!("{}: {e}", path.display()),
    })
}

/// Parses a file, prefixing errors with its path.
pub fn parse<T>(path: &Path, f: impl FnOnce(&str) -> polyreal::Result<T>) -> Result<T, CliError> {
    let text = read(path)?;
    f(&text).map_err(|e| {
        let mut c = CliError::from(e);
        c.message = format!("{}: {}", path.display(), c.message);
        c
    })
}

/// Writes `<output>/<command>.<kind>.jsonl` through a temporary file and a
/// rename, and returns the path.
pub fn write(g: &Global, command: &str, doc: &Document) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(&g.output)?;
    let path = g.output.join(format!("{command}.{}.jsonl", doc.kind()));
    let mut tmp = tempfile::NamedTempFile::new_in(&g.output)?;
    tmp.write_all(write_document(doc).as_bytes())?;
    tmp.persist(&path).map_err(|e| CliError::from(e.error))?;
    Ok(path)
}
