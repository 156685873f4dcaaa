//! Text formats, bound bookkeeping and independent verification.
//!
//! Every file is ASCII, one `key value` pair per line, led by a magic
//! header line carrying a format version.

mod bounds;
mod certfile;
mod entry;
mod report;
mod resume;
mod table;
mod verify;

use std::path::Path;

use thiserror::Error;

pub use bounds::{lower_bound_order, moore_floor, LowerBoundConfig};
pub use certfile::{parse_certificate, write_certificate};
pub use entry::CatalogEntry;
pub use report::{non_existence_report, NonExistenceReport};
pub use resume::{parse_resume, write_resume};
pub use table::{bounds_table, BoundStatus, BoundsRow, BoundsTable, Evidence, EvidenceSource};
pub use verify::{verify_witness, Check, VerificationReport};

use crate::pattern::PatternError;
use crate::search::CertificateError;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: String,
        #[source]
        source: Box<CatalogError>,
    },
    #[error("no complete exhaustion certificate for order {0}")]
    MissingCertificate(u32),
    #[error("certificate for (g={girth}, b={b}, n={order}) does not belong to this report")]
    ForeignCertificate { girth: u32, b: u32, order: u32 },
    #[error("certificate for order {0} records accepted patterns; it is not a non-existence proof")]
    NotExhausted(u32),
}

impl CatalogError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CatalogError::Parse {
            line,
            message: message.into(),
        }
    }

    /// Attaches a file path to any error.
    pub fn in_file(self, path: &Path) -> Self {
        match self {
            e @ (CatalogError::Io { .. } | CatalogError::InFile { .. }) => e,
            other => CatalogError::InFile {
                path: path.display().to_string(),
                source: Box::new(other),
            },
        }
    }
}

/// Reads a whole file, then parses it, attaching the path to any error.
pub fn read_file<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, CatalogError>) -> Result<T, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text).map_err(|e| e.in_file(path))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CatalogError> {
    std::fs::write(path, text).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Line-oriented `key value` reader shared by every format.
pub(crate) struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    /// Checks the header line and positions the reader after it.
    pub(crate) fn open(text: &'a str, magic: &str) -> Result<Self, CatalogError> {
        let mut inner = text.lines().enumerate().peekable();
        match inner.next() {
            Some((_, first)) if first.trim_end() == magic => Ok(Self { inner }),
            Some((_, first)) => Err(CatalogError::parse(1, format!("expected header `{magic}`, found `{first}`"))),
            None => Err(CatalogError::parse(1, format!("empty file; expected header `{magic}`"))),
        }
    }

    /// Next non-blank line as `(line number, key, rest)`.
    pub(crate) fn next_pair(&mut self) -> Option<(usize, &'a str, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            return Some((i + 1, key, rest));
        }
        None
    }
}

pub(crate) fn parse_int<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, CatalogError> {
    value
        .trim()
        .parse()
        .map_err(|_| CatalogError::parse(line, format!("`{key}` expects an integer, found `{value}`")))
}

pub(crate) fn parse_ints<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>, CatalogError> {
    value.split_whitespace().map(|v| parse_int(line, key, v)).collect()
}

pub(crate) fn parse_bool(line: usize, key: &str, value: &str, yes: &str, no: &str) -> Result<bool, CatalogError> {
    match value.trim() {
        v if v == yes => Ok(true),
        v if v == no => Ok(false),
        other => Err(CatalogError::parse(line, format!("`{key}` expects `{yes}` or `{no}`, found `{other}`"))),
    }
}

pub(crate) fn join<T: std::fmt::Display>(values: &[T]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}
