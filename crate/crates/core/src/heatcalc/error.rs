use std::fmt;

use thiserror::Error;

/// Failure to size a structure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SizingError {
    #[error("unknown city `{0}`")]
    UnknownCity(String),
    #[error("unknown destination `{0}`")]
    UnknownDestination(String),
    #[error("the GN table has no rows for {0} level(s)")]
    UnknownLevels(u32),
    #[error("{field} must be strictly positive, got {value}")]
    NonPositiveDimension { field: &'static str, value: f64 },
}

impl SizingError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            SizingError::UnknownCity(_) => "UnknownCity",
            SizingError::UnknownDestination(_) => "UnknownDestination",
            SizingError::UnknownLevels(_) => "UnknownLevels",
            SizingError::NonPositiveDimension { .. } => "NonPositiveDimension",
        }
    }

    /// Name of the input field the error refers to.
    pub fn field(&self) -> &'static str {
        match self {
            SizingError::UnknownCity(_) => "city",
            SizingError::UnknownDestination(_) => "destination",
            SizingError::UnknownLevels(_) => "levels",
            SizingError::NonPositiveDimension { field, .. } => field,
        }
    }
}

/// One rejected table entry. `index` is the 0-based position of the entry in
/// the sequence handed to the table constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub message: String,
}

/// All violations found while building a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "entry {}: {}", v.index, v.message)?;
        }
        Ok(())
    }
}

impl std::error::Error for TableError {}
