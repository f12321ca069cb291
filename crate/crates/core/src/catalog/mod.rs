//! Heating device catalog: ingestion, power matching and facet filtering.
//!
//! The interchange format is a JSON array of [`DeviceRecord`]s. A [`Catalog`]
//! is an immutable, validated snapshot; [`CatalogStore`] holds the current
//! snapshot and persists replacements.

mod device;
mod query;
mod store;

use std::collections::HashMap;
use std::fmt;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

pub use device::{BurnerType, Combustion, Device, DeviceId, DeviceRecord, Fuel};
pub use query::{
    BurnerFilter, CombustionFilter, FilterCriteria, FuelFilter, MatchQuery, QueryError,
    DEFAULT_HEADROOM,
};
pub use store::CatalogStore;

/// A rejected record of a device file. Records are numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordProblem {
    DuplicateDevice {
        record: usize,
        producer: String,
        model: String,
        first_record: usize,
    },
    InvariantViolation {
        record: usize,
        field: &'static str,
        message: String,
    },
}

impl RecordProblem {
    pub fn code(&self) -> &'static str {
        match self {
            RecordProblem::DuplicateDevice { .. } => "DuplicateDevice",
            RecordProblem::InvariantViolation { .. } => "InvariantViolation",
        }
    }

    pub fn record(&self) -> usize {
        match self {
            RecordProblem::DuplicateDevice { record, .. }
            | RecordProblem::InvariantViolation { record, .. } => *record,
        }
    }
}

impl fmt::Display for RecordProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordProblem::DuplicateDevice {
                record,
                producer,
                model,
                first_record,
            } => write!(
                f,
                "record {record}: DuplicateDevice `{producer} / {model}` (first at record {first_record})"
            ),
            RecordProblem::InvariantViolation {
                record,
                field,
                message,
            } => write!(f, "record {record}: InvariantViolation {field}: {message}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("ParseError at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}", problems.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid { problems: Vec<RecordProblem> },
}

/// A page of results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Page<'a> {
    pub page: usize,
    pub page_size: usize,
    /// Number of items across all pages.
    pub total: usize,
    pub devices: Vec<&'a Device>,
}

fn paginate(items: Vec<&Device>, page: NonZeroUsize, page_size: NonZeroUsize) -> Page<'_> {
    let total = items.len();
    let start = (page.get() - 1).saturating_mul(page_size.get());
    let devices = items
        .into_iter()
        .skip(start)
        .take(page_size.get())
        .collect();
    Page {
        page: page.get(),
        page_size: page_size.get(),
        total,
        devices,
    }
}

/// Validated, immutable set of devices.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Catalog {
    /// Ingestion order; `id` is the 1-based position.
    devices: Vec<Device>,
}

impl Catalog {
    /// Validates records and assigns ids in order. All problems are
    /// collected before failing.
    pub fn from_records(records: Vec<DeviceRecord>) -> Result<Self, CatalogError> {
        let mut problems = Vec::new();
        let mut seen: HashMap<(String, String), usize> = HashMap::new();
        for (i, record) in records.iter().enumerate() {
            let n = i + 1;
            for (field, message) in record.violations() {
                problems.push(RecordProblem::InvariantViolation {
                    record: n,
                    field,
                    message,
                });
            }
            if let Some(first) = seen.insert(record.key(), n) {
                problems.push(RecordProblem::DuplicateDevice {
                    record: n,
                    producer: record.producer.clone(),
                    model: record.model.clone(),
                    first_record: first,
                });
                // keep pointing at the first occurrence
                seen.insert(record.key(), first);
            }
        }
        if !problems.is_empty() {
            return Err(CatalogError::Invalid { problems });
        }
        let devices = records
            .into_iter()
            .enumerate()
            .map(|(i, record)| Device {
                id: DeviceId(i as u32 + 1),
                record,
            })
            .collect();
        Ok(Catalog { devices })
    }

    pub fn from_json(json: &str) -> Result<Self, CatalogError> {
        let records: Vec<DeviceRecord> =
            serde_json::from_str(json).map_err(|e| CatalogError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        Self::from_records(records)
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let json = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&json)
    }

    /// Records in ingestion order, in the interchange format.
    pub fn to_json(&self) -> String {
        let records: Vec<&DeviceRecord> = self.devices.iter().map(|d| &d.record).collect();
        let mut json = serde_json::to_string_pretty(&records).expect("records serialize");
        json.push('\n');
        json
    }

    pub fn len(&self) -> usize {
        self.devices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.devices.is_empty()
    }

    /// Devices in ingestion order.
    pub fn devices(&self) -> &[Device] {
        &self.devices
    }

    pub fn get(&self, id: DeviceId) -> Option<&Device> {
        (id.0 as usize)
            .checked_sub(1)
            .and_then(|i| self.devices.get(i))
    }

    /// All devices ordered by (producer, model).
    pub fn sorted(&self) -> Vec<&Device> {
        let mut all: Vec<&Device> = self.devices.iter().collect();
        all.sort_by(|a, b| (&a.producer, &a.model).cmp(&(&b.producer, &b.model)));
        all
    }

    /// One page of the catalog ordered by (producer, model). Pages past the
    /// end are empty.
    pub fn list_devices(&self, page: NonZeroUsize, page_size: NonZeroUsize) -> Page<'_> {
        paginate(self.sorted(), page, page_size)
    }

    /// Devices accepted by `query`, by ascending maximum power and then by
    /// (producer, model).
    pub fn match_devices(&self, query: &MatchQuery) -> Vec<&Device> {
        let mut found: Vec<&Device> = self.devices.iter().filter(|d| query.accepts(d)).collect();
        found.sort_by(|a, b| {
            a.power_max_kw
                .total_cmp(&b.power_max_kw)
                .then_with(|| (&a.producer, &a.model).cmp(&(&b.producer, &b.model)))
        });
        found
    }

    pub fn match_page(
        &self,
        query: &MatchQuery,
        page: NonZeroUsize,
        page_size: NonZeroUsize,
    ) -> Page<'_> {
        paginate(self.match_devices(query), page, page_size)
    }
}
