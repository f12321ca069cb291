//! Loading the lookup tables from a data directory.
//!
//! A data directory holds `cities.csv`, `destinations.csv`, `gn.csv` and the
//! device file `devices.json`. Every problem found in a file is reported
//! with its line number, not just the first one.

use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError};
use crate::heatcalc::{
    CityEntry, CityTable, DestinationEntry, DestinationTable, GnRow, GnTable, TableError, Tables,
};

pub const CITIES_FILE: &str = "cities.csv";
pub const DESTINATIONS_FILE: &str = "destinations.csv";
pub const GN_FILE: &str = "gn.csv";
pub const DEVICES_FILE: &str = "devices.json";

const CITIES_HEADER: &[&str] = &["name", "design_outside_temp_c"];
const DESTINATIONS_HEADER: &[&str] = &["name", "inside_temp_c"];
const GN_HEADER: &[&str] = &["levels", "av_ratio", "gn", "open_upper"];

/// The seed data shipped with the repository.
pub mod bundled {
    pub const CITIES: &str = include_str!("../../../data/cities.csv");
    pub const DESTINATIONS: &str = include_str!("../../../data/destinations.csv");
    pub const GN: &str = include_str!("../../../data/gn.csv");
    pub const DEVICES: &str = include_str!("../../../data/devices.json");
}

/// A problem located at a line of a file. Line 1 is the header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineProblem {
    pub line: u64,
    pub message: String,
}

impl fmt::Display for LineProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum SeedError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {}", file, join_problems(problems))]
    Invalid {
        file: String,
        problems: Vec<LineProblem>,
    },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

fn join_problems(problems: &[LineProblem]) -> String {
    problems
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Deserialize)]
struct CityRecord {
    name: String,
    design_outside_temp_c: f64,
}

#[derive(Deserialize)]
struct DestinationRecord {
    name: String,
    inside_temp_c: f64,
}

#[derive(Deserialize)]
struct GnRecord {
    levels: u32,
    av_ratio: f64,
    gn: f64,
    open_upper: bool,
}

/// Parses all records of a CSV file, remembering each record's line.
fn read_records<R: Read, T: DeserializeOwned>(
    file: &str,
    reader: R,
    header: &[&str],
) -> Result<Vec<(u64, T)>, SeedError> {
    let invalid = |problems| SeedError::Invalid {
        file: file.to_string(),
        problems,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let found = rdr
        .headers()
        .map_err(|e| {
            invalid(vec![LineProblem {
                line: 1,
                message: e.to_string(),
            }])
        })?
        .clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(invalid(vec![LineProblem {
            line: 1,
            message: format!(
                "expected header `{}`, found `{}`",
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        }]));
    }

    let mut records = Vec::new();
    let mut problems = Vec::new();
    for result in rdr.records() {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                problems.push(LineProblem {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = record.position().map_or(0, |p| p.line());
        match record.deserialize::<T>(Some(&found)) {
            Ok(value) => records.push((line, value)),
            Err(e) => problems.push(LineProblem {
                line,
                message: e.to_string(),
            }),
        }
    }
    if problems.is_empty() {
        Ok(records)
    } else {
        Err(invalid(problems))
    }
}

/// Splits line numbers from values and maps table violations back to lines.
fn build_table<T, V>(
    file: &str,
    records: Vec<(u64, V)>,
    build: impl FnOnce(Vec<V>) -> Result<T, TableError>,
) -> Result<T, SeedError> {
    let (lines, values): (Vec<u64>, Vec<V>) = records.into_iter().unzip();
    build(values).map_err(|err| SeedError::Invalid {
        file: file.to_string(),
        problems: err
            .violations
            .into_iter()
            .map(|v| LineProblem {
                line: lines[v.index],
                message: v.message,
            })
            .collect(),
    })
}

pub fn parse_cities<R: Read>(file: &str, reader: R) -> Result<CityTable, SeedError> {
    let records = read_records::<_, CityRecord>(file, reader, CITIES_HEADER)?;
    let records = records
        .into_iter()
        .map(|(line, r)| {
            (
                line,
                CityEntry {
                    name: r.name,
                    design_outside_temp: r.design_outside_temp_c,
                },
            )
        })
        .collect();
    build_table(file, records, CityTable::new)
}

pub fn parse_destinations<R: Read>(file: &str, reader: R) -> Result<DestinationTable, SeedError> {
    let records = read_records::<_, DestinationRecord>(file, reader, DESTINATIONS_HEADER)?;
    let records = records
        .into_iter()
        .map(|(line, r)| {
            (
                line,
                DestinationEntry {
                    name: r.name,
                    inside_temp: r.inside_temp_c,
                },
            )
        })
        .collect();
    build_table(file, records, DestinationTable::new)
}

pub fn parse_gn<R: Read>(file: &str, reader: R) -> Result<GnTable, SeedError> {
    let records = read_records::<_, GnRecord>(file, reader, GN_HEADER)?;
    let records = records
        .into_iter()
        .map(|(line, r)| {
            (
                line,
                GnRow {
                    levels: r.levels,
                    av_ratio: r.av_ratio,
                    gn: r.gn,
                    is_open_upper: r.open_upper,
                },
            )
        })
        .collect();
    build_table(file, records, GnTable::new)
}

fn open(path: &Path) -> Result<File, SeedError> {
    File::open(path).map_err(|source| SeedError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

pub fn load_cities(path: &Path) -> Result<CityTable, SeedError> {
    parse_cities(&label(path), open(path)?)
}

pub fn load_destinations(path: &Path) -> Result<DestinationTable, SeedError> {
    parse_destinations(&label(path), open(path)?)
}

pub fn load_gn(path: &Path) -> Result<GnTable, SeedError> {
    parse_gn(&label(path), open(path)?)
}

/// Loads the three lookup tables from `dir`.
pub fn load_tables(dir: &Path) -> Result<Tables, SeedError> {
    Ok(Tables {
        cities: load_cities(&dir.join(CITIES_FILE))?,
        destinations: load_destinations(&dir.join(DESTINATIONS_FILE))?,
        gn: load_gn(&dir.join(GN_FILE))?,
    })
}

/// Tables built from the bundled seed data.
pub fn bundled_tables() -> Tables {
    Tables {
        cities: parse_cities(CITIES_FILE, bundled::CITIES.as_bytes()).expect("bundled cities"),
        destinations: parse_destinations(DESTINATIONS_FILE, bundled::DESTINATIONS.as_bytes())
            .expect("bundled destinations"),
        gn: parse_gn(GN_FILE, bundled::GN.as_bytes()).expect("bundled gn"),
    }
}

/// Catalog built from the bundled device file.
pub fn bundled_catalog() -> Catalog {
    Catalog::from_json(bundled::DEVICES).expect("bundled devices")
}

/// Outcome of checking one file of a data directory.
#[derive(Debug)]
pub struct FileCheck {
    pub file: &'static str,
    /// Number of records on success.
    pub result: Result<usize, SeedError>,
}

/// Loads every file of `dir` independently and reports each outcome.
pub fn check_data_dir(dir: &Path) -> Vec<FileCheck> {
    vec![
        FileCheck {
            file: CITIES_FILE,
            result: load_cities(&dir.join(CITIES_FILE)).map(|t| t.len()),
        },
        FileCheck {
            file: DESTINATIONS_FILE,
            result: load_destinations(&dir.join(DESTINATIONS_FILE)).map(|t| t.len()),
        },
        FileCheck {
            file: GN_FILE,
            result: load_gn(&dir.join(GN_FILE)).map(|t| t.len()),
        },
        FileCheck {
            file: DEVICES_FILE,
            result: Catalog::load(&dir.join(DEVICES_FILE))
                .map(|c| c.len())
                .map_err(SeedError::from),
        },
    ]
}
