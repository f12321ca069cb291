//! Heating load sizing by the coefficient method, plus a catalog of heating
//! devices that can be matched against the computed load.
//!
//! [`heatcalc`] is pure and holds no I/O. [`seed`] reads the lookup tables
//! from CSV, and [`catalog`] owns device records and their JSON interchange
//! format.

pub mod catalog;
pub mod heatcalc;
pub mod seed;

pub use catalog::{
    BurnerFilter, BurnerType, Catalog, CatalogError, CatalogStore, Combustion, CombustionFilter,
    Device, DeviceId, DeviceRecord, FilterCriteria, Fuel, FuelFilter, MatchQuery, Page, QueryError,
    RecordProblem, DEFAULT_HEADROOM,
};
pub use heatcalc::{
    BuildingSpec, CityEntry, CityTable, DestinationEntry, DestinationTable, GnLookup, GnRow,
    GnTable, HeatLoad, SizingError, Tables,
};
