//! Coefficient-based heating load: `Q = V * GN * (t_inside - t_outside)`.
//!
//! Everything here is a pure function over immutable tables. Tables are
//! validated once when constructed and can then be shared freely between
//! threads.

mod error;
mod sizing;
mod tables;
pub mod units;

pub use error::{SizingError, TableError, Violation};
pub use sizing::{compute_volume, heat_load, size_structure, BuildingSpec, HeatLoad};
pub use tables::{
    normalize_key, CityEntry, CityTable, DestinationEntry, DestinationTable, GnLookup, GnRow,
    GnTable, Tables,
};
pub use units::kw_to_mcal;
