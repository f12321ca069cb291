use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::device::{BurnerType, Combustion, Device, Fuel};

/// Largest allowed ratio between a device's minimum power and the
/// requirement, unless the query says otherwise.
pub const DEFAULT_HEADROOM: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QueryError {
    #[error("required power must be strictly positive, got {0}")]
    NonPositivePower(f64),
    #[error("headroom must be at least 1, got {0}")]
    InvalidHeadroom(f64),
    #[error("invalid {facet} `{value}`, expected one of: {expected}")]
    InvalidFacet {
        facet: &'static str,
        value: String,
        expected: String,
    },
}

/// Parses a facet value against a list of (accepted spellings, value).
/// Both the canonical names and the Romanian form labels are accepted,
/// case-insensitively.
fn parse_facet<T: Copy>(
    facet: &'static str,
    input: &str,
    table: &[(&[&str], T)],
) -> Result<T, QueryError> {
    let needle = input.trim().to_lowercase();
    table
        .iter()
        .find(|(names, _)| names.iter().any(|n| n.to_lowercase() == needle))
        .map(|(_, v)| *v)
        .ok_or_else(|| QueryError::InvalidFacet {
            facet,
            value: input.to_string(),
            expected: table
                .iter()
                .map(|(names, _)| names[0])
                .collect::<Vec<_>>()
                .join(", "),
        })
}

macro_rules! facet_enum {
    ($(#[$meta:meta])* $name:ident, $facet:literal, { $($variant:ident => [$($alias:literal),+]),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
        pub enum $name {
            #[default]
            Any,
            $($variant),+
        }

        impl $name {
            /// Every concrete (non-`Any`) value.
            pub const CONCRETE: &'static [$name] = &[$($name::$variant),+];

            const SPELLINGS: &'static [(&'static [&'static str], $name)] = &[
                (&["Any", "indiferent"], $name::Any),
                $((&[$($alias),+], $name::$variant)),+
            ];

            pub fn as_str(self) -> &'static str {
                match self {
                    $name::Any => "Any",
                    $($name::$variant => stringify!($variant)),+
                }
            }
        }

        impl FromStr for $name {
            type Err = QueryError;

            fn from_str(s: &str) -> Result<Self, QueryError> {
                parse_facet($facet, s, Self::SPELLINGS)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

facet_enum!(
    /// Boiler type facet.
    CombustionFilter, "combustion", {
        Condensing => ["Condensing", "condensatie", "in condensatie"],
        Burner => ["Burner", "arzator", "cu arzator"],
    }
);

facet_enum!(
    /// Burner type facet. Devices with an unspecified burner only match `Any`.
    BurnerFilter, "burner", {
        Included => ["Included", "inclus"],
        External => ["External", "exterior"],
    }
);

facet_enum!(
    /// Fuel facet. Solid fuels are not offered as a filter.
    FuelFilter, "fuel", {
        Diesel => ["Diesel", "motorina"],
        CLU3 => ["CLU3"],
        NaturalGas => ["NaturalGas", "gaz", "gaze naturale"],
        LPG => ["LPG", "GPL"],
    }
);

/// Facet refinement. Each `Any` field imposes no constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FilterCriteria {
    pub combustion: CombustionFilter,
    pub burner_type: BurnerFilter,
    pub fuel: FuelFilter,
}

impl FilterCriteria {
    pub fn matches(&self, device: &Device) -> bool {
        let combustion = match self.combustion {
            CombustionFilter::Any => true,
            CombustionFilter::Condensing => device.combustion.contains(&Combustion::Condensing),
            CombustionFilter::Burner => device.combustion.contains(&Combustion::Burner),
        };
        let burner = match self.burner_type {
            BurnerFilter::Any => true,
            BurnerFilter::Included => device.burner_type == BurnerType::Included,
            BurnerFilter::External => device.burner_type == BurnerType::External,
        };
        let fuel = match self.fuel {
            FuelFilter::Any => true,
            FuelFilter::Diesel => device.fuels.contains(&Fuel::Diesel),
            FuelFilter::CLU3 => device.fuels.contains(&Fuel::CLU3),
            FuelFilter::NaturalGas => device.fuels.contains(&Fuel::NaturalGas),
            FuelFilter::LPG => device.fuels.contains(&Fuel::LPG),
        };
        combustion && burner && fuel
    }
}

/// A power requirement plus facet refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchQuery {
    required_kw: f64,
    headroom: f64,
    pub criteria: FilterCriteria,
}

impl MatchQuery {
    pub fn new(
        required_kw: f64,
        headroom: f64,
        criteria: FilterCriteria,
    ) -> Result<Self, QueryError> {
        if !(required_kw.is_finite() && required_kw > 0.0) {
            return Err(QueryError::NonPositivePower(required_kw));
        }
        if !(headroom.is_finite() && headroom >= 1.0) {
            return Err(QueryError::InvalidHeadroom(headroom));
        }
        Ok(MatchQuery {
            required_kw,
            headroom,
            criteria,
        })
    }

    /// Query with the default headroom and no facet constraints.
    pub fn for_power(required_kw: f64) -> Result<Self, QueryError> {
        Self::new(required_kw, DEFAULT_HEADROOM, FilterCriteria::default())
    }

    pub fn with_criteria(mut self, criteria: FilterCriteria) -> Self {
        self.criteria = criteria;
        self
    }

    pub fn required_kw(&self) -> f64 {
        self.required_kw
    }

    pub fn headroom(&self) -> f64 {
        self.headroom
    }

    /// The device can deliver the requirement without being oversized by
    /// more than the headroom ratio, and passes every facet.
    pub fn accepts(&self, device: &Device) -> bool {
        device.power_max_kw >= self.required_kw
            && device.power_min_kw <= self.headroom * self.required_kw
            && self.criteria.matches(device)
    }
}
