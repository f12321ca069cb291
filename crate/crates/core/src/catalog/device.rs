use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Combustion {
    Condensing,
    Burner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BurnerType {
    Included,
    External,
    Unspecified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Fuel {
    Diesel,
    CLU3,
    NaturalGas,
    LPG,
    Wood,
    Sawdust,
}

/// Catalog-assigned identifier, stable for the lifetime of a catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeviceId(pub u32);

impl fmt::Display for DeviceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One record of the device interchange file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceRecord {
    pub producer: String,
    pub model: String,
    pub power_min_kw: f64,
    pub power_max_kw: f64,
    pub combustion: BTreeSet<Combustion>,
    pub burner_type: BurnerType,
    pub fuels: BTreeSet<Fuel>,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub image_ref: Option<String>,
}

/// A validated heating device.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Device {
    pub id: DeviceId,
    #[serde(flatten)]
    pub record: DeviceRecord,
}

impl std::ops::Deref for Device {
    type Target = DeviceRecord;

    fn deref(&self) -> &DeviceRecord {
        &self.record
    }
}

impl DeviceRecord {
    /// Checks the record invariants, returning `(field, message)` pairs.
    pub fn violations(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if self.producer.trim().is_empty() {
            out.push(("producer", "must not be empty".to_string()));
        }
        if self.model.trim().is_empty() {
            out.push(("model", "must not be empty".to_string()));
        }
        if !(self.power_min_kw.is_finite() && self.power_min_kw > 0.0) {
            out.push((
                "power_min_kw",
                format!("must be positive, got {}", self.power_min_kw),
            ));
        }
        if !self.power_max_kw.is_finite() {
            out.push((
                "power_max_kw",
                format!("must be finite, got {}", self.power_max_kw),
            ));
        } else if self.power_min_kw > self.power_max_kw {
            out.push((
                "power_max_kw",
                format!(
                    "{} is below power_min_kw {}",
                    self.power_max_kw, self.power_min_kw
                ),
            ));
        }
        if self.combustion.is_empty() {
            out.push(("combustion", "must not be empty".to_string()));
        }
        if self.fuels.is_empty() {
            out.push(("fuels", "must not be empty".to_string()));
        }
        out
    }

    /// Uniqueness key for (producer, model).
    pub fn key(&self) -> (String, String) {
        (
            self.producer.trim().to_lowercase(),
            self.model.trim().to_lowercase(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> DeviceRecord {
        DeviceRecord {
            producer: "Hoval".into(),
            model: "Euro-3 18".into(),
            power_min_kw: 16.0,
            power_max_kw: 18.0,
            combustion: [Combustion::Burner].into(),
            burner_type: BurnerType::Unspecified,
            fuels: [Fuel::Diesel, Fuel::NaturalGas].into(),
            description: None,
            image_ref: None,
        }
    }

    #[test]
    fn valid_record() {
        assert!(record().violations().is_empty());
    }

    #[test]
    fn inverted_range() {
        let mut r = record();
        r.power_min_kw = 18.0;
        r.power_max_kw = 16.0;
        let v = r.violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].0, "power_max_kw");
    }

    #[test]
    fn empty_sets_and_names() {
        let mut r = record();
        r.combustion.clear();
        r.fuels.clear();
        r.model = "  ".into();
        let fields: Vec<_> = r.violations().into_iter().map(|(f, _)| f).collect();
        assert_eq!(fields, vec!["model", "combustion", "fuels"]);
    }

    #[test]
    fn enum_strings() {
        let json = serde_json::to_string(&record()).unwrap();
        assert!(json.contains(r#""combustion":["Burner"]"#));
        assert!(json.contains(r#""burner_type":"Unspecified""#));
        assert!(json.contains(r#""fuels":["Diesel","NaturalGas"]"#));
        let fuel: Fuel = serde_json::from_str(r#""CLU3""#).unwrap();
        assert_eq!(fuel, Fuel::CLU3);
    }
}
