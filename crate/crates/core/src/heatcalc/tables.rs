use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::error::{SizingError, TableError, Violation};

const OUTSIDE_TEMP_RANGE: (f64, f64) = (-50.0, 20.0);
const INSIDE_TEMP_RANGE: (f64, f64) = (0.0, 40.0);

/// Lookup key for city and destination names: trimmed and lowercased.
/// Diacritics are kept, so `Brasov` does not match `Brașov`.
pub fn normalize_key(name: &str) -> String {
    name.trim().to_lowercase()
}

/// Design outside temperature of a locality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CityEntry {
    pub name: String,
    pub design_outside_temp: f64,
}

/// Design inside temperature for a structure destination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DestinationEntry {
    pub name: String,
    pub inside_temp: f64,
}

fn check_name(name: &str) -> Option<String> {
    name.trim()
        .is_empty()
        .then(|| "name must not be empty".to_string())
}

fn check_range(what: &str, value: f64, (lo, hi): (f64, f64)) -> Option<String> {
    if value.is_finite() && (lo..=hi).contains(&value) {
        None
    } else {
        Some(format!("{what} {value} outside [{lo}, {hi}]"))
    }
}

/// Named temperature table keyed by normalized name, in source order.
#[derive(Debug, Clone)]
struct NamedTable<T> {
    entries: Vec<T>,
    index: HashMap<String, usize>,
}

impl<T> NamedTable<T> {
    fn build(
        entries: Vec<T>,
        name_of: impl Fn(&T) -> &str,
        check: impl Fn(&T) -> Vec<String>,
    ) -> Result<Self, TableError> {
        let mut violations = Vec::new();
        let mut index = HashMap::with_capacity(entries.len());
        for (i, entry) in entries.iter().enumerate() {
            for message in check(entry) {
                violations.push(Violation { index: i, message });
            }
            let key = normalize_key(name_of(entry));
            if key.is_empty() {
                continue;
            }
            if let Some(prev) = index.insert(key, i) {
                violations.push(Violation {
                    index: i,
                    message: format!(
                        "duplicate name `{}` (first at entry {prev})",
                        name_of(entry).trim()
                    ),
                });
            }
        }
        if violations.is_empty() {
            Ok(NamedTable { entries, index })
        } else {
            Err(TableError { violations })
        }
    }

    fn get(&self, name: &str) -> Option<&T> {
        self.index
            .get(&normalize_key(name))
            .map(|&i| &self.entries[i])
    }
}

/// Design outside temperatures per city.
#[derive(Debug, Clone)]
pub struct CityTable(NamedTable<CityEntry>);

impl CityTable {
    pub fn new(entries: Vec<CityEntry>) -> Result<Self, TableError> {
        NamedTable::build(
            entries,
            |e| &e.name,
            |e| {
                check_name(&e.name)
                    .into_iter()
                    .chain(check_range(
                        "design_outside_temp",
                        e.design_outside_temp,
                        OUTSIDE_TEMP_RANGE,
                    ))
                    .collect()
            },
        )
        .map(CityTable)
    }

    /// Entries in source order.
    pub fn entries(&self) -> &[CityEntry] {
        &self.0.entries
    }

    pub fn len(&self) -> usize {
        self.0.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.entries.is_empty()
    }

    pub fn get(&self, city: &str) -> Option<&CityEntry> {
        self.0.get(city)
    }

    /// Design outside temperature for `city`, matched case-insensitively
    /// after trimming.
    pub fn lookup_outside_temp(&self, city: &str) -> Result<f64, SizingError> {
        self.get(city)
            .map(|e| e.design_outside_temp)
            .ok_or_else(|| SizingError::UnknownCity(city.to_string()))
    }
}

/// Design inside temperatures per destination.
#[derive(Debug, Clone)]
pub struct DestinationTable(NamedTable<DestinationEntry>);

impl DestinationTable {
    pub fn new(entries: Vec<DestinationEntry>) -> Result<Self, TableError> {
        NamedTable::build(
            entries,
            |e| &e.name,
            |e| {
                check_name(&e.name)
                    .into_iter()
                    .chain(check_range("inside_temp", e.inside_temp, INSIDE_TEMP_RANGE))
                    .collect()
            },
        )
        .map(DestinationTable)
    }

    pub fn entries(&self) -> &[DestinationEntry] {
        &self.0.entries
    }

    pub fn len(&self) -> usize {
        self.0.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.entries.is_empty()
    }

    pub fn get(&self, destination: &str) -> Option<&DestinationEntry> {
        self.0.get(destination)
    }

    pub fn lookup_inside_temp(&self, destination: &str) -> Result<f64, SizingError> {
        self.get(destination)
            .map(|e| e.inside_temp)
            .ok_or_else(|| SizingError::UnknownDestination(destination.to_string()))
    }
}

/// One tabulated GN coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GnRow {
    pub levels: u32,
    pub av_ratio: f64,
    pub gn: f64,
    /// The row holds for every ratio at or above `av_ratio`.
    pub is_open_upper: bool,
}

/// Result of a GN lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GnLookup {
    pub gn: f64,
    /// The ratio fell below the smallest tabulated ratio for its level count
    /// and the smallest row was used instead.
    pub clamped: bool,
}

/// GN coefficients grouped by level count. Within a group the ratios are
/// strictly increasing and the coefficients non-decreasing.
#[derive(Debug, Clone)]
pub struct GnTable {
    groups: BTreeMap<u32, Vec<GnRow>>,
    len: usize,
}

impl GnTable {
    pub fn new(rows: Vec<GnRow>) -> Result<Self, TableError> {
        let mut violations = Vec::new();
        let mut groups: BTreeMap<u32, Vec<GnRow>> = BTreeMap::new();
        // index of the previous row per group, for error messages
        let mut last_index: HashMap<u32, usize> = HashMap::new();

        for (i, row) in rows.iter().enumerate() {
            let mut push = |message: String| violations.push(Violation { index: i, message });
            let mut ok = true;
            if row.levels == 0 {
                push("levels must be at least 1".into());
                ok = false;
            }
            if !(row.av_ratio.is_finite() && row.av_ratio > 0.0) {
                push(format!("av_ratio must be positive, got {}", row.av_ratio));
                ok = false;
            }
            if !(row.gn.is_finite() && row.gn > 0.0) {
                push(format!("gn must be positive, got {}", row.gn));
                ok = false;
            }
            if !ok {
                continue;
            }

            let group = groups.entry(row.levels).or_default();
            if let Some(prev) = group.last() {
                let prev_index = last_index[&row.levels];
                if prev.is_open_upper {
                    push(format!(
                        "row follows the open upper row (entry {prev_index}) for levels {}",
                        row.levels
                    ));
                }
                if row.av_ratio <= prev.av_ratio {
                    push(format!(
                        "av_ratio {} not greater than {} (entry {prev_index}) for levels {}",
                        row.av_ratio, prev.av_ratio, row.levels
                    ));
                }
                if row.gn < prev.gn {
                    push(format!(
                        "gn {} decreases from {} (entry {prev_index}) for levels {}",
                        row.gn, prev.gn, row.levels
                    ));
                }
            }
            group.push(*row);
            last_index.insert(row.levels, i);
        }

        if violations.is_empty() {
            Ok(GnTable {
                groups,
                len: rows.len(),
            })
        } else {
            Err(TableError { violations })
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Rows for `levels`, sorted by ratio.
    pub fn rows_for(&self, levels: u32) -> Option<&[GnRow]> {
        self.groups.get(&levels).map(Vec::as_slice)
    }

    /// Groups in ascending level order.
    pub fn groups(&self) -> impl Iterator<Item = (u32, &[GnRow])> {
        self.groups.iter().map(|(&l, rows)| (l, rows.as_slice()))
    }

    /// GN coefficient for a level count and surface/volume ratio.
    ///
    /// Tabulated ratios return their value exactly. Ratios between two rows
    /// are interpolated linearly. Ratios at or above an open upper row take
    /// that row's value. Ratios below the first row take the first row's
    /// value and are flagged as clamped; so are ratios beyond the last row
    /// of a group without an open upper row.
    pub fn lookup_gn(&self, levels: u32, av_ratio: f64) -> Result<GnLookup, SizingError> {
        if !(av_ratio.is_finite() && av_ratio > 0.0) {
            return Err(SizingError::NonPositiveDimension {
                field: "av_ratio",
                value: av_ratio,
            });
        }
        let rows = self
            .rows_for(levels)
            .ok_or(SizingError::UnknownLevels(levels))?;
        // groups are never empty once built
        let first = rows[0];
        let last = rows[rows.len() - 1];

        if av_ratio < first.av_ratio {
            return Ok(GnLookup {
                gn: first.gn,
                clamped: true,
            });
        }
        if av_ratio >= last.av_ratio {
            return Ok(GnLookup {
                gn: last.gn,
                clamped: av_ratio > last.av_ratio && !last.is_open_upper,
            });
        }

        // first.av_ratio <= av_ratio < last.av_ratio, so a bracket exists
        let upper = rows.partition_point(|r| r.av_ratio <= av_ratio);
        let lo = rows[upper - 1];
        if lo.av_ratio == av_ratio {
            return Ok(GnLookup {
                gn: lo.gn,
                clamped: false,
            });
        }
        let hi = rows[upper];
        let t = (av_ratio - lo.av_ratio) / (hi.av_ratio - lo.av_ratio);
        let gn = lo.gn + (hi.gn - lo.gn) * t;
        Ok(GnLookup {
            gn: gn.clamp(lo.gn, hi.gn),
            clamped: false,
        })
    }
}

/// The three lookup tables needed for sizing.
#[derive(Debug, Clone)]
pub struct Tables {
    pub cities: CityTable,
    pub destinations: DestinationTable,
    pub gn: GnTable,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(levels: u32, av_ratio: f64, gn: f64, open: bool) -> GnRow {
        GnRow {
            levels,
            av_ratio,
            gn,
            is_open_upper: open,
        }
    }

    fn table() -> GnTable {
        GnTable::new(vec![
            row(1, 0.80, 0.77, false),
            row(1, 0.85, 0.81, false),
            row(1, 1.10, 0.95, true),
            row(2, 0.45, 0.57, false),
            row(2, 0.50, 0.61, false),
            row(3, 0.30, 0.40, false),
            row(3, 0.40, 0.40, false),
        ])
        .unwrap()
    }

    #[test]
    fn exact_and_interpolated() {
        let t = table();
        assert_eq!(
            t.lookup_gn(1, 0.85).unwrap(),
            GnLookup {
                gn: 0.81,
                clamped: false
            }
        );
        let mid = t.lookup_gn(2, 0.475).unwrap();
        assert!((mid.gn - 0.59).abs() < 1e-12);
        assert!(!mid.clamped);
    }

    #[test]
    fn plateau_and_clamps() {
        let t = table();
        assert_eq!(
            t.lookup_gn(1, 5.0).unwrap(),
            GnLookup {
                gn: 0.95,
                clamped: false
            }
        );
        assert_eq!(
            t.lookup_gn(1, 0.1).unwrap(),
            GnLookup {
                gn: 0.77,
                clamped: true
            }
        );
        // group without an open row clamps above
        assert_eq!(
            t.lookup_gn(2, 0.9).unwrap(),
            GnLookup {
                gn: 0.61,
                clamped: true
            }
        );
        assert_eq!(
            t.lookup_gn(2, 0.5).unwrap(),
            GnLookup {
                gn: 0.61,
                clamped: false
            }
        );
    }

    #[test]
    fn flat_bracket() {
        assert_eq!(table().lookup_gn(3, 0.35).unwrap().gn, 0.40);
    }

    #[test]
    fn unknown_levels_and_bad_ratio() {
        let t = table();
        assert_eq!(t.lookup_gn(7, 1.0), Err(SizingError::UnknownLevels(7)));
        assert!(matches!(
            t.lookup_gn(1, 0.0),
            Err(SizingError::NonPositiveDimension {
                field: "av_ratio",
                ..
            })
        ));
        assert!(t.lookup_gn(1, f64::NAN).is_err());
    }

    #[test]
    fn gn_violations_are_all_reported() {
        let err = GnTable::new(vec![
            row(1, 0.80, 0.77, false),
            row(1, 0.85, 0.70, false),
            row(1, 0.85, 0.90, false),
            row(0, 0.5, 0.5, false),
            row(2, 0.5, 0.5, true),
            row(2, 0.6, 0.6, false),
        ])
        .unwrap_err();
        let indices: Vec<usize> = err.violations.iter().map(|v| v.index).collect();
        assert_eq!(indices, vec![1, 2, 3, 5]);
        assert!(err.violations[0].message.contains("decreases"));
        assert!(err.violations[1].message.contains("not greater"));
        assert!(err.violations[3].message.contains("open upper"));
    }

    #[test]
    fn name_matching() {
        let cities = CityTable::new(vec![CityEntry {
            name: "Brașov".into(),
            design_outside_temp: -21.0,
        }])
        .unwrap();
        assert_eq!(cities.lookup_outside_temp("  brașov ").unwrap(), -21.0);
        assert_eq!(cities.lookup_outside_temp("BRAȘOV").unwrap(), -21.0);
        assert_eq!(
            cities.lookup_outside_temp("Brasov"),
            Err(SizingError::UnknownCity("Brasov".into()))
        );
    }

    #[test]
    fn named_table_violations() {
        let err = CityTable::new(vec![
            CityEntry {
                name: "Arad".into(),
                design_outside_temp: -16.0,
            },
            CityEntry {
                name: " arad".into(),
                design_outside_temp: -16.0,
            },
            CityEntry {
                name: "".into(),
                design_outside_temp: -99.0,
            },
        ])
        .unwrap_err();
        assert_eq!(err.violations.len(), 3);
        assert!(err.violations[0].message.contains("duplicate"));

        let err = DestinationTable::new(vec![DestinationEntry {
            name: "Sauna".into(),
            inside_temp: 80.0,
        }])
        .unwrap_err();
        assert!(err.violations[0].message.contains("inside_temp"));
    }
}
