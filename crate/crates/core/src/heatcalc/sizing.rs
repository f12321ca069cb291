use serde::{Deserialize, Serialize};

use super::error::SizingError;
use super::tables::Tables;
use super::units::{kw_to_mcal, watts_to_kw};

/// User inputs describing one structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildingSpec {
    pub city: String,
    pub destination: String,
    pub levels: u32,
    /// Building surface over building volume, m²/m³.
    pub av_ratio: f64,
    /// Footprint area, m².
    pub footprint_area: f64,
    /// Interior height, m.
    pub height: f64,
}

/// Computed heating requirement together with every value used to get it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatLoad {
    pub q_watts: f64,
    pub q_kw: f64,
    /// Mcal/h.
    pub q_mcal: f64,
    pub volume: f64,
    pub gn_used: f64,
    pub gn_clamped: bool,
    pub t_inside: f64,
    pub t_outside: f64,
}

fn positive(field: &'static str, value: f64) -> Result<f64, SizingError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(SizingError::NonPositiveDimension { field, value })
    }
}

/// Interior volume in m³. No deduction is made for the envelope.
pub fn compute_volume(footprint_area: f64, height: f64) -> Result<f64, SizingError> {
    Ok(positive("footprint_area", footprint_area)? * positive("height", height)?)
}

/// Heat loss in W for a volume (m³), a GN coefficient (W/m³K) and the inside
/// and outside design temperatures (°C).
///
/// The result is zero or negative when the outside is not colder than the
/// inside; presenting that is left to the caller.
pub fn heat_load(volume: f64, gn: f64, t_inside: f64, t_outside: f64) -> Result<f64, SizingError> {
    let volume = positive("volume", volume)?;
    let gn = positive("gn", gn)?;
    Ok(volume * gn * (t_inside - t_outside))
}

/// Looks up all table values for `spec` and evaluates the heat load.
pub fn size_structure(spec: &BuildingSpec, tables: &Tables) -> Result<HeatLoad, SizingError> {
    let t_outside = tables.cities.lookup_outside_temp(&spec.city)?;
    let t_inside = tables.destinations.lookup_inside_temp(&spec.destination)?;
    let gn = tables.gn.lookup_gn(spec.levels, spec.av_ratio)?;
    let volume = compute_volume(spec.footprint_area, spec.height)?;
    let q_watts = heat_load(volume, gn.gn, t_inside, t_outside)?;
    let q_kw = watts_to_kw(q_watts);
    Ok(HeatLoad {
        q_watts,
        q_kw,
        q_mcal: kw_to_mcal(q_kw),
        volume,
        gn_used: gn.gn,
        gn_clamped: gn.clamped,
        t_inside,
        t_outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume() {
        assert_eq!(compute_volume(100.0, 3.0).unwrap(), 300.0);
        assert_eq!(compute_volume(1.0, 1.0).unwrap(), 1.0);
        assert!((compute_volume(128.5, 2.8).unwrap() - 359.8).abs() < 1e-9);
    }

    #[test]
    fn volume_rejects_non_positive() {
        assert_eq!(
            compute_volume(0.0, 3.0),
            Err(SizingError::NonPositiveDimension {
                field: "footprint_area",
                value: 0.0
            })
        );
        assert_eq!(
            compute_volume(10.0, -1.0),
            Err(SizingError::NonPositiveDimension {
                field: "height",
                value: -1.0
            })
        );
        assert!(compute_volume(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn load_values() {
        // 300 * 0.77 * 41
        assert!((heat_load(300.0, 0.77, 20.0, -21.0).unwrap() - 9471.0).abs() < 1e-9);
        assert_eq!(heat_load(250.0, 0.9, 20.0, 20.0).unwrap(), 0.0);
        assert_eq!(heat_load(1.0, 1.0, 21.0, 20.0).unwrap(), 1.0);
        assert!(heat_load(1.0, 1.0, 10.0, 20.0).unwrap() < 0.0);
        assert!(heat_load(1.0, 0.0, 21.0, 20.0).is_err());
    }
}
