//! Request and response documents of the `/v1` API.

use heats_core::heatcalc::{size_structure, BuildingSpec, HeatLoad, SizingError, Tables};
use heats_core::Device;
use serde::{Deserialize, Serialize};

use crate::numbers::{round_half_even, DEFAULT_DP, POWER_DP};

pub const NON_POSITIVE_WARNING: &str =
    "outside design temperature is not below the inside temperature; no heating power is required";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizingRequest {
    pub city: String,
    pub destination: String,
    pub levels: i64,
    pub av_ratio: f64,
    pub footprint_area_m2: f64,
    pub height_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizingResponse {
    pub q_kw: f64,
    pub q_mcal: f64,
    pub q_watts: f64,
    pub gn_used: f64,
    pub gn_clamped: bool,
    pub volume_m3: f64,
    pub t_inside_c: f64,
    pub t_outside_c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl From<&HeatLoad> for SizingResponse {
    fn from(load: &HeatLoad) -> Self {
        let six = |v| round_half_even(v, DEFAULT_DP);
        SizingResponse {
            q_kw: round_half_even(load.q_kw, POWER_DP),
            q_mcal: round_half_even(load.q_mcal, POWER_DP),
            q_watts: six(load.q_watts),
            gn_used: six(load.gn_used),
            gn_clamped: load.gn_clamped,
            volume_m3: six(load.volume),
            t_inside_c: six(load.t_inside),
            t_outside_c: six(load.t_outside),
            warning: (load.q_watts <= 0.0).then(|| NON_POSITIVE_WARNING.to_string()),
        }
    }
}

/// A problem with one input field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldError {
    pub field: String,
    pub code: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: &str, code: &str, message: impl Into<String>) -> Self {
        FieldError {
            field: field.to_string(),
            code: code.to_string(),
            message: message.into(),
        }
    }
}

fn request_field(core_field: &str) -> &str {
    match core_field {
        "footprint_area" => "footprint_area_m2",
        "height" => "height_m",
        other => other,
    }
}

impl From<&SizingError> for FieldError {
    fn from(err: &SizingError) -> Self {
        FieldError::new(request_field(err.field()), err.code(), err.to_string())
    }
}

impl SizingRequest {
    /// Checks every field and reports all problems at once.
    pub fn to_spec(&self, tables: &Tables) -> Result<BuildingSpec, Vec<FieldError>> {
        let mut errors: Vec<FieldError> = Vec::new();
        if let Err(e) = tables.cities.lookup_outside_temp(&self.city) {
            errors.push((&e).into());
        }
        if let Err(e) = tables.destinations.lookup_inside_temp(&self.destination) {
            errors.push((&e).into());
        }

        let ratio_ok = self.av_ratio.is_finite() && self.av_ratio > 0.0;
        let levels = u32::try_from(self.levels).ok().filter(|&l| l >= 1);
        match levels {
            Some(l) if ratio_ok => {
                if let Err(e) = tables.gn.lookup_gn(l, self.av_ratio) {
                    errors.push((&e).into());
                }
            }
            Some(l) if tables.gn.rows_for(l).is_none() => {
                errors.push((&SizingError::UnknownLevels(l)).into());
            }
            Some(_) => {}
            None => errors.push(FieldError::new(
                "levels",
                "UnknownLevels",
                format!("levels must be a positive integer, got {}", self.levels),
            )),
        }
        if !ratio_ok {
            errors.push(
                (&SizingError::NonPositiveDimension {
                    field: "av_ratio",
                    value: self.av_ratio,
                })
                    .into(),
            );
        }
        for (field, value) in [
            ("footprint_area", self.footprint_area_m2),
            ("height", self.height_m),
        ] {
            if !(value.is_finite() && value > 0.0) {
                errors.push((&SizingError::NonPositiveDimension { field, value }).into());
            }
        }

        if !errors.is_empty() {
            return Err(errors);
        }
        Ok(BuildingSpec {
            city: self.city.clone(),
            destination: self.destination.clone(),
            levels: levels.expect("levels validated"),
            av_ratio: self.av_ratio,
            footprint_area: self.footprint_area_m2,
            height: self.height_m,
        })
    }
}

/// Validates and sizes a request; shared by the HTTP handler and the CLI.
pub fn size_request(
    request: &SizingRequest,
    tables: &Tables,
) -> Result<SizingResponse, Vec<FieldError>> {
    let spec = request.to_spec(tables)?;
    let load = size_structure(&spec, tables).map_err(|e| vec![FieldError::from(&e)])?;
    Ok(SizingResponse::from(&load))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CityOption {
    pub name: String,
    pub design_outside_temp_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DestinationOption {
    pub name: String,
    pub inside_temp_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnOption {
    pub levels: u32,
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DevicePage<'a> {
    pub page: usize,
    pub page_size: usize,
    pub total: usize,
    pub devices: Vec<&'a Device>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<FieldError>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use heats_core::seed::bundled_tables;

    fn request() -> SizingRequest {
        SizingRequest {
            city: "Brașov".into(),
            destination: "Rooms and lobbies".into(),
            levels: 1,
            av_ratio: 0.80,
            footprint_area_m2: 100.0,
            height_m: 3.0,
        }
    }

    #[test]
    fn brasov_example() {
        let r = size_request(&request(), &bundled_tables()).unwrap();
        assert_eq!(r.q_kw, 9.471);
        assert_eq!(r.q_mcal, 8.1451);
        assert_eq!(r.q_watts, 9471.0);
        assert_eq!(r.volume_m3, 300.0);
        assert_eq!(r.warning, None);
    }

    #[test]
    fn all_field_errors_reported() {
        let bad = SizingRequest {
            city: "Atlantis".into(),
            destination: "Ballroom".into(),
            levels: 0,
            av_ratio: -1.0,
            footprint_area_m2: 0.0,
            height_m: -2.0,
        };
        let errors = size_request(&bad, &bundled_tables()).unwrap_err();
        let fields: Vec<&str> = errors.iter().map(|e| e.field.as_str()).collect();
        assert_eq!(
            fields,
            vec![
                "city",
                "destination",
                "levels",
                "av_ratio",
                "footprint_area_m2",
                "height_m"
            ]
        );
        assert_eq!(errors[0].code, "UnknownCity");
        assert_eq!(errors[5].code, "NonPositiveDimension");
    }

    #[test]
    fn levels_out_of_table() {
        let mut r = request();
        r.levels = 3;
        let errors = size_request(&r, &bundled_tables()).unwrap_err();
        assert_eq!(
            errors,
            vec![FieldError::new(
                "levels",
                "UnknownLevels",
                "the GN table has no rows for 3 level(s)"
            )]
        );
        r.levels = 2;
        r.av_ratio = 0.0;
        let errors = size_request(&r, &bundled_tables()).unwrap_err();
        assert_eq!(errors[0].field, "av_ratio");
    }
}
