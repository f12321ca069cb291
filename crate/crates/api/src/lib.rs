//! HTTP/JSON service for sizing a structure and choosing a heating device.
//!
//! Endpoints, all under `/v1`:
//!
//! - `GET /cities`, `GET /destinations`, `GET /gn-options`: form options
//! - `POST /sizing`: heating load for a [`SizingRequest`]
//! - `GET /devices`: catalog listing, or matching when `required_kw` is given

pub mod dto;
mod error;
pub mod numbers;

use std::num::NonZeroUsize;
use std::path::Path;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use heats_core::catalog::{
    BurnerFilter, CatalogStore, CombustionFilter, FilterCriteria, FuelFilter, MatchQuery,
};
use heats_core::heatcalc::{normalize_key, Tables};
use heats_core::seed::{self, SeedError};
use heats_core::DEFAULT_HEADROOM;
use tokio::net::TcpListener;

pub use dto::{size_request, SizingRequest, SizingResponse};
pub use error::ApiError;

use dto::{CityOption, DestinationOption, DevicePage, GnOption};

pub const DEFAULT_PAGE_SIZE: usize = 20;
pub const MAX_PAGE_SIZE: usize = 100;

/// Shared service state. Tables never change after startup.
#[derive(Debug, Clone)]
pub struct AppState {
    pub tables: Arc<Tables>,
    pub catalog: Arc<CatalogStore>,
}

impl AppState {
    pub fn new(tables: Tables, catalog: CatalogStore) -> Self {
        AppState {
            tables: Arc::new(tables),
            catalog: Arc::new(catalog),
        }
    }

    /// Loads the tables and the device file from a data directory.
    pub fn from_data_dir(dir: &Path) -> Result<Self, SeedError> {
        let tables = seed::load_tables(dir)?;
        let catalog = CatalogStore::open(dir.join(seed::DEVICES_FILE))?;
        Ok(Self::new(tables, catalog))
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/v1/cities", get(cities))
        .route("/v1/destinations", get(destinations))
        .route("/v1/gn-options", get(gn_options))
        .route("/v1/sizing", post(sizing))
        .route("/v1/devices", get(devices))
        .fallback(|| async { ApiError::not_found() })
        .with_state(state)
}

/// Serves until ctrl-c.
pub async fn serve(listener: TcpListener, state: AppState) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn cities(State(state): State<AppState>) -> Json<Vec<CityOption>> {
    let mut out: Vec<CityOption> = state
        .tables
        .cities
        .entries()
        .iter()
        .map(|e| CityOption {
            name: e.name.clone(),
            design_outside_temp_c: e.design_outside_temp,
        })
        .collect();
    out.sort_by_cached_key(|c| (normalize_key(&c.name), c.name.clone()));
    Json(out)
}

async fn destinations(State(state): State<AppState>) -> Json<Vec<DestinationOption>> {
    let mut out: Vec<DestinationOption> = state
        .tables
        .destinations
        .entries()
        .iter()
        .map(|e| DestinationOption {
            name: e.name.clone(),
            inside_temp_c: e.inside_temp,
        })
        .collect();
    out.sort_by_cached_key(|d| (normalize_key(&d.name), d.name.clone()));
    Json(out)
}

async fn gn_options(State(state): State<AppState>) -> Json<Vec<GnOption>> {
    Json(
        state
            .tables
            .gn
            .groups()
            .map(|(levels, rows)| GnOption {
                levels,
                ratios: rows.iter().map(|r| r.av_ratio).collect(),
            })
            .collect(),
    )
}

async fn sizing(
    State(state): State<AppState>,
    body: Bytes,
) -> Result<Json<SizingResponse>, ApiError> {
    let request: SizingRequest =
        serde_json::from_slice(&body).map_err(|e| ApiError::malformed_body(&e))?;
    size_request(&request, &state.tables)
        .map(Json)
        .map_err(ApiError::validation)
}

/// Parsed `/v1/devices` query string.
#[derive(Debug, Default)]
struct DeviceParams {
    required_kw: Option<f64>,
    headroom: Option<f64>,
    criteria: FilterCriteria,
    filtered: bool,
    page: Option<NonZeroUsize>,
    page_size: Option<NonZeroUsize>,
}

fn parse_number(name: &str, raw: &str) -> Result<f64, ApiError> {
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ApiError::bad_param(name, format!("`{raw}` is not a number")))
}

fn parse_count(name: &str, raw: &str) -> Result<NonZeroUsize, ApiError> {
    raw.trim()
        .parse::<NonZeroUsize>()
        .map_err(|_| ApiError::bad_param(name, format!("`{raw}` is not a positive integer")))
}

impl DeviceParams {
    fn parse(pairs: Vec<(String, String)>) -> Result<Self, ApiError> {
        let mut params = DeviceParams::default();
        let mut seen: Vec<String> = Vec::new();
        for (key, value) in pairs {
            if seen.contains(&key) {
                return Err(ApiError::bad_param(&key, "parameter given more than once"));
            }
            match key.as_str() {
                "required_kw" => {
                    let kw = parse_number(&key, &value)?;
                    if kw <= 0.0 {
                        return Err(ApiError::bad_param(
                            &key,
                            format!("required power must be strictly positive, got {kw}"),
                        ));
                    }
                    params.required_kw = Some(kw);
                }
                "headroom" => params.headroom = Some(parse_number(&key, &value)?),
                "combustion" => {
                    params.criteria.combustion = value
                        .parse::<CombustionFilter>()
                        .map_err(|e| ApiError::bad_param(&key, e.to_string()))?;
                    params.filtered = true;
                }
                "burner" => {
                    params.criteria.burner_type = value
                        .parse::<BurnerFilter>()
                        .map_err(|e| ApiError::bad_param(&key, e.to_string()))?;
                    params.filtered = true;
                }
                "fuel" => {
                    params.criteria.fuel = value
                        .parse::<FuelFilter>()
                        .map_err(|e| ApiError::bad_param(&key, e.to_string()))?;
                    params.filtered = true;
                }
                "page" => params.page = Some(parse_count(&key, &value)?),
                "page_size" => {
                    let size = parse_count(&key, &value)?;
                    if size.get() > MAX_PAGE_SIZE {
                        return Err(ApiError::bad_param(
                            &key,
                            format!("page_size must not exceed {MAX_PAGE_SIZE}"),
                        ));
                    }
                    params.page_size = Some(size);
                }
                _ => return Err(ApiError::unknown_param(&key)),
            }
            seen.push(key);
        }
        Ok(params)
    }
}

async fn devices(
    State(state): State<AppState>,
    Query(pairs): Query<Vec<(String, String)>>,
) -> Result<(StatusCode, Json<serde_json::Value>), ApiError> {
    let params = DeviceParams::parse(pairs)?;
    let page = params.page.unwrap_or(NonZeroUsize::MIN);
    let page_size = params
        .page_size
        .unwrap_or(NonZeroUsize::new(DEFAULT_PAGE_SIZE).expect("non-zero"));
    let catalog = state.catalog.snapshot();

    let result = match params.required_kw {
        Some(required) => {
            let query = MatchQuery::new(
                required,
                params.headroom.unwrap_or(DEFAULT_HEADROOM),
                params.criteria,
            )
            .map_err(|e| ApiError::bad_param("headroom", e.to_string()))?;
            catalog.match_page(&query, page, page_size)
        }
        None => {
            if params.headroom.is_some() || params.filtered {
                return Err(ApiError::bad_param(
                    "required_kw",
                    "headroom and facet filters require required_kw",
                ));
            }
            catalog.list_devices(page, page_size)
        }
    };
    let body = DevicePage {
        page: result.page,
        page_size: result.page_size,
        total: result.total,
        devices: result.devices,
    };
    Ok((
        StatusCode::OK,
        Json(serde_json::to_value(&body).expect("device page serializes")),
    ))
}
