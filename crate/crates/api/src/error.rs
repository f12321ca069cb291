use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;

use crate::dto::{ErrorBody, FieldError};

/// An error response: status plus a JSON body with a machine-readable code.
#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: ErrorBody,
}

impl ApiError {
    fn new(
        status: StatusCode,
        code: &str,
        message: impl Into<String>,
        errors: Vec<FieldError>,
    ) -> Self {
        ApiError {
            status,
            body: ErrorBody {
                code: code.to_string(),
                message: message.into(),
                errors,
            },
        }
    }

    /// 422 carrying per-field problems. The top-level code is the first
    /// field's code.
    pub fn validation(errors: Vec<FieldError>) -> Self {
        let code = errors
            .first()
            .map(|e| e.code.clone())
            .unwrap_or_else(|| "ValidationFailed".to_string());
        let message = errors
            .iter()
            .map(|e| format!("{}: {}", e.field, e.message))
            .collect::<Vec<_>>()
            .join("; ");
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, &code, message, errors)
    }

    pub fn malformed_body(err: &serde_json::Error) -> Self {
        Self::new(
            StatusCode::BAD_REQUEST,
            "MalformedBody",
            format!("request body is not a valid sizing request: {err}"),
            Vec::new(),
        )
    }

    pub fn bad_param(name: &str, message: impl Into<String>) -> Self {
        let message = message.into();
        Self::new(
            StatusCode::BAD_REQUEST,
            "InvalidParameter",
            format!("{name}: {message}"),
            vec![FieldError::new(name, "InvalidParameter", message)],
        )
    }

    pub fn unknown_param(name: &str) -> Self {
        Self::new(
            StatusCode::BAD_REQUEST,
            "UnknownParameter",
            format!("unknown query parameter `{name}`"),
            vec![FieldError::new(
                name,
                "UnknownParameter",
                "not accepted by this endpoint",
            )],
        )
    }

    pub fn not_found() -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "NotFound",
            "no such endpoint",
            Vec::new(),
        )
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}
