use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use gourds_core::board::BoardError;
use gourds_core::placement::PlacementError;
use gourds_core::puzzle::PuzzleError;
use gourds_core::solver::SolveError;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("{field}: {source}")]
    Board { field: &'static str, source: BoardError },
    #[error("{field}: {source}")]
    Config { field: &'static str, source: PuzzleError },
    #[error("target: {0}")]
    Target(String),
    #[error("unknown session `{0}`")]
    UnknownSession(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("session has no target")]
    NoTarget,
    #[error("cannot solve: {0}")]
    Unsolvable(#[from] SolveError),
    #[error("placement: {0}")]
    Placement(#[from] PlacementError),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Serialize)]
struct ErrorBody {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::Board { .. } | ApiError::Config { .. } | ApiError::Target(_) | ApiError::Placement(_) => {
                StatusCode::BAD_REQUEST
            }
            ApiError::UnknownSession(_) => StatusCode::NOT_FOUND,
            ApiError::IllegalMove(_) | ApiError::NoTarget => StatusCode::CONFLICT,
            ApiError::Unsolvable(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    fn code(&self) -> &'static str {
        match self {
            ApiError::Board { .. } => "invalid_board",
            ApiError::Config { .. } => "invalid_configuration",
            ApiError::Target(_) => "invalid_target",
            ApiError::UnknownSession(_) => "unknown_session",
            ApiError::IllegalMove(_) => "illegal_move",
            ApiError::NoTarget => "no_target",
            ApiError::Unsolvable(_) => "unsolvable",
            ApiError::Placement(_) => "invalid_placement",
            ApiError::Internal(_) => "internal",
        }
    }

    fn field(&self) -> Option<&'static str> {
        match self {
            ApiError::Board { field, .. } | ApiError::Config { field, .. } => Some(field),
            _ => None,
        }
    }

    /// Source line of a text-format error, when known.
    pub fn line(&self) -> Option<usize> {
        match self {
            ApiError::Board { source: BoardError::Syntax { line, .. } | BoardError::Duplicate { line, .. }, .. } => {
                Some(*line)
            }
            ApiError::Config { source: PuzzleError::Syntax { line, .. }, .. } if *line > 0 => Some(*line),
            _ => None,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody { error: self.code(), message: self.to_string(), field: self.field(), line: self.line() };
        (self.status(), Json(body)).into_response()
    }
}
