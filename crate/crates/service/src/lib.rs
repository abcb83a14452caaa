//! HTTP facade over the Gourds engine: in-memory play sessions with legal
//! move listing, hints and full solutions.
//!
//! Each session is guarded by its own mutex, so requests on one session run
//! one at a time while different sessions proceed in parallel. Session work
//! runs on the blocking pool because solving can take a while.

pub mod error;
pub mod session;
pub mod wire;

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use error::ApiError;
use gourds_core::solver::Strategy;
use serde::Deserialize;
use session::{Session, Store};
use std::sync::Arc;
use wire::{
    CreateReply, CreateRequest, HintReply, MoveJson, MoveReply, MovesJson, PlanJson, ScrambleReply,
    ScrambleRequest, StateJson,
};

pub type AppState = Arc<Store>;

pub fn router(store: AppState) -> Router {
    Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(state))
        .route("/session/{id}/moves", get(moves))
        .route("/session/{id}/move", post(play))
        .route("/session/{id}/hint", post(hint))
        .route("/session/{id}/solve", post(solve))
        .route("/session/{id}/scramble", post(scramble))
        .with_state(store)
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::Internal(e.to_string()))?
}

async fn with_session<T: Send + 'static>(
    store: &Store,
    id: &str,
    f: impl FnOnce(&mut Session) -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    let s = store.get(id)?;
    blocking(move || f(&mut s.lock().unwrap_or_else(|e| e.into_inner()))).await
}

#[derive(Debug, Default, Deserialize)]
struct PlanQuery {
    strategy: Option<String>,
}

impl PlanQuery {
    fn strategy(&self) -> Result<Strategy, ApiError> {
        match &self.strategy {
            None => Ok(Strategy::default()),
            Some(s) => s.parse().map_err(|_| ApiError::Target(format!("unknown strategy `{s}`"))),
        }
    }
}

async fn create(
    State(store): State<AppState>,
    Json(req): Json<CreateRequest>,
) -> Result<(StatusCode, Json<CreateReply>), ApiError> {
    let s = blocking(move || Session::create(Store::new_id(), &req.board, &req.config, req.target.as_deref())).await?;
    store.sweep();
    let state = s.view();
    store.insert(s);
    Ok((StatusCode::CREATED, Json(CreateReply { id: state.id.clone(), proper: state.proper, state })))
}

async fn state(State(store): State<AppState>, Path(id): Path<String>) -> Result<Json<StateJson>, ApiError> {
    with_session(&store, &id, |s| Ok(s.view())).await.map(Json)
}

async fn moves(State(store): State<AppState>, Path(id): Path<String>) -> Result<Json<MovesJson>, ApiError> {
    with_session(&store, &id, |s| Ok(MovesJson { moves: s.legal_moves().iter().map(MoveJson::from).collect() }))
        .await
        .map(Json)
}

async fn play(
    State(store): State<AppState>,
    Path(id): Path<String>,
    Json(m): Json<MoveJson>,
) -> Result<Json<MoveReply>, ApiError> {
    with_session(&store, &id, move |s| {
        let applied = s.play(&m)?;
        Ok(MoveReply { applied: MoveJson::from(&applied), state: s.view() })
    })
    .await
    .map(Json)
}

async fn hint(
    State(store): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<PlanQuery>,
) -> Result<Json<HintReply>, ApiError> {
    let strategy = q.strategy()?;
    with_session(&store, &id, move |s| {
        let (next, remaining) = s.hint(strategy)?;
        Ok(HintReply { next: next.as_ref().map(MoveJson::from), remaining })
    })
    .await
    .map(Json)
}

async fn solve(
    State(store): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<PlanQuery>,
) -> Result<Json<PlanJson>, ApiError> {
    let strategy = q.strategy()?;
    with_session(&store, &id, move |s| {
        let plan = s.plan(strategy)?;
        let conv = |v: &[gourds_core::Move]| v.iter().map(MoveJson::from).collect();
        Ok(PlanJson {
            strategy: plan.strategy.to_string(),
            s1: conv(&plan.s1),
            s2: conv(&plan.s2),
            s3: conv(&plan.s3),
            total: plan.len(),
        })
    })
    .await
    .map(Json)
}

async fn scramble(
    State(store): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<ScrambleRequest>,
) -> Result<Json<ScrambleReply>, ApiError> {
    with_session(&store, &id, move |s| {
        let moves = s.scramble(req.steps, req.seed)?;
        Ok(ScrambleReply { moves: moves.iter().map(MoveJson::from).collect(), state: s.view() })
    })
    .await
    .map(Json)
}
