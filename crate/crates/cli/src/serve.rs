//! One explorer session over HTTP: a presented triangulation and a seed.
//! Reads share the lock; every mutation takes it exclusively.

use std::sync::Arc as Shared;

use ainfty::diagcat::{hom_dim, CObj};
use ainfty::infgon::{Arc, BaseFamily, InfgonError, TriPresentation};
use ainfty::seeds::{Seed, SeedError};
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::sync::RwLock;

use crate::quiver_json;

const DEFAULT_WINDOW: (i64, i64) = (-8, 8);

#[derive(Debug, Clone)]
pub struct Session {
    pub presentation: TriPresentation,
    pub seed: Seed,
}

impl Default for Session {
    fn default() -> Self {
        Session {
            presentation: TriPresentation::from_base(BaseFamily::zigzag_left(0)).expect("valid base"),
            seed: Seed::initial_an(2),
        }
    }
}

type AppState = Shared<RwLock<Session>>;

#[derive(Debug)]
pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({"error": self.1}))).into_response()
    }
}

impl From<InfgonError> for ApiError {
    fn from(e: InfgonError) -> Self {
        let status = match e {
            InfgonError::FrozenArc(_) => StatusCode::CONFLICT,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError(status, e.to_string())
    }
}

impl From<SeedError> for ApiError {
    fn from(e: SeedError) -> Self {
        let status = match e {
            SeedError::NotDivisible(_) | SeedError::CapExceeded(_) | SeedError::RecurrenceFailure(..) => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError(status, e.to_string())
    }
}

fn seed_json(seed: &Seed) -> Value {
    let variables: serde_json::Map<String, Value> =
        seed.values().iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect();
    json!({
        "quiver": seed.quiver(),
        "variables": variables,
        "exchangeable": seed.exchangeable(),
    })
}

pub fn state_json(s: &Session, lo: i64, hi: i64) -> Result<Value, ApiError> {
    let t = &s.presentation;
    let (left, right) = t.fountains();
    Ok(json!({
        "presentation": t,
        "window": {"lo": lo, "hi": hi},
        "arcs": t.arcs_in_window(lo, hi)?,
        "frozen": t.frozen_arc(),
        "classification": t.classify().to_string(),
        "fountains": {"left": left, "right": right},
        "quiver": quiver_json(&t.quiver_of(lo, hi)?),
        "seed": seed_json(&s.seed),
    }))
}

#[derive(Debug, Deserialize)]
pub struct WindowQuery {
    lo: Option<i64>,
    hi: Option<i64>,
}

async fn state(State(st): State<AppState>, Query(w): Query<WindowQuery>) -> Result<Json<Value>, ApiError> {
    let s = st.read().await;
    let lo = w.lo.unwrap_or(DEFAULT_WINDOW.0);
    let hi = w.hi.unwrap_or(DEFAULT_WINDOW.1);
    Ok(Json(state_json(&s, lo, hi)?))
}

#[derive(Debug, Deserialize)]
pub struct FlipBody {
    arc: Arc,
}

async fn flip(State(st): State<AppState>, Json(b): Json<FlipBody>) -> Result<Json<Value>, ApiError> {
    let mut s = st.write().await;
    let produced = s.presentation.arcs().flip_target(b.arc)?;
    s.presentation = s.presentation.flip(b.arc)?;
    let state = state_json(&s, DEFAULT_WINDOW.0, DEFAULT_WINDOW.1)?;
    Ok(Json(json!({"produced": produced, "state": state})))
}

#[derive(Debug, Deserialize)]
pub struct MutateBody {
    vertex: i64,
}

async fn mutate(State(st): State<AppState>, Json(b): Json<MutateBody>) -> Result<Json<Value>, ApiError> {
    let mut s = st.write().await;
    s.seed = s.seed.mutate(b.vertex)?;
    let variable = s.seed.value(b.vertex).expect("mutated position").to_string();
    let state = state_json(&s, DEFAULT_WINDOW.0, DEFAULT_WINDOW.1)?;
    Ok(Json(json!({"vertex": b.vertex, "variable": variable, "state": state})))
}

#[derive(Debug, Deserialize)]
pub struct HomQuery {
    x: String,
    y: String,
}

async fn hom(Query(q): Query<HomQuery>) -> Result<Json<Value>, ApiError> {
    let parse = |t: &str| -> Result<CObj, ApiError> {
        t.parse().map_err(|e: ainfty::diagcat::DiagError| ApiError(StatusCode::BAD_REQUEST, e.to_string()))
    };
    let (d, kind) = hom_dim(parse(&q.x)?, parse(&q.y)?);
    Ok(Json(json!({"dim": d, "kind": kind.to_string()})))
}

#[derive(Debug, Deserialize)]
pub struct LoadBody {
    presentation: TriPresentation,
    seed_rank: Option<u32>,
}

async fn load(State(st): State<AppState>, Json(b): Json<LoadBody>) -> Result<Json<Value>, ApiError> {
    let seed = match b.seed_rank {
        Some(n) if !(1..=ainfty::seeds::MAX_RANK).contains(&n) => {
            return Err(SeedError::BadRank(n).into());
        }
        Some(n) => Some(Seed::initial_an(n)),
        None => None,
    };
    let mut s = st.write().await;
    s.presentation = b.presentation;
    if let Some(seed) = seed {
        s.seed = seed;
    }
    Ok(Json(state_json(&s, DEFAULT_WINDOW.0, DEFAULT_WINDOW.1)?))
}

pub fn router(session: Session) -> Router {
    Router::new()
        .route("/state", get(state))
        .route("/flip", post(flip))
        .route("/mutate", post(mutate))
        .route("/hom", get(hom))
        .route("/load", post(load))
        .with_state(Shared::new(RwLock::new(session)))
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Session::default())).await
}
