//! Local HTTP facade over the engines, used by the what-if frontend and by
//! scripts.
//!
//! Every request works on the immutable [`ApiSnapshot`] current when the
//! request started. A reload builds a new snapshot and swaps it in whole, so
//! a reader sees either the old catalog or the new one.

use axum::extract::rejection::JsonRejection;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use crate::ahp::AhpOptions;
use crate::error::Error;
use crate::io::{bundled, load_catalog_file, CatalogDocument, ScenarioDocument};
use crate::model::{validate_weights, ServiceCatalog};
use crate::ranking::Method;
use crate::scenario::{run_scenario_with, sweep_weights_with, MethodComparison, Scenario};

/// Catalog and built-in scenarios served at one revision.
#[derive(Debug)]
pub struct ApiSnapshot {
    pub catalog: ServiceCatalog,
    pub scenarios: Vec<Scenario>,
    pub revision: u64,
}

struct Shared {
    snapshot: RwLock<Option<Arc<ApiSnapshot>>>,
    source: Option<PathBuf>,
    options: AhpOptions,
}

/// Cheap-to-clone handle shared by all request handlers.
#[derive(Clone)]
pub struct AppState {
    shared: Arc<Shared>,
}

impl AppState {
    /// A state with no catalog yet; every endpoint answers 503 until
    /// [`AppState::install`] runs.
    pub fn uninitialized(source: Option<PathBuf>, options: AhpOptions) -> Self {
        AppState {
            shared: Arc::new(Shared {
                snapshot: RwLock::new(None),
                source,
                options,
            }),
        }
    }

    pub fn with_catalog(catalog: ServiceCatalog, options: AhpOptions) -> Self {
        let state = AppState::uninitialized(None, options);
        state.install(catalog);
        state
    }

    /// Loads the catalog file and remembers its path for later reloads.
    pub fn from_file(path: impl Into<PathBuf>, options: AhpOptions) -> crate::Result<Self> {
        let path = path.into();
        let catalog = load_catalog_file(&path)?;
        let state = AppState::uninitialized(Some(path), options);
        state.install(catalog);
        Ok(state)
    }

    /// Installs a new snapshot and returns its revision.
    pub fn install(&self, catalog: ServiceCatalog) -> u64 {
        // Built-in scenarios only apply when the catalog has their criteria.
        let scenarios = bundled::builtin_scenarios(catalog.criteria()).unwrap_or_default();
        let mut slot = self.shared.snapshot.write().unwrap_or_else(|e| e.into_inner());
        let revision = slot.as_ref().map_or(0, |s| s.revision) + 1;
        *slot = Some(Arc::new(ApiSnapshot {
            catalog,
            scenarios,
            revision,
        }));
        revision
    }

    pub fn snapshot(&self) -> Option<Arc<ApiSnapshot>> {
        self.shared
            .snapshot
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .clone()
    }

    fn ready(&self) -> Result<Arc<ApiSnapshot>, ApiError> {
        self.snapshot().ok_or_else(|| ApiError {
            status: StatusCode::SERVICE_UNAVAILABLE,
            body: ErrorBody {
                code: "not_ready".into(),
                message: "catalog not loaded yet".into(),
                field: None,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl ErrorBody {
    fn from_error(e: &Error) -> Self {
        ErrorBody {
            code: e.code().into(),
            message: e.to_string(),
            field: error_field(e),
        }
    }
}

fn error_field(e: &Error) -> Option<String> {
    match e.root() {
        Error::MissingCriterion { criterion, .. }
        | Error::UnknownCriterion { criterion, .. }
        | Error::NonPositiveWeight { criterion, .. } => Some(format!("weights.{criterion}")),
        Error::SumNotOne { .. } | Error::DuplicateId { kind: "weight", .. } => {
            Some("weights".into())
        }
        Error::UnknownMethod(_) | Error::NoMethods(_) => Some("methods".into()),
        _ => None,
    }
}

#[derive(Debug)]
struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e.root() {
            Error::UnknownCriterion { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            Error::NoConvergence { .. } => StatusCode::INTERNAL_SERVER_ERROR,
            Error::Io { .. } => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError {
            status,
            body: ErrorBody::from_error(&e),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            body: ErrorBody {
                code: "parse_error".into(),
                message: r.body_text(),
                field: None,
            },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CatalogResponse {
    pub revision: u64,
    pub catalog: CatalogDocument,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScenariosResponse {
    pub revision: u64,
    pub scenarios: Vec<ScenarioDocument>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankRequest {
    pub weights: IndexMap<String, f64>,
    #[serde(default)]
    pub methods: Option<Vec<String>>,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct RankResponse {
    pub revision: u64,
    pub comparison: MethodComparison,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRequest {
    pub base_weights: IndexMap<String, f64>,
    pub criterion: String,
    pub values: Vec<f64>,
    #[serde(default)]
    pub methods: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct SweepEntry {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<MethodComparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

#[derive(Debug, Serialize)]
pub struct SweepResponse {
    pub revision: u64,
    pub criterion: String,
    pub points: Vec<SweepEntry>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReloadRequest {
    #[serde(default)]
    pub catalog: Option<CatalogDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReloadResponse {
    pub revision: u64,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/v1/catalog", get(get_catalog))
        .route("/api/v1/scenarios", get(get_scenarios))
        .route("/api/v1/rank", post(post_rank))
        .route("/api/v1/sweep", post(post_sweep))
        .route("/api/v1/reload", post(post_reload))
        .with_state(state)
}

/// Serves until ctrl-c.
pub async fn serve(listener: tokio::net::TcpListener, state: AppState) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn get_catalog(State(state): State<AppState>) -> Result<Json<CatalogResponse>, ApiError> {
    let snap = state.ready()?;
    Ok(Json(CatalogResponse {
        revision: snap.revision,
        catalog: CatalogDocument::from(&snap.catalog),
    }))
}

async fn get_scenarios(
    State(state): State<AppState>,
) -> Result<Json<ScenariosResponse>, ApiError> {
    let snap = state.ready()?;
    Ok(Json(ScenariosResponse {
        revision: snap.revision,
        scenarios: snap.scenarios.iter().map(ScenarioDocument::from).collect(),
    }))
}

fn parse_methods(methods: Option<Vec<String>>) -> crate::Result<Vec<Method>> {
    match methods {
        None => Ok(Method::ALL.to_vec()),
        Some(list) => list.iter().map(|m| m.parse()).collect(),
    }
}

async fn post_rank(
    State(state): State<AppState>,
    body: Result<Json<RankRequest>, JsonRejection>,
) -> Result<Json<RankResponse>, ApiError> {
    let snap = state.ready()?;
    let Json(req) = body?;
    let weights = validate_weights(req.weights.iter().map(|(k, v)| (k, *v)), snap.catalog.criteria())?;
    let methods = parse_methods(req.methods)?;
    let scenario = Scenario::new(req.name.unwrap_or_else(|| "custom".into()), weights, methods)?;
    let comparison = run_scenario_with(&snap.catalog, &scenario, &state.shared.options)?;
    Ok(Json(RankResponse {
        revision: snap.revision,
        comparison,
    }))
}

async fn post_sweep(
    State(state): State<AppState>,
    body: Result<Json<SweepRequest>, JsonRejection>,
) -> Result<Json<SweepResponse>, ApiError> {
    let snap = state.ready()?;
    let Json(req) = body?;
    let weights = validate_weights(
        req.base_weights.iter().map(|(k, v)| (k, *v)),
        snap.catalog.criteria(),
    )?;
    let methods = parse_methods(req.methods)?;
    let base = Scenario::new("sweep", weights, methods)?;
    let points = sweep_weights_with(
        &snap.catalog,
        &base,
        &req.criterion,
        &req.values,
        &state.shared.options,
    )?;
    let points = points
        .into_iter()
        .map(|p| match p.outcome {
            Ok(c) => SweepEntry {
                value: p.value,
                comparison: Some(c),
                error: None,
            },
            Err(e) => SweepEntry {
                value: p.value,
                comparison: None,
                error: Some(ErrorBody::from_error(&e)),
            },
        })
        .collect();
    Ok(Json(SweepResponse {
        revision: snap.revision,
        criterion: req.criterion,
        points,
    }))
}

async fn post_reload(
    State(state): State<AppState>,
    body: Option<Json<ReloadRequest>>,
) -> Result<Json<ReloadResponse>, ApiError> {
    let req = body.map(|Json(r)| r).unwrap_or_default();
    let catalog = match (req.catalog, &state.shared.source) {
        (Some(doc), _) => doc.into_catalog()?,
        (None, Some(path)) => load_catalog_file(path)?,
        (None, None) => {
            return Err(Error::Config(
                "no catalog in the request body and no catalog file to re-read".into(),
            )
            .into())
        }
    };
    Ok(Json(ReloadResponse {
        revision: state.install(catalog),
    }))
}
