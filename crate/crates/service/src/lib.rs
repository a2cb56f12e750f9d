//! HTTP front end for the thunder renderer.
//!
//! | route              | method | body                                  |
//! |--------------------|--------|---------------------------------------|
//! | `/healthz`         | GET    | `ok` (503 once shutdown has begun)    |
//! | `/api/schema`      | GET    | parameter descriptors (JSON)          |
//! | `/api/render`      | POST   | [`RenderRequest`] JSON in, WAV out    |
//! | `/`                | GET    | web UI assets, or a placeholder page  |
//!
//! Renders run on the blocking pool behind a FIFO semaphore, so at most
//! `workers` renders execute at once and the rest queue in arrival order.

mod request;
pub mod schema;

use std::future::Future;
use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use tokio::net::TcpListener;
use tokio::sync::Semaphore;
use tower_http::services::ServeDir;

pub use request::{ErrorBody, RenderRequest};

use thunder_core::engine::{draw_seed, render_wav};
use thunder_core::RenderConfig;

/// Response header carrying the seed the render actually used.
pub const SEED_HEADER: &str = "x-thunder-seed";

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Maximum simultaneous renders.
    pub workers: usize,
    /// Directory of built web UI assets served at `/`.
    pub ui_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            ui_dir: None,
        }
    }
}

#[derive(Debug)]
struct Shared {
    permits: Semaphore,
    in_flight: AtomicUsize,
    shutting_down: AtomicBool,
}

/// Cloneable handle on the service state; lets callers observe load and
/// flag shutdown.
#[derive(Debug, Clone)]
pub struct AppState {
    shared: Arc<Shared>,
}

impl AppState {
    pub fn new(workers: usize) -> Self {
        Self {
            shared: Arc::new(Shared {
                permits: Semaphore::new(workers.max(1)),
                in_flight: AtomicUsize::new(0),
                shutting_down: AtomicBool::new(false),
            }),
        }
    }

    /// Renders currently executing or queued.
    pub fn in_flight(&self) -> usize {
        self.shared.in_flight.load(Ordering::SeqCst)
    }

    pub fn begin_shutdown(&self) {
        self.shared.shutting_down.store(true, Ordering::SeqCst);
    }

    pub fn is_shutting_down(&self) -> bool {
        self.shared.shutting_down.load(Ordering::SeqCst)
    }
}

pub fn router(state: AppState, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/healthz", get(healthz))
        .route("/api/schema", get(schema_doc))
        .route("/api/render", post(render));
    let api = match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(placeholder)),
    };
    api.with_state(state)
}

/// Serves until `shutdown` resolves, then stops accepting connections and
/// lets in-flight requests finish.
pub async fn serve(
    listener: TcpListener,
    config: ServiceConfig,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> io::Result<()> {
    let state = AppState::new(config.workers);
    let app = router(state.clone(), config.ui_dir);
    let flag = state.clone();
    axum::serve(listener, app)
        .with_graceful_shutdown(async move {
            shutdown.await;
            flag.begin_shutdown();
            tracing::info!("shutting down, draining in-flight renders");
        })
        .await
}

/// Binds `addr` and serves until Ctrl-C.
pub async fn run(addr: SocketAddr, config: ServiceConfig) -> io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    tracing::info!("listening on http://{}", listener.local_addr()?);
    serve(listener, config, async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await
}

async fn healthz(State(state): State<AppState>) -> Response {
    if state.is_shutting_down() {
        (StatusCode::SERVICE_UNAVAILABLE, "shutting down\n").into_response()
    } else {
        (StatusCode::OK, "ok\n").into_response()
    }
}

async fn schema_doc() -> Response {
    ([(header::CONTENT_TYPE, "application/json")], schema::document()).into_response()
}

async fn placeholder() -> Html<&'static str> {
    Html(concat!(
        "<!doctype html><title>thunder</title>",
        "<p>The web UI is not bundled with this build. ",
        "Start the service with <code>--ui-dir</code> to serve it, ",
        "or use <code>GET /api/schema</code> and <code>POST /api/render</code> directly.</p>"
    ))
}

fn error(status: StatusCode, message: impl Into<String>, field: Option<&str>) -> Response {
    let body = ErrorBody {
        error: message.into(),
        field: field.map(str::to_owned),
    };
    (status, Json(body)).into_response()
}

async fn render(State(state): State<AppState>, body: Bytes) -> Response {
    let req = match RenderRequest::from_json(&body) {
        Ok(r) => r,
        Err(e) => return (StatusCode::BAD_REQUEST, Json(e)).into_response(),
    };
    let params = req.params();
    if let Err(e) = params.validate() {
        return error(StatusCode::BAD_REQUEST, e.to_string(), e.field());
    }
    let seed = req.seed.unwrap_or_else(draw_seed);
    let config = RenderConfig {
        bit_depth: req.bit_depth.unwrap_or_default(),
        ..RenderConfig::with_seed(seed)
    };

    state.shared.in_flight.fetch_add(1, Ordering::SeqCst);
    let result = async {
        let _permit = state.shared.permits.acquire().await.expect("semaphore is never closed");
        tokio::task::spawn_blocking(move || render_wav(&params, &config)).await
    }
    .await;
    state.shared.in_flight.fetch_sub(1, Ordering::SeqCst);

    match result {
        Ok(Ok((wav, report))) => {
            let mut resp = (StatusCode::OK, [(header::CONTENT_TYPE, "audio/wav")], wav).into_response();
            let headers = resp.headers_mut();
            headers.insert(SEED_HEADER, HeaderValue::from(seed));
            headers.insert("x-thunder-strikes", HeaderValue::from(report.strike_count));
            resp
        }
        Ok(Err(e)) => match e.field() {
            Some(f) => error(StatusCode::BAD_REQUEST, e.to_string(), Some(f)),
            None => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string(), None),
        },
        Err(join) => error(StatusCode::INTERNAL_SERVER_ERROR, format!("render task failed: {join}"), None),
    }
}
