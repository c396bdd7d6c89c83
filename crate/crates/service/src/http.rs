//! HTTP routing. Handlers run the synchronous [`App`] methods on the
//! blocking pool, since submission may wait on external services.

use std::future::Future;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

use crate::app::{ApiResponse, App};

/// `GET /api/forms`, `GET /api/forms/{shapeId}`, `POST /api/validate`,
/// `POST /api/submit`, and static files under `/` when a directory is given.
pub fn router(app: Arc<App>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/forms", get(list_forms))
        .route("/api/forms/{shape_id}", get(get_form))
        .route("/api/validate", post(validate))
        .route("/api/submit", post(submit))
        .with_state(app);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until `shutdown` completes.
pub async fn serve(
    listener: TcpListener,
    app: Arc<App>,
    static_dir: Option<PathBuf>,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(app, static_dir))
        .with_graceful_shutdown(shutdown)
        .await
}

pub async fn bind(addr: SocketAddr) -> std::io::Result<TcpListener> {
    TcpListener::bind(addr).await
}

async fn list_forms(State(app): State<Arc<App>>) -> Response {
    reply(app.handle_list_forms())
}

async fn get_form(State(app): State<Arc<App>>, Path(shape_id): Path<String>) -> Response {
    reply(app.handle_get_form(&shape_id))
}

async fn validate(State(app): State<Arc<App>>, body: String) -> Response {
    blocking(move || app.handle_validate(&body)).await
}

async fn submit(State(app): State<Arc<App>>, body: String) -> Response {
    blocking(move || app.handle_submit(&body)).await
}

async fn blocking(f: impl FnOnce() -> ApiResponse + Send + 'static) -> Response {
    match tokio::task::spawn_blocking(f).await {
        Ok(resp) => reply(resp),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

fn reply(resp: ApiResponse) -> Response {
    let status = StatusCode::from_u16(resp.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, [(header::CONTENT_TYPE, "application/json")], resp.body).into_response()
}
