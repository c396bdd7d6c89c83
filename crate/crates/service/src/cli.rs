//! `shaclform [--config PATH] <serve | compile-form | validate | submit>`.
//!
//! Exit status: 0 success, 1 non-conforming data or rejected payload,
//! 2 usage, configuration or input errors, 3 accepted but not delivered.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use shaclform::custom::ValidatorRegistry;
use shaclform::rdf::parse_turtle;
use shaclform::submission::SubmissionPayload;
use shaclform::validate::validate;

use crate::app::{App, Delivery, SubmitReply};
use crate::config::ServiceConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONCONFORMING: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DELIVERY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "shaclform", version, about = "Shape-driven forms with two-phase validation")]
struct Cli {
    /// Service configuration file.
    #[arg(long, global = true, default_value = "shaclform.toml")]
    config: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the HTTP service.
    Serve,
    /// Print the form schema compiled from a shape (IRI or CURIE).
    CompileForm { shape_id: String },
    /// Validate a Turtle data file against the configured shapes.
    Validate { data: PathBuf },
    /// Check a JSON payload with both phases and deliver the result.
    Submit {
        payload: PathBuf,
        /// Print the Turtle instead of contacting the endpoint.
        #[arg(long)]
        dry_run: bool,
    },
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let registry = ValidatorRegistry::builtin();
    let config = match ServiceConfig::load(&cli.config, &registry) {
        Ok(c) => c,
        Err(e) => return fail(err, &format!("config: {e}")),
    };
    match cli.command {
        Command::Validate { data } => validate_file(&config, &data, out, err),
        Command::CompileForm { shape_id } => with_app(config, registry, err, |app, err| {
            let resp = app.handle_get_form(&shape_id);
            if resp.status == 200 {
                let _ = writeln!(out, "{}", resp.body);
                EXIT_OK
            } else {
                fail(err, &format!("no form for shape {shape_id:?}"))
            }
        }),
        Command::Submit { payload, dry_run } => with_app(config, registry, err, |app, err| {
            let app = if dry_run { app.with_delivery(Delivery::DryRun) } else { app };
            submit_file(&app, &payload, dry_run, out, err)
        }),
        Command::Serve => {
            let listen = config.listen_address;
            let static_dir = config.static_dir.clone();
            with_app(config, registry, err, |app, err| serve(app, listen, static_dir, err))
        }
    }
}

fn fail(err: &mut dyn Write, message: &str) -> i32 {
    let _ = writeln!(err, "shaclform: {message}");
    EXIT_USAGE
}

fn with_app(
    config: ServiceConfig,
    registry: ValidatorRegistry,
    err: &mut dyn Write,
    f: impl FnOnce(App, &mut dyn Write) -> i32,
) -> i32 {
    match App::new(&config, registry) {
        Ok(app) => f(app, err),
        Err(e) => fail(err, &format!("config: {e}")),
    }
}

fn validate_file(config: &ServiceConfig, path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return fail(err, &format!("{}: {e}", path.display())),
    };
    let graph = match parse_turtle(&text, None) {
        Ok(g) => g,
        Err(e) => return fail(err, &format!("{}: {e}", path.display())),
    };
    let report = validate(&graph, &config.shapes);
    let _ = writeln!(out, "{}", report.to_document());
    if report.conforms() {
        EXIT_OK
    } else {
        EXIT_NONCONFORMING
    }
}

fn submit_file(app: &App, path: &Path, dry_run: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let payload = match fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|t| SubmissionPayload::from_json(&t).map_err(|e| e.to_string()))
    {
        Ok(p) => p,
        Err(e) => return fail(err, &format!("{}: {e}", path.display())),
    };
    match app.submit(&payload) {
        Ok(SubmitReply::Accepted(acceptance)) => {
            if dry_run {
                let _ = write!(out, "{}", acceptance.turtle);
            } else {
                let _ = writeln!(out, "{}", serde_json::to_string(&acceptance).expect("acceptance serializes"));
            }
            let _ = writeln!(err, "accepted as <{}>", acceptance.subject);
            EXIT_OK
        }
        Ok(SubmitReply::Rejected(report)) => {
            let _ = writeln!(out, "{}", report.to_document());
            EXIT_NONCONFORMING
        }
        Ok(SubmitReply::DeliveryFailed {
            acceptance,
            status,
            message,
        }) => {
            let _ = write!(out, "{}", acceptance.turtle);
            let status = status.map_or("no response".to_string(), |s| format!("status {s}"));
            let _ = writeln!(err, "shaclform: endpoint refused the update ({status}): {message}");
            EXIT_DELIVERY
        }
        Err(e) => fail(err, &format!("{e:?}")),
    }
}

fn serve(app: App, listen: std::net::SocketAddr, static_dir: Option<PathBuf>, err: &mut dyn Write) -> i32 {
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => return fail(err, &format!("runtime: {e}")),
    };
    let app = Arc::new(app);
    runtime.block_on(async move {
        let listener = match crate::http::bind(listen).await {
            Ok(l) => l,
            Err(e) => return fail(err, &format!("cannot listen on {listen}: {e}")),
        };
        let _ = writeln!(err, "listening on http://{}", listener.local_addr().unwrap_or(listen));
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        match crate::http::serve(listener, app, static_dir, shutdown).await {
            Ok(()) => EXIT_OK,
            Err(e) => fail(err, &format!("server: {e}")),
        }
    })
}
