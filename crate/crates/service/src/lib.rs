//! Service layer: configuration, request handlers, HTTP routing, network
//! probe and transport, and the command-line interface.

pub mod app;
pub mod cli;
pub mod config;
pub mod http;
pub mod live;

pub use app::{Acceptance, ApiError, ApiResponse, App, Delivery, SubmitReply};
pub use config::{ConfigError, ProbeConfig, ServiceConfig};
