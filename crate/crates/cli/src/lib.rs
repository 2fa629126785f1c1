//! Configuration, orchestration, caching and rendering for the `orbimirror` binary.

pub mod app;
pub mod cache;
pub mod config;
pub mod pipeline;
pub mod render;

pub use app::{execute, CliError, Invocation, Verb};
pub use config::{parse_config, Format, OutputKind, RunConfig};
pub use pipeline::{run_pipeline, ResultBundle};
pub use render::render;
