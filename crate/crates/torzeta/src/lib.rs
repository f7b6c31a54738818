//! Orchestration and tooling around `torzeta-core`: the two-stage work-list
//! engine, a shared file-backed Euler characteristic cache, JSON input and
//! output documents, and the self-check suites behind `torzeta verify`.

pub mod cache;
pub mod engine;
pub mod formats;
pub mod verify;

pub use torzeta_core as core;
