//! Experiment runner and serialization layer for `subdiv-core`.
//!
//! A run reads one JSON [`config::ExperimentConfig`], loads or generates the
//! data, refines it and runs the requested analyses, then writes a
//! [`report::ResultBundle`] and plot-ready CSV traces.

pub mod backend;
pub mod config;
pub mod data;
pub mod error;
pub mod report;
pub mod run;

pub use error::{CliError, CliResult};
