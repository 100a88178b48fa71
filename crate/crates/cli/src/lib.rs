//! Scenario-driven front end for `gemenge-core`: strict scenario files,
//! pipelines for the identical-particle and measurement models, and
//! JSON/CSV reports whose verdicts carry residuals next to tolerances.

pub mod config;
pub mod error;
pub mod report;
pub mod runner;
pub mod scenarios;

pub use config::{load_scenario, parse_scenario, ScenarioConfig, ScenarioKind};
pub use error::{Error, Result};
pub use report::{emit_report, load_report, ReportFormat, RunReport};
pub use runner::run_scenario;
