//! Scenario files, CSV reports and the `obslab` command line on top of
//! [`obslab_core`].

pub mod cli;
mod error;
pub mod report;
pub mod scenario;

pub use error::CliError;
pub use scenario::{build_demo, load_scenario, save_scenario, Scenario};
