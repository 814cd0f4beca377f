//! Command-line surface for `daehee-core`: sequence and polynomial tables,
//! the identity verification suite, and Volkenborn convergence probes, with
//! exact JSON and CSV output.

pub mod cli;
pub mod commands;
pub mod config;
mod error;
pub mod output;
pub mod runner;

pub use cli::{run, Outcome};
pub use error::{KitError, Result};
