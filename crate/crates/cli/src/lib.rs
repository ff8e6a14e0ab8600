//! Command-line surface of `moment-models`: JSON documents for every model
//! and the commands that convert, evaluate and report on them.

pub mod commands;
pub mod document;
pub mod error;

pub use document::{Document, Kind};
pub use error::CliError;
