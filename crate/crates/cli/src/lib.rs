//! Command-line front end: configuration loading, element syntax, the
//! subcommands and their reports.

pub mod commands;
pub mod config;
pub mod input;
pub mod report;
