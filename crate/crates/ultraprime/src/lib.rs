//! Command-line front end for `ultraprime-core`: JSON configs, deterministic
//! reports and the seeded acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod report;

pub use commands::{run, Command, Options};
