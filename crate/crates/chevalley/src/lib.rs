//! JSON formats, the `chevalley` command-line tool and the acceptance
//! suite, on top of [`chevalley_core`].

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod verify;

pub use chevalley_core as core;
pub use error::CliError;
