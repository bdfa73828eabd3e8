//! File formats and the command-line front end over `luinv-core`.

pub mod cli;
pub mod state_file;

pub use luinv_core as core;
