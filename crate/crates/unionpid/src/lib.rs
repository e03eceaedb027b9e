//! File formats, reference tables, sweeps and the command-line front end
//! built on `unionpid-core`.

pub mod cli;
pub mod error;
pub mod io;
pub mod measures;
pub mod reproduce;
pub mod sweep;

pub use error::{CliError, Result};
