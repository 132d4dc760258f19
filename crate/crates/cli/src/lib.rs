//! Input parsing and report construction behind the `effmat` binary, exposed
//! as a library so integration suites can round-trip the exact documents the
//! binary emits.

pub mod error;
pub mod io;
pub mod report;

pub use error::CliError;
