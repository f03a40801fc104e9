//! Command-line pipeline: parsers, sharded enumeration with checkpoints,
//! the Lefschetz filter and report rendering.

pub mod certificate;
pub mod checkpoint;
pub mod error;
pub mod parse;
pub mod pipeline;
pub mod report;

pub use error::CliError;

/// Exit status for a found result.
pub const EXIT_OK: i32 = 0;
/// Exit status for an error.
pub const EXIT_ERROR: i32 = 1;
/// Exit status for an infeasible or empty result.
pub const EXIT_EMPTY: i32 = 2;
