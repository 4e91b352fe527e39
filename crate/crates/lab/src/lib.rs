//! Command-line lab for complex symmetry of weighted shifts and their
//! polar-decomposition transforms.
//!
//! The numerics live in `cslab-core`; this crate adds the JSON file formats,
//! text rendering, the catalog of worked examples, the randomized property
//! suite and the `cslab` command line.

pub mod analyze;
pub mod cli;
pub mod error;
pub mod format;
pub mod repro;
pub mod suite;
pub mod text;

pub use error::{CliError, CliResult};
