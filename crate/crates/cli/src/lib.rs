//! File I/O, reporting, manifests and the fuzz campaign behind the `vcx`
//! binary.

pub mod cli;
pub mod error;
pub mod fuzz;
pub mod io;
pub mod manifest;
pub mod report;

pub use cli::{run, Cli, Outcome};
pub use error::{exit, CliError, CliResult};
pub use fuzz::{fuzz_campaign, fuzz_grid, CellSummary, Failure, FuzzSummary};
pub use io::{digest64, load_family, write_family};
pub use manifest::{result_digest, stable_view, RunManifest};
pub use report::{emit_report, Format, Report};
