//! File formats, reports and the command-line front end for `perfmatch`.

pub mod app;
pub mod error;
pub mod output;
pub mod region_file;

pub use app::{execute, run, run_claim, ClaimArgs, ClaimName, Cli, Command, Outcome};
pub use error::CliError;
pub use output::{render, report_json, Format};
pub use region_file::{parse_region, region_to_json};
