//! Library side of the `cheb` command: dataset I/O, report types and the
//! command runner.

pub mod args;
pub mod dataset;
pub mod error;
pub mod report;
pub mod run;

pub use args::parse_args;
pub use dataset::{parse_coefficients, parse_csv, parse_dataset, parse_json, write_csv, write_json, Format};
pub use error::{CliError, CliResult};
pub use report::{DemoReport, Necessary, Sufficient, VerificationReport, Verdicts};
pub use run::{execute, run, BasisKind, Command, RunConfig, RunReport, DEMO_CASES};
