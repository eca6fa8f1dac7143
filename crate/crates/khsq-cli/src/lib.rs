//! The `khsq` command-line tool as a library: job descriptions, an on-disk
//! result cache, report rendering for the `homology` and `st` commands, and
//! the seeded property suites behind `proptest`.

mod cache;
mod commands;
mod error;
mod job;
mod suites;

pub use cache::{Cache, CACHE_HEADER};
pub use commands::{cmd_homology, cmd_st, hypothesis_failures, GroupRow, Outcome, Reference, StOptions};
pub use error::CliError;
pub use job::{parity_name, parse_ls, Format, JobSpec, ParityChoice, Ring, Source, BUNDLED_KNOTS, BUNDLED_ST_TABLE};
pub use suites::{
    random_corpus, run_suites, Instance, Suite, SuiteConfig, SuiteError, SuiteFailure, SuiteReport,
};
