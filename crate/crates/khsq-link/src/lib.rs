//! Planar diagram (PD) codes for links.
//!
//! A crossing is a tuple `X[a,b,c,d]` of strand labels read counterclockwise
//! starting from the incoming under-strand. Resolving a crossing by its
//! 0-smoothing joins `(a,d)` and `(b,c)`; the 1-smoothing joins `(a,b)` and
//! `(c,d)`. A crossing is positive when the over-strand runs from `b` to `d`.

mod diagram;
mod parse;
mod table;

pub use diagram::{braid_closure, LinkDiagram, Port};
pub use parse::{parse_pd, render_pd};
pub use table::{load_named, parse_table, KnotTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("strand {label} appears {count} times (expected 2)")]
    DanglingStrand { label: u32, count: usize },
    #[error("empty diagram without free loops")]
    EmptyInput,
    #[error("inconsistent orientation on the component through strand {0}")]
    InconsistentOrientation(u32),
    #[error("unknown link name `{0}`")]
    UnknownName(String),
    #[error("cannot read `{path}`: {message}")]
    IoFailure { path: String, message: String },
}
