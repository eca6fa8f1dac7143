use std::path::PathBuf;

use clap::ValueEnum;
use khsq_cube::Parity;
use khsq_link::{parse_pd, parse_table, LinkDiagram};
use khsq_steenrod::MatchingChoice;

use crate::CliError;

/// The knot table compiled into the binary.
pub const BUNDLED_KNOTS: &str = include_str!("../../../data/knots.pdtab");

/// The reference `St_1`/`St_3` table compiled into the binary.
pub const BUNDLED_ST_TABLE: &str = include_str!("../../../data/st_table.tsv");

/// Where a diagram comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Pd(String),
    Name(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Ring {
    Z,
    F2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityChoice {
    Even,
    Odd,
    Both,
}

impl ParityChoice {
    pub fn parities(self) -> Vec<Parity> {
        match self {
            ParityChoice::Even => vec![Parity::Even],
            ParityChoice::Odd => vec![Parity::Odd],
            ParityChoice::Both => vec![Parity::Even, Parity::Odd],
        }
    }
}

pub fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

/// Everything a command needs to know about its input and output.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub source: Source,
    /// A knot table file replacing the bundled one.
    pub table: Option<PathBuf>,
    pub parities: Vec<Parity>,
    pub rings: Vec<Ring>,
    pub ls: Vec<u32>,
    /// Restricts reports to one quantum grading.
    pub grading: Option<i32>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub matching: MatchingChoice,
}

impl JobSpec {
    pub fn new(source: Source) -> JobSpec {
        JobSpec {
            source,
            table: None,
            parities: vec![Parity::Even, Parity::Odd],
            rings: vec![Ring::Z, Ring::F2],
            ls: vec![0, 1, 2, 3],
            grading: None,
            format: Format::Text,
            cache_dir: None,
            matching: MatchingChoice::Canonical,
        }
    }

    /// A display label for the input.
    pub fn label(&self) -> &str {
        match &self.source {
            Source::Pd(pd) => pd,
            Source::Name(name) => name,
        }
    }

    pub fn diagram(&self) -> Result<LinkDiagram, CliError> {
        match &self.source {
            Source::Pd(pd) => Ok(parse_pd(pd)?),
            Source::Name(name) => {
                let text = match &self.table {
                    Some(path) => std::fs::read_to_string(path)
                        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?,
                    None => BUNDLED_KNOTS.to_string(),
                };
                Ok(parse_table(&text)?.lookup(name)?)
            }
        }
    }

    pub fn shows(&self, j: i32) -> bool {
        self.grading.is_none_or(|q| q == j)
    }
}

/// Parses a comma-separated list of `l` values.
pub fn parse_ls(text: &str) -> Result<Vec<u32>, CliError> {
    let ls: Vec<u32> = text
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Input(format!("bad l value `{s}`"))))
        .collect::<Result<_, _>>()?;
    if ls.is_empty() {
        return Err(CliError::Input("empty l list".into()));
    }
    Ok(ls)
}
