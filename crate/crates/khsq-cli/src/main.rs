use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use khsq_cli::{
    cmd_homology, cmd_st, parse_ls, random_corpus, run_suites, CliError, Format, Instance, JobSpec, Outcome,
    ParityChoice, Reference, Ring, Source, StOptions, Suite, SuiteConfig, SuiteError,
};
use khsq_steenrod::MatchingChoice;

/// Khovanov homology, second Steenrod squares and St invariants of links.
#[derive(Parser)]
#[command(name = "khsq", version)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A PD code such as `X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]`.
    #[arg(long, conflicts_with = "name")]
    pd: Option<String>,
    /// A knot name, `m(name)` for a mirror or `a|b` for a split union.
    #[arg(long)]
    name: Option<String>,
    /// A knot table replacing the bundled one.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Restrict reports to one quantum grading.
    #[arg(long)]
    j: Option<i32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Directory of the result cache.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Even and odd Khovanov homology over Z and F2.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both")]
        parity: ParityChoice,
        /// Coefficient ring; both rings if omitted.
        #[arg(long, value_enum)]
        ring: Option<Ring>,
    },
    /// The St_l invariants.
    St {
        #[command(flatten)]
        input: Input,
        /// Comma-separated values of l.
        #[arg(long, default_value = "0,1,2,3")]
        l: String,
        /// Use a random boundary matching with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also print stable wedge decompositions.
        #[arg(long)]
        wedge: bool,
        /// Compare St_1 and St_3 with a reference table file, or with the
        /// bundled table if no file is given.
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "bundled")]
        verify_table: Option<String>,
    },
    /// Seeded property suites over random braid closures.
    Proptest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Suites to run; all if omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<Suite>,
        /// Run on this diagram instead of the random corpus.
        #[arg(long, conflicts_with = "name")]
        pd: Option<String>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 24)]
        diagrams: usize,
        #[arg(long, default_value_t = 7)]
        max_crossings: usize,
        #[arg(long, default_value_t = 6)]
        cocycles: usize,
    },
}

fn source(pd: Option<String>, name: Option<String>) -> Result<Source, CliError> {
    match (pd, name) {
        (Some(pd), None) => Ok(Source::Pd(pd)),
        (None, Some(name)) => Ok(Source::Name(name)),
        _ => Err(CliError::Input("give exactly one of --pd and --name".into())),
    }
}

fn job(input: Input) -> Result<JobSpec, CliError> {
    let mut spec = JobSpec::new(source(input.pd, input.name)?);
    spec.table = input.table;
    spec.grading = input.j;
    spec.format = input.format;
    spec.cache_dir = input.cache_dir;
    Ok(spec)
}

fn proptest(
    seed: u64,
    suites: Vec<Suite>,
    single: Option<JobSpec>,
    diagrams: usize,
    max_crossings: usize,
    cocycles: usize,
) -> Result<Outcome, CliError> {
    let instances = match single {
        Some(spec) => vec![Instance { label: spec.label().to_string(), diagram: spec.diagram()? }],
        None => random_corpus(seed, diagrams, max_crossings),
    };
    let suites = if suites.is_empty() { Suite::all() } else { suites };
    let config = SuiteConfig { seed, suites, cocycles_per_diagram: cocycles };
    match run_suites(&instances, &config) {
        Ok(report) => Ok(Outcome { output: report.to_string(), diagnostics: String::new(), failure: None }),
        Err(SuiteError::Failure(f)) => Err(CliError::Property(f.to_string())),
        Err(SuiteError::Compute(e)) => Err(e),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::internal("cli", e))?;
    }
    match cli.command {
        Command::Homology { input, parity, ring } => {
            let mut spec = job(input)?;
            spec.parities = parity.parities();
            spec.rings = ring.map_or(vec![Ring::Z, Ring::F2], |r| vec![r]);
            cmd_homology(&spec)
        }
        Command::St { input, l, seed, wedge, verify_table } => {
            let mut spec = job(input)?;
            spec.ls = parse_ls(&l)?;
            spec.matching = seed.map_or(MatchingChoice::Canonical, MatchingChoice::Random);
            let verify = verify_table.map(|p| match p.as_str() {
                "bundled" => Reference::Bundled,
                _ => Reference::File(p.into()),
            });
            cmd_st(&spec, &StOptions { wedge, verify })
        }
        Command::Proptest { seed, suite, pd, name, table, diagrams, max_crossings, cocycles } => {
            let single = if pd.is_some() || name.is_some() {
                let mut spec = JobSpec::new(source(pd, name)?);
                spec.table = table;
                Some(spec)
            } else {
                None
            };
            proptest(seed, suite, single, diagrams, max_crossings, cocycles)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            eprint!("{}", outcome.diagnostics);
            let _ = std::io::stdout().flush();
            match outcome.failure {
                Some(e) => {
                    eprintln!("khsq: {e}");
                    ExitCode::from(e.exit_code())
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("khsq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
