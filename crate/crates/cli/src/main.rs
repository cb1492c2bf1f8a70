//! `ari` — exact clustering comparison on the command line.

mod input;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ari_core::oracle::{self, EnumerationSpec, OracleConfig};
use ari_core::{bounds, Clustering, ContingencyTable, Error, ExactRatio};

use input::InputError;
use report::RenderOptions;

#[derive(Parser)]
#[command(
    name = "ari",
    version,
    about = "Exact clustering comparison: Rand indices, minimum-ARI bounds, extremal tables, and brute-force verification",
    after_help = "Exit codes: 0 success/PASS, 1 internal error, 2 malformed input, \
                  3 undefined index, 4 verification FAIL, 5 budget exceeded."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Significant digits in decimal renderings.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=50))]
    precision: u32,
    /// Print exact fractions only; suppress decimal renderings.
    #[arg(long, global = true)]
    exact: bool,
    /// Output format of the report on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two label files, or evaluate a contingency table.
    Compare(CompareArgs),
    /// Closed-form minimum adjusted Rand index for cluster counts r and s.
    Bound { r: u64, s: u64 },
    /// Emit the canonical table attaining the closed-form minimum.
    Extremal { r: u64, s: u64 },
    /// Check the closed form against brute-force enumeration.
    Verify(VerifyArgs),
    /// Normalize an adjusted Rand index onto the [0,1] distance scale.
    Normalize {
        /// The index value: a fraction like -5/13 or an exact decimal like 0.81.
        #[arg(allow_hyphen_values = true)]
        ari: String,
        r: u64,
        s: u64,
    },
}

#[derive(Args)]
struct CompareArgs {
    /// First label file, one label per line ('-' for stdin).
    #[arg(long, requires = "labels_b", conflicts_with = "table")]
    labels_a: Option<PathBuf>,
    /// Second label file, one label per line ('-' for stdin).
    #[arg(long, requires = "labels_a")]
    labels_b: Option<PathBuf>,
    /// Contingency table file: whitespace-separated integer rows ('-' for stdin).
    #[arg(long)]
    table: Option<PathBuf>,
    /// Label files are two-column CSV `id,label`; rows are aligned by id.
    #[arg(long, requires = "labels_a")]
    csv: bool,
}

#[derive(Args)]
struct VerifyArgs {
    r: u64,
    s: u64,
    /// Largest object count swept (default r+s+1; must reach r+s-1).
    #[arg(long)]
    n_max: Option<u64>,
    /// Restrict enumeration to tables with 0/1 entries.
    #[arg(long)]
    zero_one: bool,
    /// Candidate-table budget; oversized sweeps are refused up front.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    /// Worker threads for the sweep (the result does not depend on this).
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

enum CliError {
    Core(Error),
    Input(String),
    VerificationFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::InvalidInput(_)) => 2,
            CliError::Core(Error::UndefinedIndex(_)) => 3,
            CliError::Core(Error::BudgetExceeded(_)) => 5,
            CliError::Core(Error::Internal(_)) => 1,
            CliError::Input(_) => 2,
            CliError::VerificationFailed => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(message) => write!(f, "{message}"),
            CliError::VerificationFailed => write!(f, "verification failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("ari: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let opts = RenderOptions {
        precision: cli.precision as usize,
        exact_only: cli.exact,
    };
    match &cli.command {
        Command::Compare(args) => cmd_compare(args, cli.format, &opts),
        Command::Bound { r, s } => cmd_bound(*r, *s, cli.format, &opts),
        Command::Extremal { r, s } => cmd_extremal(*r, *s, cli.format, &opts),
        Command::Verify(args) => cmd_verify(args, cli.format, &opts),
        Command::Normalize { ari, r, s } => cmd_normalize(ari, *r, *s, cli.format, &opts),
    }
}

fn emit_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Core(Error::Internal(format!("serializing report: {e}"))))?;
    println!("{text}");
    Ok(())
}

fn load_comparison_table(args: &CompareArgs) -> Result<ContingencyTable, CliError> {
    if let Some(path) = &args.table {
        let text = input::read_source(path)?;
        return Ok(input::parse_table(&text, path)?);
    }
    let (Some(path_a), Some(path_b)) = (&args.labels_a, &args.labels_b) else {
        return Err(CliError::Input(
            "provide either --labels-a and --labels-b, or --table".into(),
        ));
    };
    if path_a.as_os_str() == "-" && path_b.as_os_str() == "-" {
        return Err(CliError::Input(
            "only one label file can come from stdin".into(),
        ));
    }
    let text_a = input::read_source(path_a)?;
    let text_b = input::read_source(path_b)?;
    let (labels_a, labels_b) = if args.csv {
        input::align_by_id(
            input::parse_labels_csv(&text_a, path_a)?,
            input::parse_labels_csv(&text_b, path_b)?,
        )?
    } else {
        (
            input::parse_labels_plain(&text_a, path_a)?,
            input::parse_labels_plain(&text_b, path_b)?,
        )
    };
    let x = Clustering::from_labels(&labels_a)?;
    let y = Clustering::from_labels(&labels_b)?;
    Ok(ContingencyTable::from_labels(&x, &y)?)
}

fn cmd_compare(args: &CompareArgs, format: Format, opts: &RenderOptions) -> Result<(), CliError> {
    let table = load_comparison_table(args)?;
    let report = report::build_comparison(&table, opts)?;
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            print!("{}", report::comparison_text(&report));
            Ok(())
        }
    }
}

fn cmd_bound(r: u64, s: u64, format: Format, opts: &RenderOptions) -> Result<(), CliError> {
    let report = report::build_bound(r, s, opts)?;
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            print!("{}", report::bound_text(&report));
            Ok(())
        }
    }
}

fn cmd_extremal(r: u64, s: u64, format: Format, opts: &RenderOptions) -> Result<(), CliError> {
    let bound_report = bounds::extremal_table(r, s)?;
    let report = report::build_extremal(&bound_report, opts);
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            // The table itself is the data stream, so the output can feed
            // straight into `compare --table -`; the summary goes to stderr.
            println!("{}", bound_report.witness);
            eprintln!(
                "# extremal {r} x {s}: n = {}, min ari = {}",
                report.n,
                opts.cell(&bound_report.min_ari).exact
            );
            Ok(())
        }
    }
}

fn cmd_verify(args: &VerifyArgs, format: Format, opts: &RenderOptions) -> Result<(), CliError> {
    let rows = usize::try_from(args.r)
        .map_err(|_| CliError::Input(format!("r = {} does not fit this platform", args.r)))?;
    let cols = usize::try_from(args.s)
        .map_err(|_| CliError::Input(format!("s = {} does not fit this platform", args.s)))?;
    let n_max = args.n_max.unwrap_or(args.r + args.s + 1);
    let spec = EnumerationSpec::new(rows, cols, n_max, args.zero_one)?;
    let config = OracleConfig {
        max_tables: args.budget,
        threads: args.threads.max(1),
        ..OracleConfig::default()
    };
    let verdict = oracle::verify_min_ari_bound(&spec, &config)?;
    let report = report::build_verify(&verdict, opts);
    match format {
        Format::Json => emit_json(&report)?,
        Format::Text => print!("{}", report::verify_text(&report)),
    }
    if verdict.passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_normalize(ari: &str, r: u64, s: u64, format: Format, opts: &RenderOptions) -> Result<(), CliError> {
    let value: ExactRatio = ari
        .parse()
        .map_err(|e: Error| CliError::Input(e.to_string()))?;
    let report = report::build_normalize(&value, r, s, opts)?;
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            print!("{}", report::normalize_text(&report));
            Ok(())
        }
    }
}
