use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latpath::{EnumerateError, Family, GfError, Pattern, DEFAULT_PATH_BUDGET};
use latpath_oeis::{Mode, OeisClient};

mod render;
mod table;
mod verify;

/// Exit status for a failed verification check.
const EXIT_VERIFY: u8 = 1;
/// Exit status when the path budget is too small for the request.
const EXIT_BUDGET: u8 = 2;
/// Exit status when two computations of the same quantity disagree.
const EXIT_CONSISTENCY: u8 = 3;
/// Exit status for malformed command lines and unreadable input.
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "latpath", version, about = "Counts lattice paths constrained by pattern heights")]
struct Cli {
    /// Maximum number of paths an exhaustive search may visit.
    #[arg(long, global = true, env = "LATPATH_BUDGET", default_value_t = DEFAULT_PATH_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Counts of every class for a family, one row per distinct sequence.
    Table(TableArgs),
    /// Coefficients of A(x), or of one level A_k(x), for one class.
    Series(SeriesArgs),
    /// Cross-checks the enumeration, the series system and the symmetries.
    Verify(VerifyArgs),
    /// Looks a sequence up in the OEIS.
    Oeis(OeisArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    TextTable,
    Text,
    Csv,
    Json,
    BFile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum VerifyLevel {
    None,
    Cross,
    Full,
}

#[derive(clap::Args)]
struct TableArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Longest pattern to include.
    #[arg(long, default_value_t = 2)]
    max_pattern_len: usize,
    /// Largest size (semilength or step count) to print.
    #[arg(long, default_value_t = 9)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::TextTable)]
    format: Format,
    /// Also check every cell against exhaustive enumeration.
    #[arg(long, value_enum, default_value_t = VerifyLevel::None)]
    verify: VerifyLevel,
}

#[derive(clap::Args)]
struct SeriesArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Pattern word over U, D, F, L; `h` stands for the plain height (`U`).
    #[arg(long, value_parser = parse_pattern)]
    pattern: Pattern,
    #[arg(long, default_value_t = 9)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::BFile)]
    format: Format,
    /// Print A_k(x) instead of A(x).
    #[arg(long)]
    level: Option<usize>,
    /// Print every nonzero level as well (text and json).
    #[arg(long)]
    levels: bool,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = VerifyLevel::Cross)]
    level: VerifyLevel,
    /// Restrict to one family; default is all four.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Largest step count for the exhaustive bijection check.
    #[arg(long, default_value_t = 12)]
    phi_steps: usize,
    /// Test hook: perturbs one base series so the checks must fail.
    #[arg(long, hide = true)]
    corrupt_base: bool,
}

#[derive(clap::Args)]
struct OeisArgs {
    #[arg(long, value_enum, default_value_t = OeisMode::CacheOnly)]
    mode: OeisMode,
    /// Comma-separated terms.
    #[arg(long, value_delimiter = ',', conflicts_with = "from_series", required_unless_present = "from_series")]
    terms: Vec<i128>,
    /// A b-file or JSON document written by `latpath series`; `-` for stdin.
    #[arg(long)]
    from_series: Option<PathBuf>,
    /// JSON-lines cache of earlier network answers.
    #[arg(long, env = "LATPATH_OEIS_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OeisMode {
    Off,
    CacheOnly,
    Network,
}

impl From<OeisMode> for Mode {
    fn from(m: OeisMode) -> Mode {
        match m {
            OeisMode::Off => Mode::Off,
            OeisMode::CacheOnly => Mode::CacheOnly,
            OeisMode::Network => Mode::Network,
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: latpath::PathError| e.to_string())
}

fn parse_pattern(s: &str) -> Result<Pattern, String> {
    let word = if s == "h" { "U" } else { s };
    Pattern::parse(word).map_err(|e| e.to_string())
}

/// A command failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<GfError> for Failure {
    fn from(e: GfError) -> Self {
        let code = match &e {
            GfError::Enumerate(EnumerateError::BudgetExceeded { .. }) => EXIT_BUDGET,
            GfError::ConsistencyFailure { .. } => EXIT_CONSISTENCY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        GfError::from(e).into()
    }
}

impl From<latpath::BijectionError> for Failure {
    fn from(e: latpath::BijectionError) -> Self {
        match e {
            latpath::BijectionError::Gf(g) => g.into(),
            latpath::BijectionError::Enumerate(g) => g.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Table(args) => run_table(&args, cli.budget, &mut out),
        Command::Series(args) => run_series(&args, cli.budget, &mut out),
        Command::Verify(args) => run_verify(&args, cli.budget, &mut out),
        Command::Oeis(args) => run_oeis(&args, &mut out),
    };
    match result.and_then(|()| out.flush().map_err(|e| Failure::usage(e.to_string()))) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("latpath: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::usage(format!("write failed: {e}"))
}

fn run_table(args: &TableArgs, budget: u64, out: &mut impl Write) -> Result<(), Failure> {
    if args.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let rows = table::compute(args.family, args.max_pattern_len, args.n, budget)?;
    if args.verify >= VerifyLevel::Cross {
        table::cross_check(&rows, args.family, args.n, budget)?;
    }
    let text = match args.format {
        Format::TextTable | Format::Text => render::text_table(args.family, args.n, &rows),
        Format::Csv => render::csv(args.n, &rows),
        Format::Json => render::table_json(args.family, args.n, &rows),
        Format::BFile => render::table_b_files(&rows),
    };
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn run_series(args: &SeriesArgs, budget: u64, out: &mut impl Write) -> Result<(), Failure> {
    let data = table::series_data(args.family, &args.pattern, args.order, budget)?;
    let text = match args.format {
        Format::BFile => {
            let coeffs = match args.level {
                Some(k) => data.level(k),
                None => data.coefficients.clone(),
            };
            render::b_file(&coeffs)
        }
        Format::Json => render::series_json(&data, args.level),
        Format::Text | Format::TextTable => render::series_text(&data, args.level, args.levels),
        Format::Csv => render::series_csv(&data, args.level),
    };
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn run_verify(args: &VerifyArgs, budget: u64, out: &mut impl Write) -> Result<(), Failure> {
    let families = match args.family {
        Some(f) => vec![f],
        None => Family::ALL.to_vec(),
    };
    let settings = verify::Settings {
        level: args.level,
        families,
        phi_steps: args.phi_steps,
        budget,
        corrupt_base: args.corrupt_base,
    };
    let checks = verify::run(&settings)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    for check in &checks {
        writeln!(out, "{check}").map_err(io_failure)?;
    }
    writeln!(out, "{} checks, {} failed", checks.len(), failed).map_err(io_failure)?;
    if failed > 0 {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: format!("{failed} verification check(s) failed"),
        });
    }
    Ok(())
}

fn read_series_terms(path: &PathBuf) -> Result<Vec<i128>, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| Failure::usage(e.to_string()))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    render::parse_series_document(&text).map_err(Failure::usage)
}

fn run_oeis(args: &OeisArgs, out: &mut impl Write) -> Result<(), Failure> {
    let terms = match &args.from_series {
        Some(path) => read_series_terms(path)?,
        None => args.terms.clone(),
    };
    let client = OeisClient::new(args.cache.clone());
    let lookup = client
        .lookup(&terms, args.mode.into())
        .map_err(|e| Failure::usage(e.to_string()))?;
    for warning in &lookup.warnings {
        eprintln!("latpath: warning: {warning}");
    }
    if args.mode == OeisMode::Off {
        writeln!(out, "lookup disabled").map_err(io_failure)?;
    } else if lookup.entries.is_empty() {
        writeln!(out, "no match").map_err(io_failure)?;
    }
    for entry in &lookup.entries {
        writeln!(out, "{} {}", entry.a_number, entry.name).map_err(io_failure)?;
    }
    Ok(())
}
