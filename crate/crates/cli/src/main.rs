//! moment-oracle: exact realizability checks for truncated moment sequences.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moment_core::rational::{parse_rational, parse_rational_list};
use moment_core::{Error, FixtureCase, GridSpec, MomentVector, SolverConfig, Strategy};

use commands::{error_report, Report, EXIT_INPUT, EXIT_OK};
use input::Item;

#[derive(Parser)]
#[command(
    name = "moment-oracle",
    version,
    about = "Decide whether rational power moments come from a probability measure on a discrete grid",
    after_help = "EXAMPLES:\n\
                  \n  moment-oracle check --m 3/2,5/2\
                  \n  moment-oracle check --m 3/2,12/5 --json\
                  \n  moment-oracle extend --m 4/3,10/3,28/3\
                  \n  moment-oracle oracle --m 3/2,5/2 --N 10\
                  \n  moment-oracle fixture --alpha 1,2 --case a --n 2\
                  \n\nEXIT STATUS:\n\
                  \n  0 realizable / satisfied, 1 not realizable / violated,\
                  \n  2 input error, 3 internal error\
                  \n\nENVIRONMENT:\n\
                  \n  MOMENT_ORACLE_NMAX  raise the limit on the number of moments (default 12)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Moments m_1,...,m_n as comma-separated integers or p/q fractions
    #[arg(long = "m", value_name = "LIST", allow_hyphen_values = true, conflicts_with = "file")]
    moments: Option<String>,
    /// JSON file: {"moments": [...], "grid": ...} or an array of such objects
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Support grid: nn0, nn:N, or explicit:p0,p1,...
    #[arg(long, default_value = "nn0")]
    grid: String,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Explicit,
    Recursive,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    A,
    B,
    C,
}

#[derive(Subcommand)]
enum Command {
    /// Classify as interior (I), boundary (B) or not realizable, with a certificate
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// How the minimizing polynomials of degree 4 and 5 are built
        #[arg(long, value_enum, default_value = "explicit")]
        strategy: StrategyArg,
    },
    /// The minimizing polynomial P_n for an interior prefix m^(n-1)
    MinPoly {
        #[command(flatten)]
        input: InputArgs,
        /// Degree (default: the number of moments)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "explicit")]
        strategy: StrategyArg,
    },
    /// The smallest (interior prefix) or forced (boundary prefix) next moment
    Extend {
        #[command(flatten)]
        input: InputArgs,
        /// Use only the first n moments
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "explicit")]
        strategy: StrategyArg,
    },
    /// Fast sufficient test for interior realizability on the nonnegative integers
    Sufficient {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check every condition for realizability on {0, ..., N}
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Upper end of the support range (default: from --grid nn:N)
        #[arg(long = "N", value_name = "N")]
        big_n: Option<u64>,
    },
    /// Build a non-realizable test vector from a root pattern
    Fixture {
        /// Root pattern, e.g. 0,2,3
        #[arg(long, value_name = "LIST")]
        alpha: String,
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Length of the moment vector
        #[arg(long)]
        n: usize,
        /// Amount added to the last moment in case c
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long)]
        json: bool,
    },
}

fn config(strategy: StrategyArg) -> Result<SolverConfig, Error> {
    let mut config = SolverConfig {
        strategy: match strategy {
            StrategyArg::Explicit => Strategy::Explicit,
            StrategyArg::Recursive => Strategy::Recursive,
        },
        ..SolverConfig::default()
    };
    if let Ok(v) = std::env::var("MOMENT_ORACLE_NMAX") {
        config.n_max = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("MOMENT_ORACLE_NMAX must be a positive integer, got `{v}`")))?;
    }
    Ok(config)
}

fn items(input: &InputArgs) -> Result<(Vec<Result<Item, Error>>, bool), Error> {
    let grid = GridSpec::parse(&input.grid)?;
    match (&input.moments, &input.file) {
        (Some(m), None) => Ok((vec![Ok(Item { moments: MomentVector::parse(m)?, grid })], false)),
        (None, Some(path)) => input::read_file(path, &grid),
        _ => Err(Error::Parse("give the moments with --m or --file".into())),
    }
}

fn emit(reports: &[Report], batch: bool, json: bool) {
    if json {
        let out = if batch {
            serde_json::Value::Array(reports.iter().map(|r| r.json.clone()).collect())
        } else {
            reports[0].json.clone()
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("json values serialize"));
    } else {
        for (i, r) in reports.iter().enumerate() {
            if batch {
                println!("[{}]", i + 1);
            }
            if r.code >= EXIT_INPUT {
                eprintln!("{}", r.text);
            } else {
                println!("{}", r.text);
            }
        }
    }
}

/// Worst status across a batch: errors over rejections over success.
fn combined(reports: &[Report]) -> u8 {
    reports.iter().map(|r| r.code).max().unwrap_or(EXIT_OK)
}

fn run_items(
    name: &str,
    input: &InputArgs,
    f: impl Fn(&Item) -> Result<Report, Error>,
) -> u8 {
    let (list, batch) = match items(input) {
        Ok(x) => x,
        Err(e) => {
            let r = error_report(name, &e);
            emit(std::slice::from_ref(&r), false, input.json);
            return r.code;
        }
    };
    let reports: Vec<Report> = list
        .iter()
        .map(|item| match item {
            Ok(item) => f(item).unwrap_or_else(|e| error_report(name, &e)),
            Err(e) => error_report(name, e),
        })
        .collect();
    emit(&reports, batch, input.json);
    combined(&reports)
}

fn with_config(name: &str, input: &InputArgs, strategy: StrategyArg, f: impl Fn(&Item, &SolverConfig) -> Result<Report, Error>) -> u8 {
    match config(strategy) {
        Ok(c) => run_items(name, input, |item| f(item, &c)),
        Err(e) => {
            let r = error_report(name, &e);
            emit(std::slice::from_ref(&r), false, input.json);
            r.code
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Check { input, strategy } => with_config("check", input, *strategy, commands::check),
        Command::MinPoly { input, n, strategy } => {
            with_config("min-poly", input, *strategy, |item, c| commands::min_poly(item, *n, c))
        }
        Command::Extend { input, n, strategy } => {
            with_config("extend", input, *strategy, |item, c| commands::extend(item, *n, c))
        }
        Command::Sufficient { input } => run_items("sufficient", input, commands::sufficient),
        Command::Oracle { input, big_n } => run_items("oracle", input, |item| commands::oracle(item, *big_n)),
        Command::Fixture { alpha, case, n, c, json } => {
            let case = match case {
                CaseArg::A => FixtureCase::A,
                CaseArg::B => FixtureCase::B,
                CaseArg::C => FixtureCase::C,
            };
            let report = parse_rational_list(alpha)
                .and_then(|alpha| Ok((alpha, parse_rational(c)?)))
                .and_then(|(alpha, c)| commands::fixture(&alpha, case, *n, &c))
                .unwrap_or_else(|e| error_report("fixture", &e));
            emit(std::slice::from_ref(&report), false, *json);
            report.code
        }
    };
    ExitCode::from(code)
}
