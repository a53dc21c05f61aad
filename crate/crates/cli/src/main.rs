use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dfaorev::complexity::{corollary_lower_bound, tau_ulm_breakdown};
use dfaorev::search::{search, v1n_conjecture_scan, SearchConfig, DEFAULT_BUDGET};
use dfaorev::{Dfao, Error};
use dfaorev_cli::tables::{self, Span, TableOptions};
use dfaorev_cli::{exit_code, formula_lines, search_record};

#[derive(Parser)]
#[command(
    name = "dfaorev",
    version,
    about = "State complexity of reversal for DFAOs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reverse a machine and write the minimal reversed machine.
    Reverse {
        input: PathBuf,
        /// Output file (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print one of the result tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        /// Output sizes, e.g. `3` or `2..6` (tables 2 and 3).
        #[arg(short, long)]
        k: Option<Span>,
        /// Degrees, e.g. `5` or `5..9`.
        #[arg(short, long)]
        n: Option<Span>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Evaluate k^n - F + G for a split, or the best split of n.
    Formula {
        #[arg(short)]
        k: usize,
        #[arg(short, requires = "m", conflicts_with = "n")]
        l: Option<usize>,
        #[arg(short, requires = "l")]
        m: Option<usize>,
        #[arg(short, required_unless_present = "l")]
        n: Option<usize>,
    },
    /// Search for the largest |τM| and print a JSON record.
    Search {
        #[arg(value_enum)]
        mode: Mode,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Orbit sizes of every two-valued output map under V^1_n.
    Scan {
        #[arg(short)]
        n: usize,
    },
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Random-search samples.
    #[arg(long, default_value_t = 20_000)]
    iters: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: available cores; random search: 1).
    #[arg(long)]
    workers: Option<usize>,
    /// Largest search effort attempted.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Brute,
    Random,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn run(command: Command) -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    match command {
        Command::Reverse { input, output } => {
            let text = fs::read_to_string(&input).map_err(|e| io_err(&input, e))?;
            let machine: Dfao = text.parse()?;
            let trimmed = if machine.is_trim() {
                machine.clone()
            } else {
                let t = machine.trim();
                eprintln!(
                    "notice: removed {} unreachable states before reversing",
                    machine.n() - t.n()
                );
                t
            };
            let report = trimmed.reversal_complexity_report()?;
            let states = report.agreed()?;
            let reversed = trimmed.reverse()?.to_dfao().minimize();
            eprintln!("states: input {}, reversed {}", machine.n(), reversed.n());
            if reversed.n() != states {
                return Err(Error::MethodDisagreement(format!(
                    "minimized reversal has {} states, |τM| = {states}",
                    reversed.n()
                ))
                .into());
            }
            match output {
                Some(path) => {
                    fs::write(&path, reversed.to_string()).map_err(|e| io_err(&path, e))?
                }
                None => write!(stdout, "{reversed}").map_err(|e| Failure::Io(e.to_string()))?,
            }
        }
        Command::Table {
            id,
            k,
            n,
            format,
            search,
        } => {
            let opts = TableOptions {
                budget: search.budget,
                iterations: search.iters,
                seed: search.seed,
                workers: search.workers.unwrap_or(TableOptions::default().workers),
            };
            let table = match id {
                1 => tables::table1(n.unwrap_or(tables::TABLE1_N), &opts)?,
                2 => tables::table2(k.unwrap_or(tables::TABLE2_K), n.unwrap_or(tables::TABLE2_N))?,
                _ => tables::table3(
                    k.unwrap_or(tables::TABLE3_K),
                    n.unwrap_or(tables::TABLE3_N),
                    &opts,
                )?,
            };
            let text = match format {
                Format::Tsv => table.to_tsv(),
                Format::Json => format!("{}\n", table.to_json()),
            };
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(e.to_string()))?;
        }
        Command::Formula { k, l, m, n } => {
            let breakdown = match (l, m, n) {
                (Some(l), Some(m), _) => tau_ulm_breakdown(k, l, m)?,
                (_, _, Some(n)) => corollary_lower_bound(k, n)?,
                _ => unreachable!("clap enforces -l/-m or -n"),
            };
            stdout
                .write_all(formula_lines(&breakdown).as_bytes())
                .map_err(|e| Failure::Io(e.to_string()))?;
        }
        Command::Search {
            mode,
            k,
            n,
            search: args,
        } => {
            let config = match mode {
                Mode::Brute => SearchConfig::brute(k, n),
                Mode::Random => SearchConfig::random(k, n, args.iters, args.seed),
            };
            let config = match args.workers {
                Some(w) => config.with_workers(w),
                None => config,
            }
            .with_budget(args.budget);
            let result = search(&config)?;
            writeln!(stdout, "{}", search_record(&result))
                .map_err(|e| Failure::Io(e.to_string()))?;
        }
        Command::Scan { n } => {
            let report = v1n_conjecture_scan(n)?;
            let mut text = format!(
                "# alpha {} beta {}\n",
                report.alpha.format_cycles(),
                report.beta
            );
            for (tau, size) in &report.sizes {
                let mark = if *size == report.bound() {
                    "\tfull"
                } else {
                    ""
                };
                text.push_str(&format!("{tau}\t{size}{mark}\n"));
            }
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(e.to_string()))?;
        }
    }
    Ok(())
}
