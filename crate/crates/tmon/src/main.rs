use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tmon::commands::{self, CliError, Emit, Outcome, DEFAULT_BOUND};
use tmon_core::laws::{DEFAULT_SAMPLES, DEFAULT_SEED};

/// Checks categories, multicategories, strict monoidal categories and relations given as text
/// files, and the law suites of the library.
#[derive(Parser)]
#[command(name = "tmon", version)]
struct Cli {
    /// Print JSON instead of lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of the structure in a file.
    Check {
        file: PathBuf,
        /// Enumeration bound; for relations it overrides the file's own bound.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List the free strict monoidal category on a multicategory or category.
    FreeMonoidal {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Emit::Counts)]
        emit: Emit,
    },
    /// List the underlying multicategory of a strict monoidal category.
    Underlying {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        max_arity: usize,
    },
    /// Check the free/underlying adjunction on a multicategory and a strict monoidal category.
    AdjunctionCheck {
        multicat: PathBuf,
        strictmon: PathBuf,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run a law suite, or `all` of them.
    Laws {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Inject a known defect into the suite.
        #[arg(long)]
        mutate: Option<String>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { file, bound, seed } => commands::check(file, *bound, *seed),
        Command::FreeMonoidal { file, max_len, emit } => commands::free_monoidal(file, *max_len, *emit),
        Command::Underlying { file, max_arity } => commands::underlying(file, *max_arity),
        Command::AdjunctionCheck { multicat, strictmon, bound, seed } => {
            commands::adjunction_check(multicat, strictmon, *bound, *seed)
        }
        Command::Laws { suite, samples, seed, bound, mutate } => {
            commands::laws(suite, *samples, *seed, *bound, mutate.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let doc = out.document();
            if cli.json {
                println!("{}", doc.to_json());
            } else {
                print!("{}", doc.to_human());
            }
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
